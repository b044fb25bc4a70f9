// Copyright 2026 The ricap-augment Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ricap {

/// Base class of every error raised by this library. The CLI maps these to
/// exit status 1 (validation error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric parameter outside its domain (negative beta, empty range, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A crop rectangle that does not fit inside its image.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// A patch whose size does not match its quadrant of the canvas.
class CompositionError : public Error {
 public:
  using Error::Error;
};

class LabelError : public Error {
 public:
  using Error::Error;
};

/// Empty or heterogeneous batches.
class BatchError : public Error {
 public:
  using Error::Error;
};

/// Malformed caller input that does not fit a more specific category.
class InputError : public Error {
 public:
  using Error::Error;
};

/// File-system, decode and encode failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ricap
