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

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ricap {

struct SelfCheckOptions {
  /// Flip one pixel of a composed image before the provenance check runs.
  /// Used to confirm that the check can fail.
  bool corrupt_compose = false;
};

struct SelfCheckGroup {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;

  bool passed() const { return failures == 0; }
};

/// Runs the embedded invariant groups (pixel provenance, weight
/// conservation, loss identities, gradient checks, FICAP reconstruction,
/// detection containment) from fixed seeds.
std::vector<SelfCheckGroup> run_selfcheck(const SelfCheckOptions& options = {});

/// One "PASS|FAIL name cases=N failures=M" line per group.
void print_selfcheck(std::ostream& out, const std::vector<SelfCheckGroup>& groups);

}  // namespace ricap
