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

#include "ricap/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <ostream>

#include "ricap/detect.hpp"
#include "ricap/embed_mix.hpp"
#include "ricap/errors.hpp"
#include "ricap/manifest.hpp"
#include "ricap/png_io.hpp"
#include "ricap/selfcheck.hpp"
#include "ricap/train.hpp"

namespace ricap::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string image_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "images/%06zu.png", index);
  return buf;
}

ordered_json soft_label_json(const SoftLabel& label) {
  ordered_json out = ordered_json::array();
  for (std::size_t j = 0; j < label.probs.size(); ++j) {
    if (label.probs[j] != 0.0) out.push_back({j, label.probs[j]});
  }
  return out;
}

ordered_json box_json(const BBox& b) { return ordered_json::array({b.class_id, b.cx, b.cy, b.w, b.h}); }

Image8 to_u8(const ImageF& img) {
  Image8 out(img.channels(), img.height(), img.width());
  for (std::size_t i = 0; i < out.pixels().size(); ++i) {
    const double v = round_half_even(static_cast<double>(img.pixels()[i]));
    out.pixels()[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  return out;
}

ImageF to_float(const Image8& img) {
  ImageF out(img.channels(), img.height(), img.width());
  for (std::size_t i = 0; i < out.pixels().size(); ++i) out.pixels()[i] = img.pixels()[i];
  return out;
}

bool is_classification(Variant v) { return v != Variant::Detect; }

}  // namespace

Variant parse_variant(const std::string& name) {
  if (name == "ricap") return Variant::Ricap;
  if (name == "ricap-image-only") return Variant::RicapImageOnly;
  if (name == "ricap-label-only") return Variant::RicapLabelOnly;
  if (name == "four-mixup") return Variant::FourMixup;
  if (name == "ficap") return Variant::Ficap;
  if (name == "detect") return Variant::Detect;
  throw ParameterError("unknown variant '" + name +
                       "' (expected ricap, ricap-image-only, ricap-label-only, four-mixup, ficap or detect)");
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Ricap: return "ricap";
    case Variant::RicapImageOnly: return "ricap-image-only";
    case Variant::RicapLabelOnly: return "ricap-label-only";
    case Variant::FourMixup: return "four-mixup";
    case Variant::Ficap: return "ficap";
    case Variant::Detect: return "detect";
  }
  return "?";
}

BoundaryMode parse_boundary_mode(const std::string& name) {
  if (name == "per-batch") return BoundaryMode::PerBatch;
  if (name == "per-sample") return BoundaryMode::PerSample;
  throw ParameterError("unknown boundary mode '" + name + "' (expected per-batch or per-sample)");
}

Canvas parse_canvas(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    const auto digit = [](char ch) { return ch >= '0' && ch <= '9'; };
    if (!digit(text.front()) || !digit(text[x + 1 < text.size() ? x + 1 : x])) throw std::invalid_argument(text);
    std::size_t used = 0;
    const auto w = std::stoull(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    const auto rest = text.substr(x + 1);
    const auto h = std::stoull(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    if (w == 0 || h == 0) throw std::invalid_argument(text);
    return {static_cast<std::size_t>(w), static_cast<std::size_t>(h)};
  } catch (const std::logic_error&) {
    throw ParameterError("canvas must look like WIDTHxHEIGHT with positive sizes, got '" + text + "'");
  }
}

std::size_t cmd_augment(const AugmentOptions& options) {
  const Variant variant = parse_variant(options.variant);
  const BoundaryMode mode = parse_boundary_mode(options.boundary);
  const BetaParam beta(options.beta);
  if (options.batch_size == 0) throw ParameterError("batch size must be >= 1");
  if (!(options.min_visibility >= 0.0 && options.min_visibility <= 1.0)) {
    throw ParameterError("min-visibility must lie in [0, 1]");
  }

  const DatasetManifest manifest = load_manifest(options.manifest);
  const std::vector<Image8> images = load_images(manifest);
  const Canvas canvas = images.front().canvas();
  const OriginRule origins = variant == Variant::Ficap ? OriginRule::Fixed : OriginRule::Random;

  std::filesystem::create_directories(options.out / "images");
  std::ofstream records(options.out / "records.jsonl", std::ios::binary | std::ios::trunc);
  if (!records) throw IoError("cannot write records to '" + (options.out / "records.jsonl").string() + "'");

  const Rng root(options.seed);
  std::size_t written = 0;
  for (std::size_t start = 0, b = 0; start < images.size(); start += options.batch_size, ++b) {
    const std::size_t end = std::min(images.size(), start + options.batch_size);
    std::vector<LabeledImage<std::uint8_t>> batch;
    std::vector<DetectionSample<std::uint8_t>> det_batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back({images[i], manifest.entries[i].class_id});
      if (variant == Variant::Detect) {
        det_batch.push_back({images[i], manifest.entries[i].boxes.value_or(std::vector<BBox>{})});
      }
    }
    check_batch<std::uint8_t>(batch, manifest.num_classes);

    Rng rng = root.child(b);
    const auto plans = plan_batch(batch.size(), canvas, beta, rng, mode, origins);
    for (const SamplePlan& plan : plans) {
      const std::size_t index = written++;
      ordered_json rec;
      rec["index"] = index;
      rec["image"] = image_name(index);
      rec["variant"] = variant_name(variant);
      rec["canvas"] = {canvas.width, canvas.height};
      rec["boundary"] = {plan.boundary.w, plan.boundary.h};

      Image8 out_image;
      switch (variant) {
        case Variant::Ricap:
        case Variant::Ficap: {
          auto s = render_ricap<std::uint8_t>(batch, manifest.num_classes, plan);
          out_image = std::move(s.image);
          rec["soft_label"] = soft_label_json(s.label);
          break;
        }
        case Variant::RicapImageOnly: {
          out_image = render_patched<std::uint8_t>(batch, plan);
          const auto weights = mix_weights(crop_sizes(plan.boundary, canvas), canvas);
          const std::size_t cls = batch[plan.specs[dominant_quadrant(weights)].source_index].class_id;
          rec["label"] = cls;
          rec["soft_label"] = soft_label_json(one_hot(cls, manifest.num_classes));
          break;
        }
        case Variant::RicapLabelOnly: {
          auto s = render_label_only<std::uint8_t>(batch, manifest.num_classes, plan);
          out_image = std::move(s.image);
          rec["soft_label"] = soft_label_json(s.label);
          break;
        }
        case Variant::FourMixup: {
          std::vector<LabeledImage<float>> fbatch;
          fbatch.reserve(batch.size());
          for (const auto& s : batch) fbatch.push_back({to_float(s.image), s.class_id});
          auto s = render_four_mixup(fbatch, manifest.num_classes, plan);
          out_image = to_u8(s.image);
          rec["soft_label"] = soft_label_json(s.label);
          break;
        }
        case Variant::Detect: {
          auto s = render_detection<std::uint8_t>(det_batch, plan, options.min_visibility);
          out_image = std::move(s.image);
          ordered_json boxes = ordered_json::array();
          for (const auto& box : s.boxes) boxes.push_back(box_json(box));
          rec["boxes"] = std::move(boxes);
          break;
        }
      }

      ordered_json prov = ordered_json::array();
      for (const CropSpec& spec : plan.specs) {
        const Rect dst = quadrant_rect(spec.quadrant, plan.boundary, canvas);
        const std::size_t source = start + spec.source_index;
        ordered_json p;
        p["quadrant"] = std::string(quadrant_name(spec.quadrant));
        p["source"] = manifest.entries[source].path.generic_string();
        p["source_index"] = source;
        p["class_id"] = manifest.entries[source].class_id;
        p["crop"] = {spec.x, spec.y, spec.w, spec.h};
        p["placement"] = {dst.x, dst.y};
        prov.push_back(std::move(p));
      }
      rec["provenance"] = std::move(prov);

      encode_image(out_image, options.out / image_name(index));
      records << rec.dump() << '\n';
    }
  }
  if (!records) throw IoError("failed while writing records.jsonl");
  return written;
}

std::vector<std::string> verify_augment_output(const std::filesystem::path& out) {
  std::vector<std::string> problems;
  std::ifstream in(out / "records.jsonl");
  if (!in) {
    problems.push_back("records.jsonl is missing");
    return problems;
  }
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const std::string where = "record " + std::to_string(n++);
    const json rec = json::parse(line);
    const Canvas canvas{rec["canvas"][0].get<std::size_t>(), rec["canvas"][1].get<std::size_t>()};
    if (!std::filesystem::is_regular_file(out / rec["image"].get<std::string>())) {
      problems.push_back(where + ": image file missing");
    }
    const Variant variant = parse_variant(rec["variant"].get<std::string>());
    if (is_classification(variant)) {
      std::map<std::size_t, std::uint64_t> mass;
      std::uint64_t best = 0;
      std::size_t best_class = 0;
      for (const auto& p : rec["provenance"]) {
        const auto cls = p["class_id"].get<std::size_t>();
        const auto area = p["crop"][2].get<std::uint64_t>() * p["crop"][3].get<std::uint64_t>();
        mass[cls] += area;
        if (area > best) {
          best = area;
          best_class = cls;
        }
      }
      double sum = 0.0;
      std::map<std::size_t, double> recorded;
      for (const auto& e : rec["soft_label"]) {
        recorded[e[0].get<std::size_t>()] = e[1].get<double>();
        sum += e[1].get<double>();
      }
      if (std::abs(sum - 1.0) > 1e-12) problems.push_back(where + ": soft label sums to " + std::to_string(sum));
      if (variant == Variant::RicapImageOnly) {
        if (rec["label"].get<std::size_t>() != best_class) problems.push_back(where + ": hard label mismatch");
      } else {
        std::map<std::size_t, double> derived;
        for (const auto& [cls, area] : mass) {
          if (area > 0) derived[cls] = static_cast<double>(area) / static_cast<double>(canvas.area());
        }
        if (derived != recorded) problems.push_back(where + ": soft label does not re-derive from provenance");
      }
    } else {
      for (const auto& b : rec["boxes"]) {
        const BBox box{b[0].get<std::size_t>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>(),
                       b[4].get<double>()};
        if (box.left() < 0.0 || box.top() < 0.0 || box.right() > static_cast<double>(canvas.width) ||
            box.bottom() > static_cast<double>(canvas.height) || !(box.w > 0.0) || !(box.h > 0.0)) {
          problems.push_back(where + ": box outside image bounds");
          continue;
        }
        bool inside_quadrant = false;
        for (const auto& p : rec["provenance"]) {
          const double x0 = p["placement"][0].get<double>();
          const double y0 = p["placement"][1].get<double>();
          const double x1 = x0 + p["crop"][2].get<double>();
          const double y1 = y0 + p["crop"][3].get<double>();
          inside_quadrant = inside_quadrant || (box.left() >= x0 && box.top() >= y0 && box.right() <= x1 &&
                                                box.bottom() <= y1);
        }
        if (!inside_quadrant) problems.push_back(where + ": box straddles quadrants");
      }
    }
  }
  return problems;
}

StatsReport cmd_stats(const StatsOptions& options) {
  const BetaParam beta(options.beta);
  if (options.samples == 0) throw ParameterError("samples must be >= 1");
  StatsReport r;
  r.canvas = parse_canvas(options.canvas);
  r.w_hist.assign(r.canvas.width + 1, 0);
  r.h_hist.assign(r.canvas.height + 1, 0);
  constexpr std::size_t kBins = 20;
  for (auto& h : r.weight_hist) h.assign(kBins, 0);

  Rng rng(options.seed);
  double sw = 0.0, sw2 = 0.0, sh = 0.0, sh2 = 0.0;
  for (std::size_t i = 0; i < options.samples; ++i) {
    const auto b = draw_boundary(r.canvas, beta, rng);
    ++r.w_hist[b.w];
    ++r.h_hist[b.h];
    const double wf = static_cast<double>(b.w) / static_cast<double>(r.canvas.width);
    const double hf = static_cast<double>(b.h) / static_cast<double>(r.canvas.height);
    sw += wf;
    sw2 += wf * wf;
    sh += hf;
    sh2 += hf * hf;
    const auto weights = mix_weights(crop_sizes(b, r.canvas), r.canvas);
    for (std::size_t k = 0; k < 4; ++k) {
      const auto bin = std::min(kBins - 1, static_cast<std::size_t>(weights[k] * kBins));
      ++r.weight_hist[k][bin];
    }
  }
  const double n = static_cast<double>(options.samples);
  r.mean_wf = sw / n;
  r.var_wf = sw2 / n - r.mean_wf * r.mean_wf;
  r.mean_hf = sh / n;
  r.var_hf = sh2 / n - r.mean_hf * r.mean_hf;
  r.expected_var = beta.variance();

  if (beta.value() == 0.0 || beta.value() == 1.0) {
    const std::size_t iw = r.canvas.width;
    double max_z = 0.0;
    for (std::size_t v = 0; v <= iw; ++v) {
      double p = 0.0;
      if (beta.value() == 0.0) {
        p = (v == 0 || v == iw) ? 0.5 : 0.0;
      } else {
        p = (v == 0 || v == iw) ? 0.5 / static_cast<double>(iw) : 1.0 / static_cast<double>(iw);
      }
      const double count = static_cast<double>(r.w_hist[v]);
      double z = 0.0;
      if (p <= 0.0 || p >= 1.0) {
        z = count == n * p ? 0.0 : std::numeric_limits<double>::infinity();
      } else {
        z = (count - n * p) / std::sqrt(n * p * (1.0 - p));
      }
      max_z = std::max(max_z, std::abs(z));
    }
    r.max_abs_z_w = max_z;
  }
  return r;
}

void write_stats_csv(std::ostream& out, const StatsReport& r) {
  out << "series,bin,count\n";
  for (std::size_t v = 0; v < r.w_hist.size(); ++v) out << "w," << v << ',' << r.w_hist[v] << '\n';
  for (std::size_t v = 0; v < r.h_hist.size(); ++v) out << "h," << v << ',' << r.h_hist[v] << '\n';
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t bins = r.weight_hist[k].size();
    for (std::size_t i = 0; i < bins; ++i) {
      out << 'W' << (k + 1) << ',' << static_cast<double>(i) / static_cast<double>(bins) << ','
          << r.weight_hist[k][i] << '\n';
    }
  }
}

namespace {

AugmentKind parse_augment_kind(const std::string& name) {
  if (name == "none") return AugmentKind::None;
  if (name == "ricap") return AugmentKind::Ricap;
  if (name == "ricap-image-only") return AugmentKind::RicapImageOnly;
  if (name == "ricap-label-only") return AugmentKind::RicapLabelOnly;
  if (name == "four-mixup") return AugmentKind::FourMixup;
  throw ParameterError("unknown augmentation '" + name + "'");
}

int embed_mix_command(const std::filesystem::path& input, std::ostream& out) {
  std::ifstream in(input);
  if (!in) throw IoError("cannot open '" + input.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed embedding file '" + input.string() + "': " + e.what());
  }
  if (!doc.contains("vectors") || !doc["vectors"].is_array() || doc["vectors"].size() != 4) {
    throw InputError("embedding file needs \"vectors\": four arrays of numbers");
  }
  std::array<EmbeddingVector, 4> vectors;
  try {
    for (std::size_t k = 0; k < 4; ++k) vectors[k] = doc["vectors"][k].get<EmbeddingVector>();
  } catch (const json::exception&) {
    throw InputError("embedding vectors must be arrays of numbers");
  }
  EmbeddingVector mixed;
  if (doc.contains("weights")) {
    std::array<double, 4> w{};
    if (!doc["weights"].is_array() || doc["weights"].size() != 4) throw InputError("\"weights\" needs four numbers");
    for (std::size_t k = 0; k < 4; ++k) w[k] = doc["weights"][k].get<double>();
    mixed = mix_embeddings(vectors, w);
  } else if (doc.contains("boundary") && doc.contains("canvas")) {
    const Canvas canvas{doc["canvas"][0].get<std::size_t>(), doc["canvas"][1].get<std::size_t>()};
    const BoundaryPosition b{doc["boundary"][0].get<std::size_t>(), doc["boundary"][1].get<std::size_t>()};
    mixed = mix_embeddings(vectors, mix_weights(crop_sizes(b, canvas), canvas));
  } else {
    throw InputError("embedding file needs either \"weights\" or \"boundary\" + \"canvas\"");
  }
  out << json{{"embedding", mixed}}.dump() << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"RICAP-family image augmentation: random cropping and patching with soft labels", "ricap"};
  app.require_subcommand(1);

  AugmentOptions aug;
  auto* augment = app.add_subcommand("augment", "Augment a manifest of same-sized PNG images");
  augment->add_option("--manifest", aug.manifest, "Dataset manifest (JSON)")->required();
  augment->add_option("--out", aug.out, "Output directory")->required();
  augment->add_option("--variant", aug.variant,
                      "ricap | ricap-image-only | ricap-label-only | four-mixup | ficap | detect")
      ->capture_default_str();
  augment->add_option("--beta", aug.beta, "Beta(beta, beta) boundary parameter, >= 0")->capture_default_str();
  augment->add_option("--seed", aug.seed, "Random seed (unsigned 64-bit)")->capture_default_str();
  augment->add_option("--batch-size", aug.batch_size, "Images per augmentation batch")->capture_default_str();
  augment->add_option("--boundary", aug.boundary, "per-batch | per-sample")->capture_default_str();
  augment->add_option("--min-visibility", aug.min_visibility, "Drop boxes less visible than this (detect)")
      ->capture_default_str();

  StatsOptions st;
  std::string stats_csv;
  auto* stats = app.add_subcommand("stats", "Histogram boundary draws and quadrant weights");
  stats->add_option("--beta", st.beta, "Beta parameter, >= 0")->capture_default_str();
  stats->add_option("--samples", st.samples, "Number of boundary draws")->capture_default_str();
  stats->add_option("--canvas", st.canvas, "Canvas as WIDTHxHEIGHT")->capture_default_str();
  stats->add_option("--seed", st.seed, "Random seed")->capture_default_str();
  stats->add_option("--csv", stats_csv, "Write the histogram CSV here (default: stdout)");

  bool inject_fault = false;
  auto* selfcheck = app.add_subcommand("selfcheck", "Run the embedded invariant checks");
  selfcheck->add_flag("--inject-fault", inject_fault, "Corrupt one composed pixel (negative control)");

  std::filesystem::path embed_input;
  auto* embed = app.add_subcommand("embed-mix", "Area-weighted mix of four embedding vectors");
  embed->add_option("--input", embed_input, "JSON with vectors and weights or boundary + canvas")->required();

  std::string train_augment = "ricap";
  AugmentConfig train_aug;
  TrainConfig train_cfg;
  SyntheticConfig data_cfg;
  std::filesystem::path trace_out;
  auto* train = app.add_subcommand("train", "Train a linear softmax model on synthetic data");
  train->add_option("--augment", train_augment, "none | ricap | ricap-image-only | ricap-label-only | four-mixup")
      ->capture_default_str();
  train->add_option("--beta", train_aug.beta, "Beta parameter")->capture_default_str();
  train->add_option("--steps", train_cfg.steps, "SGD steps")->capture_default_str();
  train->add_option("--lr", train_cfg.lr, "Learning rate")->capture_default_str();
  train->add_option("--batch-size", train_cfg.batch_size, "Minibatch size")->capture_default_str();
  train->add_option("--seed", train_cfg.seed, "Training seed")->capture_default_str();
  train->add_option("--data-seed", data_cfg.seed, "Synthetic dataset seed")->capture_default_str();
  train->add_option("--trace", trace_out, "Write the per-step trace CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*augment) {
      const std::size_t n = cmd_augment(aug);
      const auto problems = verify_augment_output(aug.out);
      for (const auto& p : problems) err << "invariant violated: " << p << '\n';
      if (!problems.empty()) return kExitInvariant;
      out << "wrote " << n << " samples to " << aug.out.string() << '\n';
      return kExitOk;
    }
    if (*stats) {
      if (!stats_csv.empty()) st.csv = stats_csv;
      const StatsReport r = cmd_stats(st);
      if (st.csv) {
        std::ofstream f(*st.csv);
        if (!f) throw IoError("cannot write '" + st.csv->string() + "'");
        write_stats_csv(f, r);
      } else {
        write_stats_csv(out, r);
      }
      std::ostream& summary = st.csv ? out : err;
      summary << "mean w/I_x = " << r.mean_wf << " (expected 0.5)\n"
              << "var  w/I_x = " << r.var_wf << " (closed form " << r.expected_var << ")\n"
              << "mean h/I_y = " << r.mean_hf << " (expected 0.5)\n"
              << "var  h/I_y = " << r.var_hf << " (closed form " << r.expected_var << ")\n";
      if (r.max_abs_z_w) summary << "max |z| of w histogram vs exact law = " << *r.max_abs_z_w << '\n';
      return kExitOk;
    }
    if (*selfcheck) {
      const auto groups = run_selfcheck({inject_fault});
      print_selfcheck(out, groups);
      const bool ok = std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.passed(); });
      return ok ? kExitOk : kExitInvariant;
    }
    if (*embed) {
      return embed_mix_command(embed_input, out);
    }
    if (*train) {
      train_aug.kind = parse_augment_kind(train_augment);
      const auto data = make_synthetic_dataset(data_cfg);
      const auto result = train_toy(data, train_aug, train_cfg);
      if (!trace_out.empty()) {
        std::ofstream f(trace_out);
        if (!f) throw IoError("cannot write '" + trace_out.string() + "'");
        write_trace_csv(f, result.trace);
      }
      out << "train accuracy " << accuracy(result.model, data.train) << ", test accuracy "
          << accuracy(result.model, data.test) << ", final train KL "
          << tail_mean_kl(result.trace, 100) << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ricap");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ricap::cli
