// Copyright 2026 The RLE Authors. All Rights Reserved.
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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rle/core/error.hpp"
#include "rle/core/image.hpp"
#include "rle/pipeline/augment.hpp"
#include "rle/pipeline/image_io.hpp"
#include "rle/pipeline/manifest.hpp"
#include "rle/pipeline/policy.hpp"

namespace rle::pipeline {

struct StageCounter {
  std::size_t eligible = 0;
  std::size_t applied = 0;

  double frequency() const { return eligible ? static_cast<double>(applied) / static_cast<double>(eligible) : 0.0; }
};

struct RecordIssue {
  std::string path;
  std::string message;
};

struct RunReport {
  std::size_t inputs = 0;
  std::size_t processed = 0;
  std::size_t written = 0;
  std::size_t workers = 1;
  StageCounter moderate;
  StageCounter radical;
  StageCounter erasing;
  std::vector<RecordIssue> errors;
  std::vector<RecordIssue> warnings;
  double wall_seconds = 0.0;
  double images_per_second = 0.0;
};

inline nlohmann::json report_to_json(const RunReport& r) {
  using nlohmann::json;
  auto stage = [](const StageCounter& s) {
    return json{{"eligible", s.eligible}, {"applied", s.applied}, {"frequency", s.frequency()}};
  };
  auto issues = [](const std::vector<RecordIssue>& v) {
    json arr = json::array();
    for (const auto& i : v) arr.push_back({{"path", i.path}, {"message", i.message}});
    return arr;
  };
  return {{"inputs", r.inputs},
          {"processed", r.processed},
          {"written", r.written},
          {"failed", r.errors.size()},
          {"workers", r.workers},
          {"stages", {{"moderate", stage(r.moderate)}, {"radical", stage(r.radical)}, {"erasing", stage(r.erasing)}}},
          {"errors", issues(r.errors)},
          {"warnings", issues(r.warnings)},
          {"wall_seconds", r.wall_seconds},
          {"images_per_second", r.images_per_second}};
}

namespace detail {

struct RecordOutcome {
  bool ok = false;
  bool moderate_eligible = false;
  bool moderate = false;
  bool radical = false;
  bool erasing = false;
  std::optional<std::string> error;
  std::optional<std::string> warning;
};

inline void tally(RunReport& report, const RecordOutcome& o, const AugmentPolicy& policy) {
  if (!o.ok) return;
  ++report.processed;
  ++report.written;
  if (o.moderate_eligible) {
    ++report.moderate.eligible;
    report.moderate.applied += o.moderate;
  }
  if (policy.radical.enabled) {
    ++report.radical.eligible;
    report.radical.applied += o.radical;
  }
  if (policy.erasing.enabled) {
    ++report.erasing.eligible;
    report.erasing.applied += o.erasing;
  }
}

// Runs fn(i) for i in [0, n) on `workers` threads pulling from a shared
// counter. fn must only touch state owned by index i.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

}  // namespace detail

/// A decoded input. On failure `image` is empty and `error` says why.
struct IngestedRecord {
  ManifestRecord record;
  std::optional<Image> image;
  Modality modality = Modality::visible;  // from the decoded channel count
  std::optional<std::string> error;
  std::optional<std::string> warning;
};

/// Decodes one record. A listed modality that disagrees with the decoded
/// channel count yields a warning, and the decoded count wins.
inline IngestedRecord ingest_record(const InputSet& inputs, const ManifestRecord& rec) {
  IngestedRecord out{rec, std::nullopt, Modality::visible, std::nullopt, std::nullopt};
  try {
    out.image = read_image(inputs.resolve(rec));
  } catch (const std::exception& e) {
    out.error = e.what();
    return out;
  }
  out.modality = out.image->channels() == 3 ? Modality::visible : Modality::infrared;
  if (rec.modality && *rec.modality != out.modality) {
    out.warning = "listed as " + std::string(to_string(*rec.modality)) + " but decoded with " +
                  std::to_string(out.image->channels()) + " channel(s); processed as " +
                  std::string(to_string(out.modality));
  }
  return out;
}

/// Decodes every record in order. Unreadable files become per-record errors.
inline std::vector<IngestedRecord> ingest(const InputSet& inputs) {
  if (inputs.records.empty()) throw Error("ingest: empty input set");
  std::vector<IngestedRecord> out;
  out.reserve(inputs.records.size());
  for (const auto& rec : inputs.records) out.push_back(ingest_record(inputs, rec));
  return out;
}

/// Output location for a record: its relative path (or file name, for
/// absolute inputs) under `out_dir`, with a .png extension.
inline fs::path output_path_for(const ManifestRecord& record, const fs::path& out_dir) {
  fs::path rel = record.path.is_absolute() ? record.path.filename() : record.path.lexically_normal();
  if (!rel.empty() && *rel.begin() == "..") rel = record.path.filename();
  rel.replace_extension(".png");
  return out_dir / rel;
}

/// Decodes, augments and writes every record. Per-record failures are
/// reported and skipped; an unusable output directory is fatal and raised
/// before any image is touched. The report is also written to
/// out_dir/report.json.
inline RunReport run_batch(const InputSet& inputs, const AugmentPolicy& policy, const fs::path& out_dir,
                           std::size_t workers) {
  if (inputs.records.empty()) throw Error("run_batch: empty input set");
  {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const fs::path probe = out_dir / ".rle_write_probe";
    std::ofstream out(probe);
    if (ec || !out) throw IoError("output directory " + out_dir.string() + " is not writable");
    out.close();
    fs::remove(probe, ec);
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<detail::RecordOutcome> outcomes(inputs.records.size());
  std::mutex dir_mutex;

  detail::parallel_for(inputs.records.size(), workers, [&](std::size_t i) {
    const ManifestRecord& rec = inputs.records[i];
    detail::RecordOutcome& o = outcomes[i];
    try {
      IngestedRecord in = ingest_record(inputs, rec);
      if (in.error) throw IoError(*in.error);
      o.warning = in.warning;
      const Image& img = *in.image;
      const Modality decoded = in.modality;
      auto result = apply_policy(img, decoded, policy, derive_seed(policy.master_seed, rec.identifier));
      const fs::path target = output_path_for(rec, out_dir);
      {
        std::scoped_lock lock(dir_mutex);
        fs::create_directories(target.parent_path());
      }
      write_png(target, result.image);
      o.ok = true;
      o.moderate_eligible = result.moderate_eligible;
      o.moderate = result.moderate_applied;
      o.radical = result.radical_applied;
      o.erasing = result.erasing_applied;
    } catch (const std::exception& e) {
      o.error = e.what();
    }
  });

  RunReport report;
  report.inputs = inputs.records.size();
  report.workers = std::max<std::size_t>(1, workers);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    const std::string path = inputs.records[i].path.generic_string();
    if (o.error) report.errors.push_back({path, *o.error});
    if (o.warning) report.warnings.push_back({path, *o.warning});
    detail::tally(report, o, policy);
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.images_per_second =
      report.wall_seconds > 0.0 ? static_cast<double>(report.processed) / report.wall_seconds : 0.0;

  std::ofstream(out_dir / "report.json") << report_to_json(report).dump(2) << "\n";
  return report;
}

/// Deterministic synthetic person-sized test image: a coarse grid of random
/// colours under a vertical shading ramp.
inline Image synthetic_image(std::size_t channels, std::size_t height, std::size_t width, std::uint64_t seed) {
  SeededRng rng(seed);
  constexpr std::size_t kRows = 8, kCols = 4;
  std::vector<double> palette(channels * kRows * kCols);
  for (double& v : palette) v = rng.uniform01();
  Image img(channels, height, width);
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t y = 0; y < height; ++y) {
      const double shade = 0.6 + 0.4 * static_cast<double>(y) / static_cast<double>(height);
      const std::size_t row = y * kRows / height;
      for (std::size_t x = 0; x < width; ++x) {
        img(c, y, x) = shade * palette[(c * kRows + row) * kCols + x * kCols / width];
      }
    }
  }
  return img;
}

struct BenchOptions {
  std::size_t count = 1000;
  std::size_t height = 384;
  std::size_t width = 192;
  std::size_t channels = 3;
  std::size_t workers = 1;
};

/// In-memory throughput run of apply_policy over synthetic images. Each
/// image is synthesized inside the timed loop so memory stays flat.
inline RunReport run_bench(const AugmentPolicy& policy, const BenchOptions& opt) {
  const Modality modality = opt.channels == 3 ? Modality::visible : Modality::infrared;
  std::vector<detail::RecordOutcome> outcomes(opt.count);

  const auto start = std::chrono::steady_clock::now();
  detail::parallel_for(opt.count, opt.workers, [&](std::size_t i) {
    const std::string id = "bench/" + std::to_string(i);
    const Image img = synthetic_image(opt.channels, opt.height, opt.width, mix_seed(policy.master_seed, id));
    const auto r = apply_policy(img, modality, policy, derive_seed(policy.master_seed, id));
    outcomes[i] = {true, r.moderate_eligible, r.moderate_applied, r.radical_applied, r.erasing_applied, {}, {}};
  });
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunReport report;
  report.inputs = opt.count;
  report.workers = std::max<std::size_t>(1, opt.workers);
  for (const auto& o : outcomes) detail::tally(report, o, policy);
  report.written = 0;
  report.wall_seconds = elapsed;
  report.images_per_second = elapsed > 0.0 ? static_cast<double>(report.processed) / elapsed : 0.0;
  return report;
}

}  // namespace rle::pipeline
