#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "navtrust/depth_corrupt.hpp"
#include "navtrust/manifest.hpp"
#include "navtrust/mitigation.hpp"
#include "navtrust/safeguard.hpp"
#include "navtrust/text_corrupt.hpp"

namespace navtrust::harness {

struct SuiteEntry {
  CorruptionKind kind;
  double severity = 0.5;
};

struct CorruptOptions {
  std::uint64_t global_seed = 0;
  depth::MissingFill missing_fill = depth::MissingFill::InvalidZero;
  text::StyleVariant style_variant = text::StyleVariant::Friendly;
  /// Backend for style rewrites; nullptr uses the deterministic template
  /// rewriter.
  text::TextRewriter* rewriter = nullptr;
  /// Worker threads for frame-level parallelism; 0 = hardware concurrency.
  /// Outputs are identical for any worker count.
  int jobs = 0;
};

/// Ledger entry for one corrupted output; enough to re-derive its RNG
/// stream.
struct FrameRecord {
  CorruptionKind kind;
  std::string episode_id;
  std::int64_t frame_index = 0;
  std::string op_name;
  double severity = 0.0;
  std::string output;  // path relative to the run's out_dir
};

struct CorruptSummary {
  std::uint64_t global_seed = 0;
  std::vector<FrameRecord> records;
};

/// Applies each suite entry to every applicable frame/instruction of the
/// manifest. Sensor kinds write corrupted frames under
/// out_dir/<kind>/<episode>/<index>; instruction kinds write a corrupted
/// manifest copy under out_dir/<kind>/manifest.json. Re-running with
/// identical inputs reproduces byte-identical outputs. The summary is also
/// written to out_dir/summary.json.
CorruptSummary run_corrupt(const Manifest& manifest,
                           std::span<const SuiteEntry> suite,
                           const std::filesystem::path& out_dir,
                           const CorruptOptions& options);

/// Applies pre-sampled per-frame schedules (training-data generation).
/// Outputs land under out_dir/scheduled/<episode>/{rgb,depth}/<index>.
CorruptSummary run_schedules(const Manifest& manifest,
                             std::span<const mitigation::CorruptionSchedule> schedules,
                             const std::filesystem::path& out_dir,
                             const CorruptOptions& options);

struct MetricCell {
  double sr = 0.0;
  double spl = 0.0;
};

struct EvalMeta {
  std::uint64_t global_seed = 0;
  double severity = 0.5;
};

struct Report {
  MetricCell clean;
  std::vector<std::pair<CorruptionKind, MetricCell>> corrupted;
  std::optional<double> prs_sr;
  std::optional<double> prs_spl;
  bool prs_sr_over_unity = false;
  bool prs_spl_over_unity = false;
  EvalMeta meta;
  std::string tool_version;
};

/// Scores clean and corrupted result logs against the manifest: SR and SPL
/// per corruption plus PRS over the suite. Episodes missing from any log
/// are an error listing their ids; a zero clean baseline propagates as a
/// PRS error with context.
Report evaluate(const Manifest& manifest, const ResultLog& clean,
                const std::map<CorruptionKind, ResultLog>& corrupted,
                const EvalMeta& meta);

/// Report serializations. Both re-derive PRS from the cells and refuse to
/// emit a report that fails the self-check.
std::string report_json(const Report& report);
std::string heatmap_csv(const Report& report);
void write_report_json(const Report& report, const std::filesystem::path& path);
void write_heatmap_csv(const Report& report, const std::filesystem::path& path);

/// Schedule serialization: JSONL, one schedule object per line.
std::string schedules_jsonl(std::span<const mitigation::CorruptionSchedule> schedules);
std::vector<mitigation::CorruptionSchedule> load_schedules_jsonl(
    const std::filesystem::path& path);

struct SanitizeRun {
  Manifest sanitized;
  std::vector<safeguard::SanitizeResult> results;  // one per episode
};

/// Runs the sanitizer exactly once per episode, regardless of frame count.
SanitizeRun sanitize_manifest(const Manifest& manifest,
                              safeguard::ChatBackend& backend,
                              const text::PhraseBank& bank);
SanitizeRun sanitize_manifest(const Manifest& manifest,
                              const safeguard::SanitizerConfig& cfg,
                              const text::PhraseBank& bank);

}  // namespace navtrust::harness
