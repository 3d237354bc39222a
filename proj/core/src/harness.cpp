#include "navtrust/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "navtrust/frame_io.hpp"
#include "navtrust/metrics.hpp"
#include "navtrust/rgb_corrupt.hpp"
#include "navtrust/version.hpp"

namespace navtrust::harness {

namespace {

using ordered_json = nlohmann::ordered_json;

// Runs fn(0..count) on up to `jobs` threads; rethrows the first failure.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
  }
  const int workers = static_cast<int>(
      std::min<std::size_t>(count, static_cast<std::size_t>(jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);  // drain remaining work
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string frame_name(std::int64_t index, const std::filesystem::path& source) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%06lld", static_cast<long long>(index));
  return buffer + source.extension().string();
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

Instruction corrupt_instruction(const Instruction& instr, CorruptionKind kind,
                                double severity, const SeedPath& path,
                                const text::PhraseBank& bank,
                                const CorruptOptions& options,
                                text::TextRewriter& rewriter) {
  RandomStream rng = derive_rng(path);
  switch (kind) {
    case CorruptionKind::StyleRewrite:
      return text::style_rewrite(instr, options.style_variant, rewriter);
    case CorruptionKind::Capitalize:
      return text::capitalize_salient(instr);
    case CorruptionKind::Mask:
      return text::mask_tokens(instr, severity, rng);
    case CorruptionKind::BlackBoxPrompt:
      return text::inject_black_box(instr, bank, rng);
    case CorruptionKind::WhiteBoxPrompt:
      return text::inject_white_box(instr, bank, rng);
    default:
      throw ValidationError("not an instruction corruption: " +
                            std::string(to_string(kind)));
  }
}

struct FrameTask {
  CorruptionKind kind;
  double severity;
  const ManifestEpisode* episode;
  std::int64_t frame_index;
  std::filesystem::path source;
  std::filesystem::path destination;
  std::string relative_output;
};

void run_frame_task(const FrameTask& task, const CorruptOptions& options) {
  const SeedPath seed{options.global_seed, task.episode->episode_id,
                      task.frame_index, std::string(to_string(task.kind))};
  RandomStream rng = derive_rng(seed);
  const Severity severity{task.severity};
  if (is_rgb(task.kind)) {
    const RgbFrame frame = io::load_rgb_png(task.source);
    io::save_rgb_png(rgb::apply(task.kind, frame, severity, rng),
                     task.destination);
  } else {
    const DepthFrame frame = io::load_depth(
        task.source, static_cast<float>(task.episode->depth_valid_max));
    io::save_depth(
        depth::apply(task.kind, frame, severity, rng, options.missing_fill),
        task.destination);
  }
}

void write_summary(const CorruptSummary& summary,
                   const std::filesystem::path& out_dir) {
  ordered_json root;
  root["schema"] = "navtrust-corrupt-summary/1";
  root["tool_version"] = kVersion;
  root["global_seed"] = summary.global_seed;
  auto& records = root["records"] = ordered_json::array();
  for (const auto& r : summary.records) {
    ordered_json item;
    item["kind"] = std::string(to_string(r.kind));
    item["episode_id"] = r.episode_id;
    item["frame_index"] = r.frame_index;
    item["op_name"] = r.op_name;
    item["severity"] = r.severity;
    item["output"] = r.output;
    records.push_back(std::move(item));
  }
  std::ofstream out(out_dir / "summary.json", std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + (out_dir / "summary.json").string());
  out << root.dump(2) << '\n';
}

std::vector<metrics::EpisodeRecord> score_log(const Manifest& manifest,
                                              const ResultLog& log,
                                              const std::string& label) {
  std::map<std::string, const ResultEntry*> by_id;
  for (const auto& entry : log) {
    if (!by_id.emplace(entry.episode_id, &entry).second) {
      throw ValidationError(label + ": duplicate result for episode " +
                            entry.episode_id);
    }
    if (manifest.find(entry.episode_id) == nullptr) {
      throw ValidationError(label + ": result for unknown episode " +
                            entry.episode_id);
    }
  }

  std::vector<std::string> missing;
  std::vector<metrics::EpisodeRecord> records;
  records.reserve(manifest.episodes.size());
  for (const auto& ep : manifest.episodes) {
    const auto it = by_id.find(ep.episode_id);
    if (it == by_id.end()) {
      missing.push_back(ep.episode_id);
      continue;
    }
    const ResultEntry& entry = *it->second;
    bool success = false;
    if (entry.success.has_value()) {
      success = *entry.success;
    } else {
      // derived outcome: goal reached if the final position is in radius
      success = distance(*entry.final_position, ep.goal_position) <=
                ep.success_radius;
    }
    records.push_back(
        {ep.episode_id, success, entry.path_length, ep.geodesic_length});
  }
  if (!missing.empty()) {
    std::string joined;
    for (const auto& id : missing) {
      joined += ' ';
      joined += id;
    }
    throw ValidationError(label + ": missing results for episodes:" + joined);
  }
  return records;
}

std::string format_cell(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", v);
  return buffer;
}

// Re-derives both PRS rows from the cells; a mismatch means the report was
// assembled inconsistently.
void self_check(const Report& report) {
  if (report.corrupted.empty()) {
    if (report.prs_sr || report.prs_spl) {
      throw Error("report has PRS values but no corrupted cells");
    }
    return;
  }
  metrics::MetricSeries sr{"report", metrics::MetricName::SR, report.clean.sr, {}};
  metrics::MetricSeries spl{"report", metrics::MetricName::SPL, report.clean.spl, {}};
  for (const auto& [kind, cell] : report.corrupted) {
    sr.corrupted[kind] = cell.sr;
    spl.corrupted[kind] = cell.spl;
  }
  if (!report.prs_sr || !report.prs_spl ||
      std::fabs(metrics::prs(sr).value - *report.prs_sr) > 1e-12 ||
      std::fabs(metrics::prs(spl).value - *report.prs_spl) > 1e-12) {
    throw Error("report PRS values do not match their cells");
  }
}

}  // namespace

CorruptSummary run_corrupt(const Manifest& manifest,
                           std::span<const SuiteEntry> suite,
                           const std::filesystem::path& out_dir,
                           const CorruptOptions& options) {
  // applicability checks before any file is written
  for (const SuiteEntry& entry : suite) {
    Severity{entry.severity};  // range check
    if (is_depth(entry.kind)) {
      for (const auto& ep : manifest.episodes) {
        if (ep.depth_frames.empty()) {
          throw ValidationError(
              "depth corruption " + std::string(to_string(entry.kind)) +
              " requested, but episode " + ep.episode_id + " has no depth frames");
        }
      }
    }
    if (entry.kind == CorruptionKind::WhiteBoxPrompt) {
      for (const auto& ep : manifest.episodes) {
        if (!ep.instruction.system_prompt.has_value()) {
          throw ValidationError("white-box injection requested, but episode " +
                                ep.episode_id + " has no system prompt");
        }
      }
    }
  }

  ensure_dir(out_dir);
  text::TemplateRewriter template_rewriter;
  text::TextRewriter& rewriter =
      options.rewriter ? *options.rewriter : template_rewriter;
  const text::PhraseBank bank = text::PhraseBank::builtin();

  CorruptSummary summary;
  summary.global_seed = options.global_seed;
  std::vector<FrameTask> tasks;

  for (const SuiteEntry& entry : suite) {
    const auto kind_name = std::string(to_string(entry.kind));
    if (is_instruction(entry.kind)) {
      // one corrupted manifest copy per instruction kind
      Manifest corrupted = manifest;
      for (auto& ep : corrupted.episodes) {
        const SeedPath seed{options.global_seed, ep.episode_id, 0, kind_name};
        ep.instruction =
            corrupt_instruction(ep.instruction, entry.kind, entry.severity, seed,
                                bank, options, rewriter);
        summary.records.push_back({entry.kind, ep.episode_id, 0, kind_name,
                                   entry.severity, kind_name + "/manifest.json"});
      }
      ensure_dir(out_dir / kind_name);
      save_manifest(corrupted, out_dir / kind_name / "manifest.json");
      continue;
    }

    for (const auto& ep : manifest.episodes) {
      const auto& frames = is_rgb(entry.kind) ? ep.rgb_frames : ep.depth_frames;
      const auto episode_dir = out_dir / kind_name / ep.episode_id;
      ensure_dir(episode_dir);
      for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto index = static_cast<std::int64_t>(i);
        const std::string name = frame_name(index, frames[i]);
        const std::string relative = kind_name + "/" + ep.episode_id + "/" + name;
        tasks.push_back({entry.kind, entry.severity, &ep, index, frames[i],
                         episode_dir / name, relative});
        summary.records.push_back({entry.kind, ep.episode_id, index, kind_name,
                                   entry.severity, relative});
      }
    }
  }

  parallel_for(tasks.size(), options.jobs,
               [&](std::size_t i) { run_frame_task(tasks[i], options); });

  write_summary(summary, out_dir);
  return summary;
}

CorruptSummary run_schedules(
    const Manifest& manifest,
    std::span<const mitigation::CorruptionSchedule> schedules,
    const std::filesystem::path& out_dir, const CorruptOptions& options) {
  CorruptSummary summary;
  summary.global_seed = options.global_seed;
  std::vector<FrameTask> tasks;
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> copies;

  for (const auto& schedule : schedules) {
    const ManifestEpisode* ep = manifest.find(schedule.episode_id);
    if (ep == nullptr) {
      throw ValidationError("schedule references unknown episode " +
                            schedule.episode_id);
    }
    if (schedule.assignments.size() > ep->rgb_frames.size()) {
      throw ValidationError("schedule for " + schedule.episode_id + " has " +
                            std::to_string(schedule.assignments.size()) +
                            " assignments but the episode has " +
                            std::to_string(ep->rgb_frames.size()) + " frames");
    }
    const auto episode_dir = out_dir / "scheduled" / ep->episode_id;
    ensure_dir(episode_dir / "rgb");
    if (!ep->depth_frames.empty()) ensure_dir(episode_dir / "depth");

    for (const auto& assignment : schedule.assignments) {
      if (assignment.frame_index < 0 ||
          static_cast<std::size_t>(assignment.frame_index) >=
              ep->rgb_frames.size()) {
        throw ValidationError("schedule for " + schedule.episode_id +
                              " assigns frame " +
                              std::to_string(assignment.frame_index) +
                              " but the episode has " +
                              std::to_string(ep->rgb_frames.size()) + " frames");
      }
      const auto i = static_cast<std::size_t>(assignment.frame_index);
      const auto rgb_name = frame_name(assignment.frame_index, ep->rgb_frames[i]);
      const auto rgb_out = episode_dir / "rgb" / rgb_name;
      std::filesystem::path depth_out;
      if (!ep->depth_frames.empty()) {
        depth_out = episode_dir / "depth" /
                    frame_name(assignment.frame_index, ep->depth_frames[i]);
      }

      if (!assignment.kind.has_value()) {  // clean frame: straight copies
        copies.emplace_back(ep->rgb_frames[i], rgb_out);
        if (!depth_out.empty()) copies.emplace_back(ep->depth_frames[i], depth_out);
        continue;
      }
      const CorruptionKind kind = *assignment.kind;
      if (is_instruction(kind)) {
        throw ValidationError("schedules apply to frames; instruction kind " +
                              std::string(to_string(kind)) + " is not allowed");
      }
      if (is_depth(kind) && ep->depth_frames.empty()) {
        throw ValidationError("schedule assigns " + std::string(to_string(kind)) +
                              " but episode " + ep->episode_id +
                              " has no depth frames");
      }
      const std::string kind_name(to_string(kind));
      if (is_rgb(kind)) {
        tasks.push_back({kind, assignment.severity, ep, assignment.frame_index,
                         ep->rgb_frames[i], rgb_out, ""});
        if (!depth_out.empty()) copies.emplace_back(ep->depth_frames[i], depth_out);
      } else {
        tasks.push_back({kind, assignment.severity, ep, assignment.frame_index,
                         ep->depth_frames[i], depth_out, ""});
        copies.emplace_back(ep->rgb_frames[i], rgb_out);
      }
      summary.records.push_back(
          {kind, ep->episode_id, assignment.frame_index, kind_name,
           assignment.severity,
           (std::filesystem::path("scheduled") / ep->episode_id /
            (is_rgb(kind) ? "rgb" : "depth") /
            frame_name(assignment.frame_index,
                       is_rgb(kind) ? ep->rgb_frames[i] : ep->depth_frames[i]))
               .string()});
    }
  }

  for (const auto& [from, to] : copies) {
    std::error_code ec;
    std::filesystem::copy_file(
        from, to, std::filesystem::copy_options::overwrite_existing, ec);
    if (ec) {
      throw IoError("cannot copy " + from.string() + " to " + to.string() + ": " +
                    ec.message());
    }
  }
  parallel_for(tasks.size(), options.jobs,
               [&](std::size_t i) { run_frame_task(tasks[i], options); });

  write_summary(summary, out_dir);
  return summary;
}

Report evaluate(const Manifest& manifest, const ResultLog& clean,
                const std::map<CorruptionKind, ResultLog>& corrupted,
                const EvalMeta& meta) {
  Report report;
  report.meta = meta;
  report.tool_version = kVersion;

  const auto clean_records = score_log(manifest, clean, "clean results");
  report.clean = {metrics::success_rate(clean_records), metrics::spl(clean_records)};

  metrics::MetricSeries sr{"report", metrics::MetricName::SR, report.clean.sr, {}};
  metrics::MetricSeries spl{"report", metrics::MetricName::SPL, report.clean.spl, {}};
  for (const auto& [kind, log] : corrupted) {
    const auto records =
        score_log(manifest, log, std::string(to_string(kind)) + " results");
    const MetricCell cell{metrics::success_rate(records), metrics::spl(records)};
    report.corrupted.emplace_back(kind, cell);
    sr.corrupted[kind] = cell.sr;
    spl.corrupted[kind] = cell.spl;
  }

  if (!report.corrupted.empty()) {
    try {
      const auto prs_sr = metrics::prs(sr);
      report.prs_sr = prs_sr.value;
      report.prs_sr_over_unity = prs_sr.over_unity;
      const auto prs_spl = metrics::prs(spl);
      report.prs_spl = prs_spl.value;
      report.prs_spl_over_unity = prs_spl.over_unity;
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("cannot compute PRS for this report: ") +
                            e.what());
    }
  }
  return report;
}

std::string report_json(const Report& report) {
  self_check(report);
  ordered_json root;
  root["schema"] = "navtrust-report/1";
  root["metadata"] = {{"global_seed", report.meta.global_seed},
                      {"severity", report.meta.severity},
                      {"tool_version", report.tool_version}};
  root["clean"] = {{"SR", report.clean.sr}, {"SPL", report.clean.spl}};
  auto& corrupted = root["corruptions"] = ordered_json::object();
  for (const auto& [kind, cell] : report.corrupted) {
    corrupted[std::string(to_string(kind))] = {{"SR", cell.sr},
                                               {"SPL", cell.spl}};
  }
  if (report.prs_sr) {
    root["prs"] = {{"SR", *report.prs_sr},
                   {"SPL", *report.prs_spl},
                   {"sr_over_unity", report.prs_sr_over_unity},
                   {"spl_over_unity", report.prs_spl_over_unity}};
  }
  return root.dump(2) + "\n";
}

std::string heatmap_csv(const Report& report) {
  self_check(report);
  std::string csv = "corruption,SR,SPL\n";
  csv += "clean," + format_cell(report.clean.sr) + "," +
         format_cell(report.clean.spl) + "\n";
  for (const auto& [kind, cell] : report.corrupted) {
    csv += std::string(to_string(kind)) + "," + format_cell(cell.sr) + "," +
           format_cell(cell.spl) + "\n";
  }
  if (report.prs_sr) {
    csv += "PRS-SR," + format_cell(*report.prs_sr) + ",\n";
    csv += "PRS-SPL,," + format_cell(*report.prs_spl) + "\n";
  }
  return csv;
}

void write_report_json(const Report& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report " + path.string());
  out << report_json(report);
  if (!out) throw IoError("cannot write report " + path.string());
}

void write_heatmap_csv(const Report& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write CSV " + path.string());
  out << heatmap_csv(report);
  if (!out) throw IoError("cannot write CSV " + path.string());
}

std::string schedules_jsonl(
    std::span<const mitigation::CorruptionSchedule> schedules) {
  std::string out;
  for (const auto& schedule : schedules) {
    ordered_json line;
    line["episode_id"] = schedule.episode_id;
    auto& assignments = line["assignments"] = ordered_json::array();
    for (const auto& a : schedule.assignments) {
      ordered_json item;
      item["frame"] = a.frame_index;
      item["kind"] = a.kind ? std::string(to_string(*a.kind)) : "clean";
      item["severity"] = a.severity;
      assignments.push_back(std::move(item));
    }
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::vector<mitigation::CorruptionSchedule> load_schedules_jsonl(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open schedule file " + path.string());
  std::vector<mitigation::CorruptionSchedule> schedules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json parsed;
    try {
      parsed = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": not valid JSON: " + e.what());
    }
    mitigation::CorruptionSchedule schedule;
    schedule.episode_id = parsed.at("episode_id").get<std::string>();
    for (const auto& item : parsed.at("assignments")) {
      mitigation::Assignment a;
      a.frame_index = item.at("frame").get<int>();
      if (a.frame_index != static_cast<int>(schedule.assignments.size())) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                              ": frame indices must be contiguous from 0");
      }
      const auto kind = item.at("kind").get<std::string>();
      if (kind != "clean") a.kind = kind_from_string(kind);
      a.severity = item.at("severity").get<double>();
      Severity{a.severity};  // range check
      schedule.assignments.push_back(a);
    }
    schedules.push_back(std::move(schedule));
  }
  return schedules;
}

SanitizeRun sanitize_manifest(const Manifest& manifest,
                              safeguard::ChatBackend& backend,
                              const text::PhraseBank& bank) {
  SanitizeRun run;
  run.sanitized = manifest;
  run.results.reserve(manifest.episodes.size());
  for (auto& ep : run.sanitized.episodes) {
    // exactly one sanitizer call per episode, never per frame
    auto result = safeguard::sanitize_with_backend(ep.instruction, backend, bank);
    ep.instruction.text = result.text;
    run.results.push_back(std::move(result));
  }
  return run;
}

SanitizeRun sanitize_manifest(const Manifest& manifest,
                              const safeguard::SanitizerConfig& cfg,
                              const text::PhraseBank& bank) {
  safeguard::HttpChatBackend backend(cfg);
  return sanitize_manifest(manifest, backend, bank);
}

}  // namespace navtrust::harness
