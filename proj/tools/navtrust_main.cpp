// navtrust command line: corruption runs, metric evaluation, augmentation
// plans, and instruction sanitization over manifest datasets.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "navtrust/harness.hpp"
#include "navtrust/metrics.hpp"
#include "navtrust/version.hpp"

namespace {

using namespace navtrust;

std::vector<CorruptionKind> parse_kinds(const std::string& spec) {
  std::vector<CorruptionKind> kinds;
  const auto add_group = [&](std::span<const CorruptionKind> group) {
    kinds.insert(kinds.end(), group.begin(), group.end());
  };
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const std::string item = spec.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item == "rgb") {
      add_group(kRgbKinds);
    } else if (item == "depth") {
      add_group(kDepthKinds);
    } else if (item == "sensor" || item == "all") {
      add_group(kSensorKinds);
    } else if (item == "instruction") {
      add_group(kInstructionKinds);
    } else if (!item.empty()) {
      kinds.push_back(kind_from_string(item));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (kinds.empty()) {
    throw ValidationError("no corruption kinds selected (use --kinds)");
  }
  return kinds;
}

int run_corrupt_command(const std::string& manifest_path, const std::string& out,
                        const std::string& kinds_spec, double severity,
                        std::uint64_t seed, const std::string& fill,
                        const std::string& style, const std::string& schedule_path,
                        int jobs) {
  const auto manifest = harness::load_manifest(manifest_path);

  harness::CorruptOptions options;
  options.global_seed = seed;
  options.jobs = jobs;
  options.style_variant = text::style_from_string(style);
  if (fill == "invalid-zero") {
    options.missing_fill = depth::MissingFill::InvalidZero;
  } else if (fill == "saturate-max") {
    options.missing_fill = depth::MissingFill::SaturateMax;
  } else {
    throw ValidationError("unknown --fill \"" + fill +
                          "\" (invalid-zero|saturate-max)");
  }

  if (!schedule_path.empty()) {
    const auto schedules = harness::load_schedules_jsonl(schedule_path);
    const auto summary = harness::run_schedules(manifest, schedules, out, options);
    std::cout << "applied " << summary.records.size()
              << " scheduled corruptions under " << out << "\n";
    return 0;
  }

  std::vector<harness::SuiteEntry> suite;
  for (CorruptionKind kind : parse_kinds(kinds_spec)) {
    suite.push_back({kind, severity});
  }
  const auto summary = harness::run_corrupt(manifest, suite, out, options);
  std::cout << "wrote " << summary.records.size() << " corrupted outputs under "
            << out << "\n";
  return 0;
}

int run_eval_command(const std::string& manifest_path, const std::string& clean,
                     const std::vector<std::string>& corrupted_specs,
                     const std::string& out, std::uint64_t seed, double severity) {
  const auto manifest = harness::load_manifest(manifest_path);
  const auto clean_log = harness::load_result_log(clean);

  std::map<CorruptionKind, harness::ResultLog> corrupted;
  for (const auto& spec : corrupted_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("--corrupted expects kind=results.jsonl, got \"" +
                            spec + "\"");
    }
    const CorruptionKind kind = kind_from_string(spec.substr(0, eq));
    if (corrupted.count(kind)) {
      throw ValidationError("duplicate --corrupted entry for " +
                            std::string(to_string(kind)));
    }
    corrupted[kind] = harness::load_result_log(spec.substr(eq + 1));
  }

  const auto report =
      harness::evaluate(manifest, clean_log, corrupted, {seed, severity});

  std::filesystem::create_directories(out);
  harness::write_report_json(report, std::filesystem::path(out) / "report.json");
  harness::write_heatmap_csv(report, std::filesystem::path(out) / "report.csv");
  std::cout << harness::heatmap_csv(report);
  return 0;
}

int run_augment_plan_command(const std::string& manifest_path,
                             const std::string& out, const std::string& mode_name,
                             const std::string& kinds_spec, double clean_prob,
                             double severity, bool high_intensity,
                             const std::string& prior_path, std::uint64_t seed) {
  const auto manifest = harness::load_manifest(manifest_path);
  const auto mode = mitigation::augmentation_mode_from_string(mode_name);
  const auto kinds = parse_kinds(kinds_spec);
  for (CorruptionKind kind : kinds) {
    if (is_instruction(kind)) {
      throw ValidationError("augmentation plans cover sensor corruptions; " +
                            std::string(to_string(kind)) + " is not one");
    }
  }

  mitigation::PriorPerformance prior;
  if (!prior_path.empty()) {
    std::ifstream in(prior_path);
    if (!in) throw IoError("cannot open prior file " + prior_path);
    nlohmann::json parsed;
    try {
      in >> parsed;
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(prior_path + ": not valid JSON: " + e.what());
    }
    for (const auto& [key, value] : parsed.items()) {
      prior[kind_from_string(key)] = value.get<double>();
    }
  }
  if (mode == mitigation::AugmentationMode::DistributedPerEpisode &&
      prior.empty()) {
    throw ValidationError("distributed mode needs --prior <kind->metric json>");
  }

  std::vector<mitigation::CorruptionSchedule> schedules;
  schedules.reserve(manifest.episodes.size());
  for (const auto& ep : manifest.episodes) {
    RandomStream rng = derive_rng({seed, ep.episode_id, 0, "augment_plan"});
    auto schedule = mitigation::sample_schedule(
        mode, kinds, clean_prob, static_cast<int>(ep.rgb_frames.size()),
        Severity{severity}, prior.empty() ? nullptr : &prior, rng, ep.episode_id);
    if (high_intensity) {
      // high-intensity preset: 0.9 on RGB kinds, 0.8 on depth kinds
      for (auto& a : schedule.assignments) {
        if (a.kind) a.severity = is_rgb(*a.kind) ? 0.9 : 0.8;
      }
    }
    schedules.push_back(std::move(schedule));
  }

  const auto text = harness::schedules_jsonl(schedules);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write " + out);
    file << text;
    std::cout << "wrote " << schedules.size() << " schedules to " << out << "\n";
  }
  return 0;
}

int run_sanitize_command(const std::string& manifest_path, const std::string& out,
                         const std::string& endpoint, const std::string& model,
                         const std::string& api_key_env, double timeout,
                         int retries, const std::string& bank_path) {
  const auto manifest = harness::load_manifest(manifest_path);
  const auto bank = bank_path.empty() ? text::PhraseBank::builtin()
                                      : text::PhraseBank::from_file(bank_path);

  safeguard::SanitizerConfig cfg;
  cfg.endpoint_url = endpoint;
  cfg.model_name = model;
  cfg.api_key_env = api_key_env;
  cfg.timeout_seconds = timeout;
  cfg.max_retries = retries;

  const auto run = harness::sanitize_manifest(manifest, cfg, bank);

  std::filesystem::create_directories(out);
  harness::save_manifest(run.sanitized,
                         std::filesystem::path(out) / "manifest.json");
  std::ofstream log(std::filesystem::path(out) / "sanitize.jsonl",
                    std::ios::binary | std::ios::trunc);
  for (std::size_t i = 0; i < run.results.size(); ++i) {
    const auto& r = run.results[i];
    nlohmann::ordered_json line;
    line["episode_id"] = manifest.episodes[i].episode_id;
    line["backend"] = std::string(safeguard::to_string(r.backend));
    line["was_modified"] = r.was_modified;
    line["latency_ms"] = r.latency_ms;
    log << line.dump() << '\n';
  }
  std::cout << "sanitized " << run.results.size() << " episodes into " << out
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NavTrust corruption and evaluation harness"};
  app.set_version_flag("--version", navtrust::kVersion);
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  double severity = 0.5;
  std::string manifest_path, out;

  auto* corrupt = app.add_subcommand(
      "corrupt", "Apply corruption suites to a manifest's frames/instructions");
  std::string kinds_spec = "sensor", fill = "invalid-zero", style = "friendly";
  std::string schedule_path;
  int jobs = 0;
  corrupt->add_option("--manifest", manifest_path, "manifest JSON")->required();
  corrupt->add_option("--out", out, "output directory")->required();
  corrupt->add_option("--kinds", kinds_spec,
                      "comma list of kinds or groups (rgb, depth, sensor, "
                      "instruction, all)");
  corrupt->add_option("--severity", severity, "severity in [0,1] (default 0.5)");
  corrupt->add_option("--seed", seed, "global seed (default 0)");
  corrupt->add_option("--fill", fill,
                      "missing-depth fill: invalid-zero|saturate-max");
  corrupt->add_option("--style-variant", style,
                      "style for style_rewrite (friendly|novice|professional|formal)");
  corrupt->add_option("--schedule", schedule_path,
                      "apply a JSONL augmentation schedule instead of --kinds");
  corrupt->add_option("--jobs", jobs, "worker threads (0 = hardware)");

  auto* eval = app.add_subcommand("eval", "Score result logs into a report");
  std::string clean_path;
  std::vector<std::string> corrupted_specs;
  eval->add_option("--manifest", manifest_path, "manifest JSON")->required();
  eval->add_option("--clean", clean_path, "clean results JSONL")->required();
  eval->add_option("--corrupted", corrupted_specs,
                   "kind=results.jsonl (repeatable)");
  eval->add_option("--out", out, "report output directory")->required();
  eval->add_option("--seed", seed, "seed recorded in the report metadata");
  eval->add_option("--severity", severity, "severity recorded in the metadata");

  auto* plan = app.add_subcommand(
      "augment-plan", "Emit corruption-aware augmentation schedules (JSONL)");
  std::string mode = "per_episode", prior_path;
  double clean_prob = 0.3;
  double plan_severity = 0.6;  // training-time default
  bool high_intensity = false;
  plan->add_option("--manifest", manifest_path, "manifest JSON")->required();
  plan->add_option("--out", out, "output JSONL ('-' for stdout)");
  plan->add_option("--mode", mode, "per_frame|per_episode|distributed");
  plan->add_option("--kinds", kinds_spec, "kinds or groups to sample from");
  plan->add_option("--clean-prob", clean_prob, "per-draw clean probability");
  plan->add_option("--severity", plan_severity,
                   "schedule severity (default 0.6)");
  plan->add_flag("--high-intensity", high_intensity,
                 "preset: severity 0.9 for RGB kinds, 0.8 for depth kinds");
  plan->add_option("--prior", prior_path,
                   "JSON map kind->prior metric, required for distributed mode");
  plan->add_option("--seed", seed, "global seed (default 0)");

  auto* sanitize = app.add_subcommand(
      "sanitize", "Canonicalize manifest instructions via the safeguard backend");
  std::string endpoint, model = "navtrust-sanitizer",
                        api_key_env = "NAVTRUST_API_KEY", bank_path;
  double timeout = 30.0;
  int retries = 2;
  sanitize->add_option("--manifest", manifest_path, "manifest JSON")->required();
  sanitize->add_option("--out", out, "output directory")->required();
  sanitize->add_option("--endpoint", endpoint,
                       "chat-completions URL (empty = offline fallback)");
  sanitize->add_option("--model", model, "model name sent to the endpoint");
  sanitize->add_option("--api-key-env", api_key_env,
                       "environment variable holding the bearer token");
  sanitize->add_option("--timeout", timeout, "request timeout in seconds");
  sanitize->add_option("--retries", retries, "retry count before falling back");
  sanitize->add_option("--phrase-bank", bank_path,
                       "phrase bank file overriding the builtin bank");

  CLI11_PARSE(app, argc, argv);

  try {
    if (corrupt->parsed()) {
      return run_corrupt_command(manifest_path, out, kinds_spec, severity, seed,
                                 fill, style, schedule_path, jobs);
    }
    if (eval->parsed()) {
      return run_eval_command(manifest_path, clean_path, corrupted_specs, out,
                              seed, severity);
    }
    if (plan->parsed()) {
      return run_augment_plan_command(manifest_path, out, mode, kinds_spec,
                                      clean_prob, plan_severity, high_intensity,
                                      prior_path, seed);
    }
    if (sanitize->parsed()) {
      return run_sanitize_command(manifest_path, out, endpoint, model,
                                  api_key_env, timeout, retries, bank_path);
    }
  } catch (const navtrust::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const navtrust::Error& e) {  // IoError, RemoteError
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
