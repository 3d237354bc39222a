#include <doctest.h>

#include <fstream>
#include <set>

#include "fixtures.hpp"
#include "navtrust/frame_io.hpp"
#include "navtrust/harness.hpp"

using namespace navtrust;
using namespace navtrust::harness;

namespace {

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Three-episode fixture with two frames per episode, optionally with depth.
std::filesystem::path write_fixture(const std::filesystem::path& dir,
                                    bool with_depth) {
  std::string episodes;
  for (int e = 1; e <= 3; ++e) {
    const std::string id = "ep-" + std::to_string(e);
    std::filesystem::create_directories(dir / "frames" / id);
    std::string rgb_list, depth_list;
    for (int f = 0; f < 2; ++f) {
      auto frame = navtest::photo_fixture(32, 24);
      frame.at(0, 0, 0) = static_cast<std::uint8_t>(10 * e + f);  // distinct
      const std::string rgb_rel =
          "frames/" + id + "/rgb_" + std::to_string(f) + ".png";
      io::save_rgb_png(frame, dir / rgb_rel);
      rgb_list += (f ? "," : "") + std::string("\"") + rgb_rel + "\"";
      if (with_depth) {
        DepthFrame depth_frame(32, 24, 10.0f);
        for (int y = 0; y < 24; ++y) {
          for (int x = 0; x < 32; ++x) {
            depth_frame.at(x, y) = x < 16 ? 1.0f : 3.0f;
          }
        }
        const std::string depth_rel =
            "frames/" + id + "/depth_" + std::to_string(f) + ".png";
        io::save_depth(depth_frame, dir / depth_rel);
        depth_list += (f ? "," : "") + std::string("\"") + depth_rel + "\"";
      }
    }
    const double geodesic = e == 3 ? 8.0 : 10.0;
    episodes += std::string(e > 1 ? "," : "") + R"({
      "episode_id": ")" + id + R"(",
      "instruction": {"text": "walk to the kitchen door", "language_tag": "en-US",
                      "system_prompt": "You are a navigation agent. {{INJECT}}"},
      "rgb_frames": [)" + rgb_list + "]" +
        (with_depth ? ", \"depth_frames\": [" + depth_list + "]" : "") + R"(,
      "start_position": [0, 0, 0],
      "goal_position": [10, 0, 0],
      "geodesic_length": )" + std::to_string(geodesic) + R"(
    })";
  }
  const std::string manifest = R"({
    "schema": "navtrust-manifest/1",
    "dataset_name": "fixture",
    "episodes": [)" + episodes + R"(]
  })";
  const auto path = dir / "manifest.json";
  std::ofstream(path) << manifest;
  return path;
}

ResultLog fixture_clean_results() {
  // ep-1: at the goal; ep-2: inside the 3 m radius; ep-3: far away
  return {
      {"ep-1", Vec3{10, 0, 0}, 10.0, std::nullopt},
      {"ep-2", Vec3{8, 0, 2}, 12.0, std::nullopt},
      {"ep-3", Vec3{0, 0, 0}, 6.0, std::nullopt},
  };
}

ResultLog fixture_corrupted_results() {
  // ep-1 still succeeds but wanders; the explicit flag on ep-3 exercises
  // the non-derived path
  return {
      {"ep-1", Vec3{11, 1, 1}, 20.0, std::nullopt},
      {"ep-2", Vec3{5, 0, 0}, 9.0, std::nullopt},
      {"ep-3", std::nullopt, 4.0, false},
  };
}

}  // namespace

TEST_CASE("manifest fixture loads and validates") {
  navtest::TempDir dir;
  const auto path = write_fixture(dir.path(), true);
  const auto manifest = load_manifest(path);
  CHECK(manifest.dataset_name == "fixture");
  REQUIRE(manifest.episodes.size() == 3);
  CHECK(manifest.episodes[0].episode_id == "ep-1");
  CHECK(manifest.episodes[0].geodesic_length == 10.0);
  CHECK(manifest.episodes[0].success_radius == 3.0);  // default
  CHECK(manifest.episodes[0].rgb_frames.size() == 2);
  CHECK(manifest.episodes[0].depth_frames.size() == 2);
  CHECK(std::filesystem::exists(manifest.episodes[0].rgb_frames[0]));
}

TEST_CASE("a minimal one-episode manifest parses") {
  const char* minimal = R"({
    "schema": "navtrust-manifest/1", "dataset_name": "minimal",
    "episodes": [
      {"episode_id": "only", "instruction": {"text": "go"},
       "rgb_frames": ["f.png"], "start_position": [0,0,0],
       "goal_position": [5,0,0], "geodesic_length": 5.0}
    ]})";
  const auto manifest = parse_manifest_json(minimal, "minimal");
  REQUIRE(manifest.episodes.size() == 1);
  CHECK(manifest.episodes[0].geodesic_length == 5.0);
  CHECK(manifest.episodes[0].instruction.language_tag == "en-US");
  CHECK(!manifest.episodes[0].instruction.system_prompt.has_value());
}

TEST_CASE("manifest validation names the offending JSON pointer") {
  const char* duplicate = R"({
    "schema": "navtrust-manifest/1", "dataset_name": "d",
    "episodes": [
      {"episode_id": "a", "instruction": {"text": "go"}, "rgb_frames": ["f.png"],
       "start_position": [0,0,0], "goal_position": [1,0,0], "geodesic_length": 1},
      {"episode_id": "a", "instruction": {"text": "go"}, "rgb_frames": ["f.png"],
       "start_position": [0,0,0], "goal_position": [1,0,0], "geodesic_length": 1}
    ]})";
  CHECK_THROWS_WITH_AS(parse_manifest_json(duplicate, "m"),
                       doctest::Contains("/episodes/1/episode_id"),
                       ValidationError);

  const char* mismatch = R"({
    "schema": "navtrust-manifest/1", "dataset_name": "d",
    "episodes": [
      {"episode_id": "a", "instruction": {"text": "go"},
       "rgb_frames": ["f.png", "g.png"], "depth_frames": ["d.png"],
       "start_position": [0,0,0], "goal_position": [1,0,0], "geodesic_length": 1}
    ]})";
  CHECK_THROWS_WITH_AS(parse_manifest_json(mismatch, "m"),
                       doctest::Contains("/episodes/0/depth_frames"),
                       ValidationError);

  const char* bad_geodesic = R"({
    "schema": "navtrust-manifest/1", "dataset_name": "d",
    "episodes": [
      {"episode_id": "a", "instruction": {"text": "go"}, "rgb_frames": ["f.png"],
       "start_position": [0,0,0], "goal_position": [1,0,0], "geodesic_length": 0}
    ]})";
  CHECK_THROWS_WITH_AS(parse_manifest_json(bad_geodesic, "m"),
                       doctest::Contains("/episodes/0/geodesic_length"),
                       ValidationError);

  CHECK_THROWS_WITH_AS(
      parse_manifest_json(R"({"schema": "other/9", "dataset_name": "d",
                              "episodes": []})",
                          "m"),
      doctest::Contains("/schema"), ValidationError);
}

TEST_CASE("missing frame files are reported with their paths") {
  navtest::TempDir dir;
  const auto path = write_fixture(dir.path(), false);
  std::filesystem::remove(dir.path() / "frames/ep-2/rgb_1.png");
  CHECK_THROWS_WITH_AS(load_manifest(path), doctest::Contains("rgb_1.png"),
                       ValidationError);
}

TEST_CASE("black-out at severity 0 copies inputs byte-for-byte") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), false));
  const SuiteEntry suite[] = {{CorruptionKind::BlackOut, 0.0}};
  run_corrupt(manifest, suite, dir.path() / "out", {});
  for (const auto& ep : manifest.episodes) {
    for (std::size_t f = 0; f < ep.rgb_frames.size(); ++f) {
      const auto out = dir.path() / "out" / "black_out" / ep.episode_id /
                       (std::string("00000") + std::to_string(f) + ".png");
      CHECK(read_bytes(out) == read_bytes(ep.rgb_frames[f]));
    }
  }
}

TEST_CASE("corrupt runs are byte-identical across invocations and jobs") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), true));
  const std::vector<SuiteEntry> suite = {{CorruptionKind::LowLightNoise, 0.5},
                                         {CorruptionKind::DepthMissing, 0.5},
                                         {CorruptionKind::Mask, 0.5}};
  CorruptOptions serial;
  serial.jobs = 1;
  CorruptOptions parallel;
  parallel.jobs = 4;
  run_corrupt(manifest, suite, dir.path() / "run1", serial);
  run_corrupt(manifest, suite, dir.path() / "run2", parallel);

  std::size_t compared = 0;
  for (auto it = std::filesystem::recursive_directory_iterator(dir.path() / "run1");
       it != std::filesystem::recursive_directory_iterator(); ++it) {
    if (!it->is_regular_file()) continue;
    const auto relative = std::filesystem::relative(it->path(), dir.path() / "run1");
    CHECK(read_bytes(it->path()) == read_bytes(dir.path() / "run2" / relative));
    ++compared;
  }
  // 2 sensor kinds * 3 episodes * 2 frames + corrupted manifest + 2 summaries/1
  CHECK(compared >= 14);
}

TEST_CASE("a full rgb suite produces every episode directory") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), false));
  std::vector<SuiteEntry> suite;
  for (CorruptionKind kind : kRgbKinds) suite.push_back({kind, 0.5});
  const auto summary = run_corrupt(manifest, suite, dir.path() / "out", {});

  CHECK(summary.records.size() == 8 * 3 * 2);
  for (CorruptionKind kind : kRgbKinds) {
    for (const auto& ep : manifest.episodes) {
      const auto episode_dir =
          dir.path() / "out" / std::string(to_string(kind)) / ep.episode_id;
      REQUIRE(std::filesystem::is_directory(episode_dir));
      std::size_t frames = 0;
      for (const auto& entry : std::filesystem::directory_iterator(episode_dir)) {
        if (entry.is_regular_file()) ++frames;
      }
      CHECK(frames == ep.rgb_frames.size());
    }
  }
  CHECK(std::filesystem::exists(dir.path() / "out" / "summary.json"));
}

TEST_CASE("depth corruption on an rgb-only manifest is rejected") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), false));
  const SuiteEntry suite[] = {{CorruptionKind::DepthGaussian, 0.5}};
  CHECK_THROWS_WITH_AS(run_corrupt(manifest, suite, dir.path() / "out", {}),
                       doctest::Contains("no depth frames"), ValidationError);
}

TEST_CASE("white-box injection needs system prompts across the manifest") {
  navtest::TempDir dir;
  auto manifest = load_manifest(write_fixture(dir.path(), false));
  manifest.episodes[1].instruction.system_prompt.reset();
  const SuiteEntry suite[] = {{CorruptionKind::WhiteBoxPrompt, 0.5}};
  CHECK_THROWS_WITH_AS(run_corrupt(manifest, suite, dir.path() / "out", {}),
                       doctest::Contains("ep-2"), ValidationError);
}

TEST_CASE("instruction corruption writes a corrupted manifest copy") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), false));
  const SuiteEntry suite[] = {{CorruptionKind::Mask, 0.5},
                             {CorruptionKind::BlackBoxPrompt, 0.5}};
  run_corrupt(manifest, suite, dir.path() / "out", {});

  const auto masked =
      load_manifest(dir.path() / "out" / "mask" / "manifest.json");
  for (const auto& ep : masked.episodes) {
    CHECK(ep.instruction.text.find("[MASK]") != std::string::npos);
  }

  const auto injected =
      load_manifest(dir.path() / "out" / "black_box_prompt" / "manifest.json");
  for (std::size_t e = 0; e < injected.episodes.size(); ++e) {
    const auto& original = manifest.episodes[e].instruction.text;
    const auto& corrupted = injected.episodes[e].instruction.text;
    REQUIRE(corrupted.size() > original.size());
    CHECK(corrupted.substr(corrupted.size() - original.size()) == original);
  }
}

TEST_CASE("df32 depth frames flow through corruption runs") {
  navtest::TempDir dir;
  std::filesystem::create_directories(dir.path() / "frames");
  io::save_rgb_png(navtest::photo_fixture(16, 12), dir.path() / "frames/rgb.png");
  auto depth_frame = DepthFrame::filled(16, 12, 2.37f, 10.0f);
  io::save_depth(depth_frame, dir.path() / "frames/depth.df32");
  std::ofstream(dir.path() / "manifest.json") << R"({
    "schema": "navtrust-manifest/1", "dataset_name": "df32",
    "episodes": [
      {"episode_id": "ep-1", "instruction": {"text": "go"},
       "rgb_frames": ["frames/rgb.png"], "depth_frames": ["frames/depth.df32"],
       "start_position": [0,0,0], "goal_position": [1,0,0],
       "geodesic_length": 1.0}
    ]})";
  const auto manifest = load_manifest(dir.path() / "manifest.json");

  const SuiteEntry suite[] = {{CorruptionKind::DepthQuantization, 1.0}};
  run_corrupt(manifest, suite, dir.path() / "out", {});

  const auto out_path =
      dir.path() / "out" / "depth_quantization" / "ep-1" / "000000.df32";
  REQUIRE(std::filesystem::exists(out_path));  // extension preserved
  const auto out = io::load_depth(out_path, 10.0f);
  CHECK(out.at(0, 0) == doctest::Approx(10.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("evaluate reproduces the hand-computed three-episode report") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), false));

  std::map<CorruptionKind, ResultLog> corrupted;
  corrupted[CorruptionKind::DepthQuantization] = fixture_corrupted_results();
  const auto report =
      evaluate(manifest, fixture_clean_results(), corrupted, {0, 0.5});

  CHECK(report.clean.sr == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(report.clean.spl == doctest::Approx(11.0 / 18.0).epsilon(1e-12));
  REQUIRE(report.corrupted.size() == 1);
  CHECK(report.corrupted[0].second.sr == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(report.corrupted[0].second.spl == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  REQUIRE(report.prs_sr.has_value());
  CHECK(*report.prs_sr == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(*report.prs_spl == doctest::Approx(3.0 / 11.0).epsilon(1e-12));

  SUBCASE("csv layout is pinned") {
    CHECK(heatmap_csv(report) ==
          "corruption,SR,SPL\n"
          "clean,0.6667,0.6111\n"
          "depth_quantization,0.3333,0.1667\n"
          "PRS-SR,0.5000,\n"
          "PRS-SPL,,0.2727\n");
  }

  SUBCASE("emission is byte-stable") {
    write_heatmap_csv(report, dir.path() / "a.csv");
    write_heatmap_csv(report, dir.path() / "b.csv");
    CHECK(read_bytes(dir.path() / "a.csv") == read_bytes(dir.path() / "b.csv"));
    write_report_json(report, dir.path() / "a.json");
    write_report_json(report, dir.path() / "b.json");
    CHECK(read_bytes(dir.path() / "a.json") == read_bytes(dir.path() / "b.json"));
  }
}

TEST_CASE("evaluate endpoints: identical logs give PRS 1, all-fail gives 0") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), false));
  const auto clean = fixture_clean_results();

  std::map<CorruptionKind, ResultLog> same;
  same[CorruptionKind::Flare] = clean;
  const auto perfect = evaluate(manifest, clean, same, {});
  CHECK(*perfect.prs_sr == 1.0);
  CHECK(*perfect.prs_spl == 1.0);

  std::map<CorruptionKind, ResultLog> failed;
  failed[CorruptionKind::Flare] = {{"ep-1", Vec3{0, 0, 0}, 1.0, std::nullopt},
                                   {"ep-2", Vec3{0, 0, 0}, 1.0, std::nullopt},
                                   {"ep-3", std::nullopt, 1.0, false}};
  const auto zero = evaluate(manifest, clean, failed, {});
  CHECK(*zero.prs_sr == 0.0);
  CHECK(*zero.prs_spl == 0.0);
}

TEST_CASE("evaluate lists missing episodes and propagates PRS context") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), false));

  ResultLog incomplete = fixture_clean_results();
  incomplete.pop_back();
  CHECK_THROWS_WITH_AS(evaluate(manifest, incomplete, {}, {}),
                       doctest::Contains("ep-3"), ValidationError);

  // all clean episodes fail: the PRS denominator is zero
  ResultLog all_fail = {{"ep-1", std::nullopt, 1.0, false},
                        {"ep-2", std::nullopt, 1.0, false},
                        {"ep-3", std::nullopt, 1.0, false}};
  std::map<CorruptionKind, ResultLog> corrupted;
  corrupted[CorruptionKind::Flare] = fixture_corrupted_results();
  CHECK_THROWS_WITH_AS(evaluate(manifest, all_fail, corrupted, {}),
                       doctest::Contains("PRS"), ValidationError);
}

TEST_CASE("a report without corrupted cells has no PRS footer") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), false));
  const auto report = evaluate(manifest, fixture_clean_results(), {}, {});
  CHECK(heatmap_csv(report) ==
        "corruption,SR,SPL\n"
        "clean,0.6667,0.6111\n");
}

TEST_CASE("result logs round-trip through JSONL") {
  navtest::TempDir dir;
  const auto log = fixture_clean_results();
  save_result_log(log, dir.path() / "results.jsonl");
  const auto loaded = load_result_log(dir.path() / "results.jsonl");
  REQUIRE(loaded.size() == log.size());
  for (std::size_t i = 0; i < log.size(); ++i) {
    CHECK(loaded[i].episode_id == log[i].episode_id);
    CHECK(loaded[i].path_length == log[i].path_length);
    CHECK(loaded[i].final_position.has_value() ==
          log[i].final_position.has_value());
  }
  CHECK_THROWS_AS(load_result_log(dir.path() / "absent.jsonl"), IoError);
}

TEST_CASE("schedules serialize to JSONL and back") {
  navtest::TempDir dir;
  std::vector<mitigation::CorruptionSchedule> schedules;
  for (int e = 0; e < 3; ++e) {
    auto rng = derive_rng({0, "ep-" + std::to_string(e), 0, "augment"});
    const std::vector<CorruptionKind> kinds = {CorruptionKind::MotionBlur,
                                               CorruptionKind::Spatter};
    schedules.push_back(
        mitigation::sample_schedule(mitigation::AugmentationMode::PerFrame, kinds,
                                    0.3, 4, Severity{0.6}, nullptr, rng,
                                    "ep-" + std::to_string(e)));
  }
  const auto text = schedules_jsonl(schedules);
  std::ofstream(dir.path() / "plan.jsonl") << text;
  const auto loaded = load_schedules_jsonl(dir.path() / "plan.jsonl");
  REQUIRE(loaded.size() == schedules.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].episode_id == schedules[i].episode_id);
    REQUIRE(loaded[i].assignments.size() == schedules[i].assignments.size());
    for (std::size_t f = 0; f < loaded[i].assignments.size(); ++f) {
      CHECK(loaded[i].assignments[f].kind == schedules[i].assignments[f].kind);
      CHECK(loaded[i].assignments[f].severity ==
            schedules[i].assignments[f].severity);
    }
  }
}

TEST_CASE("schedules are validated against the episode") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), false));

  SUBCASE("out-of-range frame index") {
    mitigation::CorruptionSchedule schedule;
    schedule.episode_id = "ep-1";
    schedule.assignments = {{99, CorruptionKind::Flare, 0.5}};
    const std::vector<mitigation::CorruptionSchedule> schedules = {schedule};
    CHECK_THROWS_WITH_AS(run_schedules(manifest, schedules, dir.path() / "o", {}),
                         doctest::Contains("assigns frame 99"), ValidationError);
  }
  SUBCASE("unknown episode") {
    mitigation::CorruptionSchedule schedule;
    schedule.episode_id = "ghost";
    const std::vector<mitigation::CorruptionSchedule> schedules = {schedule};
    CHECK_THROWS_AS(run_schedules(manifest, schedules, dir.path() / "o", {}),
                    ValidationError);
  }
  SUBCASE("non-contiguous frame indices are rejected on load") {
    std::ofstream(dir.path() / "bad.jsonl")
        << R"({"episode_id":"ep-1","assignments":[{"frame":1,"kind":"flare","severity":0.5}]})"
        << "\n";
    CHECK_THROWS_WITH_AS(load_schedules_jsonl(dir.path() / "bad.jsonl"),
                         doctest::Contains("contiguous"), ValidationError);
  }
}

TEST_CASE("run_schedules corrupts assigned frames and copies clean ones") {
  navtest::TempDir dir;
  const auto manifest = load_manifest(write_fixture(dir.path(), true));

  std::vector<mitigation::CorruptionSchedule> schedules;
  mitigation::CorruptionSchedule schedule;
  schedule.episode_id = "ep-1";
  schedule.assignments = {{0, CorruptionKind::ForeignObject, 1.0},
                          {1, std::nullopt, 0.0}};
  schedules.push_back(schedule);

  run_schedules(manifest, schedules, dir.path() / "out", {});

  const auto base = dir.path() / "out" / "scheduled" / "ep-1";
  // frame 0: corrupted rgb (center blanked), untouched depth copy
  const auto corrupted = io::load_rgb_png(base / "rgb" / "000000.png");
  CHECK(corrupted.at(16, 12, 0) == 0);
  CHECK(read_bytes(base / "depth" / "000000.png") ==
        read_bytes(manifest.episodes[0].depth_frames[0]));
  // frame 1: clean copies of both modalities
  CHECK(read_bytes(base / "rgb" / "000001.png") ==
        read_bytes(manifest.episodes[0].rgb_frames[1]));
  CHECK(read_bytes(base / "depth" / "000001.png") ==
        read_bytes(manifest.episodes[0].depth_frames[1]));
}
