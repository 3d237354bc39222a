#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "navtrust/text_corrupt.hpp"
#include "navtrust/types.hpp"

namespace navtrust::harness {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

/// One benchmark episode: the instruction, its frame files, and the spatial
/// ground truth needed to score results.
struct ManifestEpisode {
  std::string episode_id;
  Instruction instruction;
  std::vector<std::filesystem::path> rgb_frames;
  std::vector<std::filesystem::path> depth_frames;  // empty for RGB-only sets
  Vec3 start_position;
  Vec3 goal_position;
  double geodesic_length = 0.0;
  double success_radius = 3.0;
  double depth_valid_max = 10.0;  // sensor ceiling for depth decode
};

inline constexpr std::string_view kManifestSchema = "navtrust-manifest/1";

struct Manifest {
  std::string dataset_name;
  std::vector<ManifestEpisode> episodes;

  const ManifestEpisode* find(const std::string& episode_id) const;
};

/// Parses and validates a manifest file, then stat-checks every referenced
/// frame. Relative frame paths resolve against the manifest's directory.
/// Validation failures name the offending JSON pointer.
Manifest load_manifest(const std::filesystem::path& path);

/// Validation without file checks (used for generated manifest copies).
Manifest parse_manifest_json(const std::string& content, const std::string& origin);

void save_manifest(const Manifest& manifest, const std::filesystem::path& path);
std::string manifest_to_json(const Manifest& manifest);

/// One agent result. `success` may be omitted; the evaluator then derives
/// it from the final position and the episode's success radius.
struct ResultEntry {
  std::string episode_id;
  std::optional<Vec3> final_position;
  double path_length = 0.0;
  std::optional<bool> success;
};

using ResultLog = std::vector<ResultEntry>;

/// JSONL, one result object per line.
ResultLog load_result_log(const std::filesystem::path& path);
void save_result_log(const ResultLog& log, const std::filesystem::path& path);

}  // namespace navtrust::harness
