#include "navtrust/manifest.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace navtrust::harness {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& origin, const std::string& pointer,
                       const std::string& reason) {
  throw ValidationError(origin + ": " + pointer + ": " + reason);
}

const json& require(const json& node, const char* key, const std::string& origin,
                    const std::string& pointer) {
  const auto it = node.find(key);
  if (it == node.end()) fail(origin, pointer + "/" + key, "missing field");
  return *it;
}

double require_number(const json& node, const char* key, const std::string& origin,
                      const std::string& pointer) {
  const json& v = require(node, key, origin, pointer);
  if (!v.is_number()) fail(origin, pointer + "/" + key, "expected a number");
  return v.get<double>();
}

std::string require_string(const json& node, const char* key,
                           const std::string& origin, const std::string& pointer) {
  const json& v = require(node, key, origin, pointer);
  if (!v.is_string()) fail(origin, pointer + "/" + key, "expected a string");
  return v.get<std::string>();
}

Vec3 parse_vec3(const json& v, const std::string& origin,
                const std::string& pointer) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number()) {
    fail(origin, pointer, "expected [x, y, z]");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

std::vector<std::filesystem::path> parse_frame_list(const json& v,
                                                    const std::string& origin,
                                                    const std::string& pointer) {
  if (!v.is_array()) fail(origin, pointer, "expected an array of paths");
  std::vector<std::filesystem::path> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      fail(origin, pointer + "/" + std::to_string(i), "expected a path string");
    }
    out.emplace_back(v[i].get<std::string>());
  }
  return out;
}

}  // namespace

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

const ManifestEpisode* Manifest::find(const std::string& episode_id) const {
  for (const auto& ep : episodes) {
    if (ep.episode_id == episode_id) return &ep;
  }
  return nullptr;
}

Manifest parse_manifest_json(const std::string& content, const std::string& origin) {
  json root;
  try {
    root = json::parse(content);
  } catch (const json::exception& e) {
    throw ValidationError(origin + ": not valid JSON: " + e.what());
  }
  if (!root.is_object()) fail(origin, "", "manifest must be a JSON object");

  const std::string schema = require_string(root, "schema", origin, "");
  if (schema != kManifestSchema) {
    fail(origin, "/schema",
         "unsupported schema \"" + schema + "\" (expected " +
             std::string(kManifestSchema) + ")");
  }

  Manifest manifest;
  manifest.dataset_name = require_string(root, "dataset_name", origin, "");

  const json& episodes = require(root, "episodes", origin, "");
  if (!episodes.is_array() || episodes.empty()) {
    fail(origin, "/episodes", "expected a non-empty array");
  }

  std::set<std::string> seen_ids;
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    const std::string pointer = "/episodes/" + std::to_string(i);
    const json& e = episodes[i];
    if (!e.is_object()) fail(origin, pointer, "expected an episode object");

    ManifestEpisode ep;
    ep.episode_id = require_string(e, "episode_id", origin, pointer);
    if (!seen_ids.insert(ep.episode_id).second) {
      fail(origin, pointer + "/episode_id",
           "duplicate episode_id \"" + ep.episode_id + "\"");
    }

    const json& instr = require(e, "instruction", origin, pointer);
    if (!instr.is_object()) {
      fail(origin, pointer + "/instruction", "expected an object");
    }
    ep.instruction.text =
        require_string(instr, "text", origin, pointer + "/instruction");
    if (ep.instruction.text.empty()) {
      fail(origin, pointer + "/instruction/text", "must be non-empty");
    }
    if (const auto it = instr.find("language_tag"); it != instr.end()) {
      ep.instruction.language_tag = it->get<std::string>();
    }
    if (const auto it = instr.find("system_prompt"); it != instr.end()) {
      ep.instruction.system_prompt = it->get<std::string>();
    }

    ep.rgb_frames = parse_frame_list(require(e, "rgb_frames", origin, pointer),
                                     origin, pointer + "/rgb_frames");
    if (ep.rgb_frames.empty()) {
      fail(origin, pointer + "/rgb_frames", "expected at least one frame");
    }
    if (const auto it = e.find("depth_frames"); it != e.end()) {
      ep.depth_frames = parse_frame_list(*it, origin, pointer + "/depth_frames");
      if (!ep.depth_frames.empty() &&
          ep.depth_frames.size() != ep.rgb_frames.size()) {
        fail(origin, pointer + "/depth_frames",
             "rgb and depth frame lists must have equal length (" +
                 std::to_string(ep.rgb_frames.size()) + " vs " +
                 std::to_string(ep.depth_frames.size()) + ")");
      }
    }

    ep.start_position = parse_vec3(require(e, "start_position", origin, pointer),
                                   origin, pointer + "/start_position");
    ep.goal_position = parse_vec3(require(e, "goal_position", origin, pointer),
                                  origin, pointer + "/goal_position");

    ep.geodesic_length = require_number(e, "geodesic_length", origin, pointer);
    if (!(ep.geodesic_length > 0.0)) {
      fail(origin, pointer + "/geodesic_length", "must be > 0");
    }
    if (const auto it = e.find("success_radius"); it != e.end()) {
      ep.success_radius = it->get<double>();
      if (!(ep.success_radius > 0.0)) {
        fail(origin, pointer + "/success_radius", "must be > 0");
      }
    }
    if (const auto it = e.find("depth_valid_max"); it != e.end()) {
      ep.depth_valid_max = it->get<double>();
      if (!(ep.depth_valid_max > 0.0)) {
        fail(origin, pointer + "/depth_valid_max", "must be > 0");
      }
    }

    manifest.episodes.push_back(std::move(ep));
  }
  return manifest;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();

  Manifest manifest = parse_manifest_json(buffer.str(), path.string());

  // resolve frame paths against the manifest directory, then stat-check
  const auto base = path.parent_path();
  const auto resolve = [&](std::filesystem::path& p) {
    if (p.is_relative()) p = (base / p).lexically_normal();
  };
  std::vector<std::string> missing;
  for (auto& ep : manifest.episodes) {
    for (auto& frame : ep.rgb_frames) {
      resolve(frame);
      if (!std::filesystem::exists(frame)) missing.push_back(frame.string());
    }
    for (auto& frame : ep.depth_frames) {
      resolve(frame);
      if (!std::filesystem::exists(frame)) missing.push_back(frame.string());
    }
  }
  if (!missing.empty()) {
    std::string joined;
    for (const auto& m : missing) {
      joined += "\n  ";
      joined += m;
    }
    throw ValidationError(path.string() + ": missing frame files:" + joined);
  }
  return manifest;
}

std::string manifest_to_json(const Manifest& manifest) {
  ordered_json root;
  root["schema"] = kManifestSchema;
  root["dataset_name"] = manifest.dataset_name;
  auto& episodes = root["episodes"] = ordered_json::array();
  for (const auto& ep : manifest.episodes) {
    ordered_json e;
    e["episode_id"] = ep.episode_id;
    ordered_json instr;
    instr["text"] = ep.instruction.text;
    instr["language_tag"] = ep.instruction.language_tag;
    if (ep.instruction.system_prompt) {
      instr["system_prompt"] = *ep.instruction.system_prompt;
    }
    e["instruction"] = std::move(instr);
    auto& rgb = e["rgb_frames"] = ordered_json::array();
    for (const auto& f : ep.rgb_frames) rgb.push_back(f.string());
    if (!ep.depth_frames.empty()) {
      auto& depth = e["depth_frames"] = ordered_json::array();
      for (const auto& f : ep.depth_frames) depth.push_back(f.string());
    }
    e["start_position"] = {ep.start_position.x, ep.start_position.y,
                           ep.start_position.z};
    e["goal_position"] = {ep.goal_position.x, ep.goal_position.y,
                          ep.goal_position.z};
    e["geodesic_length"] = ep.geodesic_length;
    e["success_radius"] = ep.success_radius;
    e["depth_valid_max"] = ep.depth_valid_max;
    episodes.push_back(std::move(e));
  }
  return root.dump(2) + "\n";
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << manifest_to_json(manifest);
  if (!out) throw IoError("cannot write manifest " + path.string());
}

ResultLog load_result_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open result log " + path.string());

  ResultLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": not valid JSON: " + e.what());
    }
    const std::string origin = path.string() + ":" + std::to_string(line_no);
    ResultEntry entry;
    entry.episode_id = require_string(record, "episode_id", origin, "");
    entry.path_length = require_number(record, "path_length", origin, "");
    if (entry.path_length < 0.0) fail(origin, "/path_length", "must be >= 0");
    if (const auto it = record.find("final_position"); it != record.end()) {
      entry.final_position = parse_vec3(*it, origin, "/final_position");
    }
    if (const auto it = record.find("success"); it != record.end()) {
      if (!it->is_boolean()) fail(origin, "/success", "expected a boolean");
      entry.success = it->get<bool>();
    }
    if (!entry.success.has_value() && !entry.final_position.has_value()) {
      fail(origin, "", "needs success or final_position to score the episode");
    }
    log.push_back(std::move(entry));
  }
  return log;
}

void save_result_log(const ResultLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write result log " + path.string());
  for (const auto& entry : log) {
    ordered_json record;
    record["episode_id"] = entry.episode_id;
    if (entry.final_position) {
      record["final_position"] = {entry.final_position->x, entry.final_position->y,
                                  entry.final_position->z};
    }
    record["path_length"] = entry.path_length;
    if (entry.success) record["success"] = *entry.success;
    out << record.dump() << '\n';
  }
  if (!out) throw IoError("cannot write result log " + path.string());
}

}  // namespace navtrust::harness
