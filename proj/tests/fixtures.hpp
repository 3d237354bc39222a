#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "navtrust/types.hpp"

namespace navtest {

// Deterministic photo-like fixture: smooth two-axis gradient plus a couple
// of shapes. Channel values stay in [10, 120] so additive sensor noise is
// far from both clamp rails; mean brightness is ~55.
inline navtrust::RgbFrame photo_fixture(int width, int height) {
  navtrust::RgbFrame frame(width, height);
  const double cx = width * 0.3;
  const double cy = height * 0.4;
  const double disk_r = 0.18 * std::min(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double base = 15.0 + 60.0 * x / std::max(1, width - 1) +
                    20.0 * y / std::max(1, height - 1);
      const bool in_disk = std::hypot(x - cx, y - cy) <= disk_r;
      const bool in_rect = x > width * 0.65 && x < width * 0.85 &&
                           y > height * 0.55 && y < height * 0.8;
      if (in_disk) base = 90.0;
      if (in_rect) base = 30.0;
      frame.at(x, y, 0) = navtrust::to_channel(base * 0.9 + 8.0);
      frame.at(x, y, 1) = navtrust::to_channel(base);
      frame.at(x, y, 2) = navtrust::to_channel(base * 0.8 + 4.0);
    }
  }
  return frame;
}

// Flat background with one bright disk; everything a symmetric blur can
// change sits in a thin ring around the disk boundary.
inline navtrust::RgbFrame flat_disk_fixture(int width, int height) {
  auto frame = navtrust::RgbFrame::filled(width, height, {80, 80, 80});
  const double cx = width / 2.0;
  const double cy = height / 2.0;
  const double disk_r = 0.08 * std::min(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (std::hypot(x - cx, y - cy) <= disk_r) {
        frame.at(x, y, 0) = 200;
        frame.at(x, y, 1) = 200;
        frame.at(x, y, 2) = 200;
      }
    }
  }
  return frame;
}

inline double mean_brightness(const navtrust::RgbFrame& frame) {
  double sum = 0.0;
  for (std::uint8_t v : frame.pixels()) sum += v;
  return sum / static_cast<double>(frame.pixels().size());
}

inline std::size_t changed_pixels(const navtrust::RgbFrame& a,
                                  const navtrust::RgbFrame& b) {
  std::size_t changed = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        if (a.at(x, y, c) != b.at(x, y, c)) {
          ++changed;
          break;
        }
      }
    }
  }
  return changed;
}

inline const std::vector<std::string>& instruction_corpus() {
  static const std::vector<std::string> corpus = {
      "Walk past the couch and stop at the kitchen door.",
      "Turn left at the bookshelf, then go straight to the window.",
      "Exit the bedroom and wait beside the staircase.",
      "Go down the hallway and enter the second room on the right.",
      "Head toward the dining table and stop behind the last chair.",
      "Cross the living room and face the television.",
      "Climb the stairs and stop on the landing.",
      "Walk around the kitchen island and stand near the sink.",
      "Leave the office, turn right, and stop at the printer.",
      "Follow the corridor until you reach the red door.",
      "Step into the bathroom and stop in front of the mirror.",
      "Move past the piano and wait near the balcony door.",
      "Turn right after the fireplace and enter the study.",
      "Walk to the end of the hall and face the painting.",
      "Go through the archway and stop beside the potted plant.",
      "Descend the stairs and wait at the front door.",
      "Pass the laundry room and enter the garage.",
      "Walk toward the window, then turn around and face the bed.",
      "Take two steps forward and stop at the rug.",
      "Circle the coffee table and stand by the lamp.",
      "Enter the kitchen and stop in front of the refrigerator.",
      "Walk along the counter and stop at the stove.",
      "Go past the closet and stop under the ceiling fan.",
      "Turn left at the end of the corridor and enter the gym.",
      "Approach the desk and stand behind the chair.",
      "Move through the double doors and wait by the elevator.",
      "Walk straight until you see the aquarium, then stop.",
      "Step over the threshold and face the coat rack.",
      "Head upstairs and stop at the first bedroom.",
      "Walk behind the sofa and stop at the side table.",
      "Leave through the back door and wait on the patio.",
      "Go around the corner and stop at the vending machine.",
      "Follow the wall to the left until you reach the exit sign.",
      "Enter the conference room and stand at the whiteboard.",
      "Walk past three doors and enter the fourth one.",
      "Turn right at the water cooler and stop by the copier.",
      "Cross the lobby and wait beside the reception desk.",
      "Take the ramp down and stop at the storage shelf.",
      "Walk between the two pillars and face the statue.",
      "Go into the pantry and stop near the cereal shelf.",
      "Proceed to the balcony and stand at the railing.",
      "Turn around, walk five meters, and stop at the mat.",
      "Pass under the chandelier and stop at the grand piano.",
      "Walk up to the fish tank and turn left.",
      "Enter the nursery and wait next to the crib.",
      "Skirt the dining chairs and stop by the china cabinet.",
      "March down the corridor, then stop at the third lamp.",
      "Slip past the armchair and halt at the bay window.",
      "Stroll to the garden door and face the hinges.",
      "Advance to the workbench and stop beside the toolbox.",
  };
  return corpus;
}

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 gen{std::random_device{}()};
    const auto base = std::filesystem::temp_directory_path();
    for (;;) {
      path_ = base / ("navtrust-test-" + std::to_string(gen()));
      if (std::filesystem::create_directory(path_)) break;
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace navtest
