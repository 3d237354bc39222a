#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "navtrust/rng.hpp"
#include "navtrust/types.hpp"

namespace navtrust::mitigation {

/// How corruption is sampled when building augmented training data.
enum class AugmentationMode {
  PerFrame,               // transient: re-drawn for every frame
  PerEpisode,             // persistent: one draw for the whole episode
  DistributedPerEpisode,  // persistent, weighted toward weak corruptions
};

std::string_view to_string(AugmentationMode mode);
AugmentationMode augmentation_mode_from_string(std::string_view name);

/// One frame's assignment; an empty kind means the frame stays clean.
struct Assignment {
  int frame_index = 0;
  std::optional<CorruptionKind> kind;
  double severity = 0.0;
};

struct CorruptionSchedule {
  std::string episode_id;
  std::vector<Assignment> assignments;  // frame indices contiguous from 0
};

/// Observed per-corruption metric (e.g. SR) in [0, 1]; lower values get
/// sampled more under the distributed mode.
using PriorPerformance = std::map<CorruptionKind, double>;

/// Sampling floor so no corruption's probability collapses to zero.
inline constexpr double kDistributedEpsilon = 0.05;

/// Normalized sampling weights, proportional to (1 - prior) + epsilon.
/// Errors unless the prior covers every requested kind.
std::vector<double> distributed_weights(std::span<const CorruptionKind> kinds,
                                        const PriorPerformance& prior);

/// Draws a corruption schedule for one episode. Per-frame mode draws each
/// frame independently; the per-episode modes make a single draw shared by
/// all frames.
CorruptionSchedule sample_schedule(AugmentationMode mode,
                                   std::span<const CorruptionKind> kinds,
                                   double clean_prob, int n_frames,
                                   Severity severity,
                                   const PriorPerformance* prior,
                                   RandomStream& rng,
                                   std::string episode_id = {});

using FeatureVector = std::vector<double>;

/// Per-view fusion weights: reliability from feature magnitude relative to
/// the panorama mean, outliers down-weighted with an exp decay capped at
/// deviation kFusionCap, then normalized to sum 1.
inline constexpr double kFusionCap = 2.0;
inline constexpr double kFusionDelta = 1e-6;
std::vector<double> reliability_weights(std::span<const FeatureVector> views);

/// Weighted average of the views under reliability_weights.
FeatureVector reliability_fuse(std::span<const FeatureVector> views);

/// Composite distillation objective weights; at least one must be positive.
struct LossWeights {
  double imitation = 1.0;
  double policy_kl = 1.0;
  double feature_mse = 1.0;
};

struct DistillLoss {
  double total = 0.0;
  double imitation = 0.0;  // cross-entropy at the expert action
  double kl = 0.0;         // KL(teacher || student) over actions
  double mse = 0.0;        // mean squared feature difference
};

/// Teacher-student composite loss over a shared action space. Softmaxes use
/// max subtraction; all parts are pure functions of the inputs.
DistillLoss distill_loss(std::span<const double> student_logits,
                         std::span<const double> teacher_logits,
                         std::size_t expert_action,
                         const FeatureVector& student_feat,
                         const FeatureVector& teacher_feat,
                         const LossWeights& weights);

}  // namespace navtrust::mitigation
