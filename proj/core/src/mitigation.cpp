#include "navtrust/mitigation.hpp"

#include <algorithm>
#include <cmath>

namespace navtrust::mitigation {

namespace {

std::optional<CorruptionKind> draw_kind(std::span<const CorruptionKind> kinds,
                                        double clean_prob,
                                        std::span<const double> weights,
                                        RandomStream& rng) {
  if (rng.next_double() < clean_prob) return std::nullopt;
  if (weights.empty()) {
    return kinds[rng.below(kinds.size())];
  }
  // weighted pick over the normalized weight vector
  const double u = rng.next_double();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    cumulative += weights[i];
    if (u < cumulative) return kinds[i];
  }
  return kinds.back();  // guard against accumulated rounding
}

std::vector<double> softmax(std::span<const double> logits) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - peak);
    norm += out[i];
  }
  for (double& v : out) v /= norm;
  return out;
}

void check_finite(const FeatureVector& v, const char* label) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw ValidationError(std::string(label) + " contains a non-finite entry");
    }
  }
}

}  // namespace

std::string_view to_string(AugmentationMode mode) {
  switch (mode) {
    case AugmentationMode::PerFrame: return "per_frame";
    case AugmentationMode::PerEpisode: return "per_episode";
    case AugmentationMode::DistributedPerEpisode: return "distributed";
  }
  throw ValidationError("unknown augmentation mode");
}

AugmentationMode augmentation_mode_from_string(std::string_view name) {
  if (name == "per_frame" || name == "pf") return AugmentationMode::PerFrame;
  if (name == "per_episode" || name == "pe") return AugmentationMode::PerEpisode;
  if (name == "distributed" || name == "sd") {
    return AugmentationMode::DistributedPerEpisode;
  }
  throw ValidationError("unknown augmentation mode \"" + std::string(name) +
                        "\"; expected per_frame|per_episode|distributed");
}

std::vector<double> distributed_weights(std::span<const CorruptionKind> kinds,
                                        const PriorPerformance& prior) {
  std::vector<double> weights;
  weights.reserve(kinds.size());
  double total = 0.0;
  for (CorruptionKind kind : kinds) {
    const auto it = prior.find(kind);
    if (it == prior.end()) {
      throw ValidationError("distributed sampling needs a prior for " +
                            std::string(to_string(kind)));
    }
    if (!(it->second >= 0.0 && it->second <= 1.0)) {
      throw ValidationError("prior performance for " +
                            std::string(to_string(kind)) + " must lie in [0, 1]");
    }
    const double w = (1.0 - it->second) + kDistributedEpsilon;
    weights.push_back(w);
    total += w;
  }
  for (double& w : weights) w /= total;
  return weights;
}

CorruptionSchedule sample_schedule(AugmentationMode mode,
                                   std::span<const CorruptionKind> kinds,
                                   double clean_prob, int n_frames,
                                   Severity severity,
                                   const PriorPerformance* prior,
                                   RandomStream& rng, std::string episode_id) {
  if (kinds.empty()) throw ValidationError("schedule needs at least one kind");
  if (!(clean_prob >= 0.0 && clean_prob <= 1.0)) {
    throw ValidationError("clean probability must lie in [0, 1]");
  }
  if (n_frames < 0) throw ValidationError("frame count must be non-negative");

  std::vector<double> weights;
  if (mode == AugmentationMode::DistributedPerEpisode) {
    if (prior == nullptr) {
      throw ValidationError("distributed sampling needs prior performance");
    }
    weights = distributed_weights(kinds, *prior);
  }

  CorruptionSchedule schedule;
  schedule.episode_id = std::move(episode_id);
  schedule.assignments.reserve(static_cast<std::size_t>(n_frames));

  if (mode == AugmentationMode::PerFrame) {
    for (int f = 0; f < n_frames; ++f) {
      schedule.assignments.push_back(
          {f, draw_kind(kinds, clean_prob, weights, rng), severity.value()});
    }
  } else {
    const auto kind = draw_kind(kinds, clean_prob, weights, rng);
    for (int f = 0; f < n_frames; ++f) {
      schedule.assignments.push_back({f, kind, severity.value()});
    }
  }
  return schedule;
}

std::vector<double> reliability_weights(std::span<const FeatureVector> views) {
  if (views.empty()) throw ValidationError("fusion needs at least one view");
  const std::size_t dims = views.front().size();
  for (const auto& v : views) {
    if (v.size() != dims) {
      throw ValidationError("fusion views must share one dimensionality");
    }
    check_finite(v, "view");
  }

  std::vector<double> magnitudes(views.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < views.size(); ++i) {
    double sq = 0.0;
    for (double x : views[i]) sq += x * x;
    magnitudes[i] = std::sqrt(sq);
    mean += magnitudes[i];
  }
  mean /= static_cast<double>(views.size());

  std::vector<double> weights(views.size());
  double total = 0.0;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const double deviation = std::fabs(magnitudes[i] - mean) / (mean + kFusionDelta);
    weights[i] = std::exp(-std::min(deviation, kFusionCap));
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return weights;
}

FeatureVector reliability_fuse(std::span<const FeatureVector> views) {
  const auto weights = reliability_weights(views);
  FeatureVector fused(views.front().size(), 0.0);
  for (std::size_t i = 0; i < views.size(); ++i) {
    for (std::size_t d = 0; d < fused.size(); ++d) {
      fused[d] += weights[i] * views[i][d];
    }
  }
  return fused;
}

DistillLoss distill_loss(std::span<const double> student_logits,
                         std::span<const double> teacher_logits,
                         std::size_t expert_action,
                         const FeatureVector& student_feat,
                         const FeatureVector& teacher_feat,
                         const LossWeights& weights) {
  if (student_logits.size() < 2) {
    throw ValidationError("action space needs at least two actions");
  }
  if (student_logits.size() != teacher_logits.size()) {
    throw ValidationError("student and teacher logits differ in length");
  }
  if (expert_action >= student_logits.size()) {
    throw ValidationError("expert action index out of range");
  }
  if (student_feat.size() != teacher_feat.size() || student_feat.empty()) {
    throw ValidationError("student and teacher features differ in dimension");
  }
  if (weights.imitation < 0.0 || weights.policy_kl < 0.0 ||
      weights.feature_mse < 0.0) {
    throw ValidationError("loss weights must be non-negative");
  }
  if (weights.imitation == 0.0 && weights.policy_kl == 0.0 &&
      weights.feature_mse == 0.0) {
    throw ValidationError("at least one loss weight must be positive");
  }

  const auto student = softmax(student_logits);
  const auto teacher = softmax(teacher_logits);

  DistillLoss loss;
  loss.imitation = -std::log(student[expert_action]);
  for (std::size_t i = 0; i < student.size(); ++i) {
    if (teacher[i] > 0.0) {
      loss.kl += teacher[i] * (std::log(teacher[i]) - std::log(student[i]));
    }
  }
  for (std::size_t d = 0; d < student_feat.size(); ++d) {
    const double diff = student_feat[d] - teacher_feat[d];
    loss.mse += diff * diff;
  }
  loss.mse /= static_cast<double>(student_feat.size());
  loss.total = weights.imitation * loss.imitation + weights.policy_kl * loss.kl +
               weights.feature_mse * loss.mse;
  return loss;
}

}  // namespace navtrust::mitigation
