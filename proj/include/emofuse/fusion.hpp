#pragma once

// Late-fusion decision rules over one audio and one video prediction.
//
//   average               mean of the two vectors
//   weighted_average      vectors scaled by per-model weights (accuracies)
//   confidence_threshold  video label if its confidence > threshold, else average
//   dynamic_weighting     per-clip weights derived from each model's confidence
//   rule_based            agreed label if both agree above threshold, else the
//                         more confident model's label
//
// Threshold comparisons are strict; equality takes the fallback branch.

#include <optional>
#include <string_view>

#include "emofuse/clip.hpp"
#include "emofuse/emotion.hpp"

namespace emofuse {

enum class FusionMethod {
  average,
  weighted_average,
  confidence_threshold,
  dynamic_weighting,
  rule_based,
};

inline constexpr FusionMethod kAllFusionMethods[] = {
    FusionMethod::average, FusionMethod::weighted_average,
    FusionMethod::confidence_threshold, FusionMethod::dynamic_weighting,
    FusionMethod::rule_based};

std::string_view to_string(FusionMethod m);
std::optional<FusionMethod> parse_fusion_method(std::string_view name);

// inverse_confidence weights each model by 1/confidence (the less confident
// model counts more); proportional_confidence weights by confidence.
enum class DynamicMode { inverse_confidence, proportional_confidence };

std::string_view to_string(DynamicMode m);
std::optional<DynamicMode> parse_dynamic_mode(std::string_view name);

enum class Provenance { blended, audio_selected, video_selected, agreed };

std::string_view to_string(Provenance p);

struct FusionConfig {
  FusionMethod method = FusionMethod::average;
  double video_conf_threshold = 0.7;
  double agreement_threshold = 0.5;
  // Unset weights are filled from model holdout accuracies by the evaluator.
  std::optional<double> weight_audio;
  std::optional<double> weight_video;
  DynamicMode dynamic_mode = DynamicMode::inverse_confidence;
  TieBreakPolicy tie_break = TieBreakPolicy::lowest_index;

  // Throws InvalidConfig / NonPositiveWeight.
  void validate() const;
};

struct FusedPrediction {
  Emotion label;
  double confidence;
  std::optional<ProbabilityVector> fused_probs;  // absent for selection rules
  FusionMethod method;
  Provenance provenance;
};

FusedPrediction fuse_average(const ProbabilityVector& audio,
                             const ProbabilityVector& video,
                             TieBreakPolicy tie_break = TieBreakPolicy::lowest_index);

FusedPrediction fuse_weighted_average(
    const ProbabilityVector& audio, const ProbabilityVector& video,
    double weight_audio, double weight_video,
    TieBreakPolicy tie_break = TieBreakPolicy::lowest_index);

FusedPrediction fuse_confidence_threshold(
    const ModalityPrediction& audio, const ModalityPrediction& video,
    double threshold, TieBreakPolicy tie_break = TieBreakPolicy::lowest_index);

FusedPrediction fuse_dynamic_weighting(
    const ModalityPrediction& audio, const ModalityPrediction& video,
    DynamicMode mode, TieBreakPolicy tie_break = TieBreakPolicy::lowest_index);

// On a confidence tie between disagreeing models the video label wins.
FusedPrediction fuse_rule_based(const ModalityPrediction& audio,
                                const ModalityPrediction& video,
                                double agreement_threshold);

// Dispatches on config.method. Throws MissingModality when the clip lacks a
// vector, MissingParameter when weighted_average has no weights.
FusedPrediction fuse(const ClipRecord& clip, const FusionConfig& config);

}  // namespace emofuse
