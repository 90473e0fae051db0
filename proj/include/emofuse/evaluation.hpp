#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emofuse/fusion.hpp"
#include "emofuse/manifest.hpp"
#include "emofuse/metrics.hpp"

namespace emofuse {

// Report rows; declaration order is the fixed presentation order.
enum class MethodId {
  audio_only,
  video_only,
  average,
  weighted_average,
  confidence_threshold,
  dynamic_weighting,
  rule_based,
};

inline constexpr MethodId kAllMethods[] = {
    MethodId::audio_only,         MethodId::video_only,
    MethodId::average,            MethodId::weighted_average,
    MethodId::confidence_threshold, MethodId::dynamic_weighting,
    MethodId::rule_based};

std::string_view to_string(MethodId m);
std::optional<MethodId> parse_method_id(std::string_view name);
std::optional<FusionMethod> as_fusion_method(MethodId m);

// "all" or a comma-separated list of method ids; throws InvalidConfig.
std::vector<MethodId> parse_method_list(std::string_view list);

struct MethodRow {
  MethodId method;
  MetricBundle metrics;
};

struct EvaluationReport {
  std::vector<MethodRow> rows;  // presentation order, no duplicates
  FusionConfig config;          // with weights resolved
  std::string manifest_digest;

  const MethodRow* find(MethodId m) const;
};

// Copies config and fills unset weights from the manifest's model accuracies.
FusionConfig resolve_config(const Manifest& manifest, FusionConfig config);

// Unimodal rows cover clips with that modality, fusion rows clips with both.
// Clips are processed in clip_id order. Throws NoEligibleClips when a
// requested row has no clips, MissingParameter for unresolved weights.
EvaluationReport evaluate(const Manifest& manifest, std::span<const MethodId> methods,
                          const FusionConfig& config);

}  // namespace emofuse
