#include "emofuse/evaluation.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "emofuse/error.hpp"

namespace emofuse {

std::string_view to_string(MethodId m) {
  switch (m) {
    case MethodId::audio_only: return "audio_only";
    case MethodId::video_only: return "video_only";
    case MethodId::average: return "average";
    case MethodId::weighted_average: return "weighted_average";
    case MethodId::confidence_threshold: return "confidence_threshold";
    case MethodId::dynamic_weighting: return "dynamic_weighting";
    case MethodId::rule_based: return "rule_based";
  }
  return "";
}

std::optional<MethodId> parse_method_id(std::string_view name) {
  for (auto m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::optional<FusionMethod> as_fusion_method(MethodId m) {
  switch (m) {
    case MethodId::audio_only:
    case MethodId::video_only: return std::nullopt;
    case MethodId::average: return FusionMethod::average;
    case MethodId::weighted_average: return FusionMethod::weighted_average;
    case MethodId::confidence_threshold: return FusionMethod::confidence_threshold;
    case MethodId::dynamic_weighting: return FusionMethod::dynamic_weighting;
    case MethodId::rule_based: return FusionMethod::rule_based;
  }
  return std::nullopt;
}

std::vector<MethodId> parse_method_list(std::string_view list) {
  if (list == "all") return {std::begin(kAllMethods), std::end(kAllMethods)};

  std::set<MethodId> chosen;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    const auto token = list.substr(start, end - start);
    const auto id = parse_method_id(token);
    if (!id) throw Error(ErrorKind::InvalidConfig, fmt::format("unknown method '{}'", token));
    chosen.insert(*id);
    start = end + 1;
  }
  return {chosen.begin(), chosen.end()};
}

const MethodRow* EvaluationReport::find(MethodId m) const {
  const auto it = std::find_if(rows.begin(), rows.end(),
                               [m](const MethodRow& r) { return r.method == m; });
  return it == rows.end() ? nullptr : &*it;
}

FusionConfig resolve_config(const Manifest& manifest, FusionConfig config) {
  if (!config.weight_audio && manifest.audio_model) {
    config.weight_audio = manifest.audio_model->holdout_accuracy;
  }
  if (!config.weight_video && manifest.video_model) {
    config.weight_video = manifest.video_model->holdout_accuracy;
  }
  return config;
}

EvaluationReport evaluate(const Manifest& manifest, std::span<const MethodId> methods,
                          const FusionConfig& config) {
  if (methods.empty()) throw Error(ErrorKind::InvalidConfig, "no methods requested");

  EvaluationReport report;
  report.config = resolve_config(manifest, config);
  report.config.validate();
  report.manifest_digest = manifest_digest(manifest);

  std::set<MethodId> wanted(methods.begin(), methods.end());
  if (wanted.contains(MethodId::weighted_average) &&
      (!report.config.weight_audio || !report.config.weight_video)) {
    throw Error(ErrorKind::MissingParameter,
                fmt::format("weighted_average is missing {}: pass --weight-audio/"
                            "--weight-video or set models.*.holdout_accuracy",
                            !report.config.weight_audio && !report.config.weight_video
                                ? "both weights"
                                : (!report.config.weight_audio ? "the audio weight"
                                                               : "the video weight")));
  }

  std::vector<const ClipRecord*> clips;
  clips.reserve(manifest.clips.size());
  for (const auto& c : manifest.clips) clips.push_back(&c);
  std::sort(clips.begin(), clips.end(), [](const ClipRecord* a, const ClipRecord* b) {
    return a->clip_id < b->clip_id;
  });

  for (const auto method : wanted) {
    std::vector<Emotion> predictions;
    std::vector<Emotion> truths;
    const auto fusion = as_fusion_method(method);
    FusionConfig method_config = report.config;
    if (fusion) method_config.method = *fusion;

    for (const auto* clip : clips) {
      std::optional<Emotion> predicted;
      if (method == MethodId::audio_only) {
        if (clip->audio) predicted = argmax_label(clip->audio->probs, report.config.tie_break).label;
      } else if (method == MethodId::video_only) {
        if (clip->video) predicted = argmax_label(clip->video->probs, report.config.tie_break).label;
      } else if (clip->has_both()) {
        predicted = fuse(*clip, method_config).label;
      }
      if (!predicted) continue;
      predictions.push_back(*predicted);
      truths.push_back(clip->ground_truth);
    }

    if (truths.empty()) {
      throw Error(ErrorKind::NoEligibleClips,
                  fmt::format("no clip is eligible for method '{}'", to_string(method)));
    }
    spdlog::debug("{}: {} clips", to_string(method), truths.size());
    report.rows.push_back({method, compute_metrics(predictions, truths)});
  }
  return report;
}

}  // namespace emofuse
