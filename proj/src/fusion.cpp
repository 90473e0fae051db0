#include "emofuse/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "emofuse/error.hpp"

namespace emofuse {

namespace {

FusedPrediction from_blend(const ProbabilityVector::Mass& mass,
                           FusionMethod method, TieBreakPolicy tie_break) {
  const auto probs = ProbabilityVector::from_distribution(mass);
  const auto [label, confidence] = argmax_label(probs, tie_break);
  return {label, confidence, probs, method, Provenance::blended};
}

// share_audio * audio + (1 - share_audio) * video
ProbabilityVector::Mass mix(const ProbabilityVector& audio,
                            const ProbabilityVector& video, double share_audio,
                            double share_video) {
  ProbabilityVector::Mass out{};
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    out[i] = share_audio * audio[i] + share_video * video[i];
  }
  return out;
}

void check_unit_interval(double value, std::string_view name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig,
                fmt::format("{} must lie in [0, 1], got {}", name, value));
  }
}

void check_weight(double value, std::string_view name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::NonPositiveWeight,
                fmt::format("{} must be > 0, got {}", name, value));
  }
}

}  // namespace

std::string_view to_string(FusionMethod m) {
  switch (m) {
    case FusionMethod::average: return "average";
    case FusionMethod::weighted_average: return "weighted_average";
    case FusionMethod::confidence_threshold: return "confidence_threshold";
    case FusionMethod::dynamic_weighting: return "dynamic_weighting";
    case FusionMethod::rule_based: return "rule_based";
  }
  return "";
}

std::optional<FusionMethod> parse_fusion_method(std::string_view name) {
  for (auto m : kAllFusionMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view to_string(DynamicMode m) {
  return m == DynamicMode::inverse_confidence ? "inverse_confidence"
                                              : "proportional_confidence";
}

std::optional<DynamicMode> parse_dynamic_mode(std::string_view name) {
  if (name == "inverse_confidence") return DynamicMode::inverse_confidence;
  if (name == "proportional_confidence") return DynamicMode::proportional_confidence;
  return std::nullopt;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::blended: return "blended";
    case Provenance::audio_selected: return "audio_selected";
    case Provenance::video_selected: return "video_selected";
    case Provenance::agreed: return "agreed";
  }
  return "";
}

void FusionConfig::validate() const {
  check_unit_interval(video_conf_threshold, "video confidence threshold");
  check_unit_interval(agreement_threshold, "agreement threshold");
  if (weight_audio) check_weight(*weight_audio, "audio weight");
  if (weight_video) check_weight(*weight_video, "video weight");
}

FusedPrediction fuse_average(const ProbabilityVector& audio,
                             const ProbabilityVector& video,
                             TieBreakPolicy tie_break) {
  return from_blend(mix(audio, video, 0.5, 0.5), FusionMethod::average, tie_break);
}

FusedPrediction fuse_weighted_average(const ProbabilityVector& audio,
                                      const ProbabilityVector& video,
                                      double weight_audio, double weight_video,
                                      TieBreakPolicy tie_break) {
  check_weight(weight_audio, "audio weight");
  check_weight(weight_video, "video weight");
  const double total = weight_audio + weight_video;
  return from_blend(mix(audio, video, weight_audio / total, weight_video / total),
                    FusionMethod::weighted_average, tie_break);
}

FusedPrediction fuse_confidence_threshold(const ModalityPrediction& audio,
                                          const ModalityPrediction& video,
                                          double threshold,
                                          TieBreakPolicy tie_break) {
  check_unit_interval(threshold, "video confidence threshold");
  if (video.confidence > threshold) {
    return {video.label, video.confidence, std::nullopt,
            FusionMethod::confidence_threshold, Provenance::video_selected};
  }
  auto out = fuse_average(audio.probs, video.probs, tie_break);
  out.method = FusionMethod::confidence_threshold;
  return out;
}

FusedPrediction fuse_dynamic_weighting(const ModalityPrediction& audio,
                                       const ModalityPrediction& video,
                                       DynamicMode mode, TieBreakPolicy tie_break) {
  // Confidence is the predicted label's share of the vector's total mass.
  const double conf_audio = audio.probs[audio.label] / audio.probs.sum();
  const double conf_video = video.probs[video.label] / video.probs.sum();
  if (!(conf_audio > 0.0) || !(conf_video > 0.0)) {
    throw Error(ErrorKind::ZeroConfidence, "dynamic weighting needs positive confidences");
  }

  double share_audio = 0.0;
  double share_video = 0.0;
  if (mode == DynamicMode::inverse_confidence) {
    const double raw_audio = 1.0 / conf_audio;
    const double raw_video = 1.0 / conf_video;
    share_audio = raw_audio / (raw_audio + raw_video);
    share_video = raw_video / (raw_audio + raw_video);
  } else {
    share_audio = conf_audio / (conf_audio + conf_video);
    share_video = conf_video / (conf_audio + conf_video);
  }
  return from_blend(mix(audio.probs, video.probs, share_audio, share_video),
                    FusionMethod::dynamic_weighting, tie_break);
}

FusedPrediction fuse_rule_based(const ModalityPrediction& audio,
                                const ModalityPrediction& video,
                                double agreement_threshold) {
  check_unit_interval(agreement_threshold, "agreement threshold");
  if (audio.label == video.label && audio.confidence > agreement_threshold &&
      video.confidence > agreement_threshold) {
    return {audio.label, std::max(audio.confidence, video.confidence),
            std::nullopt, FusionMethod::rule_based, Provenance::agreed};
  }
  if (audio.confidence > video.confidence) {
    return {audio.label, audio.confidence, std::nullopt,
            FusionMethod::rule_based, Provenance::audio_selected};
  }
  return {video.label, video.confidence, std::nullopt, FusionMethod::rule_based,
          Provenance::video_selected};
}

FusedPrediction fuse(const ClipRecord& clip, const FusionConfig& config) {
  if (!clip.audio || !clip.video) {
    throw Error(ErrorKind::MissingModality,
                fmt::format("clip '{}' lacks {} probabilities", clip.clip_id,
                            clip.audio ? "video" : "audio"));
  }
  const auto audio = ModalityPrediction::from_probs(Modality::audio, clip.audio->probs,
                                                    config.tie_break);
  const auto video = ModalityPrediction::from_probs(Modality::video, clip.video->probs,
                                                    config.tie_break);

  switch (config.method) {
    case FusionMethod::average:
      return fuse_average(audio.probs, video.probs, config.tie_break);
    case FusionMethod::weighted_average:
      if (!config.weight_audio || !config.weight_video) {
        throw Error(ErrorKind::MissingParameter,
                    "weighted_average needs --weight-audio and --weight-video "
                    "(or model holdout accuracies in the manifest)");
      }
      return fuse_weighted_average(audio.probs, video.probs, *config.weight_audio,
                                   *config.weight_video, config.tie_break);
    case FusionMethod::confidence_threshold:
      return fuse_confidence_threshold(audio, video, config.video_conf_threshold,
                                       config.tie_break);
    case FusionMethod::dynamic_weighting:
      return fuse_dynamic_weighting(audio, video, config.dynamic_mode, config.tie_break);
    case FusionMethod::rule_based:
      return fuse_rule_based(audio, video, config.agreement_threshold);
  }
  throw Error(ErrorKind::InvalidConfig, "unknown fusion method");
}

}  // namespace emofuse
