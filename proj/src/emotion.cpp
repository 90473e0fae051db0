#include "emofuse/emotion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

#include "emofuse/error.hpp"

namespace emofuse {

namespace {

constexpr std::array<std::string_view, kNumEmotions> kNames = {
    "anger", "disgust", "fearful", "happy", "neutral", "sad"};

void check_mass(std::span<const double, kNumEmotions> raw) {
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    if (!std::isfinite(raw[i])) {
      throw Error(ErrorKind::InvalidVector,
                  "non-finite component for " + std::string(kNames[i]));
    }
    if (raw[i] < 0.0) {
      throw Error(ErrorKind::NegativeMass,
                  "negative component for " + std::string(kNames[i]));
    }
  }
}

double plain_sum(std::span<const double, kNumEmotions> raw) {
  double s = 0.0;
  for (double x : raw) s += x;
  return s;
}

}  // namespace

Emotion emotion_at(std::size_t index) {
  if (index >= kNumEmotions) {
    throw Error(ErrorKind::InvalidVector, "emotion index out of range");
  }
  return static_cast<Emotion>(index);
}

std::string_view to_string(Emotion e) { return kNames[index_of(e)]; }

std::optional<Emotion> parse_emotion(std::string_view name) {
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    if (kNames[i] == name) return static_cast<Emotion>(i);
  }
  return std::nullopt;
}

std::string_view to_string(TieBreakPolicy policy) {
  switch (policy) {
    case TieBreakPolicy::lowest_index: return "lowest_index";
    case TieBreakPolicy::highest_index: return "highest_index";
  }
  return "lowest_index";
}

std::optional<TieBreakPolicy> parse_tie_break(std::string_view name) {
  if (name == "lowest_index") return TieBreakPolicy::lowest_index;
  if (name == "highest_index") return TieBreakPolicy::highest_index;
  return std::nullopt;
}

std::string_view to_string(Modality m) {
  return m == Modality::audio ? "audio" : "video";
}

ProbabilityVector ProbabilityVector::normalize(
    std::span<const double, kNumEmotions> raw) {
  check_mass(raw);
  const double total = plain_sum(raw);
  if (total <= 0.0) {
    throw Error(ErrorKind::AllZero, "every component is zero");
  }
  Mass out{};
  for (std::size_t i = 0; i < kNumEmotions; ++i) out[i] = raw[i] / total;
  return ProbabilityVector(out);
}

ProbabilityVector ProbabilityVector::ingest(
    std::span<const double, kNumEmotions> raw) {
  check_mass(raw);
  const double total = plain_sum(raw);
  const double deviation = std::abs(total - 1.0);
  if (deviation > kIngestTolerance) {
    throw Error(ErrorKind::InvalidVector,
                "components sum to " + std::to_string(total) +
                    ", outside the 1e-3 ingestion tolerance");
  }
  if (deviation > kSumTolerance) {
    spdlog::warn("renormalizing probability vector summing to {:.9f}", total);
    return normalize(raw);
  }
  Mass out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return ProbabilityVector(out);
}

ProbabilityVector ProbabilityVector::from_distribution(const Mass& mass) {
  const std::span<const double, kNumEmotions> view(mass);
  check_mass(view);
  const double total = plain_sum(view);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw Error(ErrorKind::InvalidVector,
                "mass sums to " + std::to_string(total) + ", not 1");
  }
  return ProbabilityVector(mass);
}

ProbabilityVector ProbabilityVector::one_hot(Emotion e) {
  Mass m{};
  m[index_of(e)] = 1.0;
  return ProbabilityVector(m);
}

ProbabilityVector ProbabilityVector::uniform() {
  Mass m;
  m.fill(1.0 / static_cast<double>(kNumEmotions));
  return ProbabilityVector(m);
}

double ProbabilityVector::sum() const {
  return plain_sum(std::span<const double, kNumEmotions>(mass_));
}

ArgmaxResult argmax_label(const ProbabilityVector& probs,
                          TieBreakPolicy tie_break) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kNumEmotions; ++i) {
    const bool better = tie_break == TieBreakPolicy::lowest_index
                            ? probs[i] > probs[best]
                            : probs[i] >= probs[best];
    if (better) best = i;
  }
  return {static_cast<Emotion>(best), probs[best]};
}

ModalityPrediction ModalityPrediction::from_probs(Modality modality,
                                                  const ProbabilityVector& probs,
                                                  TieBreakPolicy tie_break) {
  const auto [label, confidence] = argmax_label(probs, tie_break);
  return {modality, probs, label, confidence};
}

}  // namespace emofuse
