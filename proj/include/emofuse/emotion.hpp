#pragma once

// Canonical emotion labels, probability vectors over them, and argmax
// extraction. Everything here is an immutable value type.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace emofuse {

// Alphabetical order; the underlying value is the canonical index.
enum class Emotion : int {
  anger = 0,
  disgust = 1,
  fearful = 2,
  happy = 3,
  neutral = 4,
  sad = 5,
};

inline constexpr std::size_t kNumEmotions = 6;

inline constexpr std::array<Emotion, kNumEmotions> kAllEmotions = {
    Emotion::anger, Emotion::disgust, Emotion::fearful,
    Emotion::happy, Emotion::neutral, Emotion::sad};

constexpr std::size_t index_of(Emotion e) { return static_cast<std::size_t>(e); }
Emotion emotion_at(std::size_t index);

std::string_view to_string(Emotion e);
std::optional<Emotion> parse_emotion(std::string_view name);

enum class TieBreakPolicy {
  lowest_index,
  highest_index,
};

std::string_view to_string(TieBreakPolicy policy);
std::optional<TieBreakPolicy> parse_tie_break(std::string_view name);

// Tolerances of the ingestion gate: sums within kSumTolerance of 1 are kept
// as-is, within kIngestTolerance renormalized with a warning, else rejected.
inline constexpr double kSumTolerance = 1e-6;
inline constexpr double kIngestTolerance = 1e-3;

class ProbabilityVector {
 public:
  using Mass = std::array<double, kNumEmotions>;

  // Proportional rescaling of non-negative mass. Throws AllZero / NegativeMass.
  static ProbabilityVector normalize(std::span<const double, kNumEmotions> raw);

  // Ingestion path for externally produced vectors (model exports, manifests).
  static ProbabilityVector ingest(std::span<const double, kNumEmotions> raw);

  // Wraps mass that must already be a distribution (sum within 1e-6).
  static ProbabilityVector from_distribution(const Mass& mass);

  static ProbabilityVector one_hot(Emotion e);
  static ProbabilityVector uniform();

  double operator[](Emotion e) const { return mass_[index_of(e)]; }
  double operator[](std::size_t i) const { return mass_[i]; }
  const Mass& mass() const { return mass_; }
  double sum() const;

  bool operator==(const ProbabilityVector&) const = default;

 private:
  explicit ProbabilityVector(const Mass& mass) : mass_(mass) {}
  Mass mass_{};
};

struct ArgmaxResult {
  Emotion label;
  double confidence;
};

ArgmaxResult argmax_label(const ProbabilityVector& probs,
                          TieBreakPolicy tie_break = TieBreakPolicy::lowest_index);

enum class Modality { audio, video };

std::string_view to_string(Modality m);

struct ModalityPrediction {
  Modality modality;
  ProbabilityVector probs;
  Emotion label;
  double confidence;

  static ModalityPrediction from_probs(
      Modality modality, const ProbabilityVector& probs,
      TieBreakPolicy tie_break = TieBreakPolicy::lowest_index);
};

}  // namespace emofuse
