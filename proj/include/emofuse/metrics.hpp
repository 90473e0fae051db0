#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "emofuse/emotion.hpp"

namespace emofuse {

// Rows are ground truth, columns predictions, both in canonical label order.
using ConfusionMatrix = std::array<std::array<std::int64_t, kNumEmotions>, kNumEmotions>;

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;  // occurrences in the truths
};

struct MetricBundle {
  std::int64_t n_clips = 0;
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
  std::array<ClassMetrics, kNumEmotions> per_class{};
  ConfusionMatrix confusion{};
};

// Throws LengthMismatch or EmptyInput.
ConfusionMatrix confusion_matrix(std::span<const Emotion> predictions,
                                 std::span<const Emotion> truths);

// Per-class scores use 0 for any zero division. Macro averages run over the
// classes present in the truths; weighted averages weight by support.
MetricBundle compute_metrics(std::span<const Emotion> predictions,
                             std::span<const Emotion> truths);

MetricBundle metrics_from_confusion(const ConfusionMatrix& confusion);

}  // namespace emofuse
