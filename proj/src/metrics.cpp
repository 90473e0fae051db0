#include "emofuse/metrics.hpp"

#include <fmt/format.h>

#include "emofuse/error.hpp"

namespace emofuse {

namespace {

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMatrix confusion_matrix(std::span<const Emotion> predictions,
                                 std::span<const Emotion> truths) {
  if (predictions.size() != truths.size()) {
    throw Error(ErrorKind::LengthMismatch,
                fmt::format("{} predictions vs {} truths", predictions.size(),
                            truths.size()));
  }
  if (truths.empty()) throw Error(ErrorKind::EmptyInput, "no labels to tally");

  ConfusionMatrix cm{};
  for (std::size_t k = 0; k < truths.size(); ++k) {
    ++cm[index_of(truths[k])][index_of(predictions[k])];
  }
  return cm;
}

MetricBundle metrics_from_confusion(const ConfusionMatrix& cm) {
  MetricBundle out;
  out.confusion = cm;

  std::array<std::int64_t, kNumEmotions> predicted{};
  std::int64_t correct = 0;
  for (std::size_t t = 0; t < kNumEmotions; ++t) {
    for (std::size_t p = 0; p < kNumEmotions; ++p) {
      out.n_clips += cm[t][p];
      predicted[p] += cm[t][p];
      out.per_class[t].support += cm[t][p];
    }
    correct += cm[t][t];
  }
  if (out.n_clips == 0) throw Error(ErrorKind::EmptyInput, "empty confusion matrix");
  out.accuracy = ratio(correct, out.n_clips);

  int classes_present = 0;
  for (std::size_t c = 0; c < kNumEmotions; ++c) {
    auto& m = out.per_class[c];
    m.precision = ratio(cm[c][c], predicted[c]);
    m.recall = ratio(cm[c][c], m.support);
    m.f1 = m.precision + m.recall > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    if (m.support == 0) continue;

    ++classes_present;
    out.macro_precision += m.precision;
    out.macro_recall += m.recall;
    out.macro_f1 += m.f1;
    const double w = ratio(m.support, out.n_clips);
    out.weighted_precision += w * m.precision;
    out.weighted_recall += w * m.recall;
    out.weighted_f1 += w * m.f1;
  }
  out.macro_precision /= classes_present;
  out.macro_recall /= classes_present;
  out.macro_f1 /= classes_present;
  return out;
}

MetricBundle compute_metrics(std::span<const Emotion> predictions,
                             std::span<const Emotion> truths) {
  return metrics_from_confusion(confusion_matrix(predictions, truths));
}

}  // namespace emofuse
