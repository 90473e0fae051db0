#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "emofuse/emotion.hpp"

namespace emofuse {

enum class DatasetId { ravdess, crema_d, synthetic };

std::string_view to_string(DatasetId d);
std::optional<DatasetId> parse_dataset_id(std::string_view name);

// One media clip with its ground truth and whichever modality outputs exist.
struct ClipRecord {
  std::string clip_id;
  DatasetId dataset = DatasetId::ravdess;
  Emotion ground_truth = Emotion::neutral;
  std::optional<ModalityPrediction> audio;
  std::optional<ModalityPrediction> video;

  bool has_both() const { return audio.has_value() && video.has_value(); }
};

}  // namespace emofuse
