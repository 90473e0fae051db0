#include "emofuse/clip.hpp"

namespace emofuse {

std::string_view to_string(DatasetId d) {
  switch (d) {
    case DatasetId::ravdess: return "ravdess";
    case DatasetId::crema_d: return "crema_d";
    case DatasetId::synthetic: return "synthetic";
  }
  return "";
}

std::optional<DatasetId> parse_dataset_id(std::string_view name) {
  if (name == "ravdess") return DatasetId::ravdess;
  if (name == "crema_d") return DatasetId::crema_d;
  if (name == "synthetic") return DatasetId::synthetic;
  return std::nullopt;
}

}  // namespace emofuse
