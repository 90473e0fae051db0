#pragma once

// Probability manifest: the JSON interchange between inference and
// evaluation.
//
// {"schema_version":"1.0",
//  "models":{"audio":{"id":"...","holdout_accuracy":0.59},
//            "video":{"id":"...","holdout_accuracy":0.88}},
//  "clips":[{"clip_id":"...","dataset":"ravdess","ground_truth":"happy",
//            "audio":{"probs":{"anger":0.0,...,"sad":0.0}},
//            "video":{"probs":{...}}}]}
//
// "models", each model's "holdout_accuracy", and each clip's "audio" and
// "video" entries are optional. Probability objects must carry exactly the
// six canonical labels.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emofuse/clip.hpp"

namespace emofuse {

inline constexpr std::string_view kManifestSchemaVersion = "1.0";

struct ModelInfo {
  std::string id;
  std::optional<double> holdout_accuracy;
};

struct Manifest {
  std::string schema_version{kManifestSchemaVersion};
  std::optional<ModelInfo> audio_model;
  std::optional<ModelInfo> video_model;
  std::vector<ClipRecord> clips;
};

// Throws SchemaError (shape/type), ValidationError (bad vector, duplicate id).
Manifest parse_manifest(std::string_view json_text);
// As parse_manifest, plus IoError when the file cannot be read.
Manifest load_manifest(const std::filesystem::path& path);

// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string serialize_manifest(const Manifest& manifest);

// SHA-256 (hex) of serialize_manifest(manifest).
std::string manifest_digest(const Manifest& manifest);

std::string sha256_hex(std::string_view bytes);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace emofuse
