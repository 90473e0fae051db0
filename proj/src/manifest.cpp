#include "emofuse/manifest.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "emofuse/error.hpp"

namespace emofuse {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::SchemaError, fmt::format("{}: {}", where, what));
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, fmt::format("missing field '{}'", key));
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) schema_error(where, fmt::format("'{}' must be a string", key));
  return v.get<std::string>();
}

ModelInfo parse_model(const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "model entry must be an object");
  ModelInfo info;
  info.id = require_string(j, "id", where);
  if (const auto it = j.find("holdout_accuracy"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) schema_error(where, "'holdout_accuracy' must be a number");
    const double acc = it->get<double>();
    if (!(acc > 0.0 && acc <= 1.0)) {
      throw Error(ErrorKind::ValidationError,
                  fmt::format("{}: holdout_accuracy {} outside (0, 1]", where, acc));
    }
    info.holdout_accuracy = acc;
  }
  return info;
}

ModalityPrediction parse_modality(const json& j, Modality modality,
                                  const std::string& where) {
  if (!j.is_object()) schema_error(where, "modality entry must be an object");
  const auto& probs = require(j, "probs", where);
  if (!probs.is_object()) schema_error(where, "'probs' must be an object");

  std::array<double, kNumEmotions> raw{};
  std::array<bool, kNumEmotions> present{};
  for (const auto& [key, value] : probs.items()) {
    const auto label = parse_emotion(key);
    if (!label) schema_error(where, fmt::format("unknown label '{}' in probs", key));
    if (!value.is_number()) schema_error(where, fmt::format("probs.{} must be a number", key));
    raw[index_of(*label)] = value.get<double>();
    present[index_of(*label)] = true;
  }
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    if (!present[i]) {
      schema_error(where, fmt::format("probs missing label '{}'", to_string(emotion_at(i))));
    }
  }

  try {
    return ModalityPrediction::from_probs(modality, ProbabilityVector::ingest(raw));
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, fmt::format("{}: {}", where, e.what()));
  }
}

json probs_to_json(const ProbabilityVector& probs) {
  json out = json::object();
  for (auto e : kAllEmotions) out[std::string(to_string(e))] = probs[e];
  return out;
}

json model_to_json(const ModelInfo& info) {
  json out = {{"id", info.id}};
  if (info.holdout_accuracy) out["holdout_accuracy"] = *info.holdout_accuracy;
  return out;
}

}  // namespace

Manifest parse_manifest(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, fmt::format("invalid JSON: {}", e.what()));
  }
  if (!root.is_object()) schema_error("manifest", "top level must be an object");

  Manifest m;
  m.schema_version = require_string(root, "schema_version", "manifest");
  if (m.schema_version != kManifestSchemaVersion) {
    schema_error("manifest", fmt::format("unsupported schema_version '{}'", m.schema_version));
  }

  if (const auto it = root.find("models"); it != root.end() && !it->is_null()) {
    if (!it->is_object()) schema_error("models", "must be an object");
    if (const auto a = it->find("audio"); a != it->end()) m.audio_model = parse_model(*a, "models.audio");
    if (const auto v = it->find("video"); v != it->end()) m.video_model = parse_model(*v, "models.video");
  }

  const auto& clips = require(root, "clips", "manifest");
  if (!clips.is_array()) schema_error("manifest", "'clips' must be an array");

  std::set<std::string> ids;
  m.clips.reserve(clips.size());
  for (std::size_t i = 0; i < clips.size(); ++i) {
    const auto& c = clips[i];
    std::string where = fmt::format("clips[{}]", i);
    if (!c.is_object()) schema_error(where, "clip must be an object");

    ClipRecord rec;
    rec.clip_id = require_string(c, "clip_id", where);
    if (rec.clip_id.empty()) schema_error(where, "clip_id is empty");
    where = fmt::format("clip '{}'", rec.clip_id);

    const auto dataset = require_string(c, "dataset", where);
    const auto ds = parse_dataset_id(dataset);
    if (!ds) schema_error(where, fmt::format("unknown dataset '{}'", dataset));
    rec.dataset = *ds;

    const auto truth = require_string(c, "ground_truth", where);
    const auto label = parse_emotion(truth);
    if (!label) schema_error(where, fmt::format("unknown ground_truth '{}'", truth));
    rec.ground_truth = *label;

    if (const auto a = c.find("audio"); a != c.end() && !a->is_null()) {
      rec.audio = parse_modality(*a, Modality::audio, where + " audio");
    }
    if (const auto v = c.find("video"); v != c.end() && !v->is_null()) {
      rec.video = parse_modality(*v, Modality::video, where + " video");
    }

    if (!ids.insert(rec.clip_id).second) {
      throw Error(ErrorKind::ValidationError,
                  fmt::format("duplicate clip_id '{}'", rec.clip_id));
    }
    m.clips.push_back(std::move(rec));
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_text_file(path));
}

std::string serialize_manifest(const Manifest& manifest) {
  json root;
  root["schema_version"] = manifest.schema_version;
  json models = json::object();
  if (manifest.audio_model) models["audio"] = model_to_json(*manifest.audio_model);
  if (manifest.video_model) models["video"] = model_to_json(*manifest.video_model);
  root["models"] = std::move(models);

  json clips = json::array();
  for (const auto& c : manifest.clips) {
    json jc = {{"clip_id", c.clip_id},
               {"dataset", std::string(to_string(c.dataset))},
               {"ground_truth", std::string(to_string(c.ground_truth))}};
    if (c.audio) jc["audio"] = {{"probs", probs_to_json(c.audio->probs)}};
    if (c.video) jc["video"] = {{"probs", probs_to_json(c.video->probs)}};
    clips.push_back(std::move(jc));
  }
  root["clips"] = std::move(clips);
  return root.dump(2) + "\n";
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::IoError, "SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string manifest_digest(const Manifest& manifest) {
  return sha256_hex(serialize_manifest(manifest));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::IoError, fmt::format("cannot read '{}'", path.string()));
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, fmt::format("cannot write '{}'", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::IoError, fmt::format("short write to '{}'", path.string()));
}

}  // namespace emofuse
