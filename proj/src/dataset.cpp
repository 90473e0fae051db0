#include "emofuse/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "emofuse/error.hpp"
#include "emofuse/random.hpp"

namespace emofuse {

namespace {

constexpr std::array<std::string_view, 6> kCremaEmotionCodes = {
    "ANG", "DIS", "FEA", "HAP", "NEU", "SAD"};
constexpr std::array<std::string_view, 4> kCremaIntensityCodes = {
    "LO", "MD", "HI", "XX"};

std::string_view stem_of(std::string_view name) {
  if (const auto slash = name.find_last_of("/\\"); slash != std::string_view::npos) {
    name.remove_prefix(slash + 1);
  }
  if (const auto dot = name.rfind('.'); dot != std::string_view::npos) {
    name = name.substr(0, dot);
  }
  return name;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

bool all_upper(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= 'A' && c <= 'Z';
  });
}

int to_int(std::string_view digits) {
  int v = 0;
  for (char c : digits) v = v * 10 + (c - '0');
  return v;
}

[[noreturn]] void malformed(std::string_view name, std::string_view why) {
  throw Error(ErrorKind::MalformedName,
              fmt::format("'{}': {}", name, why));
}

int ravdess_field(std::string_view name, std::string_view field,
                  std::string_view label, int lo, int hi) {
  const int v = to_int(field);
  if (v < lo || v > hi) {
    throw Error(ErrorKind::FieldOutOfRange,
                fmt::format("'{}': {} {:02d} outside {:02d}-{:02d}", name,
                            label, v, lo, hi));
  }
  return v;
}

}  // namespace

std::string_view to_string(CremaEmotion code) {
  return kCremaEmotionCodes[static_cast<std::size_t>(code)];
}

std::string_view to_string(CremaIntensity code) {
  return kCremaIntensityCodes[static_cast<std::size_t>(code)];
}

std::string_view to_string(RavdessModality m) {
  switch (m) {
    case RavdessModality::full_av: return "full_av";
    case RavdessModality::video_only: return "video_only";
    case RavdessModality::audio_only: return "audio_only";
  }
  return "";
}

std::string_view to_string(VocalChannel c) {
  return c == VocalChannel::speech ? "speech" : "song";
}

std::string_view to_string(RavdessEmotion e) {
  static constexpr std::array<std::string_view, 8> names = {
      "neutral", "calm", "happy", "sad", "angry", "fearful", "disgust",
      "surprised"};
  return names[static_cast<std::size_t>(e) - 1];
}

std::string_view to_string(RavdessIntensity i) {
  return i == RavdessIntensity::normal ? "normal" : "strong";
}

std::string_view to_string(Sex s) { return s == Sex::male ? "male" : "female"; }

CremaMeta parse_crema_filename(std::string_view name) {
  const auto stem = stem_of(name);
  const auto fields = split(stem, '_');
  if (fields.size() != 4) malformed(name, "expected four underscore-separated fields");
  if (fields[0].size() != 4 || !all_digits(fields[0])) {
    malformed(name, "actor id must be four digits");
  }
  if (fields[1].size() != 3 || !all_upper(fields[1])) {
    malformed(name, "sentence code must be three uppercase letters");
  }

  CremaMeta meta;
  meta.actor_id = to_int(fields[0]);
  meta.sentence_code = std::string(fields[1]);

  const auto emo = std::find(kCremaEmotionCodes.begin(), kCremaEmotionCodes.end(), fields[2]);
  if (emo == kCremaEmotionCodes.end()) {
    throw Error(ErrorKind::UnknownEmotionCode,
                fmt::format("'{}': emotion code '{}'", name, fields[2]));
  }
  meta.emotion_code =
      static_cast<CremaEmotion>(std::distance(kCremaEmotionCodes.begin(), emo));

  const auto inten = std::find(kCremaIntensityCodes.begin(), kCremaIntensityCodes.end(), fields[3]);
  if (inten == kCremaIntensityCodes.end()) {
    throw Error(ErrorKind::UnknownIntensity,
                fmt::format("'{}': intensity code '{}'", name, fields[3]));
  }
  meta.intensity =
      static_cast<CremaIntensity>(std::distance(kCremaIntensityCodes.begin(), inten));
  return meta;
}

RavdessMeta parse_ravdess_filename(std::string_view name) {
  const auto stem = stem_of(name);
  const auto fields = split(stem, '-');
  if (fields.size() != 7) malformed(name, "expected seven dash-separated fields");
  for (const auto f : fields) {
    if (f.size() != 2 || !all_digits(f)) malformed(name, "fields must be two digits");
  }

  RavdessMeta meta;
  meta.modality = static_cast<RavdessModality>(ravdess_field(name, fields[0], "modality", 1, 3));
  meta.vocal_channel = static_cast<VocalChannel>(ravdess_field(name, fields[1], "vocal channel", 1, 2));
  meta.emotion_code = static_cast<RavdessEmotion>(ravdess_field(name, fields[2], "emotion", 1, 8));
  meta.intensity = static_cast<RavdessIntensity>(ravdess_field(name, fields[3], "intensity", 1, 2));
  meta.statement = ravdess_field(name, fields[4], "statement", 1, 2);
  meta.repetition = ravdess_field(name, fields[5], "repetition", 1, 2);
  meta.actor = ravdess_field(name, fields[6], "actor", 1, 24);

  if (meta.emotion_code == RavdessEmotion::neutral &&
      meta.intensity == RavdessIntensity::strong) {
    throw Error(ErrorKind::NeutralStrongForbidden,
                fmt::format("'{}': neutral has no strong intensity", name));
  }
  return meta;
}

std::string format_crema_filename(const CremaMeta& meta, std::string_view extension) {
  return fmt::format("{:04d}_{}_{}_{}{}", meta.actor_id, meta.sentence_code,
                     to_string(meta.emotion_code), to_string(meta.intensity),
                     extension);
}

std::string format_ravdess_filename(const RavdessMeta& meta, std::string_view extension) {
  return fmt::format("{:02d}-{:02d}-{:02d}-{:02d}-{:02d}-{:02d}-{:02d}{}",
                     static_cast<int>(meta.modality),
                     static_cast<int>(meta.vocal_channel),
                     static_cast<int>(meta.emotion_code),
                     static_cast<int>(meta.intensity), meta.statement,
                     meta.repetition, meta.actor, extension);
}

std::optional<Emotion> canonical_label(const CremaMeta& meta) {
  switch (meta.emotion_code) {
    case CremaEmotion::ANG: return Emotion::anger;
    case CremaEmotion::DIS: return Emotion::disgust;
    case CremaEmotion::FEA: return Emotion::fearful;
    case CremaEmotion::HAP: return Emotion::happy;
    case CremaEmotion::NEU: return Emotion::neutral;
    case CremaEmotion::SAD: return Emotion::sad;
  }
  return std::nullopt;
}

std::optional<Emotion> canonical_label(const RavdessMeta& meta) {
  switch (meta.emotion_code) {
    case RavdessEmotion::neutral: return Emotion::neutral;
    case RavdessEmotion::happy: return Emotion::happy;
    case RavdessEmotion::sad: return Emotion::sad;
    case RavdessEmotion::angry: return Emotion::anger;
    case RavdessEmotion::fearful: return Emotion::fearful;
    case RavdessEmotion::disgust: return Emotion::disgust;
    case RavdessEmotion::calm:
    case RavdessEmotion::surprised: return std::nullopt;
  }
  return std::nullopt;
}

DatasetKind detect_dataset(std::string_view name) {
  const auto stem = stem_of(name);
  const bool underscores = stem.find('_') != std::string_view::npos;
  const bool dashes = stem.find('-') != std::string_view::npos;
  if (underscores && !dashes) return DatasetKind::crema;
  if (dashes && !underscores) return DatasetKind::ravdess;
  malformed(name, "matches neither the CREMA-D nor the RAVDESS grammar");
}

SplitManifest build_holdout_split(const std::vector<std::string>& files,
                                  int holdout_size, std::uint64_t seed,
                                  SplitOptions options) {
  if (holdout_size < 0) {
    throw Error(ErrorKind::InvalidParams, "holdout size must be non-negative");
  }

  struct Entry {
    std::string name;
    RavdessMeta meta;
  };
  std::vector<Entry> kept;
  std::set<std::string> seen;
  for (const auto& f : files) {
    auto meta = parse_ravdess_filename(f);
    if (!canonical_label(meta)) continue;
    if (meta.vocal_channel == VocalChannel::song && !options.include_song) continue;
    if (!seen.insert(f).second) continue;
    kept.push_back({f, meta});
  }
  std::sort(kept.begin(), kept.end(),
            [](const Entry& a, const Entry& b) { return a.name < b.name; });

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i].meta.modality == RavdessModality::full_av) candidates.push_back(i);
  }
  if (candidates.size() < static_cast<std::size_t>(holdout_size)) {
    throw Error(ErrorKind::InsufficientFiles,
                fmt::format("{} eligible full-AV files, {} requested",
                            candidates.size(), holdout_size));
  }

  // Partial Fisher-Yates: the first holdout_size slots are the sample.
  SeededStream rng(seed);
  for (std::size_t i = 0; i < static_cast<std::size_t>(holdout_size); ++i) {
    const auto j = i + rng.index(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }

  std::vector<bool> excluded(kept.size(), false);
  std::set<std::string> twins;
  SplitManifest split;
  split.seed = seed;
  split.holdout_size = holdout_size;
  for (std::size_t i = 0; i < static_cast<std::size_t>(holdout_size); ++i) {
    const auto& entry = kept[candidates[i]];
    excluded[candidates[i]] = true;
    split.holdout_files.push_back(entry.name);
    auto twin = entry.meta;
    twin.modality = RavdessModality::video_only;
    twins.insert(format_ravdess_filename(twin, ""));
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (excluded[i] || twins.contains(format_ravdess_filename(kept[i].meta, ""))) continue;
    split.train_files.push_back(kept[i].name);
  }
  std::sort(split.holdout_files.begin(), split.holdout_files.end());
  return split;
}

std::string split_to_json(const SplitManifest& split) {
  nlohmann::json j;
  j["seed"] = split.seed;
  j["holdout_size"] = split.holdout_size;
  j["train_files"] = split.train_files;
  j["holdout_files"] = split.holdout_files;
  return j.dump(2) + "\n";
}

}  // namespace emofuse
