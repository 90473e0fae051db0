#pragma once

// Filename grammars for the CREMA-D and RAVDESS corpora, label
// canonicalization across their vocabularies, and the holdout split.
//
//   CREMA-D:  <actor:4 digits>_<sentence:3 uppercase>_<emotion>_<intensity>.<ext>
//             e.g. 1001_IEO_ANG_HI.wav
//   RAVDESS:  MM-VV-EE-II-SS-RR-AA.<ext>, seven two-digit fields
//             (modality, vocal channel, emotion, intensity, statement,
//             repetition, actor), e.g. 02-01-06-01-02-01-12.mp4

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "emofuse/emotion.hpp"

namespace emofuse {

enum class CremaEmotion { ANG, DIS, FEA, HAP, NEU, SAD };
enum class CremaIntensity { LO, MD, HI, XX };

std::string_view to_string(CremaEmotion code);
std::string_view to_string(CremaIntensity code);

struct CremaMeta {
  int actor_id = 0;
  std::string sentence_code;
  CremaEmotion emotion_code = CremaEmotion::NEU;
  CremaIntensity intensity = CremaIntensity::XX;

  bool operator==(const CremaMeta&) const = default;
};

enum class RavdessModality { full_av = 1, video_only = 2, audio_only = 3 };
enum class VocalChannel { speech = 1, song = 2 };
enum class RavdessEmotion {
  neutral = 1,
  calm = 2,
  happy = 3,
  sad = 4,
  angry = 5,
  fearful = 6,
  disgust = 7,
  surprised = 8,
};
enum class RavdessIntensity { normal = 1, strong = 2 };
enum class Sex { male, female };

std::string_view to_string(RavdessModality m);
std::string_view to_string(VocalChannel c);
std::string_view to_string(RavdessEmotion e);
std::string_view to_string(RavdessIntensity i);
std::string_view to_string(Sex s);

struct RavdessMeta {
  RavdessModality modality = RavdessModality::full_av;
  VocalChannel vocal_channel = VocalChannel::speech;
  RavdessEmotion emotion_code = RavdessEmotion::neutral;
  RavdessIntensity intensity = RavdessIntensity::normal;
  int statement = 1;   // 1 or 2
  int repetition = 1;  // 1 or 2
  int actor = 1;       // 1..24

  // Odd-numbered actors are male, even-numbered female.
  Sex sex() const { return actor % 2 == 0 ? Sex::female : Sex::male; }

  bool operator==(const RavdessMeta&) const = default;
};

// Both parsers accept a bare basename or a path; directories and the
// extension are stripped, and the extension itself is not validated.
CremaMeta parse_crema_filename(std::string_view name);
RavdessMeta parse_ravdess_filename(std::string_view name);

std::string format_crema_filename(const CremaMeta& meta,
                                  std::string_view extension = ".wav");
std::string format_ravdess_filename(const RavdessMeta& meta,
                                    std::string_view extension = ".mp4");

// nullopt means the emotion is outside the six shared labels (calm, surprised).
std::optional<Emotion> canonical_label(const CremaMeta& meta);
std::optional<Emotion> canonical_label(const RavdessMeta& meta);

enum class DatasetKind { crema, ravdess };

// Underscores select CREMA-D, dashes RAVDESS; anything else is MalformedName.
DatasetKind detect_dataset(std::string_view name);

struct SplitManifest {
  std::vector<std::string> train_files;
  std::vector<std::string> holdout_files;
  std::uint64_t seed = 0;
  int holdout_size = 0;
};

struct SplitOptions {
  bool include_song = false;
};

// Uniformly samples holdout_size full-AV files with supported emotions and
// drops their video-only twins from training. Calm/surprised files (and song
// files unless include_song) are filtered from both lists. Output lists are
// sorted, so the result depends only on the set of names and the seed.
SplitManifest build_holdout_split(const std::vector<std::string>& files,
                                  int holdout_size, std::uint64_t seed,
                                  SplitOptions options = {});

std::string split_to_json(const SplitManifest& split);

}  // namespace emofuse
