#include "emofuse/synth.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "emofuse/error.hpp"
#include "emofuse/random.hpp"

namespace emofuse {

namespace {

constexpr int kMaxResidualAttempts = 10000;

ProbabilityVector draw_vector(SeededStream& rng, const SynthParams& p, double accuracy,
                              Emotion truth) {
  bool correct = false;
  double mode_mass = 0.0;
  if (rng.uniform01() < p.confidence_coupling) {
    const double u = rng.uniform01();
    correct = u >= 1.0 - accuracy;
    mode_mass = p.peak_low + u * (p.peak_high - p.peak_low);
  } else {
    correct = rng.uniform01() < accuracy;
    mode_mass = rng.uniform(p.peak_low, p.peak_high);
  }

  std::size_t mode = index_of(truth);
  if (!correct) {
    mode = rng.index(kNumEmotions - 1);
    if (mode >= index_of(truth)) ++mode;
  }

  const double residual = 1.0 - mode_mass;
  const double cap = p.peak_low - kResidualMargin;
  std::array<double, kNumEmotions - 1> shares{};
  bool accepted = false;
  for (int attempt = 0; attempt < kMaxResidualAttempts && !accepted; ++attempt) {
    double total = 0.0;
    for (auto& s : shares) {
      s = rng.uniform01();
      total += s;
    }
    if (total <= 0.0) continue;
    for (auto& s : shares) s = residual * s / total;
    accepted = *std::max_element(shares.begin(), shares.end()) < cap;
  }
  if (!accepted) {
    // Feasible because peak_low > 1/6 implies residual / 5 < peak_low.
    shares.fill(residual / static_cast<double>(kNumEmotions - 1));
  }

  ProbabilityVector::Mass mass{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    mass[i] = i == mode ? mode_mass : shares[k++];
  }
  return ProbabilityVector::from_distribution(mass);
}

}  // namespace

void SynthParams::validate() const {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorKind::InvalidParams, what);
  };
  if (n_clips <= 0) fail(fmt::format("n_clips must be > 0, got {}", n_clips));
  if (!(acc_audio > 0.0 && acc_audio < 1.0)) fail(fmt::format("acc_audio must lie in (0, 1), got {}", acc_audio));
  if (!(acc_video > 0.0 && acc_video < 1.0)) fail(fmt::format("acc_video must lie in (0, 1), got {}", acc_video));
  constexpr double sixth = 1.0 / 6.0;
  if (!(peak_low > sixth && peak_low <= 1.0)) fail(fmt::format("peak_low must lie in (1/6, 1], got {}", peak_low));
  if (!(peak_high > sixth && peak_high <= 1.0)) fail(fmt::format("peak_high must lie in (1/6, 1], got {}", peak_high));
  if (!(peak_low < peak_high)) fail("peak_low must be below peak_high");
  if (!(confidence_coupling >= 0.0 && confidence_coupling <= 1.0)) {
    fail(fmt::format("confidence_coupling must lie in [0, 1], got {}", confidence_coupling));
  }
}

Manifest generate_manifest(const SynthParams& params) {
  params.validate();
  SeededStream rng(params.seed);

  Manifest m;
  m.audio_model = ModelInfo{"synthetic-audio", params.acc_audio};
  m.video_model = ModelInfo{"synthetic-video", params.acc_video};
  m.clips.reserve(static_cast<std::size_t>(params.n_clips));
  for (int i = 0; i < params.n_clips; ++i) {
    ClipRecord clip;
    clip.clip_id = fmt::format("synth-{:06d}", i);
    clip.dataset = DatasetId::synthetic;
    clip.ground_truth = emotion_at(rng.index(kNumEmotions));
    clip.audio = ModalityPrediction::from_probs(
        Modality::audio, draw_vector(rng, params, params.acc_audio, clip.ground_truth));
    clip.video = ModalityPrediction::from_probs(
        Modality::video, draw_vector(rng, params, params.acc_video, clip.ground_truth));
    m.clips.push_back(std::move(clip));
  }
  return m;
}

EvaluationReport run_benchmark(const SynthParams& params, const FusionConfig& config) {
  const auto manifest = generate_manifest(params);
  return evaluate(manifest, kAllMethods, config);
}

}  // namespace emofuse
