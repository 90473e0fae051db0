#pragma once

// Seeded synthetic manifests with per-modality target accuracies.
//
// Per clip the truth is uniform over the six labels. Each modality then
// independently draws a mode label (the truth with probability acc, else a
// uniformly chosen wrong label) and a mode mass, uniform on
// [peak_low, peak_high]. The remaining mass is split over the other five
// labels by normalized uniform draws, resampled until every share is below
// peak_low - 1e-6 so the mode is the strict argmax.
//
// confidence_coupling sets how often correctness and mode mass come from
// one shared quantile u (correct iff u >= 1 - acc, mass = lerp(u)) instead
// of two independent draws. Both branches keep the marginals exact; the
// coupled branch makes confident outputs more often correct.

#include <cstdint>

#include "emofuse/evaluation.hpp"
#include "emofuse/manifest.hpp"

namespace emofuse {

inline constexpr double kResidualMargin = 1e-6;

struct SynthParams {
  int n_clips = 1000;
  double acc_audio = 0.72;
  double acc_video = 0.72;
  double peak_low = 0.5;
  double peak_high = 0.95;
  double confidence_coupling = 0.75;
  std::uint64_t seed = 0;

  // Throws InvalidParams.
  void validate() const;
};

Manifest generate_manifest(const SynthParams& params);

// Generates a manifest and evaluates all seven report rows on it.
EvaluationReport run_benchmark(const SynthParams& params, const FusionConfig& config);

}  // namespace emofuse
