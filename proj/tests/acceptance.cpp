// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli_runner.hpp"
#include "emofuse/dataset.hpp"
#include "emofuse/error.hpp"
#include "emofuse/evaluation.hpp"
#include "emofuse/fusion.hpp"
#include "emofuse/manifest.hpp"
#include "emofuse/metrics.hpp"
#include "emofuse/synth.hpp"
#include "metrics_oracle.hpp"
#include "test_support.hpp"

using namespace emofuse;
using emofuse::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Sharpened random vector so that confidences span (1/6, 1].
ProbabilityVector peaked_vector(Rng& rng) {
  const auto base = emofuse::testing::random_vector(rng, true);
  const double power = 1.0 + 6.0 * emofuse::testing::unit(rng);
  std::array<double, kNumEmotions> raw{};
  for (std::size_t i = 0; i < kNumEmotions; ++i) raw[i] = std::pow(base[i], power);
  return ProbabilityVector::normalize(raw);
}

ProbabilityVector with_mode(Rng& rng, Emotion label) {
  // Move the maximum of a random vector onto label.
  const auto p = peaked_vector(rng);
  const auto top = argmax_label(p).label;
  auto mass = p.mass();
  std::swap(mass[index_of(top)], mass[index_of(label)]);
  return ProbabilityVector::from_distribution(mass);
}

Outcome fusion_invariants() {
  Outcome o;
  const auto start = Clock::now();
  constexpr int kCases = 10000;
  Rng rng(20240501);

  for (int k = 0; k < kCases; ++k) {
    const auto a = peaked_vector(rng);
    const auto v = peaked_vector(rng);
    const auto audio = ModalityPrediction::from_probs(Modality::audio, a);
    const auto video = ModalityPrediction::from_probs(Modality::video, v);
    const double wa = 0.05 + emofuse::testing::unit(rng);
    const double wv = 0.05 + emofuse::testing::unit(rng);
    const double scale = std::pow(10.0, -3.0 + 6.0 * emofuse::testing::unit(rng));

    const FusedPrediction blended[] = {
        fuse_average(a, v), fuse_weighted_average(a, v, wa, wv),
        fuse_dynamic_weighting(audio, video, DynamicMode::inverse_confidence),
        fuse_dynamic_weighting(audio, video, DynamicMode::proportional_confidence)};
    for (const auto& out : blended) {
      o.require(out.fused_probs.has_value(), "blended method without a vector");
      double sum = 0.0;
      for (double x : out.fused_probs->mass()) {
        o.require(x >= 0.0, "negative fused component");
        sum += x;
      }
      o.require(std::abs(sum - 1.0) <= 1e-9, fmt::format("fused sum {:.17g}", sum));
      o.require(out.label == argmax_label(*out.fused_probs).label, "label is not the fused argmax");
    }

    const auto threshold_out = fuse_confidence_threshold(audio, video, 0.7);
    if (threshold_out.fused_probs) {
      double sum = 0.0;
      for (double x : threshold_out.fused_probs->mass()) sum += x;
      o.require(std::abs(sum - 1.0) <= 1e-9, "threshold fallback sum");
    }
    if (video.confidence > 0.7) {
      o.require(threshold_out.label == video.label, "threshold ignored a confident video");
    }

    const auto forward = fuse_average(a, v);
    const auto backward = fuse_average(v, a);
    o.require(*forward.fused_probs == *backward.fused_probs, "average is not symmetric");

    const auto w1 = fuse_weighted_average(a, v, wa, wv);
    const auto w2 = fuse_weighted_average(a, v, scale * wa, scale * wv);
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      o.require(std::abs((*w1.fused_probs)[i] - (*w2.fused_probs)[i]) <= 1e-12,
                "weighted average not weight-scale invariant");
    }

    // Agreeing pair: force both modes onto one label.
    const auto shared = emotion_at(static_cast<std::size_t>(rng() % kNumEmotions));
    const auto agree_a = ModalityPrediction::from_probs(Modality::audio, with_mode(rng, shared));
    const auto agree_v = ModalityPrediction::from_probs(Modality::video, with_mode(rng, shared));
    const double agreement = emofuse::testing::unit(rng);
    o.require(fuse_rule_based(agree_a, agree_v, agreement).label == shared,
              "rule_based dropped a shared label");
    o.require(fuse_rule_based(audio, video, 0.5).label ==
                  (audio.confidence > video.confidence ? audio.label : video.label) ||
                  (audio.label == video.label),
              "rule_based fallback picked the less confident model");
  }

  const double elapsed = seconds_since(start);
  o.require(elapsed < 10.0, fmt::format("runtime {:.2f}s", elapsed));
  if (o.pass) o.detail = fmt::format("{} cases/method in {:.2f}s", kCases, elapsed);
  return o;
}

Outcome hand_oracles() {
  Outcome o;
  auto vec = [](std::initializer_list<std::pair<Emotion, double>> entries) {
    return emofuse::testing::make(entries);
  };
  auto pred = [](Modality m, const ProbabilityVector& p) { return ModalityPrediction::from_probs(m, p); };
  auto near = [](double x, double y) { return std::abs(x - y) <= 1e-9; };

  // average: (0.6+0.2)/2, (0.4+0.8)/2
  auto avg = fuse_average(vec({{Emotion::anger, 0.6}, {Emotion::happy, 0.4}}),
                          vec({{Emotion::anger, 0.2}, {Emotion::happy, 0.8}}));
  o.require(near((*avg.fused_probs)[Emotion::anger], 0.4) && near(avg.confidence, 0.6) &&
                avg.label == Emotion::happy,
            "average worked example");

  auto flat = fuse_average(ProbabilityVector::uniform(), ProbabilityVector::one_hot(Emotion::happy));
  o.require(near((*flat.fused_probs)[Emotion::happy], 7.0 / 12.0) &&
                near((*flat.fused_probs)[Emotion::anger], 1.0 / 12.0),
            "average against uniform");

  // weighted: 0.59/1.47 and 0.88/1.47
  auto w = fuse_weighted_average(ProbabilityVector::one_hot(Emotion::anger),
                                 ProbabilityVector::one_hot(Emotion::happy), 0.59, 0.88);
  o.require(near((*w.fused_probs)[Emotion::anger], 59.0 / 147.0) &&
                near((*w.fused_probs)[Emotion::happy], 88.0 / 147.0) && w.label == Emotion::happy,
            "weighted worked example");

  auto t1 = fuse_confidence_threshold(pred(Modality::audio, ProbabilityVector::one_hot(Emotion::anger)),
                                      pred(Modality::video, vec({{Emotion::sad, 0.75}, {Emotion::anger, 0.25}})), 0.7);
  o.require(t1.label == Emotion::sad && t1.provenance == Provenance::video_selected, "threshold selects video");
  auto t2 = fuse_confidence_threshold(pred(Modality::audio, vec({{Emotion::anger, 0.9}, {Emotion::disgust, 0.1}})),
                                      pred(Modality::video, vec({{Emotion::anger, 0.5}, {Emotion::neutral, 0.5}})), 0.7);
  o.require(t2.label == Emotion::anger && near((*t2.fused_probs)[Emotion::anger], 0.7), "threshold averages");
  auto t3 = fuse_confidence_threshold(pred(Modality::audio, ProbabilityVector::one_hot(Emotion::anger)),
                                      pred(Modality::video, vec({{Emotion::sad, 0.7}, {Emotion::anger, 0.3}})), 0.7);
  o.require(t3.provenance == Provenance::blended, "threshold equality must fall through");

  // dynamic: conf 0.8 and 0.5; inverse shares 5/13, 8/13; proportional 8/13, 5/13
  const auto da = pred(Modality::audio, vec({{Emotion::anger, 0.8}, {Emotion::sad, 0.2}}));
  const auto dv = pred(Modality::video, vec({{Emotion::happy, 0.5}, {Emotion::sad, 0.5}}));
  auto inv = fuse_dynamic_weighting(da, dv, DynamicMode::inverse_confidence);
  o.require(near((*inv.fused_probs)[Emotion::anger], 4.0 / 13.0) &&
                near((*inv.fused_probs)[Emotion::happy], 4.0 / 13.0) &&
                near((*inv.fused_probs)[Emotion::sad], 5.0 / 13.0) && inv.label == Emotion::sad &&
                std::abs(inv.confidence - 0.384615) < 5e-7,
            "inverse dynamic weighting worked example");
  auto prop = fuse_dynamic_weighting(da, dv, DynamicMode::proportional_confidence);
  o.require(near((*prop.fused_probs)[Emotion::anger], 6.4 / 13.0) && prop.label == Emotion::anger,
            "proportional dynamic weighting worked example");

  auto r1 = fuse_rule_based(pred(Modality::audio, vec({{Emotion::happy, 0.6}, {Emotion::sad, 0.4}})),
                            pred(Modality::video, vec({{Emotion::happy, 0.7}, {Emotion::sad, 0.3}})), 0.5);
  o.require(r1.label == Emotion::happy && r1.provenance == Provenance::agreed, "rule agreed");
  auto r2 = fuse_rule_based(pred(Modality::audio, vec({{Emotion::anger, 0.9}, {Emotion::sad, 0.1}})),
                            pred(Modality::video, vec({{Emotion::happy, 0.6}, {Emotion::sad, 0.4}})), 0.5);
  o.require(r2.label == Emotion::anger && r2.provenance == Provenance::audio_selected, "rule fallback audio");
  auto r3 = fuse_rule_based(
      pred(Modality::audio, vec({{Emotion::happy, 0.45}, {Emotion::sad, 0.3}, {Emotion::anger, 0.25}})),
      pred(Modality::video, vec({{Emotion::happy, 0.7}, {Emotion::sad, 0.3}})), 0.5);
  o.require(r3.label == Emotion::happy && r3.provenance == Provenance::video_selected, "rule fallback video");

  if (o.pass) o.detail = "all worked examples within 1e-9";
  return o;
}

Outcome metrics_oracle() {
  Outcome o;
  Rng rng(777);
  const std::vector<MethodId> all(std::begin(kAllMethods), std::end(kAllMethods));
  for (int trial = 0; trial < 100; ++trial) {
    Manifest m;
    m.audio_model = ModelInfo{"a", 0.6};
    m.video_model = ModelInfo{"v", 0.85};
    const int n = 1 + static_cast<int>(rng() % 50);
    for (int i = 0; i < n; ++i) {
      ClipRecord c;
      c.clip_id = fmt::format("t{}-c{:02d}", trial, i);
      c.ground_truth = emotion_at(rng() % kNumEmotions);
      c.audio = ModalityPrediction::from_probs(Modality::audio, peaked_vector(rng));
      c.video = ModalityPrediction::from_probs(Modality::video, peaked_vector(rng));
      m.clips.push_back(std::move(c));
    }
    const auto report = evaluate(m, all, FusionConfig{});
    for (const auto& row : report.rows) {
      std::vector<Emotion> preds, truths;
      auto config = report.config;
      if (auto f = as_fusion_method(row.method)) config.method = *f;
      for (const auto& c : m.clips) {
        Emotion p = Emotion::anger;
        if (row.method == MethodId::audio_only) p = c.audio->label;
        else if (row.method == MethodId::video_only) p = c.video->label;
        else p = fuse(c, config).label;
        preds.push_back(p);
        truths.push_back(c.ground_truth);
      }
      const auto want = emofuse::testing::brute_force_metrics(preds, truths);
      const auto& got = row.metrics;
      o.require(got.confusion == want.confusion, "confusion mismatch");
      o.require(got.accuracy == want.accuracy && got.macro_precision == want.macro_precision &&
                    got.macro_recall == want.macro_recall && got.macro_f1 == want.macro_f1 &&
                    got.weighted_f1 == want.weighted_f1,
                fmt::format("metric mismatch in {}", to_string(row.method)));
      std::int64_t trace = 0, total = 0;
      for (std::size_t i = 0; i < kNumEmotions; ++i)
        for (std::size_t j = 0; j < kNumEmotions; ++j) {
          total += got.confusion[i][j];
          if (i == j) trace += got.confusion[i][j];
        }
      o.require(total == got.n_clips && got.accuracy == static_cast<double>(trace) / static_cast<double>(total),
                "accuracy/confusion inconsistency");
    }
  }

  const std::vector<Emotion> truths = {Emotion::anger, Emotion::anger, Emotion::happy, Emotion::sad, Emotion::neutral};
  const std::vector<Emotion> preds = {Emotion::anger, Emotion::happy, Emotion::happy, Emotion::sad, Emotion::sad};
  const auto hand = compute_metrics(preds, truths);
  o.require(std::abs(hand.accuracy - 0.6) < 1e-12 && std::abs(hand.macro_f1 - 0.5) < 1e-12,
            "five-clip hand case");
  if (o.pass) o.detail = "100 manifests x 7 rows exact; hand case acc 0.6, macro_f1 0.5";
  return o;
}

Outcome parser_suite() {
  Outcome o;
  const auto start = Clock::now();
  Rng rng(4242);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };

  for (int k = 0; k < 1000; ++k) {
    RavdessMeta m;
    m.modality = static_cast<RavdessModality>(pick(1, 3));
    m.vocal_channel = static_cast<VocalChannel>(pick(1, 2));
    m.emotion_code = static_cast<RavdessEmotion>(pick(1, 8));
    m.intensity = m.emotion_code == RavdessEmotion::neutral ? RavdessIntensity::normal
                                                             : static_cast<RavdessIntensity>(pick(1, 2));
    m.statement = pick(1, 2);
    m.repetition = pick(1, 2);
    m.actor = pick(1, 24);
    o.require(parse_ravdess_filename(format_ravdess_filename(m)) == m, "RAVDESS round trip");

    CremaMeta c;
    c.actor_id = pick(1001, 1091);
    c.sentence_code = {static_cast<char>('A' + pick(0, 25)), static_cast<char>('A' + pick(0, 25)),
                       static_cast<char>('A' + pick(0, 25))};
    c.emotion_code = static_cast<CremaEmotion>(pick(0, 5));
    c.intensity = static_cast<CremaIntensity>(pick(0, 3));
    o.require(parse_crema_filename(format_crema_filename(c)) == c, "CREMA-D round trip");
  }

  const auto example = parse_crema_filename("1001_IEO_ANG_HI.wav");
  o.require(example.actor_id == 1001 && example.sentence_code == "IEO" &&
                example.emotion_code == CremaEmotion::ANG && example.intensity == CremaIntensity::HI &&
                canonical_label(example) == Emotion::anger,
            "1001_IEO_ANG_HI.wav decode");

  int rejected = 0;
  for (int actor = 1; actor <= 24; ++actor) {
    for (int mod = 1; mod <= 3; ++mod) {
      try {
        parse_ravdess_filename(fmt::format("{:02d}-01-01-02-01-01-{:02d}.wav", mod, actor));
      } catch (const Error& e) {
        rejected += e.kind() == ErrorKind::NeutralStrongForbidden ? 1 : 0;
      }
    }
  }
  o.require(rejected == 72, "neutral+strong names not all rejected");

  const double elapsed = seconds_since(start);
  o.require(elapsed < 2.0, fmt::format("runtime {:.2f}s", elapsed));
  if (o.pass) o.detail = fmt::format("2x1000 round trips in {:.3f}s", elapsed);
  return o;
}

Outcome split_invariant() {
  Outcome o;
  std::vector<std::string> listing;
  for (int mod = 1; mod <= 3; ++mod)
    for (int ch = 1; ch <= 2; ++ch)
      for (int emo = 1; emo <= 8; ++emo)
        for (int inten = 1; inten <= (emo == 1 ? 1 : 2); ++inten)
          for (int st = 1; st <= 2; ++st)
            for (int rep = 1; rep <= 2; ++rep)
              for (int actor = 1; actor <= 24; ++actor)
                listing.push_back(fmt::format("{:02d}-{:02d}-{:02d}-{:02d}-{:02d}-{:02d}-{:02d}.mp4", mod, ch,
                                              emo, inten, st, rep, actor));

  for (std::uint64_t seed : {1ULL, 7ULL, 42ULL, 105ULL, 2024ULL}) {
    for (bool song : {false, true}) {
      const auto split = build_holdout_split(listing, 105, seed, {.include_song = song});
      o.require(split.holdout_files.size() == 105, "holdout size");
      const std::set<std::string> holdout(split.holdout_files.begin(), split.holdout_files.end());
      for (const auto& h : split.holdout_files) {
        auto meta = parse_ravdess_filename(h);
        o.require(meta.modality == RavdessModality::full_av, "holdout file is not full-AV");
        meta.modality = RavdessModality::video_only;
        const auto twin = format_ravdess_filename(meta, "");
        // Exhaustive scan of the training list.
        for (const auto& t : split.train_files) {
          o.require(holdout.count(t) == 0, "holdout file in training");
          o.require(format_ravdess_filename(parse_ravdess_filename(t), "") != twin,
                    fmt::format("video-only twin of {} left in training", h));
        }
      }
    }
  }
  if (o.pass) o.detail = "5 seeds x 2 channel settings, no twin in train_files";
  return o;
}

double acc(const EvaluationReport& r, MethodId m) { return r.find(m)->metrics.accuracy; }

Outcome v1_regime() {
  Outcome o;
  const auto start = Clock::now();
  SynthParams p;
  p.n_clips = 5000;
  p.acc_audio = 0.72;
  p.acc_video = 0.72;
  p.seed = 7;
  const auto r = run_benchmark(p, FusionConfig{});
  const double a = acc(r, MethodId::audio_only), v = acc(r, MethodId::video_only);
  const double avg = acc(r, MethodId::average);
  o.require(avg >= a + 0.02 && avg >= v + 0.02, "average does not beat both modalities by 2 points");
  const double elapsed = seconds_since(start);
  o.require(elapsed < 30.0, fmt::format("runtime {:.2f}s", elapsed));
  o.detail = fmt::format("audio {:.4f}, video {:.4f}, average {:.4f} ({:.2f}s){}", a, v, avg, elapsed,
                         o.pass ? "" : " -- " + o.detail);
  return o;
}

Outcome v2_regime() {
  Outcome o;
  const auto start = Clock::now();
  SynthParams p;
  p.n_clips = 5000;
  p.acc_audio = 0.59;
  p.acc_video = 0.88;
  p.seed = 7;
  const auto r = run_benchmark(p, FusionConfig{});
  const double v = acc(r, MethodId::video_only);
  const double w = acc(r, MethodId::weighted_average);
  const double t = acc(r, MethodId::confidence_threshold);
  const double avg = acc(r, MethodId::average);
  o.require(w >= v - 0.01, "weighted_average below video_only - 1 point");
  o.require(std::abs(t - v) <= 0.02, "confidence_threshold not within 2 points of video_only");
  o.require(avg < v, "average not below video_only");
  const double elapsed = seconds_since(start);
  o.require(elapsed < 30.0, fmt::format("runtime {:.2f}s", elapsed));
  o.detail = fmt::format("video {:.4f}, weighted {:.4f}, threshold {:.4f}, average {:.4f} ({:.2f}s){}", v, w, t,
                         avg, elapsed, o.pass ? "" : " -- " + o.detail);
  return o;
}

Outcome cli_determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const auto dir = emofuse::testing::scratch_dir("acceptance");
  const auto path = [&](const std::string& name) { return (dir / name).string(); };
  {
    std::ofstream list(path("files.txt"));
    for (int emo = 1; emo <= 8; ++emo)
      for (int actor = 1; actor <= 24; ++actor)
        for (int mod = 1; mod <= 2; ++mod) list << fmt::format("{:02d}-01-{:02d}-01-01-01-{:02d}.mp4\n", mod, emo, actor);
  }

  struct Step {
    std::string name;
    std::function<std::string(int)> args;  // run index -> arguments
    std::string output_file;                // empty: compare stdout
  };
  const std::vector<Step> steps = {
      {"parse", [](int) { return std::string("parse 1001_IEO_ANG_HI.wav --dataset auto"); }, ""},
      {"synth", [&](int i) { return fmt::format("synth --n 500 --acc-audio 0.59 --acc-video 0.88 --seed 3 --out {}", path(fmt::format("m{}.json", i))); }, "m{}.json"},
      {"validate", [&](int) { return "validate --manifest " + path("m0.json"); }, ""},
      {"split", [&](int i) { return fmt::format("split --files {} --seed 42 --out {}", path("files.txt"), path(fmt::format("s{}.json", i))); }, "s{}.json"},
      {"fuse", [&](int i) { return fmt::format("fuse --manifest {} --method dynamic_weighting --out {}", path("m0.json"), path(fmt::format("f{}.csv", i))); }, "f{}.csv"},
      {"evaluate", [&](int i) { return fmt::format("evaluate --manifest {} --methods all --format json --out {}", path("m0.json"), path(fmt::format("e{}.json", i))); }, "e{}.json"},
      {"report", [&](int i) { return fmt::format("report --input {} --format md --out {}", path("e0.json"), path(fmt::format("r{}.md", i))); }, "r{}.md"},
  };

  for (const auto& step : steps) {
    std::string outputs[2];
    for (int i = 0; i < 2; ++i) {
      const auto r = emofuse::testing::run_cli(step.args(i));
      o.require(r.exit_code == 0, fmt::format("{} exited {}", step.name, r.exit_code));
      outputs[i] = r.out;
      if (!step.output_file.empty() && r.exit_code == 0) {
        outputs[i] += read_text_file(path(fmt::vformat(step.output_file, fmt::make_format_args(i))));
      }
    }
    o.require(!outputs[0].empty() && outputs[0] == outputs[1], fmt::format("{} output differs between runs", step.name));
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = "parse split validate fuse evaluate synth report byte-identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"fusion invariant suite", fusion_invariants},
      {"hand-oracle exactness", hand_oracles},
      {"metrics oracle", metrics_oracle},
      {"parser suite", parser_suite},
      {"split invariant", split_invariant},
      {"V1-regime synthetic reproduction", v1_regime},
      {"V2-regime synthetic reproduction", v2_regime},
      {"CLI determinism", cli_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << o.detail << "]\n";
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : fmt::format("{} criteria failed", failures))
            << "\n";
  return failures == 0 ? 0 : 1;
}
