// emofuse: command-line entry point.
//
//   emofuse parse 1001_IEO_ANG_HI.wav --dataset auto
//   emofuse split --dir RAVDESS/ --holdout-size 105 --seed 42 --out split.json
//   emofuse validate --manifest probs.json
//   emofuse fuse --manifest probs.json --method rule_based --out fused.csv
//   emofuse evaluate --manifest probs.json --methods all --format csv
//   emofuse synth --n 5000 --acc-audio 0.59 --acc-video 0.88 --seed 7 --out m.json
//   emofuse report --input report.json --format md
//
// Exit codes: 0 success, 1 validation or domain error, 2 I/O or schema error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "emofuse/dataset.hpp"
#include "emofuse/error.hpp"
#include "emofuse/evaluation.hpp"
#include "emofuse/fusion.hpp"
#include "emofuse/log.hpp"
#include "emofuse/manifest.hpp"
#include "emofuse/report.hpp"
#include "emofuse/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct FusionFlags {
  double video_threshold = 0.7;
  double agreement_threshold = 0.5;
  std::optional<double> weight_audio;
  std::optional<double> weight_video;
  std::string dynamic_mode = "inverse_confidence";
  std::string tie_break = "lowest_index";

  void attach(CLI::App* cmd) {
    cmd->add_option("--video-threshold", video_threshold,
                    "Video confidence threshold for confidence_threshold")
        ->capture_default_str();
    cmd->add_option("--agreement-threshold", agreement_threshold,
                    "Agreement confidence threshold for rule_based")
        ->capture_default_str();
    cmd->add_option("--weight-audio", weight_audio,
                    "Audio weight for weighted_average (default: manifest holdout accuracy)");
    cmd->add_option("--weight-video", weight_video,
                    "Video weight for weighted_average (default: manifest holdout accuracy)");
    cmd->add_option("--dynamic-mode", dynamic_mode, "Dynamic weighting mode")
        ->check(CLI::IsMember({"inverse_confidence", "proportional_confidence"}))
        ->capture_default_str();
    cmd->add_option("--tie-break", tie_break, "Argmax tie-break policy")
        ->check(CLI::IsMember({"lowest_index", "highest_index"}))
        ->capture_default_str();
  }

  emofuse::FusionConfig to_config() const {
    emofuse::FusionConfig c;
    c.video_conf_threshold = video_threshold;
    c.agreement_threshold = agreement_threshold;
    c.weight_audio = weight_audio;
    c.weight_video = weight_video;
    c.dynamic_mode = *emofuse::parse_dynamic_mode(dynamic_mode);
    c.tie_break = *emofuse::parse_tie_break(tie_break);
    return c;
  }
};

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    emofuse::write_text_file(out_path, text);
  }
}

json crema_to_json(const emofuse::CremaMeta& m) {
  const auto label = emofuse::canonical_label(m);
  return {{"dataset", "crema_d"},
          {"actor_id", m.actor_id},
          {"sentence_code", m.sentence_code},
          {"emotion_code", std::string(emofuse::to_string(m.emotion_code))},
          {"intensity", std::string(emofuse::to_string(m.intensity))},
          {"emotion", std::string(emofuse::to_string(*label))},
          {"canonical", std::string(emofuse::to_string(*label))}};
}

json ravdess_to_json(const emofuse::RavdessMeta& m) {
  const auto label = emofuse::canonical_label(m);
  return {{"dataset", "ravdess"},
          {"modality", std::string(emofuse::to_string(m.modality))},
          {"vocal_channel", std::string(emofuse::to_string(m.vocal_channel))},
          {"emotion_code", static_cast<int>(m.emotion_code)},
          {"emotion", std::string(emofuse::to_string(m.emotion_code))},
          {"intensity", std::string(emofuse::to_string(m.intensity))},
          {"statement", m.statement},
          {"repetition", m.repetition},
          {"actor", m.actor},
          {"sex", std::string(emofuse::to_string(m.sex()))},
          {"canonical", label ? std::string(emofuse::to_string(*label)) : "unsupported"}};
}

std::vector<std::string> read_file_list(const fs::path& path) {
  std::vector<std::string> names;
  std::istringstream in(emofuse::read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    names.push_back(fs::path(line).filename().string());
  }
  return names;
}

std::vector<std::string> list_directory(const fs::path& dir) {
  std::vector<std::string> names;
  std::error_code ec;
  fs::recursive_directory_iterator it(dir, ec);
  if (ec) {
    throw emofuse::Error(emofuse::ErrorKind::IoError,
                         fmt::format("cannot list '{}': {}", dir.string(), ec.message()));
  }
  for (const auto& entry : it) {
    if (!entry.is_regular_file()) continue;
    auto name = entry.path().filename().string();
    try {
      emofuse::parse_ravdess_filename(name);
    } catch (const emofuse::Error& e) {
      spdlog::warn("skipping {}", e.what());
      continue;
    }
    names.push_back(std::move(name));
  }
  return names;
}

int exit_code_for(const emofuse::Error& e) {
  switch (e.kind()) {
    case emofuse::ErrorKind::IoError:
    case emofuse::ErrorKind::SchemaError: return 2;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  emofuse::init_logging_from_env();

  CLI::App app{"Late-fusion evaluation for audio/video emotion recognition", "emofuse"};
  app.require_subcommand(1);

  // parse
  std::string parse_name;
  std::string parse_dataset = "auto";
  auto* parse_cmd = app.add_subcommand("parse", "Decode a CREMA-D or RAVDESS filename");
  parse_cmd->add_option("filename", parse_name, "File name or path")->required();
  parse_cmd->add_option("--dataset", parse_dataset, "Filename grammar")
      ->check(CLI::IsMember({"crema", "ravdess", "auto"}))
      ->capture_default_str();

  // split
  std::string split_files;
  std::string split_dir;
  int split_holdout = 105;
  std::uint64_t split_seed = 42;
  bool split_song = false;
  std::string split_out;
  auto* split_cmd = app.add_subcommand("split", "Build the RAVDESS holdout split");
  auto* files_opt = split_cmd->add_option("--files", split_files, "Newline-delimited file list");
  auto* dir_opt = split_cmd->add_option("--dir", split_dir, "Directory to list recursively");
  files_opt->excludes(dir_opt);
  split_cmd->add_option("--holdout-size", split_holdout, "Number of full-AV holdout files")
      ->capture_default_str();
  split_cmd->add_option("--seed", split_seed, "Sampling seed")->capture_default_str();
  split_cmd->add_flag("--include-song", split_song, "Keep song-channel files");
  split_cmd->add_option("--out", split_out, "Output path (default stdout)");

  // validate
  std::string validate_manifest;
  auto* validate_cmd = app.add_subcommand("validate", "Validate a probability manifest");
  validate_cmd->add_option("--manifest", validate_manifest, "Manifest JSON")->required();

  // fuse
  std::string fuse_manifest;
  std::string fuse_method = "average";
  std::string fuse_out;
  FusionFlags fuse_flags;
  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse every two-modality clip with one method");
  fuse_cmd->add_option("--manifest", fuse_manifest, "Manifest JSON")->required();
  fuse_cmd->add_option("--method", fuse_method, "Fusion method")
      ->check(CLI::IsMember({"average", "weighted_average", "confidence_threshold",
                             "dynamic_weighting", "rule_based"}))
      ->capture_default_str();
  fuse_cmd->add_option("--out", fuse_out, "Output CSV (default stdout)");
  fuse_flags.attach(fuse_cmd);

  // evaluate
  std::string eval_manifest;
  std::string eval_methods = "all";
  std::string eval_format = "json";
  std::string eval_out;
  FusionFlags eval_flags;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate unimodal and fusion methods");
  eval_cmd->add_option("--manifest", eval_manifest, "Manifest JSON")->required();
  eval_cmd->add_option("--methods", eval_methods, "all or a comma-separated list")
      ->capture_default_str();
  eval_cmd->add_option("--format", eval_format, "json, csv or md")->capture_default_str();
  eval_cmd->add_option("--out", eval_out, "Output path (default stdout)");
  eval_flags.attach(eval_cmd);

  // synth
  emofuse::SynthParams synth;
  synth.seed = 1;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic probability manifest");
  synth_cmd->add_option("--n", synth.n_clips, "Number of clips")->capture_default_str();
  synth_cmd->add_option("--acc-audio", synth.acc_audio, "Target audio accuracy in (0,1)")
      ->capture_default_str();
  synth_cmd->add_option("--acc-video", synth.acc_video, "Target video accuracy in (0,1)")
      ->capture_default_str();
  synth_cmd->add_option("--peak-low", synth.peak_low, "Lower bound of the mode mass")
      ->capture_default_str();
  synth_cmd->add_option("--peak-high", synth.peak_high, "Upper bound of the mode mass")
      ->capture_default_str();
  synth_cmd->add_option("--coupling", synth.confidence_coupling,
                        "Share of draws where confidence tracks correctness")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Output manifest path")->required();

  // report
  std::string report_input;
  std::string report_format = "md";
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Re-render a JSON evaluation report");
  report_cmd->add_option("--input", report_input, "JSON report from evaluate")->required();
  report_cmd->add_option("--format", report_format, "json, csv or md")->capture_default_str();
  report_cmd->add_option("--out", report_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const auto* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << failing->help();
    return 1;
  }

  try {
    if (*parse_cmd) {
      auto kind = emofuse::DatasetKind::crema;
      if (parse_dataset == "ravdess") kind = emofuse::DatasetKind::ravdess;
      else if (parse_dataset == "auto") kind = emofuse::detect_dataset(parse_name);
      const json out = kind == emofuse::DatasetKind::crema
                           ? crema_to_json(emofuse::parse_crema_filename(parse_name))
                           : ravdess_to_json(emofuse::parse_ravdess_filename(parse_name));
      std::cout << out.dump(2) << "\n";
    } else if (*split_cmd) {
      if (split_files.empty() && split_dir.empty()) {
        std::cerr << "error: split needs --files or --dir\n\n" << split_cmd->help();
        return 1;
      }
      const auto names = split_files.empty() ? list_directory(split_dir)
                                             : read_file_list(split_files);
      const auto split = emofuse::build_holdout_split(names, split_holdout, split_seed,
                                                      {.include_song = split_song});
      emit(split_out, emofuse::split_to_json(split));
    } else if (*validate_cmd) {
      const auto manifest = emofuse::load_manifest(validate_manifest);
      std::size_t both = 0;
      for (const auto& c : manifest.clips) both += c.has_both() ? 1 : 0;
      std::cout << fmt::format("ok: {} clips ({} with both modalities), digest {}\n",
                               manifest.clips.size(), both,
                               emofuse::manifest_digest(manifest));
    } else if (*fuse_cmd) {
      const auto manifest = emofuse::load_manifest(fuse_manifest);
      auto config = emofuse::resolve_config(manifest, fuse_flags.to_config());
      config.method = *emofuse::parse_fusion_method(fuse_method);
      config.validate();

      std::vector<const emofuse::ClipRecord*> clips;
      for (const auto& c : manifest.clips) clips.push_back(&c);
      std::sort(clips.begin(), clips.end(),
                [](auto* a, auto* b) { return a->clip_id < b->clip_id; });

      std::string out = "clip_id,ground_truth,method,label,confidence,provenance\n";
      for (const auto* clip : clips) {
        if (!clip->has_both()) {
          spdlog::warn("clip '{}' lacks a modality; skipped", clip->clip_id);
          continue;
        }
        const auto fused = emofuse::fuse(*clip, config);
        out += fmt::format("{},{},{},{},{:.6f},{}\n", clip->clip_id,
                           emofuse::to_string(clip->ground_truth),
                           emofuse::to_string(fused.method), emofuse::to_string(fused.label),
                           fused.confidence, emofuse::to_string(fused.provenance));
      }
      emit(fuse_out, out);
    } else if (*eval_cmd) {
      const auto format = emofuse::parse_report_format(eval_format);
      const auto methods = emofuse::parse_method_list(eval_methods);
      const auto manifest = emofuse::load_manifest(eval_manifest);
      const auto report = emofuse::evaluate(manifest, methods, eval_flags.to_config());
      emit(eval_out, emofuse::render_report(report, format));
    } else if (*synth_cmd) {
      const auto manifest = emofuse::generate_manifest(synth);
      const auto text = emofuse::serialize_manifest(manifest);
      emofuse::write_text_file(synth_out, text);
      std::cout << emofuse::sha256_hex(text) << "\n";
    } else if (*report_cmd) {
      const auto format = emofuse::parse_report_format(report_format);
      const auto report = emofuse::report_from_json(emofuse::read_text_file(report_input));
      emit(report_out, emofuse::render_report(report, format));
    }
  } catch (const emofuse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
