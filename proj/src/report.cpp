#include "emofuse/report.hpp"

#include <fmt/format.h>

#include "emofuse/error.hpp"

namespace emofuse {

namespace {

using nlohmann::json;

std::string fixed6(double v) {
  auto s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void dump_into(const json& v, int indent, int depth, std::string& out) {
  const auto pad = [&](int d) {
    if (indent > 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, child] : v.items()) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        out += json(key).dump();
        out += indent > 0 ? ": " : ":";
        dump_into(child, indent, depth + 1, out);
      }
      pad(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& child : v) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        dump_into(child, indent, depth + 1, out);
      }
      pad(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += fixed6(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json report_to_json(const EvaluationReport& report) {
  const auto& c = report.config;
  json config = {
      {"video_conf_threshold", c.video_conf_threshold},
      {"agreement_threshold", c.agreement_threshold},
      {"weight_audio", optional_number(c.weight_audio)},
      {"weight_video", optional_number(c.weight_video)},
      {"dynamic_mode", std::string(to_string(c.dynamic_mode))},
      {"tie_break", std::string(to_string(c.tie_break))},
  };

  json methods = json::array();
  for (const auto& row : report.rows) {
    const auto& m = row.metrics;
    json confusion = json::array();
    for (const auto& r : m.confusion) confusion.push_back(r);
    methods.push_back({
        {"method", std::string(to_string(row.method))},
        {"n_clips", m.n_clips},
        {"accuracy", m.accuracy},
        {"weighted_f1", m.weighted_f1},
        {"weighted_precision", m.weighted_precision},
        {"weighted_recall", m.weighted_recall},
        {"macro_f1", m.macro_f1},
        {"macro_precision", m.macro_precision},
        {"macro_recall", m.macro_recall},
        {"confusion", std::move(confusion)},
    });
  }
  return {{"config", std::move(config)},
          {"manifest_digest", report.manifest_digest},
          {"methods", std::move(methods)}};
}

std::string render_csv(const EvaluationReport& report) {
  std::string out = "method,n_clips,accuracy,macro_f1,weighted_f1,macro_precision,macro_recall\n";
  for (const auto& row : report.rows) {
    const auto& m = row.metrics;
    out += fmt::format("{},{},{},{},{},{},{}\n", to_string(row.method), m.n_clips,
                       fixed6(m.accuracy), fixed6(m.macro_f1), fixed6(m.weighted_f1),
                       fixed6(m.macro_precision), fixed6(m.macro_recall));
  }
  return out;
}

std::string render_markdown(const EvaluationReport& report) {
  std::string out = "# Evaluation report\n\n";
  out += fmt::format("Manifest digest: `{}`\n\n", report.manifest_digest);
  out += "| method | n_clips | accuracy | weighted_f1 | macro_f1 | macro_precision | macro_recall |\n";
  out += "|---|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& row : report.rows) {
    const auto& m = row.metrics;
    out += fmt::format("| {} | {} | {} | {} | {} | {} | {} |\n", to_string(row.method),
                       m.n_clips, fixed6(m.accuracy), fixed6(m.weighted_f1),
                       fixed6(m.macro_f1), fixed6(m.macro_precision),
                       fixed6(m.macro_recall));
  }

  for (const auto& row : report.rows) {
    out += fmt::format("\n## {} confusion matrix (rows: truth, columns: prediction)\n\n",
                       to_string(row.method));
    out += "| truth |";
    for (auto e : kAllEmotions) out += fmt::format(" {} |", to_string(e));
    out += "\n|---|";
    for (std::size_t i = 0; i < kNumEmotions; ++i) out += "---:|";
    out += '\n';
    for (auto t : kAllEmotions) {
      out += fmt::format("| {} |", to_string(t));
      for (auto p : kAllEmotions) {
        out += fmt::format(" {} |", row.metrics.confusion[index_of(t)][index_of(p)]);
      }
      out += '\n';
    }
  }
  return out;
}

std::optional<double> read_optional_number(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string dump_fixed(const json& value, int indent) {
  std::string out;
  dump_into(value, indent, 0, out);
  return out;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "md" || name == "markdown") return ReportFormat::markdown;
  throw Error(ErrorKind::UnsupportedFormat, fmt::format("unknown report format '{}'", name));
}

std::string render_report(const EvaluationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return dump_fixed(report_to_json(report)) + "\n";
    case ReportFormat::csv: return render_csv(report);
    case ReportFormat::markdown: return render_markdown(report);
  }
  throw Error(ErrorKind::UnsupportedFormat, "unknown report format");
}

EvaluationReport report_from_json(std::string_view json_text) {
  EvaluationReport report;
  try {
    const auto root = json::parse(json_text);
    const auto& c = root.at("config");
    report.config.video_conf_threshold = c.at("video_conf_threshold").get<double>();
    report.config.agreement_threshold = c.at("agreement_threshold").get<double>();
    report.config.weight_audio = read_optional_number(c.at("weight_audio"));
    report.config.weight_video = read_optional_number(c.at("weight_video"));
    const auto mode = parse_dynamic_mode(c.at("dynamic_mode").get<std::string>());
    const auto tie = parse_tie_break(c.at("tie_break").get<std::string>());
    if (!mode || !tie) throw Error(ErrorKind::SchemaError, "report: bad config enum");
    report.config.dynamic_mode = *mode;
    report.config.tie_break = *tie;
    report.manifest_digest = root.at("manifest_digest").get<std::string>();

    for (const auto& jm : root.at("methods")) {
      const auto id = parse_method_id(jm.at("method").get<std::string>());
      if (!id) throw Error(ErrorKind::SchemaError, "report: unknown method");
      MetricBundle m;
      m.n_clips = jm.at("n_clips").get<std::int64_t>();
      m.accuracy = jm.at("accuracy").get<double>();
      m.weighted_f1 = jm.at("weighted_f1").get<double>();
      m.weighted_precision = jm.at("weighted_precision").get<double>();
      m.weighted_recall = jm.at("weighted_recall").get<double>();
      m.macro_f1 = jm.at("macro_f1").get<double>();
      m.macro_precision = jm.at("macro_precision").get<double>();
      m.macro_recall = jm.at("macro_recall").get<double>();
      const auto& cm = jm.at("confusion");
      if (cm.size() != kNumEmotions) throw Error(ErrorKind::SchemaError, "report: confusion must be 6x6");
      for (std::size_t t = 0; t < kNumEmotions; ++t) {
        if (cm[t].size() != kNumEmotions) throw Error(ErrorKind::SchemaError, "report: confusion must be 6x6");
        for (std::size_t p = 0; p < kNumEmotions; ++p) m.confusion[t][p] = cm[t][p].get<std::int64_t>();
      }
      report.rows.push_back({*id, m});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaError, fmt::format("report: {}", e.what()));
  }
  return report;
}

}  // namespace emofuse
