#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tactile/core.hpp"
#include "tactile/error.hpp"
#include "tactile/eval.hpp"
#include "tactile/io/text.hpp"
#include "tactile/stats.hpp"

namespace tactile::io {

inline constexpr const char* kToolVersion = "tactile 1.0.0";

/// Evaluation settings echoed into a report.
struct EvalConfig {
  std::size_t k = kDefaultFolds;
  std::size_t runs = kDefaultRuns;
  std::uint64_t seed = 0;
  std::size_t rows = 0;
  std::size_t features = 0;
  bool standardize = false;
};

struct ReportFile {
  std::string task;
  std::string mode;
  EvalConfig config;
  std::vector<CvReport> models;
};

inline nlohmann::ordered_json report_to_json(const ReportFile& r) {
  nlohmann::ordered_json j;
  j["task"] = r.task;
  j["mode"] = r.mode;
  auto& models = j["models"] = nlohmann::ordered_json::array();
  for (const auto& m : r.models) {
    nlohmann::ordered_json e;
    e["name"] = m.model_name;
    e["mean_accuracy"] = m.mean_accuracy;
    e["run_accuracies"] = m.run_accuracies;
    e["fold_accuracies"] = m.fold_accuracies;
    std::vector<std::string> labels;
    for (const auto& l : m.labels) labels.push_back(l.name);
    e["labels"] = labels;
    e["confusion"] = m.confusion;
    e["seed"] = m.seeds.empty() ? r.config.seed : m.seeds.front();
    models.push_back(std::move(e));
  }
  j["config"] = {{"k", r.config.k},
                 {"runs", r.config.runs},
                 {"seed", r.config.seed},
                 {"rows", r.config.rows},
                 {"features", r.config.features},
                 {"standardize", r.config.standardize}};
  j["tool_version"] = kToolVersion;
  return j;
}

inline std::string report_to_string(const ReportFile& r) { return report_to_json(r).dump(2) + "\n"; }

inline void write_report(const std::filesystem::path& path, const ReportFile& r) {
  write_file_atomic(path, report_to_string(r));
}

/// Converts a byte offset into "line L, column C" for error messages.
inline std::string text_position(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col) + " (offset " +
         std::to_string(byte) + ")";
}

/// Parses and schema-checks a report, including mean == average of runs.
inline ReportFile report_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Format, "malformed report JSON at " + text_position(text, e.byte));
  }
  try {
    ReportFile r;
    r.task = j.at("task").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    const auto& cfg = j.at("config");
    r.config.k = cfg.at("k").get<std::size_t>();
    r.config.runs = cfg.at("runs").get<std::size_t>();
    r.config.seed = cfg.at("seed").get<std::uint64_t>();
    r.config.rows = cfg.value("rows", std::size_t{0});
    r.config.features = cfg.value("features", std::size_t{0});
    r.config.standardize = cfg.value("standardize", false);
    const Task task = parse_task(r.task);
    for (const auto& e : j.at("models")) {
      CvReport m;
      m.model_name = e.at("name").get<std::string>();
      m.mean_accuracy = e.at("mean_accuracy").get<double>();
      m.run_accuracies = e.at("run_accuracies").get<std::vector<double>>();
      if (e.contains("fold_accuracies")) {
        m.fold_accuracies = e.at("fold_accuracies").get<std::vector<std::vector<double>>>();
      }
      for (const auto& name : e.at("labels").get<std::vector<std::string>>()) {
        m.labels.push_back(label_from_name(task, name));
      }
      m.confusion = e.at("confusion").get<ConfusionMatrix>();
      const auto seed = e.at("seed").get<std::uint64_t>();
      for (std::size_t i = 0; i < m.run_accuracies.size(); ++i) m.seeds.push_back(seed + i);

      if (m.run_accuracies.empty()) throw Error(ErrorKind::Format, m.model_name + ": no runs");
      double sum = 0.0;
      for (double a : m.run_accuracies) {
        if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorKind::Format, m.model_name + ": accuracy outside [0,1]");
        sum += a;
      }
      if (std::abs(sum / static_cast<double>(m.run_accuracies.size()) - m.mean_accuracy) > 1e-12) {
        throw Error(ErrorKind::Format, m.model_name + ": mean_accuracy is not the mean of runs");
      }
      if (m.confusion.size() != m.labels.size()) {
        throw Error(ErrorKind::Format, m.model_name + ": confusion shape does not match labels");
      }
      for (const auto& row : m.confusion) {
        if (row.size() != m.labels.size()) {
          throw Error(ErrorKind::Format, m.model_name + ": confusion is not square");
        }
      }
      r.models.push_back(std::move(m));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("report schema: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Format) throw;
    throw Error(ErrorKind::Format, std::string("report schema: ") + e.what());
  }
}

inline ReportFile read_report(const std::filesystem::path& path) {
  return report_from_string(read_file(path));
}

/// Column name for the p-value of one class pair.
inline std::string pair_column(const ClassLabel& a, const ClassLabel& b) {
  return "p_" + a.name + "|" + b.name;
}

inline std::string significance_to_csv(const SignificanceProfile& profile) {
  std::string out = "feature_name,avg_p";
  if (!profile.matrices.empty()) {
    const auto& labels = profile.matrices.front().labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = i + 1; j < labels.size(); ++j) out += "," + pair_column(labels[i], labels[j]);
    }
  }
  out += '\n';
  for (std::size_t f = 0; f < profile.feature_names.size(); ++f) {
    out += profile.feature_names[f];
    out += ',';
    out += format_double(profile.average_p[f]);
    const auto& p = profile.matrices[f].p;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) out += "," + format_double(p[i][j]);
    }
    out += '\n';
  }
  return out;
}

inline void write_significance(const std::filesystem::path& path, const SignificanceProfile& p) {
  write_file_atomic(path, significance_to_csv(p));
}

/// Just the (feature_name, avg_p) columns of a significance table.
struct SignificanceTable {
  std::vector<std::string> feature_names;
  std::vector<double> average_p;
  std::vector<std::string> pair_columns;
};

inline SignificanceTable read_significance(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw Error(ErrorKind::Format, "significance file is empty");
  const auto header = split(lines.front(), ',');
  if (header.size() < 2 || header[0] != "feature_name" || header[1] != "avg_p") {
    throw Error(ErrorKind::Format, "significance header must start with feature_name,avg_p");
  }
  SignificanceTable t;
  t.pair_columns.assign(header.begin() + 2, header.end());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    if (cells.size() != header.size()) {
      throw Error(ErrorKind::Format, "line " + std::to_string(i + 1) + ": column count mismatch");
    }
    t.feature_names.push_back(cells[0]);
    const double p = parse_double(cells[1]);
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::Format, "line " + std::to_string(i + 1) + ": avg_p outside [0,1]");
    }
    t.average_p.push_back(p);
  }
  return t;
}

}  // namespace tactile::io
