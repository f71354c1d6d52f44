#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/error.hpp"
#include "tactile/eval.hpp"
#include "tactile/features.hpp"
#include "tactile/io/feature_csv.hpp"
#include "tactile/io/report.hpp"
#include "tactile/io/sim_config.hpp"
#include "tactile/io/svg.hpp"
#include "tactile/io/text.hpp"
#include "tactile/io/trace_io.hpp"
#include "tactile/simulator.hpp"
#include "tactile/stats.hpp"

namespace tactile::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;
inline constexpr int kFormat = 4;
inline constexpr int kDataShape = 5;
}  // namespace exit_code

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
      return exit_code::kIo;
    case ErrorKind::ConfigInvalid:
      return exit_code::kUsage;
    case ErrorKind::Format:
    case ErrorKind::MixedTasks:
    case ErrorKind::TooShort:
    case ErrorKind::StaticPhaseTooShort:
    case ErrorKind::UnknownLabel:
    case ErrorKind::InconsistentFeatures:
    case ErrorKind::NonFinite:
    case ErrorKind::OutOfPlate:
      return exit_code::kFormat;
    default:
      return exit_code::kDataShape;
  }
}

struct SimulateOptions {
  Task task = Task::Texture;
  ContactMode mode = ContactMode::Flexion;
  std::size_t trials = 60;
  std::uint64_t seed = 7;
  std::filesystem::path out;
  std::optional<std::filesystem::path> config;
};

inline std::size_t cmd_simulate(const SimulateOptions& opt, std::ostream& log) {
  const SimConfig cfg = opt.config ? io::read_sim_config(*opt.config) : SimConfig{};
  const auto corpus = generate_corpus(opt.task, opt.mode, opt.trials, cfg, opt.seed);
  io::write_corpus(opt.out, corpus);
  log << corpus.size() << " records written to " << opt.out.string() << "\n";
  return corpus.size();
}

/// Extracts features from a corpus file. A record whose task or mode differs
/// from the first record's is reported as MixedTasks.
inline Dataset cmd_extract(const std::filesystem::path& in, const std::filesystem::path& out,
                           std::ostream& log) {
  const auto corpus = io::read_corpus(in);
  const Dataset ds = extract_dataset(corpus);
  io::write_features(out, ds);
  log << ds.size() << " rows x " << ds.feature_count() << " features written to " << out.string()
      << "\n";
  return ds;
}

struct EvaluateOptions {
  std::filesystem::path features;
  std::vector<ModelSpec> models = default_model_specs();
  std::size_t k = kDefaultFolds;
  std::size_t runs = kDefaultRuns;
  std::uint64_t seed = 7;
  std::optional<ContactMode> mode;
  bool standardize = false;
  std::filesystem::path out;
};

inline std::vector<ModelSpec> parse_model_list(const std::string& list) {
  std::vector<ModelSpec> out;
  for (const auto& name : io::split(list, ',')) {
    if (name.empty()) continue;
    out.push_back(model_spec(parse_model_kind(name)));
  }
  if (out.empty()) throw Error(ErrorKind::ConfigInvalid, "no models requested");
  return out;
}

inline void print_report_table(const io::ReportFile& r, std::ostream& out) {
  out << std::left << std::setw(12) << "model" << std::right << std::setw(10) << "mean";
  out << std::setw(10) << "min" << std::setw(10) << "max" << "   (" << r.task << "/" << r.mode << ")\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& m : r.models) {
    const auto [lo, hi] = std::minmax_element(m.run_accuracies.begin(), m.run_accuracies.end());
    out << std::left << std::setw(12) << m.model_name << std::right << std::setw(10)
        << m.mean_accuracy << std::setw(10) << *lo << std::setw(10) << *hi << "\n";
  }
  out << std::defaultfloat;
}

inline io::ReportFile cmd_evaluate(const EvaluateOptions& opt, std::ostream& log) {
  const Dataset ds = io::read_features(opt.features, opt.mode.value_or(ContactMode::Flexion));
  io::ReportFile report;
  report.task = std::string(to_string(ds.task()));
  report.mode = opt.mode ? std::string(to_string(*opt.mode)) : "unspecified";
  report.config = {opt.k, opt.runs, opt.seed, ds.size(), ds.feature_count(), opt.standardize};
  for (const auto& spec : opt.models) {
    report.models.push_back(cross_validate(ds, spec, {opt.k, opt.runs, opt.seed, opt.standardize}));
  }
  io::write_report(opt.out, report);
  print_report_table(report, log);
  return report;
}

inline SignificanceProfile cmd_significance(const std::filesystem::path& features,
                                            const std::filesystem::path& out, std::ostream& log) {
  const Dataset ds = io::read_features(features);
  const auto profile = significance_profile(ds);
  io::write_significance(out, profile);
  const auto significant = std::count_if(profile.average_p.begin(), profile.average_p.end(),
                                         [](double p) { return p < 0.05; });
  log << profile.feature_names.size() << " features, " << significant
      << " with average p < 0.05, written to " << out.string() << "\n";
  return profile;
}

inline std::string group_name(const io::ReportFile& r) { return r.task + "/" + r.mode; }

inline std::string accuracy_chart(const std::vector<io::ReportFile>& reports) {
  std::vector<std::string> groups;
  std::vector<std::string> series;
  for (const auto& r : reports) {
    for (const auto& m : r.models) {
      if (std::find(series.begin(), series.end(), m.model_name) == series.end()) {
        series.push_back(m.model_name);
      }
    }
  }
  std::vector<std::vector<double>> values;
  for (const auto& r : reports) {
    groups.push_back(group_name(r));
    std::vector<double> row(series.size(), 0.0);
    for (const auto& m : r.models) {
      const auto s = std::find(series.begin(), series.end(), m.model_name) - series.begin();
      row[static_cast<std::size_t>(s)] = m.mean_accuracy;
    }
    values.push_back(std::move(row));
  }
  return io::grouped_bar_chart_svg("Cross-validated accuracy", groups, series, values,
                                   "mean accuracy");
}

inline std::string significance_chart(const io::SignificanceTable& t, const std::string& title) {
  std::vector<std::string> labels;
  for (const auto& name : t.feature_names) {
    labels.push_back(name.rfind("freq_", 0) == 0 ? name.substr(5) : name);
  }
  return io::profile_chart_svg(title, labels, t.average_p, 0.05);
}

struct ReportOptions {
  std::vector<std::filesystem::path> inputs;
  std::optional<std::filesystem::path> significance;
  std::filesystem::path plot;
};

/// Renders the accuracy chart to `plot` and, when a significance table is
/// given, the profile chart next to it as `<stem>_significance.svg`.
inline std::vector<std::filesystem::path> cmd_report(const ReportOptions& opt, std::ostream& log) {
  std::vector<io::ReportFile> reports;
  for (const auto& in : opt.inputs) reports.push_back(io::read_report(in));
  for (const auto& r : reports) print_report_table(r, log);

  std::vector<std::filesystem::path> written{opt.plot};
  io::write_file_atomic(opt.plot, accuracy_chart(reports));
  if (opt.significance) {
    const auto table = io::read_significance(*opt.significance);
    auto path = opt.plot;
    path.replace_filename(opt.plot.stem().string() + "_significance.svg");
    io::write_file_atomic(path, significance_chart(table, "Average rank-sum p-value per feature"));
    written.push_back(path);
  }
  for (const auto& p : written) log << "wrote " << p.string() << "\n";
  return written;
}

struct PipelineOptions {
  std::uint64_t seed = 7;
  std::filesystem::path out;
  std::size_t trials = 60;
  std::size_t k = kDefaultFolds;
  std::size_t runs = kDefaultRuns;
  std::optional<std::filesystem::path> config;
};

struct PipelineSummary {
  std::vector<io::ReportFile> reports;
};

inline std::string summary_csv(const PipelineSummary& s) {
  std::string out = "task,mode,model,mean_accuracy\n";
  for (const auto& r : s.reports) {
    for (const auto& m : r.models) {
      out += r.task + "," + r.mode + "," + m.model_name + "," + io::format_double(m.mean_accuracy) + "\n";
    }
  }
  return out;
}

/// simulate -> extract -> evaluate -> significance -> report for every
/// (task, mode) group, all under `out`.
inline PipelineSummary cmd_pipeline(const PipelineOptions& opt, std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(opt.out, ec);
  if (ec || !std::filesystem::is_directory(opt.out)) {
    throw Error(ErrorKind::Io, "cannot create output directory '" + opt.out.string() + "'");
  }
  PipelineSummary summary;
  for (Task task : {Task::Texture, Task::Stiffness}) {
    for (ContactMode mode : {ContactMode::Flexion, ContactMode::Abduction}) {
      std::string group = std::string(to_string(task)) + "_" + std::string(to_string(mode));
      std::transform(group.begin(), group.end(), group.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      const auto dir = opt.out / group;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir.string() + "'");

      SimulateOptions sim{task, mode, opt.trials, opt.seed, dir / "corpus.jsonl", opt.config};
      cmd_simulate(sim, log);
      cmd_extract(dir / "corpus.jsonl", dir / "features.csv", log);
      EvaluateOptions ev;
      ev.features = dir / "features.csv";
      ev.k = opt.k;
      ev.runs = opt.runs;
      ev.seed = opt.seed;
      ev.mode = mode;
      ev.out = dir / "report.json";
      summary.reports.push_back(cmd_evaluate(ev, log));
      cmd_significance(dir / "features.csv", dir / "significance.csv", log);
      const auto table = io::read_significance(dir / "significance.csv");
      io::write_file_atomic(dir / "significance.svg",
                            significance_chart(table, "Average rank-sum p-value, " + group));
    }
  }
  io::write_file_atomic(opt.out / "accuracy.svg", accuracy_chart(summary.reports));
  io::write_file_atomic(opt.out / "summary.csv", summary_csv(summary));

  std::ostringstream table;
  for (const auto& r : summary.reports) print_report_table(r, table);
  io::write_file_atomic(opt.out / "summary.txt", table.str());
  log << "\n" << table.str();
  return summary;
}

}  // namespace tactile::cli
