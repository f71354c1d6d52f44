// Command-line front end: simulate, extract, evaluate, significance, report,
// pipeline and convert. Exit codes: 0 ok, 2 usage, 3 I/O, 4 format, 5 data shape.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tactile/cli.hpp"

namespace {

using namespace tactile;

struct Flags {
  std::string task = "texture";
  std::string mode = "fc";
  std::size_t trials = 60;
  std::uint64_t seed = 7;
  std::string out;
  std::string in;
  std::string config;
  std::string features;
  std::string models = "knn,svm-linear,svm-rbf,dtree";
  std::size_t k = kDefaultFolds;
  std::size_t runs = kDefaultRuns;
  std::string eval_mode;
  bool standardize = false;
  std::vector<std::string> reports;
  std::string significance;
  std::string plot;
  std::string label;
  std::string id;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tendon-strain tactile sensing: simulation, features, classification"};
  app.require_subcommand(1);
  Flags f;

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic trace corpus (JSONL)");
  simulate->add_option("--task", f.task)->check(CLI::IsMember({"texture", "stiffness"}));
  simulate->add_option("--mode", f.mode)->check(CLI::IsMember({"fc", "ac", "FC", "AC"}));
  simulate->add_option("--trials", f.trials)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", f.seed);
  simulate->add_option("--out", f.out)->required();
  simulate->add_option("--config", f.config, "JSON file overriding simulation settings");

  auto* extract = app.add_subcommand("extract", "Extract features from a corpus into CSV");
  extract->add_option("--in", f.in)->required();
  extract->add_option("--out", f.out)->required();

  auto* evaluate = app.add_subcommand("evaluate", "Repeated k-fold cross-validation");
  evaluate->add_option("--features", f.features)->required();
  evaluate->add_option("--models", f.models);
  evaluate->add_option("--k", f.k)->check(CLI::Range(2, 1000));
  evaluate->add_option("--runs", f.runs)->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", f.seed);
  evaluate->add_option("--mode", f.eval_mode, "Contact mode recorded in the report")
      ->check(CLI::IsMember({"fc", "ac", "FC", "AC"}));
  evaluate->add_flag("--standardize", f.standardize,
                     "z-score features with training-fold statistics");
  evaluate->add_option("--out", f.out)->required();

  auto* significance = app.add_subcommand("significance", "Per-feature rank-sum significance");
  significance->add_option("--features", f.features)->required();
  significance->add_option("--out", f.out)->required();

  auto* report = app.add_subcommand("report", "Render accuracy and significance charts (SVG)");
  report->add_option("--in", f.reports, "One or more report.json files")->required();
  report->add_option("--significance", f.significance);
  report->add_option("--plot", f.plot)->required();

  auto* pipeline = app.add_subcommand("pipeline", "Run every stage for all task/mode groups");
  pipeline->add_option("--seed", f.seed);
  pipeline->add_option("--out", f.out)->required();
  pipeline->add_option("--trials", f.trials)->check(CLI::PositiveNumber);
  pipeline->add_option("--k", f.k)->check(CLI::Range(2, 1000));
  pipeline->add_option("--runs", f.runs)->check(CLI::PositiveNumber);
  pipeline->add_option("--config", f.config);

  auto* convert = app.add_subcommand("convert", "Convert a (time, strain) CSV log to a TraceRecord");
  convert->add_option("--in", f.in)->required();
  convert->add_option("--task", f.task)->check(CLI::IsMember({"texture", "stiffness"}));
  convert->add_option("--mode", f.mode)->check(CLI::IsMember({"fc", "ac", "FC", "AC"}));
  convert->add_option("--label", f.label)->required();
  convert->add_option("--id", f.id)->required();
  convert->add_option("--out", f.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::exit_code::kUsage;
  }

  try {
    if (simulate->parsed()) {
      cli::SimulateOptions opt{parse_task(f.task), parse_mode(f.mode), f.trials, f.seed, f.out, {}};
      if (!f.config.empty()) opt.config = f.config;
      cli::cmd_simulate(opt, std::cout);
    } else if (extract->parsed()) {
      cli::cmd_extract(f.in, f.out, std::cout);
    } else if (evaluate->parsed()) {
      cli::EvaluateOptions opt;
      opt.features = f.features;
      opt.models = cli::parse_model_list(f.models);
      opt.k = f.k;
      opt.runs = f.runs;
      opt.seed = f.seed;
      if (!f.eval_mode.empty()) opt.mode = parse_mode(f.eval_mode);
      opt.standardize = f.standardize;
      opt.out = f.out;
      cli::cmd_evaluate(opt, std::cout);
    } else if (significance->parsed()) {
      cli::cmd_significance(f.features, f.out, std::cout);
    } else if (report->parsed()) {
      cli::ReportOptions opt;
      for (const auto& r : f.reports) opt.inputs.emplace_back(r);
      if (!f.significance.empty()) opt.significance = f.significance;
      opt.plot = f.plot;
      cli::cmd_report(opt, std::cout);
    } else if (pipeline->parsed()) {
      cli::PipelineOptions opt{f.seed, f.out, f.trials, f.k, f.runs, {}};
      if (!f.config.empty()) opt.config = f.config;
      cli::cmd_pipeline(opt, std::cout);
    } else if (convert->parsed()) {
      const Task task = parse_task(f.task);
      const auto trace = io::trace_from_time_series_csv(f.in, task, parse_mode(f.mode),
                                                        label_from_name(task, f.label), f.id);
      io::write_file_atomic(f.out, io::trace_to_json_line(trace) + "\n");
      std::cout << trace.samples.size() << " samples at " << trace.sample_rate_hz
                << " Hz written to " << f.out << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code::kIo;
  }
  return cli::exit_code::kOk;
}
