#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <type_traits>
#include <string>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/error.hpp"
#include "tactile/features.hpp"
#include "tactile/learn/classifier.hpp"
#include "tactile/learn/standardizer.hpp"
#include "tactile/random.hpp"
#include "tactile/simulator.hpp"

namespace tactile {

inline constexpr std::size_t kDefaultFolds = 6;
inline constexpr std::size_t kDefaultRuns = 10;

/// Stratified partition of row indices into k folds.
struct FoldPlan {
  std::size_t k = kDefaultFolds;
  std::vector<std::vector<std::size_t>> folds;  // each sorted ascending
  std::uint64_t seed = 0;
};

/// Each class's rows are shuffled and then dealt round-robin; the dealing
/// position carries over from one class to the next so fold sizes stay level.
inline FoldPlan make_folds(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorKind::ConfigInvalid, "k must be >= 2");
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.assign(k, {});

  Rng rng(seed);
  std::size_t next = 0;
  for (const auto& label : ds.labels()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (ds.row(i).label == label) idx.push_back(i);
    }
    if (idx.size() < k) {
      throw Error(ErrorKind::TooFewPerClass, "class '" + label.name + "' has " +
                                                 std::to_string(idx.size()) + " rows, need " +
                                                 std::to_string(k));
    }
    shuffle(idx, rng);
    for (std::size_t i : idx) {
      plan.folds[next].push_back(i);
      next = (next + 1) % k;
    }
  }
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

inline double accuracy(std::span<const ClassLabel> predictions, std::span<const ClassLabel> truths) {
  if (predictions.size() != truths.size()) {
    throw Error(ErrorKind::LengthMismatch, "accuracy: predictions and truths differ in length");
  }
  if (predictions.empty()) throw Error(ErrorKind::Empty, "accuracy of zero predictions");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) correct += predictions[i] == truths[i] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(truths.size());
}

using ConfusionMatrix = std::vector<std::vector<std::size_t>>;

/// confusion[i][j] counts rows of true class labels[i] predicted as labels[j].
inline ConfusionMatrix confusion(std::span<const ClassLabel> predictions,
                                 std::span<const ClassLabel> truths,
                                 std::span<const ClassLabel> labels) {
  if (predictions.size() != truths.size()) {
    throw Error(ErrorKind::LengthMismatch, "confusion: predictions and truths differ in length");
  }
  auto index_of = [&](const ClassLabel& l) {
    const auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw Error(ErrorKind::UnknownLabel, "label '" + l.name + "'");
    return static_cast<std::size_t>(it - labels.begin());
  };
  ConfusionMatrix m(labels.size(), std::vector<std::size_t>(labels.size(), 0));
  for (std::size_t i = 0; i < truths.size(); ++i) ++m[index_of(truths[i])][index_of(predictions[i])];
  return m;
}

struct CvReport {
  std::string model_name;
  std::vector<ClassLabel> labels;
  std::vector<double> run_accuracies;
  std::vector<std::vector<double>> fold_accuracies;
  double mean_accuracy = 0.0;
  ConfusionMatrix confusion;
  std::vector<std::uint64_t> seeds;
};

struct CvOptions {
  std::size_t k = kDefaultFolds;
  std::size_t runs = kDefaultRuns;
  std::uint64_t seed = 0;
  /// z-score features with training-fold statistics before fitting. Off by
  /// default: on Fourier magnitudes it inflates noise-only bins to unit
  /// variance and they then dominate Euclidean and RBF distances.
  bool standardize = false;
};

/// Repeated k-fold cross-validation. Run r uses fold seed `seed + r`; within
/// each fold the (optional) standardizer and the model see training rows only.
template <class Factory>
  requires Classifier<std::invoke_result_t<Factory&>>
CvReport cross_validate(const Dataset& ds, Factory&& make_model, std::string model_name,
                        const CvOptions& opt = {}) {
  if (opt.runs < 1) throw Error(ErrorKind::ConfigInvalid, "runs must be >= 1");
  CvReport report;
  report.model_name = std::move(model_name);
  report.labels = ds.labels();
  report.confusion.assign(report.labels.size(), std::vector<std::size_t>(report.labels.size(), 0));

  for (std::size_t r = 0; r < opt.runs; ++r) {
    const std::uint64_t run_seed = opt.seed + r;
    report.seeds.push_back(run_seed);
    const FoldPlan plan = make_folds(ds, opt.k, run_seed);
    std::vector<double> folds;
    for (const auto& fold : plan.folds) {
      auto [train, test] = split_by_indices(ds, std::set<std::size_t>(fold.begin(), fold.end()));
      if (opt.standardize) {
        const Standardizer scaler = standardize_fit(train);
        train = standardize_apply(scaler, train);
        test = standardize_apply(scaler, test);
      }

      auto model = make_model();
      model.fit(train);
      std::vector<ClassLabel> predicted;
      std::vector<ClassLabel> truth;
      for (const auto& row : test.rows()) {
        predicted.push_back(model.predict(row.values));
        truth.push_back(row.label);
      }
      folds.push_back(accuracy(predicted, truth));
      const auto cm = confusion(predicted, truth, report.labels);
      for (std::size_t i = 0; i < cm.size(); ++i) {
        for (std::size_t j = 0; j < cm.size(); ++j) report.confusion[i][j] += cm[i][j];
      }
    }
    double sum = 0.0;
    for (double a : folds) sum += a;
    report.run_accuracies.push_back(sum / static_cast<double>(folds.size()));
    report.fold_accuracies.push_back(std::move(folds));
  }
  double sum = 0.0;
  for (double a : report.run_accuracies) sum += a;
  report.mean_accuracy = sum / static_cast<double>(opt.runs);
  return report;
}

inline CvReport cross_validate(const Dataset& ds, const ModelSpec& spec, const CvOptions& opt = {}) {
  return cross_validate(ds, [&] { return Model(spec); }, std::string(model_name(spec.kind)), opt);
}

struct ExperimentConfig {
  SimConfig sim;
  std::size_t trials_per_class = 60;
  std::size_t k = kDefaultFolds;
  std::size_t runs = kDefaultRuns;
  std::uint64_t seed = 7;
  bool standardize = false;
  std::vector<ModelSpec> models = default_model_specs();
};

struct GroupReport {
  Task task = Task::Texture;
  ContactMode mode = ContactMode::Flexion;
  std::vector<CvReport> models;
};

/// Simulates, extracts and cross-validates one (task, mode) group. Both modes
/// use the same corpus seed so they differ only by the contact scaling.
inline GroupReport run_group(Task task, ContactMode mode, const ExperimentConfig& cfg) {
  const auto corpus = generate_corpus(task, mode, cfg.trials_per_class, cfg.sim, cfg.seed);
  const Dataset ds = extract_dataset(corpus);
  GroupReport group{task, mode, {}};
  for (const auto& spec : cfg.models) {
    group.models.push_back(cross_validate(ds, spec, {cfg.k, cfg.runs, cfg.seed, cfg.standardize}));
  }
  return group;
}

/// Every (task, mode) combination against every configured model.
inline std::vector<GroupReport> run_experiment(const ExperimentConfig& cfg) {
  std::vector<GroupReport> out;
  for (Task task : {Task::Texture, Task::Stiffness}) {
    for (ContactMode mode : {ContactMode::Flexion, ContactMode::Abduction}) {
      out.push_back(run_group(task, mode, cfg));
    }
  }
  return out;
}

}  // namespace tactile
