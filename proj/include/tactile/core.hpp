#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tactile/error.hpp"

namespace tactile {

enum class Task { Texture, Stiffness };
enum class ContactMode { Flexion, Abduction };

constexpr std::string_view to_string(Task task) {
  return task == Task::Texture ? "texture" : "stiffness";
}

constexpr std::string_view to_string(ContactMode mode) {
  return mode == ContactMode::Flexion ? "FC" : "AC";
}

inline Task parse_task(std::string_view text) {
  if (text == "texture") return Task::Texture;
  if (text == "stiffness") return Task::Stiffness;
  throw Error(ErrorKind::Format, "unknown task '" + std::string(text) + "'");
}

inline ContactMode parse_mode(std::string_view text) {
  if (text == "FC" || text == "fc") return ContactMode::Flexion;
  if (text == "AC" || text == "ac") return ContactMode::Abduction;
  throw Error(ErrorKind::Format, "unknown contact mode '" + std::string(text) + "'");
}

/// A class within one task. Equality is by name; the ordinal only orders
/// classes for reports and tie-breaking.
struct ClassLabel {
  std::string name;
  int ordinal = 0;

  friend bool operator==(const ClassLabel& a, const ClassLabel& b) { return a.name == b.name; }
};

inline const std::vector<std::string>& texture_label_names() {
  static const std::vector<std::string> names{"F", "R1", "R2", "R3", "T1", "T2", "C1", "C2"};
  return names;
}

inline const std::vector<std::string>& stiffness_label_names() {
  static const std::vector<std::string> names{"PLA", "RUBBER_SOLID", "RUBBER_SHELL", "SPONGE",
                                              "NONE"};
  return names;
}

inline const std::vector<std::string>& label_names(Task task) {
  return task == Task::Texture ? texture_label_names() : stiffness_label_names();
}

inline std::vector<ClassLabel> task_labels(Task task) {
  std::vector<ClassLabel> out;
  const auto& names = label_names(task);
  for (std::size_t i = 0; i < names.size(); ++i) out.push_back({names[i], static_cast<int>(i)});
  return out;
}

inline std::optional<ClassLabel> find_label(Task task, std::string_view name) {
  const auto& names = label_names(task);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return ClassLabel{names[i], static_cast<int>(i)};
  }
  return std::nullopt;
}

inline ClassLabel label_from_name(Task task, std::string_view name) {
  if (auto label = find_label(task, name)) return *label;
  throw Error(ErrorKind::UnknownLabel,
              "'" + std::string(name) + "' is not a " + std::string(to_string(task)) + " class");
}

/// One palpation trial: a uniformly sampled tendon-strain series in newtons.
struct StrainTrace {
  std::vector<double> samples;
  double sample_rate_hz = 60.0;
  Task trial_kind = Task::Texture;
  ContactMode contact_mode = ContactMode::Flexion;
  ClassLabel label;
  std::string trial_id;
  std::optional<std::uint64_t> seed;

  double duration_s() const { return static_cast<double>(samples.size()) / sample_rate_hz; }
};

inline void validate(const StrainTrace& trace) {
  if (!(trace.sample_rate_hz > 0.0) || !std::isfinite(trace.sample_rate_hz)) {
    throw Error(ErrorKind::ConfigInvalid, "trace '" + trace.trial_id + "': sample rate must be > 0");
  }
  if (trace.samples.empty()) {
    throw Error(ErrorKind::Empty, "trace '" + trace.trial_id + "' has no samples");
  }
  for (double v : trace.samples) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFinite, "trace '" + trace.trial_id + "' has a non-finite sample");
    }
  }
}

struct FeatureVector {
  std::vector<double> values;
  std::vector<std::string> names;

  std::size_t size() const { return values.size(); }
};

struct LabeledVector {
  FeatureVector features;
  ClassLabel label;
  std::string trial_id;
};

struct Sample {
  std::vector<double> values;
  ClassLabel label;
  std::string trial_id;
};

/// Feature matrix with class labels. Rows keep their insertion order; every
/// downstream consumer relies on that order for reproducibility.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<std::string> feature_names, std::vector<Sample> rows, Task task,
          ContactMode mode)
      : feature_names_(std::move(feature_names)), rows_(std::move(rows)), task_(task), mode_(mode) {
    for (const auto& row : rows_) {
      if (row.values.size() != feature_names_.size()) {
        throw Error(ErrorKind::InconsistentFeatures,
                    "row '" + row.trial_id + "' has " + std::to_string(row.values.size()) +
                        " values, expected " + std::to_string(feature_names_.size()));
      }
    }
  }

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<Sample>& rows() const { return rows_; }
  const Sample& row(std::size_t i) const { return rows_.at(i); }
  std::size_t size() const { return rows_.size(); }
  std::size_t feature_count() const { return feature_names_.size(); }
  bool empty() const { return rows_.empty(); }
  Task task() const { return task_; }
  ContactMode mode() const { return mode_; }

  /// Distinct labels present, ordered by ordinal (then name).
  std::vector<ClassLabel> labels() const {
    std::vector<ClassLabel> out;
    for (const auto& row : rows_) {
      if (std::find(out.begin(), out.end(), row.label) == out.end()) out.push_back(row.label);
    }
    std::sort(out.begin(), out.end(), [](const ClassLabel& a, const ClassLabel& b) {
      return a.ordinal != b.ordinal ? a.ordinal < b.ordinal : a.name < b.name;
    });
    return out;
  }

  std::size_t count(const ClassLabel& label) const {
    return static_cast<std::size_t>(std::count_if(
        rows_.begin(), rows_.end(), [&](const Sample& s) { return s.label == label; }));
  }

  std::vector<LabeledVector> to_rows() const {
    std::vector<LabeledVector> out;
    out.reserve(rows_.size());
    for (const auto& row : rows_) {
      out.push_back({FeatureVector{row.values, feature_names_}, row.label, row.trial_id});
    }
    return out;
  }

  Dataset with_rows(std::vector<Sample> rows) const {
    return Dataset(feature_names_, std::move(rows), task_, mode_);
  }

 private:
  std::vector<std::string> feature_names_;
  std::vector<Sample> rows_;
  Task task_ = Task::Texture;
  ContactMode mode_ = ContactMode::Flexion;
};

inline Dataset build_dataset(std::span<const LabeledVector> rows, Task task, ContactMode mode) {
  if (rows.empty()) throw Error(ErrorKind::Empty, "cannot build a dataset from zero rows");
  const auto& names = rows.front().features.names;
  std::vector<Sample> samples;
  samples.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& fv = rows[i].features;
    if (fv.names != names || fv.values.size() != names.size()) {
      throw Error(ErrorKind::InconsistentFeatures,
                  "row " + std::to_string(i) + " does not share the first row's feature names");
    }
    samples.push_back({fv.values, rows[i].label, rows[i].trial_id});
  }
  return Dataset(names, std::move(samples), task, mode);
}

inline std::pair<Dataset, Dataset> split_by_indices(const Dataset& ds,
                                                    const std::set<std::size_t>& test_idx) {
  if (!test_idx.empty() && *test_idx.rbegin() >= ds.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "test index " + std::to_string(*test_idx.rbegin()) +
                                                " >= " + std::to_string(ds.size()));
  }
  std::vector<Sample> train;
  std::vector<Sample> test;
  train.reserve(ds.size() - test_idx.size());
  test.reserve(test_idx.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    (test_idx.contains(i) ? test : train).push_back(ds.row(i));
  }
  return {ds.with_rows(std::move(train)), ds.with_rows(std::move(test))};
}

inline std::vector<double> values_for(const Dataset& ds, std::size_t feature_index,
                                      const ClassLabel& label) {
  if (feature_index >= ds.feature_count()) {
    throw Error(ErrorKind::IndexOutOfRange, "feature index " + std::to_string(feature_index) +
                                                " >= " + std::to_string(ds.feature_count()));
  }
  std::vector<double> out;
  for (const auto& row : ds.rows()) {
    if (row.label == label) out.push_back(row.values[feature_index]);
  }
  if (out.empty()) throw Error(ErrorKind::UnknownLabel, "label '" + label.name + "' not in dataset");
  return out;
}

}  // namespace tactile
