#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/error.hpp"
#include "tactile/features.hpp"
#include "tactile/io/text.hpp"

namespace tactile::io {

/// Feature table: header of feature names plus "label", one row per trial.
inline std::string dataset_to_csv(const Dataset& ds) {
  std::string out;
  for (const auto& name : ds.feature_names()) {
    out += name;
    out += ',';
  }
  out += "label\n";
  for (const auto& row : ds.rows()) {
    for (double v : row.values) {
      out += format_double(v);
      out += ',';
    }
    out += row.label.name;
    out += '\n';
  }
  return out;
}

inline void write_features(const std::filesystem::path& path, const Dataset& ds) {
  write_file_atomic(path, dataset_to_csv(ds));
}

inline Task infer_task(const std::vector<std::string>& feature_names) {
  return feature_names == stiffness_feature_names() ? Task::Stiffness : Task::Texture;
}

/// Parses a feature table. Trial ids are synthesized as "row-<n>" since the
/// file format does not carry them.
inline Dataset dataset_from_csv(const std::vector<std::string>& lines,
                                ContactMode mode = ContactMode::Flexion) {
  std::size_t first = 0;
  while (first < lines.size() && lines[first].empty()) ++first;
  if (first == lines.size()) throw Error(ErrorKind::Format, "feature file is empty");
  auto header = split(lines[first], ',');
  if (header.size() < 2 || header.back() != "label") {
    throw Error(ErrorKind::Format, "feature header must end with a 'label' column");
  }
  header.pop_back();
  const Task task = infer_task(header);

  std::vector<Sample> rows;
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    const std::string where = "line " + std::to_string(i + 1);
    if (cells.size() != header.size() + 1) {
      throw Error(ErrorKind::Format, where + ": expected " + std::to_string(header.size() + 1) +
                                         " columns, found " + std::to_string(cells.size()));
    }
    Sample s;
    s.values.reserve(header.size());
    try {
      for (std::size_t c = 0; c < header.size(); ++c) s.values.push_back(parse_double(cells[c]));
      s.label = label_from_name(task, cells.back());
    } catch (const Error& e) {
      throw Error(ErrorKind::Format, where + ": " + e.what());
    }
    s.trial_id = "row-" + std::to_string(rows.size());
    rows.push_back(std::move(s));
  }
  if (rows.empty()) throw Error(ErrorKind::Format, "feature file has no data rows");
  return Dataset(std::move(header), std::move(rows), task, mode);
}

inline Dataset read_features(const std::filesystem::path& path,
                             ContactMode mode = ContactMode::Flexion) {
  return dataset_from_csv(read_lines(path), mode);
}

}  // namespace tactile::io
