#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/error.hpp"

namespace tactile {

inline constexpr double kStdFloor = 1e-12;

/// Per-feature z-scoring with statistics taken from training rows only.
struct Standardizer {
  std::vector<double> means;
  std::vector<double> stds;

  std::vector<double> apply(std::span<const double> x) const {
    if (x.size() != means.size()) {
      throw Error(ErrorKind::DimensionMismatch, "standardizer expects " +
                                                    std::to_string(means.size()) + " features, got " +
                                                    std::to_string(x.size()));
    }
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      // Columns that were constant in training carry no information.
      out[j] = stds[j] < kStdFloor ? 0.0 : (x[j] - means[j]) / stds[j];
    }
    return out;
  }
};

inline Standardizer standardize_fit(const Dataset& train) {
  if (train.empty()) throw Error(ErrorKind::Empty, "cannot fit a standardizer on zero rows");
  const std::size_t d = train.feature_count();
  const auto n = static_cast<double>(train.size());
  Standardizer s;
  s.means.assign(d, 0.0);
  s.stds.assign(d, 0.0);
  for (const auto& row : train.rows()) {
    for (std::size_t j = 0; j < d; ++j) s.means[j] += row.values[j];
  }
  for (double& m : s.means) m /= n;
  for (const auto& row : train.rows()) {
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = row.values[j] - s.means[j];
      s.stds[j] += dv * dv;
    }
  }
  for (double& v : s.stds) v = std::sqrt(v / n);
  return s;
}

inline Dataset standardize_apply(const Standardizer& s, const Dataset& ds) {
  std::vector<Sample> rows;
  rows.reserve(ds.size());
  for (const auto& row : ds.rows()) rows.push_back({s.apply(row.values), row.label, row.trial_id});
  return ds.with_rows(std::move(rows));
}

}  // namespace tactile
