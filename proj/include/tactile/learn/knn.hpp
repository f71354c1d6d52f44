#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/error.hpp"

namespace tactile {

struct KnnModel {
  std::vector<std::vector<double>> rows;
  std::vector<ClassLabel> labels;
  std::size_t k = 3;
};

inline KnnModel knn_fit(const Dataset& train, std::size_t k = 3) {
  if (k < 1 || k > train.size()) {
    throw Error(ErrorKind::ConfigInvalid, "knn needs 1 <= k <= " + std::to_string(train.size()));
  }
  KnnModel m;
  m.k = k;
  for (const auto& row : train.rows()) {
    m.rows.push_back(row.values);
    m.labels.push_back(row.label);
  }
  return m;
}

/// Majority vote of the k nearest training rows (Euclidean). Equal distances
/// prefer the earlier training row; tied votes go to the tied class that owns
/// the nearest of the k neighbors.
inline ClassLabel knn_predict(const KnnModel& model, std::span<const double> x) {
  if (model.rows.empty()) throw Error(ErrorKind::Empty, "knn model has no training rows");
  if (x.size() != model.rows.front().size()) {
    throw Error(ErrorKind::DimensionMismatch, "knn query has " + std::to_string(x.size()) +
                                                  " features, model has " +
                                                  std::to_string(model.rows.front().size()));
  }
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(model.rows.size());
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = model.rows[i][j] - x[j];
      d2 += d * d;
    }
    dist.emplace_back(d2, i);
  }
  const std::size_t k = std::min(model.k, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

  std::vector<std::pair<ClassLabel, std::size_t>> votes;
  for (std::size_t n = 0; n < k; ++n) {
    const ClassLabel& label = model.labels[dist[n].second];
    auto it = std::find_if(votes.begin(), votes.end(), [&](const auto& v) { return v.first == label; });
    if (it == votes.end()) {
      votes.emplace_back(label, 1);
    } else {
      ++it->second;
    }
  }
  // votes is ordered by each class's nearest neighbor, so the first maximum wins ties.
  return std::max_element(votes.begin(), votes.end(),
                          [](const auto& a, const auto& b) { return a.second < b.second; })
      ->first;
}

}  // namespace tactile
