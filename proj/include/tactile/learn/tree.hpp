#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/error.hpp"

namespace tactile {

struct TreeNode {
  /// -1 marks a leaf.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  ClassLabel label;
};

/// CART classification tree, Gini criterion, grown until leaves are pure.
/// Rows with x[feature] <= threshold go left.
struct TreeModel {
  std::vector<TreeNode> nodes;
  std::size_t dimension = 0;

  std::size_t depth() const { return depth_of(0); }
  std::size_t leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.feature < 0; }));
  }

 private:
  std::size_t depth_of(int i) const {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    if (n.feature < 0) return 0;
    return 1 + std::max(depth_of(n.left), depth_of(n.right));
  }
};

namespace detail {

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& train, TreeModel& model)
      : train_(train), model_(model), classes_(train.labels()) {
    class_of_.reserve(train.size());
    for (const auto& row : train.rows()) {
      class_of_.push_back(static_cast<std::size_t>(
          std::find(classes_.begin(), classes_.end(), row.label) - classes_.begin()));
    }
  }

  int build(std::vector<std::size_t> rows) {
    const int id = static_cast<int>(model_.nodes.size());
    model_.nodes.emplace_back();

    std::vector<std::int64_t> counts(classes_.size(), 0);
    for (std::size_t r : rows) ++counts[class_of_[r]];
    // Majority; std::max_element keeps the lowest ordinal on ties.
    const auto majority = static_cast<std::size_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    model_.nodes[static_cast<std::size_t>(id)].label = classes_[majority];

    const bool pure = counts[majority] == static_cast<std::int64_t>(rows.size());
    if (pure || rows.size() < 2) return id;

    const auto split = best_split(rows, counts);
    if (!split.found) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : rows) {
      (train_.row(r).values[split.feature] <= split.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int l = build(std::move(left));
    const int rt = build(std::move(right));
    auto& node = model_.nodes[static_cast<std::size_t>(id)];
    node.feature = static_cast<int>(split.feature);
    node.threshold = split.threshold;
    node.left = l;
    node.right = rt;
    return id;
  }

 private:
  struct Split {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    // Score sum_c cL^2/nL + sum_c cR^2/nR held as an exact fraction num/den;
    // maximizing it minimizes weighted Gini impurity.
    std::int64_t num = 0;
    std::int64_t den = 1;
  };

  Split best_split(const std::vector<std::size_t>& rows, const std::vector<std::int64_t>& total) {
    Split best;
    const std::size_t k = classes_.size();
    std::vector<std::size_t> order(rows);
    std::vector<std::int64_t> left(k);
    for (std::size_t f = 0; f < train_.feature_count(); ++f) {
      auto value = [&](std::size_t r) { return train_.row(r).values[f]; };
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
      std::fill(left.begin(), left.end(), 0);
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        ++left[class_of_[order[i]]];
        const double lo = value(order[i]);
        const double hi = value(order[i + 1]);
        if (!(lo < hi)) continue;
        const auto n_left = static_cast<std::int64_t>(i + 1);
        const auto n_right = static_cast<std::int64_t>(order.size()) - n_left;
        std::int64_t sq_left = 0;
        std::int64_t sq_right = 0;
        for (std::size_t c = 0; c < k; ++c) {
          sq_left += left[c] * left[c];
          const std::int64_t rc = total[c] - left[c];
          sq_right += rc * rc;
        }
        const std::int64_t num = sq_left * n_right + sq_right * n_left;
        const std::int64_t den = n_left * n_right;
        if (!best.found || num * best.den > best.num * den) {
          double mid = lo + (hi - lo) / 2.0;
          if (!(mid < hi)) mid = lo;
          best = {true, f, mid, num, den};
        }
      }
    }
    return best;
  }

  const Dataset& train_;
  TreeModel& model_;
  std::vector<ClassLabel> classes_;
  std::vector<std::size_t> class_of_;
};

}  // namespace detail

inline TreeModel tree_train(const Dataset& train) {
  if (train.empty()) throw Error(ErrorKind::Empty, "tree_train on zero rows");
  TreeModel model;
  model.dimension = train.feature_count();
  std::vector<std::size_t> rows(train.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  detail::TreeBuilder(train, model).build(std::move(rows));
  return model;
}

inline ClassLabel tree_predict(const TreeModel& model, std::span<const double> x) {
  if (x.size() != model.dimension) {
    throw Error(ErrorKind::DimensionMismatch, "tree query has " + std::to_string(x.size()) +
                                                  " features, model has " +
                                                  std::to_string(model.dimension));
  }
  const TreeNode* node = &model.nodes.front();
  while (node->feature >= 0) {
    const auto f = static_cast<std::size_t>(node->feature);
    node = &model.nodes[static_cast<std::size_t>(x[f] <= node->threshold ? node->left : node->right)];
  }
  return node->label;
}

}  // namespace tactile
