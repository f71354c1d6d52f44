#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/error.hpp"

namespace tactile {

enum class KernelKind { Linear, Rbf };

struct SvmParams {
  KernelKind kernel = KernelKind::Linear;
  double c = 1.0;
  /// Unset means 1 / (d * mean feature variance) of each pair's rows.
  std::optional<double> gamma;
  double tolerance = 1e-3;
};

/// One binary machine of the one-vs-one ensemble. `positive` has the lower
/// ordinal; f(x) > 0 votes for it.
struct BinarySvm {
  ClassLabel positive;
  ClassLabel negative;
  double gamma = 0.0;
  double bias = 0.0;
  /// Row indices (into the training dataset) of the pair's rows, with their
  /// targets and dual variables, kept for feasibility checks.
  std::vector<std::size_t> row_indices;
  std::vector<int> targets;
  std::vector<double> alphas;
  std::vector<std::size_t> support_indices;
  std::vector<std::vector<double>> support_vectors;
  /// alpha_i * y_i for each support vector.
  std::vector<double> dual_coefs;
  std::size_t iterations = 0;
  bool converged = false;
};

struct SvmModel {
  KernelKind kernel = KernelKind::Linear;
  double c = 1.0;
  std::size_t dimension = 0;
  std::vector<ClassLabel> classes;
  std::vector<BinarySvm> machines;
};

inline double kernel_value(KernelKind kind, double gamma, std::span<const double> a,
                           std::span<const double> b) {
  if (kind == KernelKind::Linear) {
    double dot = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) dot += a[j] * b[j];
    return dot;
  }
  double d2 = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

namespace detail {

inline double auto_gamma(const std::vector<const std::vector<double>*>& rows) {
  const std::size_t d = rows.front()->size();
  const auto n = static_cast<double>(rows.size());
  double var_sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (const auto* r : rows) mean += (*r)[j];
    mean /= n;
    double var = 0.0;
    for (const auto* r : rows) var += ((*r)[j] - mean) * ((*r)[j] - mean);
    var_sum += var / n;
  }
  const double mean_var = var_sum / static_cast<double>(d);
  return mean_var > 0.0 ? 1.0 / (static_cast<double>(d) * mean_var) : 1.0 / static_cast<double>(d);
}

/// Soft-margin dual solved by sequential pairwise updates on the maximal
/// violating pair. Ties in the pair selection go to the lowest row index.
inline void solve_pair(const std::vector<const std::vector<double>*>& x, BinarySvm& m,
                       KernelKind kind, double c, double tol) {
  const std::size_t n = x.size();
  std::vector<double> kmat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      kmat[i * n + j] = kmat[j * n + i] = kernel_value(kind, m.gamma, *x[i], *x[j]);
    }
  }
  const auto& y = m.targets;
  auto q = [&](std::size_t i, std::size_t j) { return y[i] * y[j] * kmat[i * n + j]; };

  std::vector<double>& alpha = m.alphas;
  alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);
  constexpr double kTau = 1e-12;
  const std::size_t max_iter = std::max<std::size_t>(100000, 100 * n);

  auto in_up = [&](std::size_t t) {
    return (y[t] == 1 && alpha[t] < c) || (y[t] == -1 && alpha[t] > 0.0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] == 1 && alpha[t] > 0.0) || (y[t] == -1 && alpha[t] < c);
  };

  std::size_t iter = 0;
  for (; iter < max_iter; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    std::size_t i = n;
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    if (i == n || j == n || gmax - gmin < tol) {
      m.converged = true;
      break;
    }

    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * dai + q(t, j) * daj;
  }
  m.iterations = iter;

  // Bias from free support vectors; fall back to the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;
  m.bias = -rho;

  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      m.support_indices.push_back(m.row_indices[t]);
      m.support_vectors.push_back(*x[t]);
      m.dual_coefs.push_back(alpha[t] * y[t]);
    }
  }
}

}  // namespace detail

inline double decision_value(const BinarySvm& m, KernelKind kind, std::span<const double> x) {
  double f = m.bias;
  for (std::size_t s = 0; s < m.support_vectors.size(); ++s) {
    f += m.dual_coefs[s] * kernel_value(kind, m.gamma, m.support_vectors[s], x);
  }
  return f;
}

/// Primal weights of a linear machine, w = sum alpha_i y_i x_i.
inline std::vector<double> linear_weights(const BinarySvm& m, std::size_t dimension) {
  std::vector<double> w(dimension, 0.0);
  for (std::size_t s = 0; s < m.support_vectors.size(); ++s) {
    for (std::size_t j = 0; j < dimension; ++j) w[j] += m.dual_coefs[s] * m.support_vectors[s][j];
  }
  return w;
}

/// One-vs-one soft-margin SVM; one binary machine per unordered class pair.
inline SvmModel svm_train(const Dataset& train, const SvmParams& params = {}) {
  if (train.empty()) throw Error(ErrorKind::Empty, "svm_train on zero rows");
  if (!(params.c > 0.0)) throw Error(ErrorKind::ConfigInvalid, "svm C must be > 0");
  for (const auto& row : train.rows()) {
    for (double v : row.values) {
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "row '" + row.trial_id + "'");
    }
  }
  SvmModel model;
  model.kernel = params.kernel;
  model.c = params.c;
  model.dimension = train.feature_count();
  model.classes = train.labels();
  if (model.classes.size() < 2) {
    throw Error(ErrorKind::SingleClass, "svm_train needs at least two classes");
  }

  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      BinarySvm m;
      m.positive = model.classes[a];
      m.negative = model.classes[b];
      std::vector<const std::vector<double>*> x;
      for (std::size_t i = 0; i < train.size(); ++i) {
        const auto& row = train.row(i);
        if (row.label == m.positive || row.label == m.negative) {
          x.push_back(&row.values);
          m.row_indices.push_back(i);
          m.targets.push_back(row.label == m.positive ? 1 : -1);
        }
      }
      m.gamma = params.kernel == KernelKind::Linear ? 0.0
                                                    : params.gamma.value_or(detail::auto_gamma(x));
      detail::solve_pair(x, m, params.kernel, params.c, params.tolerance);
      model.machines.push_back(std::move(m));
    }
  }
  return model;
}

/// Pairwise vote; ties go to the larger summed |f| of won pairs, then the lower ordinal.
inline ClassLabel svm_predict(const SvmModel& model, std::span<const double> x) {
  if (x.size() != model.dimension) {
    throw Error(ErrorKind::DimensionMismatch, "svm query has " + std::to_string(x.size()) +
                                                  " features, model has " +
                                                  std::to_string(model.dimension));
  }
  const std::size_t k = model.classes.size();
  std::vector<int> votes(k, 0);
  std::vector<double> confidence(k, 0.0);
  auto index_of = [&](const ClassLabel& l) {
    return static_cast<std::size_t>(
        std::find(model.classes.begin(), model.classes.end(), l) - model.classes.begin());
  };
  for (const auto& m : model.machines) {
    const double f = decision_value(m, model.kernel, x);
    const std::size_t winner = index_of(f > 0.0 ? m.positive : m.negative);
    ++votes[winner];
    confidence[winner] += std::abs(f);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < k; ++c) {
    if (votes[c] > votes[best] || (votes[c] == votes[best] && confidence[c] > confidence[best])) {
      best = c;
    }
  }
  return model.classes[best];
}

}  // namespace tactile
