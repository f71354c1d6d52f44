#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tactile/core.hpp"
#include "tactile/error.hpp"

namespace tactile {

/// Largest combined sample size handled by exact enumeration.
inline constexpr std::size_t kExactRankSumLimit = 20;

namespace detail {

struct PooledRanks {
  std::vector<double> ranks;  // average ranks, a's values first then b's
  double tie_term = 0.0;      // sum over tie groups of t^3 - t
  bool has_ties = false;
};

inline PooledRanks pooled_ranks(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + b.size();
  std::vector<std::pair<double, std::size_t>> pooled;
  pooled.reserve(n);
  for (std::size_t i = 0; i < a.size(); ++i) pooled.emplace_back(a[i], i);
  for (std::size_t i = 0; i < b.size(); ++i) pooled.emplace_back(b[i], a.size() + i);
  std::sort(pooled.begin(), pooled.end());

  PooledRanks out;
  out.ranks.resize(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) out.ranks[pooled[t].second] = avg;
    const auto t = static_cast<double>(j - i);
    if (j - i > 1) {
      out.has_ties = true;
      out.tie_term += t * t * t - t;
    }
    i = j;
  }
  return out;
}

/// Two-sided p of rank sum `w` for m draws from {1..m+n} without ties, by
/// counting subsets with each possible sum.
inline double exact_rank_sum_p(std::size_t m, std::size_t n, long w) {
  const std::size_t total = m + n;
  const std::size_t max_sum = total * (total + 1) / 2;
  // ways[j][s]: number of j-element subsets of the ranks seen so far summing to s.
  std::vector<std::vector<double>> ways(m + 1, std::vector<double>(max_sum + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t r = 1; r <= total; ++r) {
    for (std::size_t j = std::min(r, m); j >= 1; --j) {
      for (std::size_t s = max_sum; s >= r; --s) ways[j][s] += ways[j - 1][s - r];
    }
  }
  double all = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  for (std::size_t s = 0; s <= max_sum; ++s) {
    const double c = ways[m][s];
    all += c;
    if (static_cast<long>(s) <= w) lower += c;
    if (static_cast<long>(s) >= w) upper += c;
  }
  return std::min(1.0, 2.0 * std::min(lower, upper) / all);
}

/// Two-sided normal approximation with tie-corrected variance and a 0.5
/// continuity correction; `w` is the rank sum of the first sample.
inline double normal_rank_sum_p(std::size_t m, std::size_t n, double w, double tie_term = 0.0) {
  const auto dm = static_cast<double>(m);
  const auto dn = static_cast<double>(n);
  const double total = dm + dn;
  const double u = w - dm * (dm + 1.0) / 2.0;
  const double mean = dm * dn / 2.0;
  const double var = dm * dn / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
  if (!(var > 0.0)) return 1.0;
  const double z = std::max(0.0, std::abs(u - mean) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace detail

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) p-value. Small tie-free samples
/// use the exact null distribution; everything else uses the normal
/// approximation with tie-corrected variance and a 0.5 continuity correction.
inline double rank_sum_p(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::Empty, "rank_sum_p needs two nonempty samples");
  const auto [lo_a, hi_a] = std::minmax_element(a.begin(), a.end());
  const auto [lo_b, hi_b] = std::minmax_element(b.begin(), b.end());
  if (*lo_a == *hi_a && *lo_b == *hi_b && *lo_a == *lo_b) return 1.0;

  const detail::PooledRanks pr = detail::pooled_ranks(a, b);
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  const double w = std::accumulate(pr.ranks.begin(), pr.ranks.begin() + static_cast<std::ptrdiff_t>(m), 0.0);

  if (!pr.has_ties && m + n <= kExactRankSumLimit) {
    return detail::exact_rank_sum_p(m, n, std::lround(w));
  }

  return detail::normal_rank_sum_p(m, n, w, pr.tie_term);
}

/// Pairwise rank-sum p-values of one feature between every two classes.
struct PValueMatrix {
  std::size_t feature_index = 0;
  std::vector<ClassLabel> labels;
  std::vector<std::vector<double>> p;
};

inline PValueMatrix pvalue_matrix(const Dataset& ds, std::size_t feature_index) {
  PValueMatrix out;
  out.feature_index = feature_index;
  out.labels = ds.labels();
  const std::size_t k = out.labels.size();
  if (k < 2) throw Error(ErrorKind::SingleClass, "pvalue_matrix needs at least two classes");
  std::vector<std::vector<double>> values;
  values.reserve(k);
  for (const auto& label : out.labels) values.push_back(values_for(ds, feature_index, label));

  out.p.assign(k, std::vector<double>(k, 1.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      out.p[i][j] = out.p[j][i] = rank_sum_p(values[i], values[j]);
    }
  }
  return out;
}

/// Mean of the distinct off-diagonal entries.
inline double average_offdiagonal(const PValueMatrix& m) {
  const std::size_t k = m.p.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) sum += m.p[i][j];
  }
  return sum / static_cast<double>(k * (k - 1) / 2);
}

struct SignificanceProfile {
  std::vector<std::string> feature_names;
  std::vector<double> average_p;
  std::vector<PValueMatrix> matrices;
};

/// Per-feature average class-pair p-value; low values mark features that
/// separate classes well.
inline SignificanceProfile significance_profile(const Dataset& ds) {
  SignificanceProfile out;
  out.feature_names = ds.feature_names();
  for (std::size_t f = 0; f < ds.feature_count(); ++f) {
    out.matrices.push_back(pvalue_matrix(ds, f));
    out.average_p.push_back(average_offdiagonal(out.matrices.back()));
  }
  return out;
}

}  // namespace tactile
