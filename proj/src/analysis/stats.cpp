#include "analysis/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "core/errors.h"

namespace melograph {

namespace {

double mean(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sampleVariance(std::span<const double> xs, double m) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

}  // namespace

double normalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double cohensD(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("cohensD over an empty sample");
  double ma = mean(a);
  double mb = mean(b);
  double n1 = static_cast<double>(a.size());
  double n2 = static_cast<double>(b.size());
  double pooled_var =
      ((n1 - 1.0) * sampleVariance(a, ma) + (n2 - 1.0) * sampleVariance(b, mb)) /
      (n1 + n2 - 2.0);
  if (pooled_var <= 0.0) {
    if (ma > mb) return std::numeric_limits<double>::infinity();
    if (ma < mb) return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return (ma - mb) / std::sqrt(pooled_var);
}

double mannWhitneyU(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("mannWhitneyU over an empty sample");
  // Rank-based computation; the test suite checks it against direct pair
  // counting.
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> ranks = averageRanks(pooled);
  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += ranks[i];
  double n1 = static_cast<double>(a.size());
  return rank_sum_a - n1 * (n1 + 1.0) / 2.0;
}

double aucStatistic(std::span<const double> a, std::span<const double> b) {
  return mannWhitneyU(a, b) /
         (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double mannWhitneyP(std::span<const double> a, std::span<const double> b) {
  double u = mannWhitneyU(a, b);
  double n1 = static_cast<double>(a.size());
  double n2 = static_cast<double>(b.size());
  double big_n = n1 + n2;

  // Tie correction over the pooled sample.
  std::map<double, std::size_t> tie_groups;
  for (double x : a) ++tie_groups[x];
  for (double x : b) ++tie_groups[x];
  double tie_term = 0.0;
  for (const auto& [value, count] : tie_groups) {
    double t = static_cast<double>(count);
    tie_term += t * t * t - t;
  }
  double variance =
      (n1 * n2 / 12.0) * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
  if (variance <= 0.0) return 1.0;  // every observation tied
  double z = (u - n1 * n2 / 2.0) / std::sqrt(variance);
  double p = 2.0 * (1.0 - normalCdf(std::abs(z)));
  return std::min(1.0, std::max(p, std::numeric_limits<double>::min()));
}

std::vector<double> benjaminiHochberg(std::span<const double> p_values) {
  std::vector<double> adjusted(p_values.begin(), p_values.end());
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < p_values.size(); ++i) {
    if (std::isfinite(p_values[i])) finite.push_back(i);
  }
  const std::size_t m = finite.size();
  if (m == 0) return adjusted;
  std::sort(finite.begin(), finite.end(), [&](std::size_t x, std::size_t y) {
    return p_values[x] < p_values[y];
  });
  double running_min = 1.0;
  for (std::size_t r = m; r >= 1; --r) {
    std::size_t idx = finite[r - 1];
    double value = p_values[idx] * static_cast<double>(m) / static_cast<double>(r);
    running_min = std::min(running_min, value);
    adjusted[idx] = std::min(1.0, running_min);
  }
  return adjusted;
}

std::vector<double> averageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(values.size(), 0.0);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearmanRho(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ArgumentError("spearmanRho needs two equal-length samples of size >= 2");
  }
  std::vector<double> ra = averageRanks(a);
  std::vector<double> rb = averageRanks(b);
  double ma = mean(ra);
  double mb = mean(rb);
  double cov = 0.0;
  double va = 0.0;
  double vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va <= 0.0 || vb <= 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

double adjustedRandIndex(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size() || a.empty()) {
    throw ArgumentError("adjustedRandIndex needs two equal-length labelings");
  }
  std::map<std::pair<int, int>, double> contingency;
  std::map<int, double> row_sums;
  std::map<int, double> col_sums;
  for (std::size_t i = 0; i < a.size(); ++i) {
    contingency[{a[i], b[i]}] += 1.0;
    row_sums[a[i]] += 1.0;
    col_sums[b[i]] += 1.0;
  }
  auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double sum_cells = 0.0;
  for (const auto& [key, count] : contingency) sum_cells += choose2(count);
  double sum_rows = 0.0;
  for (const auto& [key, count] : row_sums) sum_rows += choose2(count);
  double sum_cols = 0.0;
  for (const auto& [key, count] : col_sums) sum_cols += choose2(count);
  double total = choose2(static_cast<double>(a.size()));
  double expected = sum_rows * sum_cols / total;
  double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 0.0;
  return (sum_cells - expected) / (max_index - expected);
}

}  // namespace melograph
