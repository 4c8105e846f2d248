// Statistical tests and effect sizes for similarity-score comparisons.

#pragma once

#include <span>
#include <vector>

namespace melograph {

/// Cohen's d with pooled sample SD: (mean(a) - mean(b)) / s_pooled.
/// Degenerate variance yields signed infinity (NaN when the means also
/// coincide); callers exclude such values from FDR correction.
double cohensD(std::span<const double> a, std::span<const double> b);

/// Mann-Whitney U statistic of a over b: #(a_i > b_j) + 0.5 #(a_i == b_j).
double mannWhitneyU(std::span<const double> a, std::span<const double> b);

/// AUC = U / (n1 n2): the probability a random a-value exceeds a random
/// b-value, ties counted half.
double aucStatistic(std::span<const double> a, std::span<const double> b);

/// Two-sided Mann-Whitney p via the normal approximation with tie
/// correction (no continuity correction). All-tied samples give p = 1.
double mannWhitneyP(std::span<const double> a, std::span<const double> b);

/// Benjamini-Hochberg step-up adjustment, positions preserved. Non-finite
/// inputs are ignored (returned unchanged, excluded from m).
std::vector<double> benjaminiHochberg(std::span<const double> p_values);

/// Spearman rank correlation with average-rank ties.
double spearmanRho(std::span<const double> a, std::span<const double> b);

/// Adjusted Rand index between two labelings of the same items.
double adjustedRandIndex(std::span<const int> a, std::span<const int> b);

/// Standard normal CDF.
double normalCdf(double z);

/// Average ranks (1-based), ties sharing their mean rank.
std::vector<double> averageRanks(std::span<const double> values);

}  // namespace melograph
