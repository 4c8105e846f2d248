// Schellenberg two-factor melodic expectancy and its corpus-level binning.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/ir_symbol.h"
#include "core/note_matrix.h"

namespace melograph {

// Standardized weights from the two-factor model, the signed square roots
// of the reported semipartial correlations sr^2 = 0.364 and 0.144.
constexpr double kBetaPP = 0.604;
constexpr double kBetaPR = 0.379;

struct ExpectancyScore {
  double pp_norm = 0.0;  // pitch proximity, in [0,1]
  double pr_norm = 0.0;  // pitch reversal, in [0,1]
  double e = 0.0;        // kBetaPP * pp_norm + kBetaPR * pr_norm
};

/// Corpus-wide normalization bounds for the pitch-reversal raw score.
/// Pitch proximity has the closed form 1 - min(|R|,12)/12 and needs none.
struct ExpectancyStats {
  int pr_min = 0;
  int pr_max = 0;

  std::string toJson() const;
  static ExpectancyStats fromJson(const std::string& text);
};

/// Raw pitch-reversal score of a triplet: 0 for small implicative
/// intervals; for large ones +1 on direction change (+1 more on registral
/// return |p3-p1| <= 2), -1 on continuation, 0 on a lateral realization.
int pitchReversalRaw(int p1, int p2, int p3);

/// Bounds of the raw reversal score over every complete triplet of every
/// piece. Throws ArgumentError when the corpus has no triplet at all.
ExpectancyStats computeExpectancyStats(std::span<const NoteMatrix> corpus);

/// Note-level expectancy of a triplet. Degenerate bounds (max == min) map
/// the reversal factor to 0.5.
ExpectancyScore noteExpectancy(int p1, int p2, int p3, const ExpectancyStats& stats);

/// Per-note expectancy values for a piece; boundary notes (no complete
/// triplet) are nullopt.
std::vector<std::optional<double>> noteExpectancies(const NoteMatrix& matrix,
                                                    const ExpectancyStats& stats);

/// Arithmetic mean of the defined values in a slice; nullopt if none.
std::optional<double> segmentExpectancy(std::span<const std::optional<double>> values);

enum class ExpectancyBin { VeryLow, Low, Medium, High, VeryHigh };

const char* expectancyBinName(ExpectancyBin bin);
std::optional<ExpectancyBin> expectancyBinFromName(const std::string& name);

/// Quintile bins by percentile rank (average-rank ties, Hazen percentile
/// 100*(rank-0.5)/n) over the defined values; undefined values fall back
/// to Medium.
std::vector<ExpectancyBin> binExpectancy(std::span<const std::optional<double>> values);

/// Modal symbol among the slice excluding X, ties broken by the fixed
/// precedence P > D > ID > IP > VP > R > IR > VR; X when nothing else
/// occurs.
IRSymbol dominantSymbol(std::span<const IRSymbol> symbols);

}  // namespace melograph
