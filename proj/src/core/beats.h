// Exact rational time values in quarter-note beats.

#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace melograph {

/// Musical time in quarter-note units, kept exact to avoid drift in tuplets.
using Beats = boost::rational<std::int64_t>;

/// Renders a Beats value for interchange files. Values whose reduced
/// denominator divides a power of ten print as an exact decimal with at
/// least two fractional digits (e.g. "0.50", "0.0625"); anything else
/// (e.g. triplet positions) prints as "n/d" so that parsing is lossless.
std::string beatsToString(const Beats& value);

/// Inverse of beatsToString. Accepts decimals, integers, and "n/d".
/// Throws ParseError on malformed text.
Beats beatsFromString(const std::string& text);

inline double beatsToDouble(const Beats& value) {
  return static_cast<double>(value.numerator()) /
         static_cast<double>(value.denominator());
}

}  // namespace melograph
