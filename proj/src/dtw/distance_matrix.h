// Symmetric pairwise distance matrix with CSV interchange.

#pragma once

#include <string>
#include <vector>

namespace melograph {

struct DistanceMatrix {
  std::vector<std::string> ids;
  std::vector<double> values;  // n*n row-major

  std::size_t size() const { return ids.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * ids.size() + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    values[i * ids.size() + j] = v;
    values[j * ids.size() + i] = v;
  }

  static DistanceMatrix zero(std::vector<std::string> ids);

  bool operator==(const DistanceMatrix&) const = default;
};

/// Checks symmetry, zero diagonal, non-negativity, finiteness.
void validateDistanceMatrix(const DistanceMatrix& d);

/// CSV with an id header row and id-prefixed rows. Doubles render in
/// shortest round-trip form, so write/read is lossless.
std::string distanceMatrixToCsv(const DistanceMatrix& d);
DistanceMatrix distanceMatrixFromCsv(const std::string& text);

/// Shortest round-trip decimal rendering of a double (shared by all CSV
/// writers so artifacts are byte-stable).
std::string formatDouble(double value);

}  // namespace melograph
