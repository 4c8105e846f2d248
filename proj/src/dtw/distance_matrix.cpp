#include "dtw/distance_matrix.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "core/errors.h"

namespace melograph {

std::string formatDouble(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw ArgumentError("double formatting failed");
  return std::string(buffer, ptr);
}

DistanceMatrix DistanceMatrix::zero(std::vector<std::string> ids) {
  DistanceMatrix d;
  d.values.assign(ids.size() * ids.size(), 0.0);
  d.ids = std::move(ids);
  return d;
}

void validateDistanceMatrix(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (d.values.size() != n * n) throw ArgumentError("distance matrix shape mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (d.at(i, i) != 0.0) throw ArgumentError("nonzero diagonal at " + d.ids[i]);
    for (std::size_t j = 0; j < n; ++j) {
      double v = d.at(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ArgumentError("invalid distance at (" + d.ids[i] + ", " + d.ids[j] + ")");
      }
      if (v != d.at(j, i)) {
        throw ArgumentError("asymmetry at (" + d.ids[i] + ", " + d.ids[j] + ")");
      }
    }
  }
}

std::string distanceMatrixToCsv(const DistanceMatrix& d) {
  std::ostringstream out;
  out << "id";
  for (const std::string& id : d.ids) out << "," << id;
  out << "\n";
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    out << d.ids[i];
    for (std::size_t j = 0; j < n; ++j) out << "," << formatDouble(d.at(i, j));
    out << "\n";
  }
  return out.str();
}

DistanceMatrix distanceMatrixFromCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty distance matrix CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  DistanceMatrix d;
  std::istringstream header(line);
  std::string field;
  std::getline(header, field, ',');  // "id"
  while (std::getline(header, field, ',')) d.ids.push_back(field);
  const std::size_t n = d.ids.size();
  d.values.assign(n * n, 0.0);

  std::size_t row = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row >= n) throw ParseError(line_no, "more rows than header ids");
    std::istringstream fields(line);
    std::getline(fields, field, ',');
    if (field != d.ids[row]) throw ParseError(line_no, "row id mismatch '" + field + "'");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::getline(fields, field, ',')) throw ParseError(line_no, "missing column");
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(line_no, "bad distance value '" + field + "'");
      }
      d.values[row * n + j] = v;
    }
    ++row;
  }
  if (row != n) throw ParseError("expected " + std::to_string(n) + " rows");
  return d;
}

}  // namespace melograph
