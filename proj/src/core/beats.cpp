#include "core/beats.h"

#include <cctype>
#include <cstdlib>

#include "core/errors.h"

namespace melograph {

namespace {

// Largest power-of-ten scaling we attempt before falling back to "n/d".
constexpr int kMaxDecimalDigits = 9;

}  // namespace

std::string beatsToString(const Beats& value) {
  std::int64_t num = value.numerator();
  std::int64_t den = value.denominator();

  // Reduce den by factors of 2 and 5; a pure 2^a*5^b denominator has an
  // exact decimal expansion of max(a, b) digits.
  std::int64_t rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  int digits = twos > fives ? twos : fives;
  if (rest != 1 || digits > kMaxDecimalDigits) {
    return std::to_string(num) + "/" + std::to_string(den);
  }
  if (digits < 2) digits = 2;

  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  bool negative = num < 0;
  std::int64_t abs_num = negative ? -num : num;
  std::int64_t scaled = abs_num * (scale / den);
  std::string frac = std::to_string(scaled % scale);
  while (static_cast<int>(frac.size()) < digits) frac.insert(frac.begin(), '0');
  return (negative ? "-" : "") + std::to_string(scaled / scale) + "." + frac;
}

Beats beatsFromString(const std::string& text) {
  if (text.empty()) throw ParseError("empty beats value");

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::int64_t num = 0;
    std::int64_t den = 0;
    try {
      num = std::stoll(text.substr(0, slash));
      den = std::stoll(text.substr(slash + 1));
    } catch (const std::exception&) {
      throw ParseError("malformed rational '" + text + "'");
    }
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Beats(num, den);
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::int64_t int_part = 0;
  std::int64_t frac_part = 0;
  std::int64_t frac_scale = 1;
  bool saw_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    int_part = int_part * 10 + (text[pos] - '0');
    saw_digit = true;
    ++pos;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (frac_scale > 100000000000000000LL) {
        throw ParseError("too many fractional digits in '" + text + "'");
      }
      frac_part = frac_part * 10 + (text[pos] - '0');
      frac_scale *= 10;
      saw_digit = true;
      ++pos;
    }
  }
  if (!saw_digit || pos != text.size()) {
    throw ParseError("malformed beats value '" + text + "'");
  }
  Beats result = Beats(int_part) + Beats(frac_part, frac_scale);
  return negative ? -result : result;
}

}  // namespace melograph
