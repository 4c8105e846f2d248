#include "score/beat_strength.h"

#include "core/errors.h"

namespace melograph {

namespace {

constexpr int kFloorLevel = 4;  // weight floor 1/2^4 = 1/16

bool onGrid(const Beats& onset, const Beats& step) {
  Beats quotient = onset / step;
  return quotient.denominator() == 1;
}

}  // namespace

Beats measureLength(int numerator, int denominator) {
  if (numerator <= 0 || denominator <= 0) {
    throw ArgumentError("invalid time signature " + std::to_string(numerator) + "/" +
                        std::to_string(denominator));
  }
  return Beats(numerator * 4, denominator);
}

Beats beatStrength(const Beats& onset_in_measure, int numerator, int denominator) {
  Beats length = measureLength(numerator, denominator);
  if (onset_in_measure < Beats(0) || onset_in_measure >= length) {
    throw ArgumentError("onset " + beatsToString(onset_in_measure) +
                        " outside measure of length " + beatsToString(length));
  }
  if (onset_in_measure == Beats(0)) return Beats(1);

  bool ternary_top = numerator % 3 == 0;
  Beats step = ternary_top ? length / 3 : length / 2;
  Beats weight(1, 2);
  for (int level = 1; level <= kFloorLevel; ++level) {
    if (onGrid(onset_in_measure, step)) return weight;
    step /= 2;
    weight /= 2;
  }
  return Beats(1, 16);
}

}  // namespace melograph
