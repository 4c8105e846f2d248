#include "ir/ir_classifier.h"

#include <array>
#include <cstdlib>

namespace melograph {

namespace {

constexpr int kSmallMax = 5;   // |interval| <= 5 is small; >= 6 is large
constexpr int kSimilar = 2;    // "similar size": ||R|-|I|| <= 2

enum class Direction { Same, Change, Any };
enum class SizeClass { Zero, Small, Large, Any };
enum class SizeRelation { None, Similar, MuchLarger, MuchSmaller, SimilarOrLarger };

struct Rule {
  IRSymbol symbol;
  Direction direction;
  SizeClass implicative;
  SizeClass realized;
  SizeRelation relation;
};

// Evaluation order doubles as near-miss precedence.
constexpr std::array<Rule, 8> kRules = {{
    {IRSymbol::D, Direction::Any, SizeClass::Zero, SizeClass::Zero, SizeRelation::None},
    {IRSymbol::P, Direction::Same, SizeClass::Small, SizeClass::Any, SizeRelation::Similar},
    {IRSymbol::ID, Direction::Any, SizeClass::Zero, SizeClass::Small, SizeRelation::None},
    {IRSymbol::IP, Direction::Change, SizeClass::Small, SizeClass::Any, SizeRelation::Similar},
    {IRSymbol::VP, Direction::Same, SizeClass::Small, SizeClass::Any, SizeRelation::MuchLarger},
    {IRSymbol::R, Direction::Change, SizeClass::Large, SizeClass::Any, SizeRelation::MuchSmaller},
    {IRSymbol::IR, Direction::Same, SizeClass::Large, SizeClass::Any, SizeRelation::MuchSmaller},
    {IRSymbol::VR, Direction::Change, SizeClass::Large, SizeClass::Any, SizeRelation::SimilarOrLarger},
}};

int directionViolation(const Rule& rule, int implicative, int realized) {
  if (rule.direction == Direction::Any) return 0;
  long product = static_cast<long>(implicative) * realized;
  if (product == 0) return 0;  // a zero interval matches either direction
  bool same = product > 0;
  return (rule.direction == Direction::Same) == same ? 0 : 1;
}

int classViolation(SizeClass required, int magnitude) {
  switch (required) {
    case SizeClass::Zero: return magnitude == 0 ? 0 : 1;
    case SizeClass::Small: return magnitude <= kSmallMax ? 0 : 1;
    case SizeClass::Large: return magnitude > kSmallMax ? 0 : 1;
    case SizeClass::Any: return 0;
  }
  return 0;
}

int relationViolation(const Rule& rule, int abs_i, int abs_r) {
  switch (rule.relation) {
    case SizeRelation::None:
      // D wants both intervals zero; ID wants a nonzero small realized.
      if (rule.symbol == IRSymbol::D) return abs_i + abs_r;
      if (rule.symbol == IRSymbol::ID) return abs_r == 0 ? 1 : std::max(0, abs_r - kSmallMax);
      return 0;
    case SizeRelation::Similar:
      return std::max(0, std::abs(abs_r - abs_i) - kSimilar);
    case SizeRelation::MuchLarger:
      return std::max(0, (abs_i + 3) - abs_r);
    case SizeRelation::MuchSmaller:
      return std::max(0, abs_r - (abs_i - 3));
    case SizeRelation::SimilarOrLarger:
      return std::max(0, (abs_i - 2) - abs_r);
  }
  return 0;
}

}  // namespace

IRSymbol classifyTriplet(int p1, int p2, int p3) {
  const int implicative = p2 - p1;
  const int realized = p3 - p2;
  const int abs_i = std::abs(implicative);
  const int abs_r = std::abs(realized);

  IRSymbol best = IRSymbol::P;
  long best_score = -1;
  for (const Rule& rule : kRules) {
    int dir = directionViolation(rule, implicative, realized);
    int relation = relationViolation(rule, abs_i, abs_r);
    int size_class =
        classViolation(rule.implicative, abs_i) + classViolation(rule.realized, abs_r);
    // Lexicographic (direction, size relation, size class); list order
    // breaks remaining ties.
    long score = (static_cast<long>(dir) << 40) + (static_cast<long>(relation) << 20) +
                 size_class;
    if (best_score < 0 || score < best_score) {
      best_score = score;
      best = rule.symbol;
    }
  }
  return best;
}

NoteMatrix annotate(NoteMatrix matrix) {
  auto& events = matrix.events;
  const std::size_t n = events.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || i + 1 == n) {
      events[i].ir_symbol = IRSymbol::X;
    } else {
      events[i].ir_symbol = classifyTriplet(events[i - 1].midi_pitch,
                                            events[i].midi_pitch,
                                            events[i + 1].midi_pitch);
    }
  }
  return matrix;
}

}  // namespace melograph
