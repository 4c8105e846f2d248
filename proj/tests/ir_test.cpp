// Tests for I-R classification and two-factor expectancy.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "core/errors.h"
#include "fixtures.h"
#include "ir/expectancy.h"
#include "ir/ir_classifier.h"
#include "score/musicxml_reader.h"

namespace melograph {
namespace {

TEST(ClassifyTriplet, ArchetypeExamples) {
  // Small implicative interval, same direction, similar size.
  EXPECT_EQ(classifyTriplet(60, 62, 64), IRSymbol::P);
  // Pure repetition: A + A -> A.
  EXPECT_EQ(classifyTriplet(60, 60, 60), IRSymbol::D);
  // Large leap up, small realized interval down.
  EXPECT_EQ(classifyTriplet(60, 72, 67), IRSymbol::R);
}

TEST(ClassifyTriplet, EtudeRowContexts) {
  // The four classified rows of the reference etude excerpt.
  EXPECT_EQ(classifyTriplet(66, 66, 65), IRSymbol::P);
  EXPECT_EQ(classifyTriplet(66, 65, 63), IRSymbol::P);
  EXPECT_EQ(classifyTriplet(65, 63, 70), IRSymbol::VR);
  EXPECT_EQ(classifyTriplet(63, 70, 68), IRSymbol::R);
}

TEST(ClassifyTriplet, RuleTableSpotChecks) {
  EXPECT_EQ(classifyTriplet(60, 60, 64), IRSymbol::ID);  // unison then small move
  EXPECT_EQ(classifyTriplet(60, 62, 59), IRSymbol::IP);  // small, direction change
  EXPECT_EQ(classifyTriplet(60, 62, 70), IRSymbol::VP);  // small then much larger, same dir
  EXPECT_EQ(classifyTriplet(60, 70, 74), IRSymbol::IR);  // large then small, same dir
  EXPECT_EQ(classifyTriplet(60, 70, 62), IRSymbol::VR);  // large then similar, change
  EXPECT_EQ(classifyTriplet(60, 66, 63), IRSymbol::R);   // tritone counts as large
}

TEST(ClassifyTriplet, TranspositionInvariance) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pitch(48, 72);
  std::uniform_int_distribution<int> shift(-24, 24);
  for (int i = 0; i < 500; ++i) {
    int p1 = pitch(rng), p2 = pitch(rng), p3 = pitch(rng);
    int t = shift(rng);
    EXPECT_EQ(classifyTriplet(p1, p2, p3), classifyTriplet(p1 + t, p2 + t, p3 + t));
  }
}

TEST(ClassifyTriplet, InversionInvarianceExhaustive) {
  // Mirroring all intervals preserves every symbol in our rule table.
  for (int i = -13; i <= 13; ++i) {
    for (int r = -13; r <= 13; ++r) {
      IRSymbol forward = classifyTriplet(60, 60 + i, 60 + i + r);
      IRSymbol mirrored = classifyTriplet(60, 60 - i, 60 - i - r);
      EXPECT_EQ(forward, mirrored) << "I=" << i << " R=" << r;
    }
  }
}

TEST(Annotate, SingleNote) {
  NoteMatrix m;
  m.events.resize(1);
  m.events[0].midi_pitch = 60;
  NoteMatrix out = annotate(m);
  EXPECT_EQ(out.events[0].ir_symbol, IRSymbol::X);
}

TEST(Annotate, ThreeNoteProcess) {
  NoteMatrix m;
  for (int pitch : {60, 62, 64}) {
    NoteEvent e;
    e.midi_pitch = pitch;
    m.events.push_back(e);
  }
  NoteMatrix out = annotate(m);
  EXPECT_EQ(out.events[0].ir_symbol, IRSymbol::X);
  EXPECT_EQ(out.events[1].ir_symbol, IRSymbol::P);
  EXPECT_EQ(out.events[2].ir_symbol, IRSymbol::X);
}

TEST(Annotate, EtudeFixtureSymbols) {
  NoteMatrix m = annotate(parseMusicXml(fixtures::etudeExcerpt()));
  ASSERT_EQ(m.events.size(), 7u);
  EXPECT_EQ(m.events[0].ir_symbol, IRSymbol::X);
  // Row 2's context admits a compound reading; we emit single symbols,
  // so only rows 3-6 carry pinned expectations.
  EXPECT_EQ(m.events[2].ir_symbol, IRSymbol::P);
  EXPECT_EQ(m.events[3].ir_symbol, IRSymbol::P);
  EXPECT_EQ(m.events[4].ir_symbol, IRSymbol::VR);
  EXPECT_EQ(m.events[5].ir_symbol, IRSymbol::R);
  EXPECT_EQ(m.events[6].ir_symbol, IRSymbol::X);
}

TEST(Annotate, BoundaryXCountProperty) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> pitch(40, 90);
  for (int n = 1; n <= 12; ++n) {
    NoteMatrix m;
    for (int i = 0; i < n; ++i) {
      NoteEvent e;
      e.midi_pitch = pitch(rng);
      m.events.push_back(e);
    }
    NoteMatrix out = annotate(m);
    int x_count = 0;
    for (const NoteEvent& e : out.events) {
      ASSERT_TRUE(e.ir_symbol.has_value());
      if (*e.ir_symbol == IRSymbol::X) ++x_count;
    }
    EXPECT_EQ(x_count, std::min(2, n));
  }
}

TEST(NoteExpectancy, DirectSubstitution) {
  // pp_norm = pr_norm = 1 and = 0 via hand-picked triplets and bounds.
  ExpectancyStats stats{.pr_min = 0, .pr_max = 2};
  // Repeat note (pp = 1) after a large leap with registral return (raw 2).
  ExpectancyScore top = noteExpectancy(72, 60, 61, stats);
  EXPECT_NEAR(top.pp_norm, 1.0 - 1.0 / 12.0, 1e-12);
  ExpectancyScore exact = noteExpectancy(72, 60, 60, stats);
  EXPECT_NEAR(exact.pp_norm, 1.0, 1e-12);
  EXPECT_NEAR(exact.pr_norm, 0.0, 1e-12);  // lateral realization: raw 0
  // Direction change plus registral return |p3-p1| <= 2: raw 2 -> pr_norm 1.
  ExpectancyScore ret = noteExpectancy(60, 72, 61, stats);
  EXPECT_NEAR(ret.pr_norm, 1.0, 1e-12);
  EXPECT_NEAR(ret.e, kBetaPP * ret.pp_norm + kBetaPR * 1.0, 1e-12);
}

TEST(NoteExpectancy, UnitAndZeroCases) {
  // e = 0.983 when both normalized factors are 1; e = 0 when both are 0.
  ExpectancyStats stats{.pr_min = -1, .pr_max = 1};
  // pp = 1 requires |p3 - p2| = 0; raw reversal 1 with bounds [-1, 1] -> 1.
  ExpectancyScore one = noteExpectancy(72, 60, 60, stats);
  // Lateral realization is raw 0 -> pr_norm 0.5 here, so build pr = 1 via
  // a changed direction: |p3 - p2| must stay 0 for pp = 1, impossible --
  // so check the linear form directly instead.
  EXPECT_NEAR(kBetaPP * 1.0 + kBetaPR * 1.0, 0.983, 1e-12);
  EXPECT_NEAR(kBetaPP * 0.0 + kBetaPR * 0.0, 0.0, 1e-12);
  EXPECT_NEAR(one.e, kBetaPP * one.pp_norm + kBetaPR * one.pr_norm, 1e-9);
}

TEST(NoteExpectancy, LinearFormInvariant) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pitch(40, 90);
  ExpectancyStats stats{.pr_min = -1, .pr_max = 2};
  for (int i = 0; i < 300; ++i) {
    ExpectancyScore s = noteExpectancy(pitch(rng), pitch(rng), pitch(rng), stats);
    EXPECT_GE(s.pp_norm, 0.0);
    EXPECT_LE(s.pp_norm, 1.0);
    EXPECT_GE(s.pr_norm, 0.0);
    EXPECT_LE(s.pr_norm, 1.0);
    EXPECT_NEAR(s.e, 0.604 * s.pp_norm + 0.379 * s.pr_norm, 1e-9);
  }
}

TEST(NoteExpectancy, ToyCorpusHandOracle) {
  // Seven notes -> five triplets; every factor recomputed by hand below.
  NoteMatrix piece;
  for (int pitch : {60, 62, 64, 71, 69, 60, 48}) {
    NoteEvent e;
    e.midi_pitch = pitch;
    piece.events.push_back(e);
  }
  ExpectancyStats stats = computeExpectancyStats({&piece, 1});
  // Raw reversal scores: 0, 0, +1 (leap 7 up, step down, no registral
  // return), 0, -1 (leap 9 down continued down). Bounds [-1, +1].
  EXPECT_EQ(stats.pr_min, -1);
  EXPECT_EQ(stats.pr_max, 1);

  ExpectancyScore t1 = noteExpectancy(60, 62, 64, stats);
  EXPECT_NEAR(t1.pp_norm, 1.0 - 2.0 / 12.0, 1e-12);
  EXPECT_NEAR(t1.pr_norm, (0.0 + 1.0) / 2.0, 1e-12);
  EXPECT_NEAR(t1.e, 0.604 * (10.0 / 12.0) + 0.379 * 0.5, 1e-12);

  ExpectancyScore t3 = noteExpectancy(64, 71, 69, stats);
  EXPECT_NEAR(t3.pp_norm, 1.0 - 2.0 / 12.0, 1e-12);
  EXPECT_NEAR(t3.pr_norm, 1.0, 1e-12);
  EXPECT_NEAR(t3.e, 0.604 * (10.0 / 12.0) + 0.379, 1e-12);

  ExpectancyScore t5 = noteExpectancy(69, 60, 48, stats);
  EXPECT_NEAR(t5.pp_norm, 0.0, 1e-12);
  EXPECT_NEAR(t5.pr_norm, 0.0, 1e-12);
  EXPECT_NEAR(t5.e, 0.0, 1e-12);
}

TEST(NoteExpectancy, MonotoneInRealizedInterval) {
  // PR raw stays 0 for a small implicative interval, so e must be
  // non-increasing as |p3 - p2| grows.
  ExpectancyStats stats{.pr_min = -1, .pr_max = 2};
  double prev = 2.0;
  for (int realized = 0; realized <= 14; ++realized) {
    ExpectancyScore s = noteExpectancy(60, 62, 62 + realized, stats);
    EXPECT_LE(s.e, prev + 1e-12);
    prev = s.e;
  }
}

TEST(NoteExpectancy, DegenerateBoundsFallback) {
  ExpectancyStats stats{.pr_min = 0, .pr_max = 0};
  ExpectancyScore s = noteExpectancy(60, 62, 64, stats);
  EXPECT_NEAR(s.pr_norm, 0.5, 1e-12);
}

TEST(ExpectancyStats, JsonRoundTrip) {
  ExpectancyStats stats{.pr_min = -1, .pr_max = 2};
  ExpectancyStats back = ExpectancyStats::fromJson(stats.toJson());
  EXPECT_EQ(back.pr_min, -1);
  EXPECT_EQ(back.pr_max, 2);
}

TEST(SegmentExpectancy, MeanCases) {
  std::vector<std::optional<double>> all_half = {0.5, 0.5, 0.5};
  EXPECT_NEAR(*segmentExpectancy(all_half), 0.5, 1e-12);

  std::vector<std::optional<double>> two = {0.2, 0.4};
  EXPECT_NEAR(*segmentExpectancy(two), 0.3, 1e-12);

  // Seven-note segment with two boundary notes: mean of the 5 defined.
  std::vector<std::optional<double>> seven = {std::nullopt, 0.1, 0.2, 0.3,
                                              0.4,          0.5, std::nullopt};
  EXPECT_NEAR(*segmentExpectancy(seven), (0.1 + 0.2 + 0.3 + 0.4 + 0.5) / 5.0, 1e-12);

  std::vector<std::optional<double>> none = {std::nullopt, std::nullopt};
  EXPECT_FALSE(segmentExpectancy(none).has_value());
}

TEST(BinExpectancy, OnePerQuintile) {
  std::vector<std::optional<double>> values = {1.0, 2.0, 3.0, 4.0, 5.0};
  auto bins = binExpectancy(values);
  EXPECT_EQ(bins[0], ExpectancyBin::VeryLow);
  EXPECT_EQ(bins[1], ExpectancyBin::Low);
  EXPECT_EQ(bins[2], ExpectancyBin::Medium);
  EXPECT_EQ(bins[3], ExpectancyBin::High);
  EXPECT_EQ(bins[4], ExpectancyBin::VeryHigh);
}

TEST(BinExpectancy, AllEqualIsMedium) {
  std::vector<std::optional<double>> values(8, 0.7);
  for (ExpectancyBin bin : binExpectancy(values)) {
    EXPECT_EQ(bin, ExpectancyBin::Medium);
  }
}

TEST(BinExpectancy, UndefinedFallsBackToMedium) {
  std::vector<std::optional<double>> values = {0.1, std::nullopt, 0.9};
  auto bins = binExpectancy(values);
  EXPECT_EQ(bins[1], ExpectancyBin::Medium);
}

TEST(BinExpectancy, MatchesSortRankOracle) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::optional<double>> values;
    for (int i = 0; i < 10; ++i) values.push_back(value(rng));
    auto bins = binExpectancy(values);
    // Oracle: average rank = (#less) + (#equal + 1) / 2, Hazen percentile.
    for (std::size_t i = 0; i < values.size(); ++i) {
      int less = 0;
      int equal = 0;
      for (const auto& other : values) {
        if (*other < *values[i]) ++less;
        if (*other == *values[i]) ++equal;
      }
      double avg_rank = less + (equal + 1) / 2.0;
      double pct = 100.0 * (avg_rank - 0.5) / static_cast<double>(values.size());
      ExpectancyBin expected = ExpectancyBin::VeryHigh;
      if (pct < 20) {
        expected = ExpectancyBin::VeryLow;
      } else if (pct < 40) {
        expected = ExpectancyBin::Low;
      } else if (pct < 60) {
        expected = ExpectancyBin::Medium;
      } else if (pct < 80) {
        expected = ExpectancyBin::High;
      }
      EXPECT_EQ(bins[i], expected);
    }
  }
}

TEST(DominantSymbol, ModeAndPrecedence) {
  std::vector<IRSymbol> clear = {IRSymbol::P, IRSymbol::P, IRSymbol::R};
  EXPECT_EQ(dominantSymbol(clear), IRSymbol::P);

  std::vector<IRSymbol> tied = {IRSymbol::P, IRSymbol::R};
  EXPECT_EQ(dominantSymbol(tied), IRSymbol::P);

  std::vector<IRSymbol> reversed_tie = {IRSymbol::VR, IRSymbol::R};
  EXPECT_EQ(dominantSymbol(reversed_tie), IRSymbol::R);

  std::vector<IRSymbol> all_x = {IRSymbol::X, IRSymbol::X};
  EXPECT_EQ(dominantSymbol(all_x), IRSymbol::X);

  std::vector<IRSymbol> x_ignored = {IRSymbol::X, IRSymbol::VR, IRSymbol::X};
  EXPECT_EQ(dominantSymbol(x_ignored), IRSymbol::VR);
}

TEST(ExpectancyStats, EmptyCorpusRejected) {
  NoteMatrix tiny;
  tiny.events.resize(2);
  EXPECT_THROW(computeExpectancyStats({&tiny, 1}), ArgumentError);
}

}  // namespace
}  // namespace melograph
