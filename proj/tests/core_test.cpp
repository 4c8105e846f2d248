// Tests for exact beat arithmetic and the note-matrix CSV interchange.

#include <random>

#include <gtest/gtest.h>

#include "core/beats.h"
#include "core/errors.h"
#include "core/note_matrix.h"

namespace melograph {
namespace {

TEST(Beats, DecimalRendering) {
  EXPECT_EQ(beatsToString(Beats(0)), "0.00");
  EXPECT_EQ(beatsToString(Beats(1, 2)), "0.50");
  EXPECT_EQ(beatsToString(Beats(13, 4)), "3.25");
  EXPECT_EQ(beatsToString(Beats(1, 16)), "0.0625");
  EXPECT_EQ(beatsToString(Beats(4)), "4.00");
  EXPECT_EQ(beatsToString(Beats(-3, 2)), "-1.50");
  EXPECT_EQ(beatsToString(Beats(1, 5)), "0.20");
}

TEST(Beats, TripletFallsBackToFraction) {
  EXPECT_EQ(beatsToString(Beats(1, 3)), "1/3");
  EXPECT_EQ(beatsToString(Beats(5, 6)), "5/6");
}

TEST(Beats, ParseForms) {
  EXPECT_EQ(beatsFromString("0.50"), Beats(1, 2));
  EXPECT_EQ(beatsFromString("3"), Beats(3));
  EXPECT_EQ(beatsFromString("1/3"), Beats(1, 3));
  EXPECT_EQ(beatsFromString("-1.25"), Beats(-5, 4));
  EXPECT_THROW(beatsFromString(""), ParseError);
  EXPECT_THROW(beatsFromString("abc"), ParseError);
  EXPECT_THROW(beatsFromString("1/0"), ParseError);
}

TEST(Beats, StringRoundTripProperty) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-480, 480);
  std::uniform_int_distribution<std::int64_t> den(1, 96);
  for (int i = 0; i < 2000; ++i) {
    Beats b(num(rng), den(rng));
    EXPECT_EQ(beatsFromString(beatsToString(b)), b);
  }
}

NoteMatrix randomMatrix(std::mt19937_64& rng, bool annotated) {
  NoteMatrix m;
  m.piece_id = "piece-" + std::to_string(rng() % 1000);
  m.composer = "Composer " + std::to_string(rng() % 10);
  m.divisions = 4;
  m.time_signatures.push_back({0, 4, 4});
  std::uniform_int_distribution<int> pitch(40, 90);
  std::uniform_int_distribution<std::int64_t> dur_div(1, 8);
  std::uniform_int_distribution<int> symbol(0, 8);
  Beats onset(0);
  int count = 3 + static_cast<int>(rng() % 20);
  for (int i = 0; i < count; ++i) {
    NoteEvent e;
    e.onset_global = onset;
    e.onset_in_measure = Beats(onset.numerator() % (4 * onset.denominator()),
                               onset.denominator());
    e.duration = Beats(dur_div(rng), 4);
    e.midi_pitch = pitch(rng);
    fillPitchDerived(e);
    e.beat_strength = Beats(1, 1 << (rng() % 5));
    if (annotated) e.ir_symbol = kAllIRSymbols[static_cast<std::size_t>(symbol(rng))];
    m.events.push_back(e);
    onset += e.duration;
  }
  return m;
}

TEST(NoteMatrixCsv, RoundTripIsIdentity) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    NoteMatrix m = randomMatrix(rng, i % 2 == 0);
    NoteMatrix back = noteMatrixFromCsv(noteMatrixToCsv(m));
    EXPECT_EQ(back, m);
  }
}

TEST(NoteMatrixCsv, UnsetSymbolStaysUnset) {
  std::mt19937_64 rng(3);
  NoteMatrix m = randomMatrix(rng, false);
  NoteMatrix back = noteMatrixFromCsv(noteMatrixToCsv(m));
  for (const NoteEvent& e : back.events) EXPECT_FALSE(e.ir_symbol.has_value());
}

TEST(NoteMatrixCsv, RejectsBadHeader) {
  EXPECT_THROW(noteMatrixFromCsv("onset,pitch\n1,2\n"), ParseError);
  EXPECT_THROW(noteMatrixFromCsv(""), ParseError);
}

TEST(NoteMatrixValidate, OrderingViolations) {
  std::mt19937_64 rng(5);
  NoteMatrix m = randomMatrix(rng, true);
  EXPECT_NO_THROW(validateNoteMatrix(m));

  NoteMatrix bad = m;
  std::swap(bad.events.front().onset_global, bad.events.back().onset_global);
  EXPECT_THROW(validateNoteMatrix(bad), ArgumentError);

  NoteMatrix zero_dur = m;
  zero_dur.events[0].duration = Beats(0);
  EXPECT_THROW(validateNoteMatrix(zero_dur), ArgumentError);
}

TEST(NoteMatrixValidate, PitchClassOctaveRule) {
  NoteEvent e;
  e.midi_pitch = 60;
  fillPitchDerived(e);
  EXPECT_EQ(e.pitch_class, 0);
  EXPECT_EQ(e.octave, 4);
  e.midi_pitch = 66;
  fillPitchDerived(e);
  EXPECT_EQ(e.pitch_class, 6);
  EXPECT_EQ(e.octave, 4);
  e.midi_pitch = 11;
  fillPitchDerived(e);
  EXPECT_EQ(e.pitch_class, 11);
  EXPECT_EQ(e.octave, -1);
}

}  // namespace
}  // namespace melograph
