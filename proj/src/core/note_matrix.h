// Note matrix: the per-piece table of note events and its CSV interchange.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/beats.h"
#include "core/ir_symbol.h"

namespace melograph {

/// One pitched note. Columns follow the note-matrix table layout:
/// global onset, onset within measure, duration, MIDI pitch, pitch class,
/// octave, beat strength, I-R symbol.
struct NoteEvent {
  Beats onset_global;
  Beats onset_in_measure;
  Beats duration;
  int midi_pitch = 0;   // 0..127
  int pitch_class = 0;  // midi_pitch mod 12
  int octave = 0;       // floor(midi_pitch / 12) - 1
  Beats beat_strength;  // in {1, 1/2, 1/4, ...}, floor 1/16
  std::optional<IRSymbol> ir_symbol;  // unset until annotation

  bool operator==(const NoteEvent&) const = default;
};

struct TimeSignatureChange {
  int measure_index = 0;  // 0-based index of the measure where it takes effect
  int numerator = 4;
  int denominator = 4;

  bool operator==(const TimeSignatureChange&) const = default;
};

struct NoteMatrix {
  std::string piece_id;
  std::string composer;
  std::vector<NoteEvent> events;  // ordered by (onset_global, midi_pitch)
  int divisions = 1;              // MusicXML quarter-note subdivision
  std::vector<TimeSignatureChange> time_signatures;

  bool operator==(const NoteMatrix&) const = default;
};

/// Derives pitch class and octave from midi_pitch.
void fillPitchDerived(NoteEvent& event);

/// Checks the ordering/positivity invariants; throws ArgumentError on the
/// first violation.
void validateNoteMatrix(const NoteMatrix& matrix);

/// CSV interchange. Metadata rides in leading '#' comment lines so a
/// write/read round trip reproduces the matrix exactly.
std::string noteMatrixToCsv(const NoteMatrix& matrix);
NoteMatrix noteMatrixFromCsv(const std::string& text);

}  // namespace melograph
