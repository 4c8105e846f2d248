// Two-level temporal-Gestalt segmentation: notes group into clangs at
// local maxima of inter-note distance, clangs group into segments at local
// maxima of inter-clang distance.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/ir_symbol.h"
#include "core/note_matrix.h"
#include "ir/expectancy.h"

namespace melograph {

struct GestaltWeights {
  double w_pitch = 1.0;  // per semitone of pitch change
  double w_onset = 2.0;  // per beat of inter-onset interval and silence gap
};

/// A contiguous run of a piece's events, [begin, end) by event index.
struct Segment {
  std::string piece_id;
  int ordinal = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::optional<double> expectancy;  // mean of defined note-level values
  IRSymbol dominant = IRSymbol::X;
  ExpectancyBin bin = ExpectancyBin::Medium;

  std::size_t size() const { return end - begin; }
  std::string id() const { return piece_id + ":" + std::to_string(ordinal); }
};

/// Weighted distance between consecutive events i and i+1:
///   w_pitch * |pitch delta| + w_onset * (inter-onset interval + silence gap).
std::vector<double> interNoteDistances(const NoteMatrix& matrix, const GestaltWeights& weights);

/// Indices where a new clang starts (the first clang at 0 is implicit):
/// a boundary sits before note i+1 wherever d_i is a strict local maximum;
/// plateaus resolve to the earliest index. Fewer than 3 events: none.
std::vector<std::size_t> clangBoundaries(const NoteMatrix& matrix, const GestaltWeights& weights);

/// Groups clangs into segments at strict local maxima of the clang-level
/// distance (same weighted form over mean pitch and first onset), then
/// merges segments smaller than min_notes into the neighbor on their
/// smaller-distance side. Returns [begin, end) event ranges.
std::vector<std::pair<std::size_t, std::size_t>> segmentBoundaries(
    const NoteMatrix& matrix, const std::vector<std::size_t>& clang_starts,
    const GestaltWeights& weights, int min_notes);

/// Full segmentation of an annotated piece: boundaries plus per-segment
/// expectancy and dominant symbol. Bins stay at Medium until corpus-level
/// assignment.
std::vector<Segment> segmentPiece(const NoteMatrix& matrix,
                                  const std::vector<std::optional<double>>& note_expectancy,
                                  const GestaltWeights& weights, int min_notes);

/// Corpus-level quintile binning over every segment's expectancy.
void assignBins(std::span<Segment*> segments);

}  // namespace melograph
