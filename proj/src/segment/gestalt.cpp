#include "segment/gestalt.h"

#include <algorithm>
#include <cmath>

#include "core/errors.h"

namespace melograph {

namespace {

/// Indices i where values[i] is a strict local maximum; a plateau counts
/// once, at its earliest index, and must be strictly above both flanks.
std::vector<std::size_t> strictLocalMaxima(const std::vector<double>& values) {
  std::vector<std::size_t> maxima;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j + 1 < values.size() && values[j + 1] == values[i]) ++j;
    bool above_left = i > 0 && values[i] > values[i - 1];
    bool above_right = j + 1 < values.size() && values[i] > values[j + 1];
    if (above_left && above_right) maxima.push_back(i);
    i = j + 1;
  }
  return maxima;
}

struct ClangInfo {
  double mean_pitch = 0.0;
  double first_onset = 0.0;
  double end_time = 0.0;  // max(onset + duration) over members
};

ClangInfo summarizeClang(const NoteMatrix& matrix, std::size_t begin, std::size_t end) {
  ClangInfo info;
  info.first_onset = beatsToDouble(matrix.events[begin].onset_global);
  double pitch_sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const NoteEvent& e = matrix.events[i];
    pitch_sum += e.midi_pitch;
    info.end_time = std::max(info.end_time, beatsToDouble(e.onset_global + e.duration));
  }
  info.mean_pitch = pitch_sum / static_cast<double>(end - begin);
  return info;
}

}  // namespace

std::vector<double> interNoteDistances(const NoteMatrix& matrix,
                                       const GestaltWeights& weights) {
  const auto& events = matrix.events;
  std::vector<double> distances;
  if (events.size() < 2) return distances;
  distances.reserve(events.size() - 1);
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    double ioi = beatsToDouble(events[i + 1].onset_global - events[i].onset_global);
    double gap = beatsToDouble(events[i + 1].onset_global -
                               (events[i].onset_global + events[i].duration));
    if (gap < 0.0) gap = 0.0;
    double pitch_jump = std::abs(events[i + 1].midi_pitch - events[i].midi_pitch);
    distances.push_back(weights.w_pitch * pitch_jump + weights.w_onset * (ioi + gap));
  }
  return distances;
}

std::vector<std::size_t> clangBoundaries(const NoteMatrix& matrix,
                                         const GestaltWeights& weights) {
  std::vector<std::size_t> starts;
  if (matrix.events.size() < 3) return starts;
  std::vector<double> d = interNoteDistances(matrix, weights);
  for (std::size_t i : strictLocalMaxima(d)) starts.push_back(i + 1);
  return starts;
}

std::vector<std::pair<std::size_t, std::size_t>> segmentBoundaries(
    const NoteMatrix& matrix, const std::vector<std::size_t>& clang_starts,
    const GestaltWeights& weights, int min_notes) {
  const std::size_t n = matrix.events.size();
  if (n == 0) return {};

  // Clang event ranges: starts are interior boundaries; clang 0 begins at 0.
  std::vector<std::size_t> bounds;
  bounds.push_back(0);
  for (std::size_t s : clang_starts) bounds.push_back(s);
  bounds.push_back(n);
  const std::size_t num_clangs = bounds.size() - 1;

  std::vector<ClangInfo> clangs(num_clangs);
  for (std::size_t c = 0; c < num_clangs; ++c) {
    clangs[c] = summarizeClang(matrix, bounds[c], bounds[c + 1]);
  }

  // Clang-level distance, same weighted form over (mean pitch, first onset).
  std::vector<double> clang_dist(num_clangs > 0 ? num_clangs - 1 : 0);
  for (std::size_t c = 0; c + 1 < num_clangs; ++c) {
    double ioi = clangs[c + 1].first_onset - clangs[c].first_onset;
    double gap = std::max(0.0, clangs[c + 1].first_onset - clangs[c].end_time);
    double pitch_jump = std::abs(clangs[c + 1].mean_pitch - clangs[c].mean_pitch);
    clang_dist[c] = weights.w_pitch * pitch_jump + weights.w_onset * (ioi + gap);
  }

  // Segments as half-open clang ranges.
  std::vector<std::pair<std::size_t, std::size_t>> seg_clangs;
  std::size_t seg_begin = 0;
  for (std::size_t i : strictLocalMaxima(clang_dist)) {
    seg_clangs.emplace_back(seg_begin, i + 1);
    seg_begin = i + 1;
  }
  seg_clangs.emplace_back(seg_begin, num_clangs);

  // Merge undersized segments into the neighbor on the smaller-distance
  // side (ties toward the earlier neighbor).
  auto segmentNotes = [&](const std::pair<std::size_t, std::size_t>& s) {
    return bounds[s.second] - bounds[s.first];
  };
  bool merged = true;
  while (merged && seg_clangs.size() > 1) {
    merged = false;
    for (std::size_t s = 0; s < seg_clangs.size(); ++s) {
      if (segmentNotes(seg_clangs[s]) >= static_cast<std::size_t>(min_notes)) continue;
      bool has_left = s > 0;
      bool has_right = s + 1 < seg_clangs.size();
      double left_dist = has_left ? clang_dist[seg_clangs[s].first - 1] : 0.0;
      double right_dist = has_right ? clang_dist[seg_clangs[s].second - 1] : 0.0;
      bool merge_left = has_left && (!has_right || left_dist <= right_dist);
      if (merge_left) {
        seg_clangs[s - 1].second = seg_clangs[s].second;
        seg_clangs.erase(seg_clangs.begin() + static_cast<std::ptrdiff_t>(s));
      } else {
        seg_clangs[s + 1].first = seg_clangs[s].first;
        seg_clangs.erase(seg_clangs.begin() + static_cast<std::ptrdiff_t>(s));
      }
      merged = true;
      break;
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(seg_clangs.size());
  for (const auto& [cb, ce] : seg_clangs) out.emplace_back(bounds[cb], bounds[ce]);
  return out;
}

std::vector<Segment> segmentPiece(const NoteMatrix& matrix,
                                  const std::vector<std::optional<double>>& note_expectancy,
                                  const GestaltWeights& weights, int min_notes) {
  if (note_expectancy.size() != matrix.events.size()) {
    throw ArgumentError("expectancy list size does not match event count");
  }
  auto clangs = clangBoundaries(matrix, weights);
  auto ranges = segmentBoundaries(matrix, clangs, weights, min_notes);

  std::vector<Segment> segments;
  segments.reserve(ranges.size());
  int ordinal = 0;
  for (const auto& [begin, end] : ranges) {
    Segment seg;
    seg.piece_id = matrix.piece_id;
    seg.ordinal = ordinal++;
    seg.begin = begin;
    seg.end = end;
    seg.expectancy = segmentExpectancy(
        std::span<const std::optional<double>>(note_expectancy).subspan(begin, end - begin));
    std::vector<IRSymbol> symbols;
    symbols.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      symbols.push_back(matrix.events[i].ir_symbol.value_or(IRSymbol::X));
    }
    seg.dominant = dominantSymbol(symbols);
    segments.push_back(seg);
  }
  return segments;
}

void assignBins(std::span<Segment*> segments) {
  std::vector<std::optional<double>> values;
  values.reserve(segments.size());
  for (const Segment* s : segments) values.push_back(s->expectancy);
  std::vector<ExpectancyBin> bins = binExpectancy(values);
  for (std::size_t i = 0; i < segments.size(); ++i) segments[i]->bin = bins[i];
}

}  // namespace melograph
