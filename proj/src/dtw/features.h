// Multivariate per-note feature vectors used by DTW.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/note_matrix.h"
#include "segment/gestalt.h"

namespace melograph {

/// One note's DTW channels: corpus z-scored MIDI pitch, log2 duration in
/// beats, and note-level expectancy (boundary notes carry their segment's
/// mean, 0.5 when the whole segment is undefined).
struct FeatureVec {
  double pitch_z = 0.0;
  double log_dur = 0.0;
  double expectancy = 0.0;

  bool operator==(const FeatureVec&) const = default;
};

using FeatureSequence = std::vector<FeatureVec>;

/// Corpus-wide pitch statistics for the z-score channel.
struct FeatureStats {
  double pitch_mean = 0.0;
  double pitch_sd = 0.0;  // 0 for degenerate corpora; z maps to 0 then

  std::string toJson() const;
  static FeatureStats fromJson(const std::string& text);
};

FeatureStats computeFeatureStats(std::span<const NoteMatrix> corpus);

/// Features for one segment of a piece.
FeatureSequence segmentFeatures(const NoteMatrix& matrix, const Segment& segment,
                                const FeatureStats& stats,
                                std::span<const std::optional<double>> note_expectancy);

/// Stable content hash of a feature sequence list (checkpoint headers).
std::uint64_t featureCorpusHash(std::span<const FeatureSequence> sequences);

}  // namespace melograph
