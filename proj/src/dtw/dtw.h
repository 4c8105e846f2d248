// Multivariate dynamic time warping.

#pragma once

#include "dtw/features.h"

namespace melograph {

struct DtwOptions {
  // Divide the optimal cumulative cost by its warping-path length. Off
  // reproduces the raw alignment cost, which grows with segment length.
  bool normalize = true;
};

/// DTW with steps {(1,0),(0,1),(1,1)} and Euclidean local cost and no
/// window constraint. Among equal-cost alignments the shortest path is
/// preferred, which pins the normalized value. Throws ArgumentError on an
/// empty input.
double dtw(const FeatureSequence& a, const FeatureSequence& b, const DtwOptions& options = {});

/// Euclidean distance between two feature vectors.
double localCost(const FeatureVec& a, const FeatureVec& b);

}  // namespace melograph
