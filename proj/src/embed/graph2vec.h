// Whole-graph embeddings: PV-DBOW over WL subtree tokens with negative
// sampling.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace melograph {

struct Graph2VecOptions {
  int dim = 128;
  int epochs = 50;
  double learning_rate = 0.025;  // decays linearly to lr/100
  int negatives = 5;
  std::uint64_t seed = 42;
};

struct Graph2VecResult {
  std::vector<std::vector<double>> vectors;  // one per input document
  std::vector<double> epoch_loss;            // mean loss per epoch
};

/// Trains one vector per graph document; a graph's vector learns to score
/// its own tokens above noise tokens drawn from the unigram^0.75
/// distribution. Single-threaded and fully seeded, so identical inputs and
/// options reproduce identical vectors bit for bit. Throws ArgumentError
/// for fewer than 2 documents or an empty vocabulary.
Graph2VecResult graph2vecTrain(const std::vector<std::vector<std::string>>& documents,
                               const Graph2VecOptions& options = {});

/// Cosine similarity between two equal-length vectors.
double cosineSimilarity(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace melograph
