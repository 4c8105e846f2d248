#include "embed/graph2vec.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "core/errors.h"

namespace melograph {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

double cosineSimilarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw ArgumentError("cosine over mismatched vectors");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

Graph2VecResult graph2vecTrain(const std::vector<std::vector<std::string>>& documents,
                               const Graph2VecOptions& options) {
  if (documents.size() < 2) throw ArgumentError("graph2vec needs at least 2 documents");
  if (options.dim <= 0 || options.epochs <= 0 || options.negatives < 0) {
    throw ArgumentError("invalid graph2vec hyperparameters");
  }

  // Vocabulary in lexicographic order (deterministic), min count 1.
  std::map<std::string, std::size_t> vocab;
  std::vector<double> token_counts;
  for (const auto& doc : documents) {
    for (const std::string& token : doc) {
      auto [it, inserted] = vocab.try_emplace(token, 0);
      (void)it;
      (void)inserted;
    }
  }
  if (vocab.empty()) throw ArgumentError("empty vocabulary");
  std::size_t next_id = 0;
  for (auto& [token, id] : vocab) id = next_id++;
  token_counts.assign(vocab.size(), 0.0);
  std::vector<std::vector<std::size_t>> docs_ids(documents.size());
  for (std::size_t d = 0; d < documents.size(); ++d) {
    docs_ids[d].reserve(documents[d].size());
    for (const std::string& token : documents[d]) {
      std::size_t id = vocab.at(token);
      docs_ids[d].push_back(id);
      token_counts[id] += 1.0;
    }
  }

  // Noise distribution: unigram^0.75, sampled through a cumulative table.
  std::vector<double> noise_cdf(vocab.size(), 0.0);
  double acc = 0.0;
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    acc += std::pow(token_counts[t], 0.75);
    noise_cdf[t] = acc;
  }

  const std::size_t dim = static_cast<std::size_t>(options.dim);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> init(-0.5 / static_cast<double>(dim),
                                              0.5 / static_cast<double>(dim));
  Graph2VecResult result;
  result.vectors.assign(documents.size(), std::vector<double>(dim, 0.0));
  for (auto& v : result.vectors) {
    for (double& x : v) x = init(rng);
  }
  std::vector<std::vector<double>> token_vecs(vocab.size(), std::vector<double>(dim, 0.0));

  std::uint64_t total_examples = 0;
  for (const auto& doc : docs_ids) total_examples += doc.size();
  total_examples *= static_cast<std::uint64_t>(options.epochs);
  if (total_examples == 0) throw ArgumentError("documents contain no tokens");

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto sampleNoise = [&]() {
    double r = unit(rng) * acc;
    auto it = std::lower_bound(noise_cdf.begin(), noise_cdf.end(), r);
    return static_cast<std::size_t>(it - noise_cdf.begin());
  };

  const double lr0 = options.learning_rate;
  const double lr_min = lr0 / 100.0;
  std::uint64_t processed = 0;
  std::vector<double> grad(dim);

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    double epoch_loss = 0.0;
    std::uint64_t epoch_examples = 0;
    for (std::size_t d = 0; d < docs_ids.size(); ++d) {
      std::vector<double>& v = result.vectors[d];
      for (std::size_t target : docs_ids[d]) {
        double progress =
            static_cast<double>(processed) / static_cast<double>(total_examples);
        double lr = lr0 - (lr0 - lr_min) * progress;
        std::fill(grad.begin(), grad.end(), 0.0);
        double example_loss = 0.0;
        for (int s = 0; s <= options.negatives; ++s) {
          bool positive = s == 0;
          std::size_t token = positive ? target : sampleNoise();
          std::vector<double>& u = token_vecs[token];
          double dot = 0.0;
          for (std::size_t c = 0; c < dim; ++c) dot += v[c] * u[c];
          double f = sigmoid(dot);
          double label = positive ? 1.0 : 0.0;
          example_loss += positive ? -std::log(std::max(f, 1e-12))
                                   : -std::log(std::max(1.0 - f, 1e-12));
          double err = (f - label) * lr;
          for (std::size_t c = 0; c < dim; ++c) {
            grad[c] += err * u[c];
            u[c] -= err * v[c];
          }
        }
        for (std::size_t c = 0; c < dim; ++c) v[c] -= grad[c];
        epoch_loss += example_loss;
        ++epoch_examples;
        ++processed;
      }
    }
    result.epoch_loss.push_back(epoch_loss / static_cast<double>(epoch_examples));
  }
  return result;
}

}  // namespace melograph
