#include "dtw/features.h"

#include <cmath>
#include <cstring>

#include <nlohmann/json.hpp>

#include "core/errors.h"
#include "core/hashing.h"

namespace melograph {

namespace {

constexpr double kNeutralExpectancy = 0.5;

}  // namespace

FeatureStats computeFeatureStats(std::span<const NoteMatrix> corpus) {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;
  for (const NoteMatrix& piece : corpus) {
    for (const NoteEvent& e : piece.events) {
      sum += e.midi_pitch;
      sum_sq += static_cast<double>(e.midi_pitch) * e.midi_pitch;
      ++count;
    }
  }
  if (count == 0) throw ArgumentError("feature stats over an empty corpus");
  FeatureStats stats;
  stats.pitch_mean = sum / static_cast<double>(count);
  double variance = sum_sq / static_cast<double>(count) - stats.pitch_mean * stats.pitch_mean;
  stats.pitch_sd = variance > 0.0 ? std::sqrt(variance) : 0.0;
  return stats;
}

FeatureSequence segmentFeatures(const NoteMatrix& matrix, const Segment& segment,
                                const FeatureStats& stats,
                                std::span<const std::optional<double>> note_expectancy) {
  if (segment.end > matrix.events.size() || segment.begin >= segment.end) {
    throw ArgumentError("segment range out of bounds");
  }
  if (note_expectancy.size() != matrix.events.size()) {
    throw ArgumentError("expectancy list size does not match event count");
  }
  double fallback = segment.expectancy.value_or(kNeutralExpectancy);
  FeatureSequence features;
  features.reserve(segment.size());
  for (std::size_t i = segment.begin; i < segment.end; ++i) {
    const NoteEvent& e = matrix.events[i];
    FeatureVec f;
    f.pitch_z = stats.pitch_sd > 0.0 ? (e.midi_pitch - stats.pitch_mean) / stats.pitch_sd : 0.0;
    f.log_dur = std::log2(beatsToDouble(e.duration));
    f.expectancy = note_expectancy[i].value_or(fallback);
    features.push_back(f);
  }
  return features;
}

std::uint64_t featureCorpusHash(std::span<const FeatureSequence> sequences) {
  std::uint64_t state = kFnvOffset;
  auto mixDouble = [&state](double v) {
    char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    state = fnv1a64(std::string_view(bytes, sizeof(double)), state);
  };
  for (const FeatureSequence& seq : sequences) {
    state = fnv1a64("|seq|", state);
    for (const FeatureVec& f : seq) {
      mixDouble(f.pitch_z);
      mixDouble(f.log_dur);
      mixDouble(f.expectancy);
    }
  }
  return state;
}

std::string FeatureStats::toJson() const {
  nlohmann::json j;
  j["pitch_mean"] = pitch_mean;
  j["pitch_sd"] = pitch_sd;
  return j.dump(2) + "\n";
}

FeatureStats FeatureStats::fromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FeatureStats stats;
  stats.pitch_mean = j.at("pitch_mean").get<double>();
  stats.pitch_sd = j.at("pitch_sd").get<double>();
  return stats;
}

}  // namespace melograph
