#include "ir/expectancy.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include <nlohmann/json.hpp>

#include "core/errors.h"

namespace melograph {

namespace {

constexpr int kLargeMin = 6;        // tritone and wider counts as large
constexpr int kProximityCap = 12;   // |R| cap for the proximity factor

double proximityNorm(int p2, int p3) {
  int realized = std::abs(p3 - p2);
  return 1.0 - static_cast<double>(std::min(realized, kProximityCap)) / kProximityCap;
}

}  // namespace

int pitchReversalRaw(int p1, int p2, int p3) {
  const int implicative = p2 - p1;
  const int realized = p3 - p2;
  if (std::abs(implicative) < kLargeMin) return 0;
  long product = static_cast<long>(implicative) * realized;
  if (product == 0) return 0;
  if (product > 0) return -1;  // continuation after a large interval
  int score = 1;               // direction change
  if (std::abs(p3 - p1) <= 2) score += 1;  // registral return
  return score;
}

ExpectancyStats computeExpectancyStats(std::span<const NoteMatrix> corpus) {
  bool any = false;
  ExpectancyStats stats;
  for (const NoteMatrix& piece : corpus) {
    const auto& events = piece.events;
    for (std::size_t i = 1; i + 1 < events.size(); ++i) {
      int raw = pitchReversalRaw(events[i - 1].midi_pitch, events[i].midi_pitch,
                                 events[i + 1].midi_pitch);
      if (!any) {
        stats.pr_min = stats.pr_max = raw;
        any = true;
      } else {
        stats.pr_min = std::min(stats.pr_min, raw);
        stats.pr_max = std::max(stats.pr_max, raw);
      }
    }
  }
  if (!any) throw ArgumentError("corpus contains no complete note triplet");
  return stats;
}

ExpectancyScore noteExpectancy(int p1, int p2, int p3, const ExpectancyStats& stats) {
  ExpectancyScore score;
  score.pp_norm = proximityNorm(p2, p3);
  if (stats.pr_max == stats.pr_min) {
    score.pr_norm = 0.5;
  } else {
    score.pr_norm = static_cast<double>(pitchReversalRaw(p1, p2, p3) - stats.pr_min) /
                    (stats.pr_max - stats.pr_min);
  }
  score.e = kBetaPP * score.pp_norm + kBetaPR * score.pr_norm;
  return score;
}

std::vector<std::optional<double>> noteExpectancies(const NoteMatrix& matrix,
                                                    const ExpectancyStats& stats) {
  const auto& events = matrix.events;
  std::vector<std::optional<double>> out(events.size());
  for (std::size_t i = 1; i + 1 < events.size(); ++i) {
    out[i] = noteExpectancy(events[i - 1].midi_pitch, events[i].midi_pitch,
                            events[i + 1].midi_pitch, stats)
                 .e;
  }
  return out;
}

std::optional<double> segmentExpectancy(std::span<const std::optional<double>> values) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

const char* expectancyBinName(ExpectancyBin bin) {
  switch (bin) {
    case ExpectancyBin::VeryLow: return "VeryLow";
    case ExpectancyBin::Low: return "Low";
    case ExpectancyBin::Medium: return "Medium";
    case ExpectancyBin::High: return "High";
    case ExpectancyBin::VeryHigh: return "VeryHigh";
  }
  return "?";
}

std::optional<ExpectancyBin> expectancyBinFromName(const std::string& name) {
  for (ExpectancyBin bin : {ExpectancyBin::VeryLow, ExpectancyBin::Low,
                            ExpectancyBin::Medium, ExpectancyBin::High,
                            ExpectancyBin::VeryHigh}) {
    if (name == expectancyBinName(bin)) return bin;
  }
  return std::nullopt;
}

std::vector<ExpectancyBin> binExpectancy(std::span<const std::optional<double>> values) {
  std::vector<std::size_t> defined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) defined.push_back(i);
  }
  std::vector<ExpectancyBin> bins(values.size(), ExpectancyBin::Medium);
  if (defined.empty()) return bins;

  std::vector<std::size_t> order = defined;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return *values[a] < *values[b];
  });

  const double n = static_cast<double>(defined.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && *values[order[j + 1]] == *values[order[i]]) ++j;
    // Average rank over the tie group [i, j], 1-based.
    double avg_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    double percentile = 100.0 * (avg_rank - 0.5) / n;
    ExpectancyBin bin = ExpectancyBin::VeryHigh;
    if (percentile < 20.0) {
      bin = ExpectancyBin::VeryLow;
    } else if (percentile < 40.0) {
      bin = ExpectancyBin::Low;
    } else if (percentile < 60.0) {
      bin = ExpectancyBin::Medium;
    } else if (percentile < 80.0) {
      bin = ExpectancyBin::High;
    }
    for (std::size_t t = i; t <= j; ++t) bins[order[t]] = bin;
    i = j + 1;
  }
  return bins;
}

IRSymbol dominantSymbol(std::span<const IRSymbol> symbols) {
  std::array<int, 9> counts{};
  for (IRSymbol s : symbols) {
    if (s != IRSymbol::X) ++counts[static_cast<std::size_t>(irSymbolPrecedence(s))];
  }
  int best = -1;
  int best_count = 0;
  for (int precedence = 0; precedence < 8; ++precedence) {
    int c = counts[static_cast<std::size_t>(precedence)];
    if (c > best_count) {
      best_count = c;
      best = precedence;
    }
  }
  if (best < 0) return IRSymbol::X;
  for (IRSymbol s : kAllIRSymbols) {
    if (irSymbolPrecedence(s) == best) return s;
  }
  return IRSymbol::X;
}

std::string ExpectancyStats::toJson() const {
  nlohmann::json j;
  j["pr_min"] = pr_min;
  j["pr_max"] = pr_max;
  return j.dump(2) + "\n";
}

ExpectancyStats ExpectancyStats::fromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ExpectancyStats stats;
  stats.pr_min = j.at("pr_min").get<int>();
  stats.pr_max = j.at("pr_max").get<int>();
  return stats;
}

}  // namespace melograph
