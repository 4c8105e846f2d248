#include "pipeline/synth.h"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/errors.h"
#include "pipeline/config.h"

namespace melograph {

namespace {

constexpr std::int64_t kDivisions = 4;        // sixteenth resolution
constexpr std::int64_t kMeasureDiv = 16;      // 4/4
constexpr int kFamilyRegisterStep = 6;        // semitones between family centers
constexpr int kBaseCenter = 52;

struct Cell {
  std::vector<int> intervals;        // relative to the previous note
  std::vector<std::int64_t> durs;    // in divisions
};

using Motif = std::vector<Cell>;  // cells separated by short rests

/// Family grammars: interval vocabularies chosen so each style leans on a
/// different realization archetype and expectancy level.
Motif makeMotif(int grammar, std::mt19937_64& rng) {
  auto pick = [&rng](std::initializer_list<int> xs) {
    std::vector<int> v(xs);
    return v[rng() % v.size()];
  };
  Motif motif;
  int cells = 2 + static_cast<int>(rng() % 2);
  int dir = rng() % 2 == 0 ? 1 : -1;
  for (int c = 0; c < cells; ++c) {
    Cell cell;
    int len = 3 + static_cast<int>(rng() % 2);
    for (int i = 0; i < len; ++i) {
      int interval = 0;
      switch (grammar) {
        case 0:  // stepwise runs, same direction within a cell
          interval = dir * pick({1, 2, 2});
          break;
        case 1:  // repeated notes with a rare neighbor
          interval = rng() % 5 == 0 ? pick({-1, 1}) : 0;
          break;
        case 2:  // small zigzag
          interval = (i % 2 == 0 ? 1 : -1) * pick({3, 4});
          break;
        case 3:  // leap up, small reversals down
          interval = i == 0 ? dir * pick({8, 9, 11}) : -dir * pick({1, 2, 3});
          break;
        default:  // small step then a wide leap in the same direction
          interval = i % 2 == 0 ? dir * pick({1, 2}) : dir * pick({7, 8, 9});
          break;
      }
      cell.intervals.push_back(interval);
      cell.durs.push_back(i + 1 == len ? 4 : 2);  // cell ends on a quarter
    }
    motif.push_back(cell);
    dir = -dir;
  }
  return motif;
}

int clampToRange(int pitch, int center) {
  while (pitch > center + 14) pitch -= 12;
  while (pitch < center - 12) pitch += 12;
  return pitch;
}

}  // namespace

std::vector<SynthNote> synthPiece(int family, int styles, std::uint64_t seed, int phrases) {
  if (styles < 1) throw ArgumentError("styles must be positive");
  std::mt19937_64 rng(seed);
  const int grammar = family % 5;
  const int center = kBaseCenter + kFamilyRegisterStep * (family % styles);

  // Family motif pool is derived from the family, not the piece, so
  // variants of one family share material.
  std::mt19937_64 family_rng(0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(family) + 1));
  std::vector<Motif> pool;
  for (int m = 0; m < 4; ++m) pool.push_back(makeMotif(grammar, family_rng));

  // Per-piece variation palette.
  std::vector<int> transpositions = {0, rng() % 2 == 0 ? 2 : -2};

  std::vector<SynthNote> notes;
  std::int64_t onset = 0;
  for (int p = 0; p < phrases; ++p) {
    const Motif& motif = pool[rng() % pool.size()];
    int transpose = transpositions[rng() % transpositions.size()];
    int pitch = clampToRange(center + transpose, center);
    bool first_of_phrase = true;
    for (std::size_t c = 0; c < motif.size(); ++c) {
      const Cell& cell = motif[c];
      for (std::size_t i = 0; i < cell.intervals.size(); ++i) {
        if (first_of_phrase) {
          // Anchor the phrase near the family register.
          pitch = clampToRange(center + transpose + cell.intervals[i], center);
          first_of_phrase = false;
        } else {
          pitch = clampToRange(pitch + cell.intervals[i], center);
        }
        std::int64_t dur = cell.durs[i];
        if (rng() % 5 == 0) dur += 2;  // rhythmic jitter
        bool last_note_of_phrase =
            c + 1 == motif.size() && i + 1 == cell.intervals.size();
        if (last_note_of_phrase) dur = 8;  // phrase-final long note
        notes.push_back({pitch, onset, dur});
        onset += dur;
        // Occasional passing sixteenth between cell notes.
        if (!last_note_of_phrase && rng() % 4 == 0) {
          int passing = clampToRange(pitch + (rng() % 2 == 0 ? 1 : -1), center);
          notes.push_back({passing, onset, 1});
          onset += 1;
        }
      }
      if (c + 1 < motif.size()) onset += 2;  // short rest between cells
    }
    onset += 10 + static_cast<std::int64_t>(rng() % 3);  // long phrase rest
  }
  return notes;
}

std::string synthToMusicXml(const std::vector<SynthNote>& notes, const std::string& title,
                            const std::string& composer) {
  struct Item {
    std::int64_t onset;
    std::int64_t dur;
    int midi;  // -1 for rest
  };
  std::vector<Item> items;
  std::int64_t pos = 0;
  for (const SynthNote& n : notes) {
    if (n.onset_div > pos) items.push_back({pos, n.onset_div - pos, -1});
    items.push_back({n.onset_div, n.dur_div, n.midi});
    pos = n.onset_div + n.dur_div;
  }
  // Pad the final measure with a rest.
  if (pos % kMeasureDiv != 0) {
    items.push_back({pos, kMeasureDiv - pos % kMeasureDiv, -1});
    pos += kMeasureDiv - pos % kMeasureDiv;
  }

  static const char* kSteps[12] = {"C", "C", "D", "D", "E", "F",
                                   "F", "G", "G", "A", "A", "B"};
  static const int kAlters[12] = {0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0};

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<score-partwise version=\"4.0\">\n"
      << "  <work><work-title>" << title << "</work-title></work>\n"
      << "  <identification><creator type=\"composer\">" << composer
      << "</creator></identification>\n"
      << "  <part-list><score-part id=\"P1\"><part-name>Melody</part-name>"
      << "</score-part></part-list>\n"
      << "  <part id=\"P1\">\n";

  const std::int64_t total_measures = pos / kMeasureDiv;
  std::size_t item_idx = 0;
  for (std::int64_t m = 0; m < total_measures; ++m) {
    const std::int64_t m_begin = m * kMeasureDiv;
    const std::int64_t m_end = m_begin + kMeasureDiv;
    out << "    <measure number=\"" << (m + 1) << "\">\n";
    if (m == 0) {
      out << "      <attributes><divisions>" << kDivisions
          << "</divisions><time><beats>4</beats><beat-type>4</beat-type></time>"
          << "<clef><sign>G</sign><line>2</line></clef></attributes>\n";
    }
    // Emit the parts of items overlapping this measure.
    for (std::size_t idx = item_idx; idx < items.size(); ++idx) {
      const Item& item = items[idx];
      if (item.onset >= m_end) break;
      std::int64_t part_begin = std::max(item.onset, m_begin);
      std::int64_t part_end = std::min(item.onset + item.dur, m_end);
      if (part_end <= part_begin) {
        if (item.onset + item.dur <= m_begin) ++item_idx;
        continue;
      }
      std::int64_t part_dur = part_end - part_begin;
      if (item.midi < 0) {
        out << "      <note><rest/><duration>" << part_dur << "</duration></note>\n";
      } else {
        int pc = item.midi % 12;
        int octave = item.midi / 12 - 1;
        bool starts_before = item.onset < m_begin;
        bool ends_after = item.onset + item.dur > m_end;
        out << "      <note><pitch><step>" << kSteps[pc];
        if (kAlters[pc] != 0) out << "</step><alter>" << kAlters[pc] << "</alter>";
        else out << "</step>";
        out << "<octave>" << octave << "</octave></pitch><duration>" << part_dur
            << "</duration>";
        if (starts_before) out << "<tie type=\"stop\"/>";
        if (ends_after) out << "<tie type=\"start\"/>";
        out << "</note>\n";
      }
      if (item.onset + item.dur <= m_end) ++item_idx;
    }
    out << "    </measure>\n";
  }
  out << "  </part>\n</score-partwise>\n";
  return out.str();
}

void generateSyntheticCorpus(const SynthOptions& options) {
  if (options.pieces < 1 || options.styles < 1) {
    throw ArgumentError("synth needs at least one piece and one style");
  }
  std::filesystem::create_directories(options.out_dir);

  nlohmann::json manifest;
  nlohmann::json pieces = nlohmann::json::array();
  for (int i = 0; i < options.pieces; ++i) {
    int family = i % options.styles;
    std::uint64_t piece_seed = options.seed * 1000003ULL + static_cast<std::uint64_t>(i);
    auto notes = synthPiece(family, options.styles, piece_seed, options.phrases);
    std::string piece_id = "synth-" + std::to_string(i);
    std::string composer = "Style" + std::to_string(family);
    std::string xml = synthToMusicXml(notes, piece_id, composer);
    std::filesystem::path file = options.out_dir / (piece_id + ".musicxml");
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << xml;
    if (!out) throw MelographError("failed writing " + file.string());
    pieces.push_back({{"path", piece_id + ".musicxml"},
                      {"piece_id", piece_id},
                      {"composer", composer},
                      {"group", composer}});
  }
  manifest["pieces"] = pieces;
  {
    std::ofstream out(options.out_dir / "corpus.json", std::ios::binary | std::ios::trunc);
    out << manifest.dump(2) << "\n";
  }
  if (options.emit_config) {
    nlohmann::json config;
    config["corpus_manifest"] = "corpus.json";
    config["output_dir"] = "out";
    config["cluster"] = {{"k", 0}};
    std::ofstream out(options.out_dir / "melograph.json", std::ios::binary | std::ios::trunc);
    out << config.dump(2) << "\n";
  }
}

}  // namespace melograph
