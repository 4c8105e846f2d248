// Synthetic corpus generator: parametrized motif families rendered as
// MusicXML, so the full pipeline can run without copyrighted scores.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace melograph {

struct SynthOptions {
  int pieces = 10;
  int styles = 5;
  std::uint64_t seed = 1;
  int phrases = 18;  // phrases per piece; each phrase becomes ~1 segment
  std::filesystem::path out_dir;
  bool emit_config = true;  // also write a ready-to-run melograph.json
};

struct SynthNote {
  int midi = 0;
  std::int64_t onset_div = 0;  // sixteenth-note units (divisions = 4)
  std::int64_t dur_div = 0;
};

/// One piece of a style family: phrases drawn from the family's motif
/// pool with per-piece transposition and ornament variation, separated by
/// long rests so the Gestalt segmenter recovers the phrase structure.
std::vector<SynthNote> synthPiece(int family, int styles, std::uint64_t seed, int phrases);

/// Renders a monophonic note stream as partwise MusicXML in 4/4 with
/// divisions = 4, splitting notes at barlines with ties.
std::string synthToMusicXml(const std::vector<SynthNote>& notes, const std::string& title,
                            const std::string& composer);

/// Writes piece files, a corpus manifest (corpus.json), and optionally a
/// default config (melograph.json) under out_dir. Piece i belongs to
/// family i mod styles; composer/group is "Style<f>".
void generateSyntheticCorpus(const SynthOptions& options);

}  // namespace melograph
