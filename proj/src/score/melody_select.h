// Reduction of a polyphonic note matrix to a single melodic line.

#pragma once

#include <optional>
#include <string>

#include "core/note_matrix.h"

namespace melograph {

enum class MelodyRule { HighestPitch, LowestPitch };

/// Keeps one event per distinct onset: the highest (default) or lowest
/// pitch. Identity on already-monophonic input.
NoteMatrix selectMelody(const NoteMatrix& raw, MelodyRule rule = MelodyRule::HighestPitch);

/// Parses a manifest melody rule: "highest", "lowest", or "part:<id>"
/// (part selection happens at parse time; the reduction rule for it is
/// highest-pitch). Returns nullopt for unknown strings.
struct MelodySelection {
  MelodyRule rule = MelodyRule::HighestPitch;
  std::string part_id;  // empty unless "part:<id>"
};
std::optional<MelodySelection> parseMelodyRule(const std::string& text);

}  // namespace melograph
