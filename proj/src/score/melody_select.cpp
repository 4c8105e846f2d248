#include "score/melody_select.h"

namespace melograph {

NoteMatrix selectMelody(const NoteMatrix& raw, MelodyRule rule) {
  NoteMatrix out = raw;
  out.events.clear();
  out.events.reserve(raw.events.size());
  for (const NoteEvent& e : raw.events) {
    if (!out.events.empty() && out.events.back().onset_global == e.onset_global) {
      // Input is ordered by (onset, pitch), so within an onset group the
      // last event is the highest pitch and the first the lowest.
      if (rule == MelodyRule::HighestPitch) out.events.back() = e;
      continue;
    }
    out.events.push_back(e);
  }
  return out;
}

std::optional<MelodySelection> parseMelodyRule(const std::string& text) {
  MelodySelection selection;
  if (text.empty() || text == "highest") return selection;
  if (text == "lowest") {
    selection.rule = MelodyRule::LowestPitch;
    return selection;
  }
  if (text.rfind("part:", 0) == 0 && text.size() > 5) {
    selection.part_id = text.substr(5);
    return selection;
  }
  return std::nullopt;
}

}  // namespace melograph
