#include "score/musicxml_reader.h"

#include <algorithm>
#include <map>
#include <vector>

#include "core/errors.h"
#include "score/beat_strength.h"
#include "xml/xml.h"

namespace melograph {

namespace {

int stepToSemitone(const std::string& step, int line) {
  if (step == "C") return 0;
  if (step == "D") return 2;
  if (step == "E") return 4;
  if (step == "F") return 5;
  if (step == "G") return 7;
  if (step == "A") return 9;
  if (step == "B") return 11;
  throw ParseError(line, "unknown pitch step '" + step + "'");
}

int requiredInt(const XmlNode& parent, const char* name) {
  const XmlNode* node = parent.child(name);
  if (!node) {
    throw ParseError(parent.line,
                     "<" + parent.name + "> missing required <" + std::string(name) + ">");
  }
  try {
    return std::stoi(node->trimmedText());
  } catch (const std::exception&) {
    throw ParseError(node->line, "non-numeric <" + std::string(name) + ">");
  }
}

std::string findComposer(const XmlNode& root) {
  const XmlNode* identification = root.child("identification");
  if (!identification) return "";
  for (const XmlNode* creator : identification->childrenNamed("creator")) {
    if (creator->attribute("type") == "composer") return creator->trimmedText();
  }
  return "";
}

struct PartState {
  Beats measure_start{0};       // global onset of the current measure
  std::int64_t position = 0;    // within-measure position in divisions
  std::int64_t max_position = 0;
  std::int64_t last_note_advance = 0;  // for <chord/> backdating
  int divisions = 0;            // 0 until the first <attributes> provides it
  int ts_numerator = 4;
  int ts_denominator = 4;
};

class Reader {
 public:
  Reader(const XmlNode& root, const MusicXmlOptions& options)
      : root_(root), options_(options) {}

  NoteMatrix read() {
    if (root_.name == "score-timewise") {
      throw UnsupportedFeatureError("score-timewise");
    }
    if (root_.name != "score-partwise") {
      throw ParseError(root_.line, "root element is <" + root_.name +
                                       ">, expected <score-partwise>");
    }
    matrix_.piece_id = options_.piece_id;
    matrix_.composer =
        options_.composer.empty() ? findComposer(root_) : options_.composer;

    bool part_found = false;
    for (const XmlNode* part : root_.childrenNamed("part")) {
      if (!options_.part_id.empty() && part->attribute("id") != options_.part_id) {
        continue;
      }
      part_found = true;
      readPart(*part);
    }
    if (!options_.part_id.empty() && !part_found) {
      throw ParseError("part '" + options_.part_id + "' not found in score");
    }
    if (matrix_.events.empty()) {
      throw EmptyScoreError("score contains no pitched notes");
    }
    finalize();
    return matrix_;
  }

 private:
  void readPart(const XmlNode& part) {
    PartState state;
    // Ties are keyed by MIDI pitch; index into matrix_.events.
    std::map<int, std::size_t> open_ties;
    int measure_index = 0;
    for (const XmlNode* measure : part.childrenNamed("measure")) {
      state.position = 0;
      state.max_position = 0;
      for (const XmlNode& item : measure->children) {
        if (item.name == "attributes") {
          readAttributes(item, state, measure_index);
        } else if (item.name == "note") {
          readNote(item, state, open_ties);
        } else if (item.name == "backup") {
          state.position -= requiredInt(item, "duration");
          if (state.position < 0) throw ParseError(item.line, "<backup> before measure start");
        } else if (item.name == "forward") {
          state.position += requiredInt(item, "duration");
          state.max_position = std::max(state.max_position, state.position);
        }
        // barline, direction, print, harmony, sound: no timing effect.
      }
      std::int64_t advance = state.max_position;
      if (advance == 0) {
        // Measure with no timed content: advance by the notated length.
        Beats nominal = measureLength(state.ts_numerator, state.ts_denominator);
        checkDivisions(state, measure->line);
        advance = nominal.numerator() * state.divisions / nominal.denominator();
      }
      checkDivisions(state, measure->line);
      state.measure_start += Beats(advance, state.divisions);
      ++measure_index;
    }
  }

  void checkDivisions(const PartState& state, int line) const {
    if (state.divisions <= 0) {
      throw ParseError(line, "timed content before <divisions> was declared");
    }
  }

  void readAttributes(const XmlNode& attributes, PartState& state, int measure_index) {
    if (const XmlNode* div = attributes.child("divisions")) {
      try {
        state.divisions = std::stoi(div->trimmedText());
      } catch (const std::exception&) {
        throw ParseError(div->line, "non-numeric <divisions>");
      }
      if (state.divisions <= 0) throw ParseError(div->line, "non-positive <divisions>");
      matrix_.divisions = std::max(matrix_.divisions, state.divisions);
    }
    if (const XmlNode* time = attributes.child("time")) {
      state.ts_numerator = requiredInt(*time, "beats");
      state.ts_denominator = requiredInt(*time, "beat-type");
      if (state.ts_numerator <= 0 || state.ts_denominator <= 0) {
        throw ParseError(time->line, "invalid time signature");
      }
      recordTimeSignature(measure_index, state);
    }
  }

  void recordTimeSignature(int measure_index, const PartState& state) {
    TimeSignatureChange ts{measure_index, state.ts_numerator, state.ts_denominator};
    for (const TimeSignatureChange& existing : matrix_.time_signatures) {
      if (existing == ts) return;
    }
    matrix_.time_signatures.push_back(ts);
  }

  void checkTupletDepth(const XmlNode& note) const {
    const XmlNode* notations = note.child("notations");
    if (!notations) return;
    for (const XmlNode* tuplet : notations->childrenNamed("tuplet")) {
      const std::string number = tuplet->attribute("number");
      if (!number.empty()) {
        int depth = 0;
        try {
          depth = std::stoi(number);
        } catch (const std::exception&) {
          throw ParseError(tuplet->line, "non-numeric tuplet number");
        }
        if (depth > 2) throw UnsupportedFeatureError("tuplet");
      }
    }
  }

  void readNote(const XmlNode& note, PartState& state,
                std::map<int, std::size_t>& open_ties) {
    checkTupletDepth(note);
    if (note.hasChild("grace")) return;  // no duration, no matrix column

    checkDivisions(state, note.line);
    std::int64_t duration_div = requiredInt(note, "duration");
    if (duration_div < 0) throw ParseError(note.line, "negative <duration>");

    bool is_chord = note.hasChild("chord");
    std::int64_t onset_div = state.position;
    if (is_chord) onset_div = state.position - state.last_note_advance;

    bool is_rest = note.hasChild("rest");
    bool is_cue = note.hasChild("cue");
    if (!is_chord) {
      state.position += duration_div;
      state.max_position = std::max(state.max_position, state.position);
      state.last_note_advance = duration_div;
    }
    if (is_rest || is_cue) return;

    const XmlNode* pitch = note.child("pitch");
    if (!pitch) {
      // Unpitched percussion etc.: time already advanced, nothing recorded.
      return;
    }
    if (duration_div == 0) throw ParseError(note.line, "pitched note with zero duration");

    int semitone = stepToSemitone(pitch->childText("step"), pitch->line);
    int alter = 0;
    if (pitch->hasChild("alter")) {
      try {
        alter = std::stoi(pitch->childText("alter"));
      } catch (const std::exception&) {
        throw ParseError(pitch->line, "non-numeric <alter>");
      }
    }
    int octave = requiredInt(*pitch, "octave");
    int midi = (octave + 1) * 12 + semitone + alter;
    if (midi < 0 || midi > 127) {
      throw ParseError(note.line, "pitch outside MIDI range 0-127");
    }

    bool tie_start = false;
    bool tie_stop = false;
    for (const XmlNode* tie : note.childrenNamed("tie")) {
      if (tie->attribute("type") == "start") tie_start = true;
      if (tie->attribute("type") == "stop") tie_stop = true;
    }

    Beats duration(duration_div, state.divisions);
    if (tie_stop) {
      auto open = open_ties.find(midi);
      if (open != open_ties.end()) {
        matrix_.events[open->second].duration += duration;
        if (!tie_start) open_ties.erase(open);
        return;
      }
      // Dangling stop with no matching start: treat as a plain note.
    }

    NoteEvent event;
    event.onset_in_measure = Beats(onset_div, state.divisions);
    event.onset_global = state.measure_start + event.onset_in_measure;
    event.duration = duration;
    event.midi_pitch = midi;
    fillPitchDerived(event);
    event.beat_strength =
        beatStrength(event.onset_in_measure, state.ts_numerator, state.ts_denominator);
    matrix_.events.push_back(event);
    if (tie_start) open_ties[midi] = matrix_.events.size() - 1;
  }

  void finalize() {
    auto& events = matrix_.events;
    std::stable_sort(events.begin(), events.end(),
                     [](const NoteEvent& lhs, const NoteEvent& rhs) {
                       if (lhs.onset_global != rhs.onset_global) {
                         return lhs.onset_global < rhs.onset_global;
                       }
                       return lhs.midi_pitch < rhs.midi_pitch;
                     });
    // Exact duplicates (same onset, same pitch, e.g. doubled voices)
    // collapse to the longer event so ordering stays strict.
    std::vector<NoteEvent> deduped;
    deduped.reserve(events.size());
    for (const NoteEvent& e : events) {
      if (!deduped.empty() && deduped.back().onset_global == e.onset_global &&
          deduped.back().midi_pitch == e.midi_pitch) {
        deduped.back().duration = std::max(deduped.back().duration, e.duration);
      } else {
        deduped.push_back(e);
      }
    }
    events = std::move(deduped);
  }

  const XmlNode& root_;
  const MusicXmlOptions& options_;
  NoteMatrix matrix_;
};

}  // namespace

NoteMatrix parseMusicXml(std::string_view document, const MusicXmlOptions& options) {
  XmlNode root = parseXml(document);
  return Reader(root, options).read();
}

}  // namespace melograph
