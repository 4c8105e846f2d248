#include "core/note_matrix.h"

#include <sstream>

#include "core/errors.h"

namespace melograph {

namespace {

const char* kCsvHeader =
    "onset_global,onset_measure,duration,midi_pitch,pitch_class,octave,"
    "beat_strength,ir_symbol";

std::vector<std::string> splitLine(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == sep) {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

int parseInt(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    int value = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return value;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " value '" + s + "'");
  }
}

}  // namespace

void fillPitchDerived(NoteEvent& event) {
  int midi = event.midi_pitch;
  event.pitch_class = ((midi % 12) + 12) % 12;
  event.octave = (midi - event.pitch_class) / 12 - 1;
}

void validateNoteMatrix(const NoteMatrix& matrix) {
  const auto& events = matrix.events;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const NoteEvent& e = events[i];
    if (e.duration <= Beats(0)) {
      throw ArgumentError("event " + std::to_string(i) + " has non-positive duration");
    }
    if (e.midi_pitch < 0 || e.midi_pitch > 127) {
      throw ArgumentError("event " + std::to_string(i) + " midi pitch out of range");
    }
    if (e.pitch_class != e.midi_pitch % 12 || e.octave != e.midi_pitch / 12 - 1) {
      throw ArgumentError("event " + std::to_string(i) + " pitch class/octave mismatch");
    }
    if (i > 0) {
      const NoteEvent& prev = events[i - 1];
      if (e.onset_global < prev.onset_global ||
          (e.onset_global == prev.onset_global && e.midi_pitch <= prev.midi_pitch)) {
        throw ArgumentError("events not strictly ordered by (onset, pitch) at index " +
                            std::to_string(i));
      }
    }
  }
}

std::string noteMatrixToCsv(const NoteMatrix& matrix) {
  std::ostringstream out;
  out << "# piece_id=" << matrix.piece_id << "\n";
  out << "# composer=" << matrix.composer << "\n";
  out << "# divisions=" << matrix.divisions << "\n";
  out << "# time_signatures=";
  for (std::size_t i = 0; i < matrix.time_signatures.size(); ++i) {
    const auto& ts = matrix.time_signatures[i];
    if (i > 0) out << ";";
    out << ts.measure_index << ":" << ts.numerator << "/" << ts.denominator;
  }
  out << "\n" << kCsvHeader << "\n";
  for (const NoteEvent& e : matrix.events) {
    out << beatsToString(e.onset_global) << "," << beatsToString(e.onset_in_measure)
        << "," << beatsToString(e.duration) << "," << e.midi_pitch << ","
        << e.pitch_class << "," << e.octave << "," << beatsToString(e.beat_strength)
        << "," << (e.ir_symbol ? irSymbolName(*e.ir_symbol) : "") << "\n";
  }
  return out.str();
}

NoteMatrix noteMatrixFromCsv(const std::string& text) {
  NoteMatrix matrix;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq);
      std::string value = body.substr(eq + 1);
      if (key == "piece_id") {
        matrix.piece_id = value;
      } else if (key == "composer") {
        matrix.composer = value;
      } else if (key == "divisions") {
        matrix.divisions = parseInt(value, "divisions");
      } else if (key == "time_signatures" && !value.empty()) {
        for (const std::string& item : splitLine(value, ';')) {
          auto colon = item.find(':');
          auto slash = item.find('/', colon);
          if (colon == std::string::npos || slash == std::string::npos) {
            throw ParseError(line_no, "bad time signature entry '" + item + "'");
          }
          TimeSignatureChange ts;
          ts.measure_index = parseInt(item.substr(0, colon), "measure index");
          ts.numerator = parseInt(item.substr(colon + 1, slash - colon - 1), "numerator");
          ts.denominator = parseInt(item.substr(slash + 1), "denominator");
          matrix.time_signatures.push_back(ts);
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError(line_no, "unexpected CSV header");
      header_seen = true;
      continue;
    }
    auto fields = splitLine(line, ',');
    if (fields.size() != 8) {
      throw ParseError(line_no, "expected 8 fields, got " + std::to_string(fields.size()));
    }
    NoteEvent e;
    e.onset_global = beatsFromString(fields[0]);
    e.onset_in_measure = beatsFromString(fields[1]);
    e.duration = beatsFromString(fields[2]);
    e.midi_pitch = parseInt(fields[3], "midi pitch");
    e.pitch_class = parseInt(fields[4], "pitch class");
    e.octave = parseInt(fields[5], "octave");
    e.beat_strength = beatsFromString(fields[6]);
    if (!fields[7].empty()) {
      auto symbol = irSymbolFromName(fields[7]);
      if (!symbol) throw ParseError(line_no, "unknown I-R symbol '" + fields[7] + "'");
      e.ir_symbol = *symbol;
    }
    matrix.events.push_back(e);
  }
  if (!header_seen) throw ParseError("note matrix CSV missing header row");
  return matrix;
}

}  // namespace melograph
