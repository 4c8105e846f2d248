// MusicXML (uncompressed, partwise) to NoteMatrix conversion.

#pragma once

#include <string>
#include <string_view>

#include "core/note_matrix.h"

namespace melograph {

struct MusicXmlOptions {
  std::string piece_id;
  std::string composer;  // empty: taken from <identification> when present
  std::string part_id;   // empty: all parts
};

/// Parses a partwise MusicXML document into a (possibly polyphonic) note
/// matrix. Tied notes are merged into single events with summed duration;
/// rests advance time only; grace notes are dropped.
///
/// Throws ParseError (malformed XML, with line context), EmptyScoreError
/// (no pitched notes), or UnsupportedFeatureError (timing feature outside
/// the supported subset, e.g. tuplet nesting beyond depth 2).
NoteMatrix parseMusicXml(std::string_view document, const MusicXmlOptions& options = {});

}  // namespace melograph
