// Rule-based Implication-Realization symbol assignment for note triplets.

#pragma once

#include "core/note_matrix.h"

namespace melograph {

/// Classifies the triplet (p1, p2, p3) of MIDI pitches; the symbol belongs
/// to the middle note.
///
/// With I = p2-p1 (implicative) and R = p3-p2 (realized), intervals of at
/// most 5 semitones are small and 6 or more (tritone included) large;
/// "similar size" means ||R|-|I|| <= 2; a zero interval is direction-
/// neutral (compatible with both continuation and change). Rules in
/// evaluation order:
///   D:  I = 0 and R = 0
///   P:  I small, same direction, similar size
///   ID: I = 0, 0 < |R| <= 5
///   IP: I small, direction change, similar size
///   VP: I small, same direction, |R| >= |I| + 3
///   R:  I large, direction change, |R| <= |I| - 3
///   IR: I large, same direction,  |R| <= |I| - 3
///   VR: I large, direction change, |R| >= |I| - 2
/// Triplets matching no rule take the nearest rule, ranked by direction
/// compatibility first, then distance from the rule's size relation, then
/// distance from its interval-size class, then the order above.
IRSymbol classifyTriplet(int p1, int p2, int p3);

/// Fills ir_symbol for every event: boundary notes (incomplete triplets)
/// get X, interior notes the triplet classification.
NoteMatrix annotate(NoteMatrix matrix);

}  // namespace melograph
