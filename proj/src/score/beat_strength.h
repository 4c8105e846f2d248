// Metric weight of an onset within its measure.

#pragma once

#include "core/beats.h"

namespace melograph {

/// Metric weight of a within-measure onset. The downbeat weighs 1; the
/// strongest mid-measure division 1/2; each deeper subdivision halves the
/// weight. Meters whose numerator is divisible by 3 split ternary at the
/// top level, binary below; all other meters split binary throughout.
/// Offsets that sit on no grid level down to the floor get the floor
/// weight 1/16.
///
/// Throws ArgumentError if onset is outside [0, measure length).
Beats beatStrength(const Beats& onset_in_measure, int numerator, int denominator);

/// Notated measure length in quarter-note beats.
Beats measureLength(int numerator, int denominator);

}  // namespace melograph
