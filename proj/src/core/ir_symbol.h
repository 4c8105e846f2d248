// Implication-Realization symbol alphabet.

#pragma once

#include <array>
#include <optional>
#include <string>

namespace melograph {

/// Narmour's eight basic melodic archetypes plus X for notes without a
/// complete triplet context (first/last note of a piece).
enum class IRSymbol { P, D, ID, IP, VP, R, IR, VR, X };

constexpr std::array<IRSymbol, 9> kAllIRSymbols = {
    IRSymbol::P,  IRSymbol::D,  IRSymbol::ID, IRSymbol::IP, IRSymbol::VP,
    IRSymbol::R,  IRSymbol::IR, IRSymbol::VR, IRSymbol::X};

inline const char* irSymbolName(IRSymbol s) {
  switch (s) {
    case IRSymbol::P: return "P";
    case IRSymbol::D: return "D";
    case IRSymbol::ID: return "ID";
    case IRSymbol::IP: return "IP";
    case IRSymbol::VP: return "VP";
    case IRSymbol::R: return "R";
    case IRSymbol::IR: return "IR";
    case IRSymbol::VR: return "VR";
    case IRSymbol::X: return "X";
  }
  return "?";
}

/// Tie-break precedence for dominant-symbol selection: P > D > ID > IP >
/// VP > R > IR > VR (X never competes).
inline int irSymbolPrecedence(IRSymbol s) {
  switch (s) {
    case IRSymbol::P: return 0;
    case IRSymbol::D: return 1;
    case IRSymbol::ID: return 2;
    case IRSymbol::IP: return 3;
    case IRSymbol::VP: return 4;
    case IRSymbol::R: return 5;
    case IRSymbol::IR: return 6;
    case IRSymbol::VR: return 7;
    case IRSymbol::X: return 8;
  }
  return 9;
}

inline std::optional<IRSymbol> irSymbolFromName(const std::string& name) {
  for (IRSymbol s : kAllIRSymbols) {
    if (name == irSymbolName(s)) return s;
  }
  return std::nullopt;
}

}  // namespace melograph
