#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hfgraph {

// Basis of the torus algebra A(T^2, 0).
enum class AlgElem : std::uint8_t { Iota0, Iota1, Rho1, Rho2, Rho3, Rho12, Rho23, Rho123 };

// Either a basis element or zero.
using MaybeElem = std::optional<AlgElem>;

inline constexpr std::array<AlgElem, 8> kAllElems = {
    AlgElem::Iota0, AlgElem::Iota1, AlgElem::Rho1,  AlgElem::Rho2,
    AlgElem::Rho3,  AlgElem::Rho12, AlgElem::Rho23, AlgElem::Rho123};

inline constexpr std::array<AlgElem, 6> kReebElems = {
    AlgElem::Rho1, AlgElem::Rho2, AlgElem::Rho3, AlgElem::Rho12, AlgElem::Rho23, AlgElem::Rho123};

constexpr bool is_idempotent(AlgElem a) { return a == AlgElem::Iota0 || a == AlgElem::Iota1; }

AlgElem left_idem(AlgElem a);
AlgElem right_idem(AlgElem a);
MaybeElem mul(AlgElem a, AlgElem b);
MaybeElem mul(MaybeElem a, MaybeElem b);
AlgElem mirror_elem(AlgElem a);
inline AlgElem swap_idem(AlgElem i) { return i == AlgElem::Iota0 ? AlgElem::Iota1 : AlgElem::Iota0; }

// "rho12", "iota0", ...
std::string_view elem_name(AlgElem a);
// Accepts "rho12", "r12", "12", "iota0", "i0".
std::optional<AlgElem> parse_elem(std::string_view s);

// Compact chord code used inside labels. None is the identity (no chord);
// Zero only ever appears as the result of a vanishing product.
enum class Chord : std::uint8_t { None = 0, R1, R2, R3, R12, R23, R123, Zero };

inline constexpr std::array<Chord, 6> kChords = {Chord::R1,  Chord::R2,  Chord::R3,
                                                 Chord::R12, Chord::R23, Chord::R123};

AlgElem chord_elem(Chord c);                  // pre: c != None
std::optional<Chord> elem_chord(AlgElem a);   // nullopt for idempotents
Chord chord_mul(Chord a, Chord b);  // None acts as identity, Zero absorbs
Chord chord_mirror(Chord c);
AlgElem chord_left_idem(Chord c);
AlgElem chord_right_idem(Chord c);

}  // namespace hfgraph
