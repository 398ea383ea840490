#include "hfgraph/algebra.hpp"

#include <stdexcept>

namespace hfgraph {

namespace {

using E = AlgElem;

constexpr E kLeft[8] = {E::Iota0, E::Iota1, E::Iota0, E::Iota1, E::Iota0, E::Iota0, E::Iota1, E::Iota0};
constexpr E kRight[8] = {E::Iota0, E::Iota1, E::Iota1, E::Iota0, E::Iota1, E::Iota0, E::Iota1, E::Iota1};

constexpr int idx(E a) { return static_cast<int>(a); }

}  // namespace

AlgElem left_idem(AlgElem a) { return kLeft[idx(a)]; }
AlgElem right_idem(AlgElem a) { return kRight[idx(a)]; }

MaybeElem mul(AlgElem a, AlgElem b) {
  if (right_idem(a) != left_idem(b)) return std::nullopt;
  if (is_idempotent(a)) return b;
  if (is_idempotent(b)) return a;
  if (a == E::Rho1 && b == E::Rho2) return E::Rho12;
  if (a == E::Rho2 && b == E::Rho3) return E::Rho23;
  if (a == E::Rho1 && b == E::Rho23) return E::Rho123;
  if (a == E::Rho12 && b == E::Rho3) return E::Rho123;
  return std::nullopt;
}

MaybeElem mul(MaybeElem a, MaybeElem b) {
  if (!a || !b) return std::nullopt;
  return mul(*a, *b);
}

AlgElem mirror_elem(AlgElem a) {
  switch (a) {
    case E::Iota0: return E::Iota1;
    case E::Iota1: return E::Iota0;
    case E::Rho1: return E::Rho3;
    case E::Rho3: return E::Rho1;
    case E::Rho12: return E::Rho23;
    case E::Rho23: return E::Rho12;
    default: return a;
  }
}

std::string_view elem_name(AlgElem a) {
  static constexpr std::string_view names[8] = {"iota0", "iota1", "rho1",  "rho2",
                                                "rho3",  "rho12", "rho23", "rho123"};
  return names[idx(a)];
}

std::optional<AlgElem> parse_elem(std::string_view s) {
  if (s.starts_with("rho")) s.remove_prefix(3);
  else if (s.starts_with("r")) s.remove_prefix(1);
  if (s == "iota0" || s == "i0") return E::Iota0;
  if (s == "iota1" || s == "i1") return E::Iota1;
  if (s == "1") return E::Rho1;
  if (s == "2") return E::Rho2;
  if (s == "3") return E::Rho3;
  if (s == "12") return E::Rho12;
  if (s == "23") return E::Rho23;
  if (s == "123") return E::Rho123;
  return std::nullopt;
}

AlgElem chord_elem(Chord c) {
  if (c == Chord::None || c == Chord::Zero) throw std::logic_error("chord_elem: not a chord");
  return static_cast<AlgElem>(static_cast<int>(c) + 1);
}

std::optional<Chord> elem_chord(AlgElem a) {
  if (is_idempotent(a)) return std::nullopt;
  return static_cast<Chord>(idx(a) - 1);
}

Chord chord_mul(Chord a, Chord b) {
  if (a == Chord::Zero || b == Chord::Zero) return Chord::Zero;
  if (a == Chord::None) return b;
  if (b == Chord::None) return a;
  // Only four products of chords survive.
  if (a == Chord::R1 && b == Chord::R2) return Chord::R12;
  if (a == Chord::R2 && b == Chord::R3) return Chord::R23;
  if (a == Chord::R1 && b == Chord::R23) return Chord::R123;
  if (a == Chord::R12 && b == Chord::R3) return Chord::R123;
  return Chord::Zero;
}

Chord chord_mirror(Chord c) {
  if (c == Chord::None || c == Chord::Zero) return c;
  return *elem_chord(mirror_elem(chord_elem(c)));
}

AlgElem chord_left_idem(Chord c) { return left_idem(chord_elem(c)); }
AlgElem chord_right_idem(Chord c) { return right_idem(chord_elem(c)); }

}  // namespace hfgraph
