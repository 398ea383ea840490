#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hfgraph/algebra.hpp"

namespace hfgraph {

inline constexpr int kMaxBoundaries = 16;

// Per-boundary state of a generator: occupancy 0, occupancy 1 with idempotent
// iota0 or iota1, or occupancy 2. Mirroring maps s to 3 - s.
enum class Slot : std::uint8_t { Empty = 0, Idem0 = 1, Idem1 = 2, Full = 3 };

inline int slot_occupancy(Slot s) { return s == Slot::Empty ? 0 : (s == Slot::Full ? 2 : 1); }
inline Slot slot_of_idem(AlgElem i) { return i == AlgElem::Iota0 ? Slot::Idem0 : Slot::Idem1; }
inline AlgElem idem_of_slot(Slot s) { return s == Slot::Idem0 ? AlgElem::Iota0 : AlgElem::Iota1; }
inline bool slot_middle(Slot s) { return s == Slot::Idem0 || s == Slot::Idem1; }

// Packed slots, two bits per boundary.
struct SlotWord {
  std::uint32_t bits = 0;
  Slot get(int b) const { return static_cast<Slot>((bits >> (2 * b)) & 3u); }
  void set(int b, Slot s) {
    bits = (bits & ~(3u << (2 * b))) | (static_cast<std::uint32_t>(s) << (2 * b));
  }
  friend bool operator==(SlotWord, SlotWord) = default;
  friend auto operator<=>(SlotWord, SlotWord) = default;
};

// Occupancy pattern of a slot word (idempotents forgotten), packed the same way.
std::uint32_t occupancy_key(SlotWord w, int nb);

// One chord code (or identity) per boundary, four bits each.
struct Label {
  std::uint64_t bits = 0;
  Chord get(int b) const { return static_cast<Chord>((bits >> (4 * b)) & 15u); }
  void set(int b, Chord c) {
    bits = (bits & ~(std::uint64_t{15} << (4 * b))) | (std::uint64_t(c) << (4 * b));
  }
  bool is_identity() const { return bits == 0; }
  friend bool operator==(Label, Label) = default;
  friend auto operator<=>(Label, Label) = default;
};

// Componentwise product; nullopt when some component vanishes.
std::optional<Label> label_mul(Label a, Label b, int nb);

struct Arrow {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  Label label;
  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

struct Boundary {
  std::string name;
  int fiber = 0;  // which alpha arc is the S^1 fiber: 1, 2, or 0 if not tracked
  friend bool operator==(const Boundary&, const Boundary&) = default;
};

// A type D multimodule over one torus algebra per boundary. Arrows form a
// mod 2 multiset, kept sorted and free of duplicates by normalize().
struct DModule {
  std::vector<Boundary> boundaries;
  std::vector<SlotWord> slots;
  std::vector<std::string> names;  // optional; empty means automatic names
  std::vector<Arrow> arrows;

  int num_boundaries() const { return static_cast<int>(boundaries.size()); }
  std::size_t num_generators() const { return slots.size(); }
  std::string name(std::size_t g) const;
  std::optional<std::size_t> find(const std::string& name) const;
  std::vector<int> occupancy(std::size_t g) const;

  void normalize();
  // Arrow component at boundary b as an algebra element (idempotent when no
  // chord on a middle boundary, nullopt on an extremal boundary).
  std::optional<AlgElem> component(const Arrow& a, int b) const;
};

// Incremental construction from names and algebra elements.
class ModuleBuilder {
 public:
  explicit ModuleBuilder(std::vector<Boundary> boundaries);
  // occ[b] in {0,1,2}; idem[b] only read where occ[b] == 1.
  std::size_t gen(const std::string& name, const std::vector<int>& occ,
                  const std::vector<AlgElem>& idem = {});
  // Components not listed are identity.
  void arrow(const std::string& src, const std::string& dst,
             const std::vector<std::pair<int, AlgElem>>& comps = {});
  DModule build() const;  // normalizes

 private:
  DModule m_;
};

struct Violation {
  enum Kind { Occupancy, ExtremalChord, Idempotent, CrossSummand, SquareNonzero } kind;
  std::uint32_t src = 0, dst = 0;
  Label label;
  std::string message;
};

std::optional<Violation> validate(const DModule& m);

// Summands keyed by occupancy, in order of first appearance.
std::vector<DModule> summand_split(const DModule& m);
DModule direct_sum(const std::vector<DModule>& parts);
// Generator counts per occupancy summand, sorted by occupancy vector.
std::vector<std::pair<std::vector<int>, std::size_t>> summand_profile(const DModule& m);

DModule mirror(const DModule& m);

// Reorder boundaries: output boundary i is input boundary order[i].
DModule permute_boundaries(const DModule& m, const std::vector<int>& order);

// Input for derive_idempotents: occupancies only, arrows as chords per boundary.
struct RawModule {
  std::vector<Boundary> boundaries;
  std::vector<std::string> names;
  std::vector<std::vector<int>> occupancy;
  struct RawArrow {
    std::string src, dst;
    std::vector<std::pair<int, AlgElem>> comps;
  };
  std::vector<RawArrow> arrows;
};

struct Inconsistent {
  std::size_t arrow_index;
  std::string message;
};
struct Underdetermined {
  std::vector<std::string> generators;
};

std::variant<DModule, Inconsistent, Underdetermined> derive_idempotents(const RawModule& raw);

// Text dump: one line per generator, then one line per arrow.
void dump(std::ostream& os, const DModule& m);
std::string dump_string(const DModule& m);
std::string label_string(const DModule& m, Label l);

// Isomorphism up to generator relabeling: same boundary count, slots and
// arrow multiset. Boundary names and fiber markers are not compared.
bool isomorphic(const DModule& a, const DModule& b);

}  // namespace hfgraph
