#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "hfgraph/algebra.hpp"
#include "hfgraph/blocks.hpp"
#include "hfgraph/dstruct.hpp"
#include "hfgraph/gradings.hpp"
#include "hfgraph/pairing.hpp"
#include "hfgraph/reduce.hpp"

namespace testing {

using namespace hfgraph;

// Reeb elements as intervals [lo, hi] of {1, 2, 3}; idempotents are empty.
struct Interval {
  int lo = 0, hi = -1;
  bool empty() const { return hi < lo; }
};

inline Interval interval_of(AlgElem a) {
  switch (a) {
    case AlgElem::Rho1: return {1, 1};
    case AlgElem::Rho2: return {2, 2};
    case AlgElem::Rho3: return {3, 3};
    case AlgElem::Rho12: return {1, 2};
    case AlgElem::Rho23: return {2, 3};
    case AlgElem::Rho123: return {1, 3};
    default: return {};
  }
}

inline AlgElem elem_of(Interval i) {
  for (AlgElem a : kReebElems)
    if (interval_of(a).lo == i.lo && interval_of(a).hi == i.hi) return a;
  throw std::logic_error("not a chord interval");
}

// Chords start at iota0 on odd endpoints and iota1 on even ones.
inline AlgElem idem_at(int endpoint) { return endpoint % 2 ? AlgElem::Iota0 : AlgElem::Iota1; }

// Product by concatenation of intervals.
inline MaybeElem oracle_mul(AlgElem a, AlgElem b) {
  auto left = [](AlgElem x) { return is_idempotent(x) ? x : idem_at(interval_of(x).lo); };
  auto right = [](AlgElem x) { return is_idempotent(x) ? x : idem_at(interval_of(x).hi + 1); };
  if (right(a) != left(b)) return std::nullopt;
  if (is_idempotent(a)) return b;
  if (is_idempotent(b)) return a;
  Interval i = interval_of(a), j = interval_of(b);
  if (i.hi + 1 != j.lo) return std::nullopt;
  return elem_of({i.lo, j.hi});
}

// A closed complex with a chosen homology rank, scrambled by random changes
// of basis so that its arrows are not in cancelled form.
struct RandomComplex {
  DModule module;
  std::size_t expected_rank;
};

inline RandomComplex random_complex(std::mt19937_64& rng, int max_gens) {
  std::uniform_int_distribution<int> size(1, max_gens);
  const int n = size(rng);
  std::uniform_int_distribution<int> pairs_d(0, n / 2);
  const int pairs = pairs_d(rng);
  std::vector<std::vector<std::uint8_t>> d(n, std::vector<std::uint8_t>(n, 0));  // d[i][j]: i -> j
  for (int p = 0; p < pairs; ++p) d[2 * p][2 * p + 1] = 1;
  // Conjugate by elementary matrices E = 1 + e_ij (self-inverse over F2).
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int k = 0; k < 3 * n; ++k) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    // d' = E d E with E = 1 + e_ij on basis columns: row j += row i, then col i += col j.
    for (int c = 0; c < n; ++c) d[j][c] ^= d[i][c];
    for (int r = 0; r < n; ++r) d[r][i] ^= d[r][j];
  }
  // Identity self-loops are not complexes reduce accepts; draw again.
  for (int i = 0; i < n; ++i)
    if (d[i][i]) return random_complex(rng, max_gens);
  DModule m;
  m.slots.assign(n, SlotWord{});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d[i][j]) m.arrows.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), Label{}});
  m.normalize();
  return {m, static_cast<std::size_t>(n - 2 * pairs)};
}

// rank H = n - 2 rank(d), by dense elimination.
inline std::size_t oracle_rank(const DModule& c) {
  const std::size_t n = c.num_generators();
  std::vector<std::vector<std::uint8_t>> d(n, std::vector<std::uint8_t>(n, 0));
  for (const Arrow& a : c.arrows) d[a.src][a.dst] ^= 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t p = rank;
    while (p < n && !d[p][col]) ++p;
    if (p == n) continue;
    std::swap(d[p], d[rank]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != rank && d[r][col])
        for (std::size_t k = 0; k < n; ++k) d[r][k] ^= d[rank][k];
    ++rank;
  }
  return n - 2 * rank;
}

// Reference pairing: the product of two modules, then the strict diagonal
// self-pairing written directly from the actions b -> mirror(a) b c.
inline DModule reference_product(const DModule& a, const DModule& b) {
  DModule r;
  r.boundaries = a.boundaries;
  r.boundaries.insert(r.boundaries.end(), b.boundaries.begin(), b.boundaries.end());
  const int na = a.num_boundaries();
  const std::size_t nb = b.num_generators();
  for (std::size_t i = 0; i < a.num_generators(); ++i)
    for (std::size_t j = 0; j < nb; ++j) r.slots.push_back({a.slots[i].bits | (b.slots[j].bits << (2 * na))});
  for (const Arrow& x : a.arrows)
    for (std::size_t j = 0; j < nb; ++j)
      r.arrows.push_back({static_cast<std::uint32_t>(x.src * nb + j), static_cast<std::uint32_t>(x.dst * nb + j), x.label});
  for (const Arrow& y : b.arrows)
    for (std::size_t i = 0; i < a.num_generators(); ++i) {
      Label l;
      l.bits = y.label.bits << (4 * na);
      r.arrows.push_back({static_cast<std::uint32_t>(i * nb + y.src), static_cast<std::uint32_t>(i * nb + y.dst), l});
    }
  r.normalize();
  return r;
}

inline DModule reference_self_glue(const DModule& m, int b1, int b2) {
  const int nb = m.num_boundaries();
  DModule r;
  std::vector<int> keep;
  for (int b = 0; b < nb; ++b)
    if (b != b1 && b != b2) {
      keep.push_back(b);
      r.boundaries.push_back(m.boundaries[b]);
    }
  std::map<std::pair<std::size_t, int>, std::uint32_t> id;  // (generator, basis element or -1)
  auto rest = [&](SlotWord w) {
    SlotWord o;
    for (std::size_t i = 0; i < keep.size(); ++i) o.set(static_cast<int>(i), w.get(keep[i]));
    return o;
  };
  for (std::size_t x = 0; x < m.num_generators(); ++x) {
    Slot s1 = m.slots[x].get(b1), s2 = m.slots[x].get(b2);
    if (slot_middle(s1) && slot_middle(s2)) {
      for (AlgElem e : kAllElems)
        if (left_idem(e) == swap_idem(idem_of_slot(s1)) && right_idem(e) == idem_of_slot(s2)) {
          id[{x, static_cast<int>(e)}] = static_cast<std::uint32_t>(r.slots.size());
          r.slots.push_back(rest(m.slots[x]));
        }
    } else if (!slot_middle(s1) && !slot_middle(s2) && slot_occupancy(s1) + slot_occupancy(s2) == 2) {
      id[{x, -1}] = static_cast<std::uint32_t>(r.slots.size());
      r.slots.push_back(rest(m.slots[x]));
    }
  }
  for (const Arrow& a : m.arrows) {
    Label l;
    for (std::size_t i = 0; i < keep.size(); ++i) l.set(static_cast<int>(i), a.label.get(keep[i]));
    for (auto it = id.lower_bound({a.src, -2}); it != id.end() && it->first.first == a.src; ++it) {
      const int e = it->first.second;
      if (e < 0) {
        if (a.label.get(b1) != Chord::None || a.label.get(b2) != Chord::None) continue;
        if (auto jt = id.find({a.dst, -1}); jt != id.end()) r.arrows.push_back({it->second, jt->second, l});
        continue;
      }
      AlgElem A = *m.component(a, b1), C = *m.component(a, b2);
      MaybeElem p = mul(mul(MaybeElem(mirror_elem(A)), MaybeElem(static_cast<AlgElem>(e))), MaybeElem(C));
      if (!p) continue;
      if (auto jt = id.find({a.dst, static_cast<int>(*p)}); jt != id.end()) r.arrows.push_back({it->second, jt->second, l});
    }
  }
  r.normalize();
  return r;
}

inline DModule reference_glue(const DModule& a, int b1, const DModule& b, int b2) {
  return reference_self_glue(reference_product(a, b), b1, a.num_boundaries() + b2);
}

inline std::vector<DModule> all_tori() {
  return {solid_torus_data(TorusData::Rho12Loop), solid_torus_data(TorusData::Rho23Loop),
          solid_torus_data(TorusData::Rho1Rho3), solid_torus_data(TorusData::Rho2Rho123)};
}

// Homology ranks of a two-boundary module capped on both sides by every
// pair of solid tori: a homotopy invariant of the bimodule.
inline std::vector<std::size_t> closed_fillings(const DModule& m) {
  std::vector<std::size_t> out;
  for (const DModule& s : all_tori())
    for (const DModule& t : all_tori()) out.push_back(homology_rank(glue(glue(s, 0, m, 0), 0, t, 0)));
  return out;
}

inline GradingElem G(int maslov2, std::vector<int> pairs2) {
  GradingElem g;
  g.maslov2 = maslov2;
  for (std::size_t i = 0; i + 1 < pairs2.size(); i += 2) {
    g.a2.push_back(pairs2[i]);
    g.b2.push_back(pairs2[i + 1]);
  }
  return g;
}

inline const Arrow& arrow_between(const DModule& m, const std::string& s, const std::string& d, Label l = {}) {
  auto src = *m.find(s), dst = *m.find(d);
  for (const Arrow& a : m.arrows)
    if (a.src == src && a.dst == dst && (l.bits == 0 || a.label == l)) return a;
  throw std::logic_error("no arrow " + s + " -> " + d);
}

inline std::size_t arrow_index(const DModule& m, const std::string& s, const std::string& d) {
  return static_cast<std::size_t>(&arrow_between(m, s, d) - m.arrows.data());
}

}  // namespace testing
