#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfgraph/dstruct.hpp"

namespace hfgraph {

// Element of the grading group: a Maslov component and one (a, b) pair per
// boundary. Every component is a half-integer, stored doubled.
struct GradingElem {
  int maslov2 = 0;
  std::vector<int> a2, b2;

  static GradingElem identity(int n) { return {0, std::vector<int>(n, 0), std::vector<int>(n, 0)}; }
  static GradingElem lambda(int n, int power = 1) {
    GradingElem g = identity(n);
    g.maslov2 = 2 * power;
    return g;
  }
  int boundaries() const { return static_cast<int>(a2.size()); }
  bool well_formed() const;  // a_i + b_i integral for every i
  friend bool operator==(const GradingElem&, const GradingElem&) = default;
};

struct SignatureMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Componentwise sum with the Maslov correction sum_i det[[a_i, a_i'], [b_i, b_i']].
GradingElem g_mul(const GradingElem& g, const GradingElem& h);
GradingElem g_inv(const GradingElem& g);
GradingElem g_pow(const GradingElem& g, long long k);

// Grading of a Reeb element placed on boundary `boundary` of `n`.
GradingElem gr_elem(int boundary, int n, AlgElem a);
// Product of the per-boundary gradings of an arrow label.
GradingElem gr_label(Label l, int n);

// Tuple notation, e.g. (-1/2; -1/2,-1/2; 0,0).
std::string g_string(const GradingElem& g);

// Grading across one arrow x -> y: gr(y) from gr(x) when `along`, gr(x)
// from gr(y) otherwise.
GradingElem arrow_step(const Arrow& a, int n, const GradingElem& from, bool along);

struct PropagationResult {
  std::vector<GradingElem> gradings;  // per generator of the summand
  std::vector<GradingElem> periodic;  // one per independent cycle
};

struct GradingDisconnected : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Spanning-tree propagation from `base` with gr(y) = lambda^-1 gr(a)^-1 gr(x)
// for an arrow x -> y labeled a. Every non-tree arrow contributes the loop
// element gr(y)^-1 lambda^-1 gr(a)^-1 gr(x). Arrows listed in `prefer`
// (indices into summand.arrows) join the tree before any other arrow.
PropagationResult propagate(const DModule& summand, std::size_t base, const std::vector<std::size_t>& prefer = {});

// Whether g lies in the subgroup generated by gens. The vector parts of gens
// must be linearly independent.
bool in_subgroup(const GradingElem& g, const std::vector<GradingElem>& gens);
// Whether h = g p for some p in the subgroup: two values of one generator
// reached along different paths.
bool same_coset(const GradingElem& g, const GradingElem& h, const std::vector<GradingElem>& gens);
bool same_subgroup(const std::vector<GradingElem>& a, const std::vector<GradingElem>& b);

// Generators of the same subgroup with independent vector parts, plus any
// central element the cycles force.
std::vector<GradingElem> independent_generators(const std::vector<GradingElem>& cycles);

}  // namespace hfgraph
