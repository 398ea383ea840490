#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfgraph/dstruct.hpp"

namespace hfgraph {

struct BoundaryTypeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SameBoundary : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonTermination : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The type AA identity bimodule of the torus, in its strict form: the
// algebra itself, acted on from the left through the mirror anti-automorphism
// and from the right by multiplication. Generator p is a basis element of A;
// `left` and `right` are the idempotents of the type D generators it pairs
// with. An operation m(p; left_seq; right_seq) -> dst consumes chords read off
// arrows of the left module (left_seq) and of the right module (right_seq).
// Every operation has one input; an arrow with chords on both glued sides
// acts by the composite of its two one-sided operations.
struct AAIdentity {
  struct Gen {
    AlgElem elem;
    AlgElem left;
    AlgElem right;
  };
  struct Op {
    std::size_t src;
    std::vector<AlgElem> left_seq;
    std::vector<AlgElem> right_seq;
    std::size_t dst;
  };
  std::vector<Gen> gens;
  std::vector<Op> ops;
  int a_max = 0;
};

const AAIdentity& aa_identity();

// Checks idempotent compatibility, strict unitality, and the A-infinity
// relation for every generator and every pair of chord sequences of total
// length 2 .. a_max + 1.
std::optional<std::string> validate_aa(const AAIdentity& t);

// Longest arrow path a single output arrow may be assembled from. The strict
// identity only ever reads single arrows, so the bound is a sanity check.
struct PairingTermBound {
  int max_path_length = 0;
  static PairingTermBound of(const AAIdentity& t, int surviving_boundaries) {
    return {2 * t.a_max + 3 * surviving_boundaries};
  }
};

// Glue boundary b1 of m to boundary b2 of n. Output boundaries are m's
// others followed by n's others; the result is reduced.
DModule glue(const DModule& m, int b1, const DModule& n, int b2);

// Glue boundaries b1 and b2 of the same module (Hochschild step). The
// remaining boundaries keep their order; the result is reduced.
DModule self_glue(const DModule& m, int b1, int b2);

// Unreduced variants, exposed for tests and tracing.
DModule glue_raw(const DModule& m, int b1, const DModule& n, int b2);
DModule self_glue_raw(const DModule& m, int b1, int b2);

}  // namespace hfgraph
