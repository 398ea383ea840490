#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hfgraph/dstruct.hpp"

namespace hfgraph {

struct NotCancelable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ReductionTrace {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> canceled;  // (src, dst) in input numbering
  std::size_t generators_before = 0;
  std::size_t generators_after = 0;
};

// Cancel one identity-labeled arrow, adding the zig-zag composites.
DModule cancel(const DModule& m, const Arrow& e);

// Cancel identity arrows until none remain. Endpoints with the smallest
// fill-in go first.
DModule reduce(const DModule& m, ReductionTrace* trace = nullptr);

// Same, but cancellations are chosen in an order driven by the seed; used
// to check that the surviving generator count does not depend on order.
DModule reduce_random_order(const DModule& m, std::uint64_t seed);

// Rank of homology of a complex with no boundaries, by reduction.
std::size_t homology_rank(const DModule& c);
// Same rank by sparse column elimination over F2.
std::size_t homology_rank_elimination(const DModule& c);

}  // namespace hfgraph
