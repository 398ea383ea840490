#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace hfgraph;
using E = AlgElem;

TEST_CASE("homology rank matches elimination on random complexes") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    auto rc = testing::random_complex(rng, 12);
    REQUIRE_FALSE(validate(rc.module).has_value());
    const std::size_t oracle = testing::oracle_rank(rc.module);
    CHECK(oracle == rc.expected_rank);
    CHECK(homology_rank(rc.module) == oracle);
    CHECK(homology_rank_elimination(rc.module) == oracle);
  }
}

TEST_CASE("cancellation order does not change the surviving count") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto rc = testing::random_complex(rng, 12);
    for (std::uint64_t seed = 0; seed < 4; ++seed)
      CHECK(reduce_random_order(rc.module, seed).num_generators() == reduce(rc.module).num_generators());
  }
  for (const std::string& name : {"self_gluer"}) {
    const DModule& m = BlockCatalog::instance().get(name);
    auto base = summand_profile(reduce(m));
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      DModule r = reduce_random_order(m, seed);
      CHECK_FALSE(validate(r).has_value());
      CHECK(summand_profile(r) == base);
    }
  }
}

TEST_CASE("small cases") {
  CHECK(homology_rank(DModule{}) == 0);
  ModuleBuilder b({});
  b.gen("x", {});
  b.gen("y", {});
  b.arrow("x", "y");
  DModule two = b.build();
  CHECK(homology_rank(two) == 0);
  CHECK(reduce(two).num_generators() == 0);
  CHECK(reduce(pants()).num_generators() == pants().num_generators());
}

TEST_CASE("cancelling t -> s turns the seven generator form into the five generator one") {
  DModule raw = pants_middle_unreduced();
  CHECK(raw.num_generators() == 7);
  CHECK_FALSE(validate(raw).has_value());
  const Arrow& ts = testing::arrow_between(raw, "t", "s");
  CHECK(ts.label.is_identity());
  DModule c = cancel(raw, ts);
  CHECK_FALSE(validate(c).has_value());
  CHECK(c.num_generators() == 5);
  CHECK(c.arrows.size() == 14);
  CHECK(isomorphic(c, summand_split(pants())[0]));

  // The two zig-zags through s.
  Label l1, l2;
  l1.set(0, Chord::R1);
  l1.set(1, Chord::R3);
  l1.set(2, Chord::R123);
  l2.set(0, Chord::R123);
  l2.set(1, Chord::R123);
  l2.set(2, Chord::R123);
  CHECK_NOTHROW(testing::arrow_between(c, "v", "y", l1));
  CHECK_NOTHROW(testing::arrow_between(c, "v", "y", l2));

  ReductionTrace trace;
  DModule r = reduce(raw, &trace);
  CHECK(trace.generators_before == 7);
  CHECK(trace.generators_after == 5);
  CHECK(trace.canceled.size() == 1);
  CHECK(isomorphic(r, c));
}

TEST_CASE("cancel rejects non-identity arrows") {
  DModule p = pants();
  CHECK_THROWS_AS(cancel(p, p.arrows.front()), NotCancelable);
}

TEST_CASE("cancel keeps validity on every block") {
  for (const std::string& name : {"self_gluer", "identity_dd", "pants"}) {
    DModule m = BlockCatalog::instance().get(name);
    for (const Arrow& a : m.arrows)
      if (a.label.is_identity() && a.src != a.dst) {
        DModule c = cancel(m, a);
        CHECK_FALSE(validate(c).has_value());
      }
  }
}
