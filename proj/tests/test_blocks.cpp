#include <doctest.h>

#include <thread>

#include "support.hpp"

using namespace hfgraph;

TEST_CASE("catalog blocks are valid") {
  for (const std::string& name : BlockCatalog::names()) CHECK_MESSAGE(!validate(BlockCatalog::instance().get(name)).has_value(), name);
  for (const DModule& t : testing::all_tori()) CHECK_FALSE(validate(t).has_value());
  CHECK_THROWS_AS(BlockCatalog::instance().get("nope"), std::invalid_argument);
}

TEST_CASE("catalog is safe to share across threads") {
  std::vector<std::thread> pool;
  std::vector<const DModule*> seen(8);
  for (int i = 0; i < 8; ++i) pool.emplace_back([&, i] { seen[i] = &BlockCatalog::instance().get("genus_piece"); });
  for (auto& t : pool) t.join();
  for (const DModule* p : seen) CHECK(p == seen[0]);
}

TEST_CASE("block sizes") {
  CHECK(pants().num_generators() == 17);
  CHECK(identity_dd().num_generators() == 4);
  DModule sg = self_gluer();
  CHECK(sg.num_generators() == 20);
  CHECK(sg.arrows.size() == 50);
  CHECK(reduce(sg).num_generators() == 16);
  for (int arc : {1, 2})
    for (int sign : {1, -1}) {
      DModule t = twist(arc, sign);
      CHECK(t.num_boundaries() == 2);
      CHECK(t.boundaries[0].fiber == arc);
      CHECK(t.boundaries[1].fiber == 3 - arc);
    }
  CHECK(fiber_flip(1).num_generators() == 6);
  CHECK(fiber_flip(2).num_generators() == 6);
  DModule gp = genus_piece();
  CHECK(gp.boundaries[0].fiber == 2);
  CHECK(gp.boundaries[1].fiber == 1);
}

TEST_CASE("mirror pants is the mirror of pants") {
  CHECK(dump_string(mirror_pants()) == dump_string(mirror(pants())));
}

TEST_CASE("solid tori") {
  CHECK(isomorphic(solid_torus(1), solid_torus_data(TorusData::Rho12Loop)));
  CHECK(isomorphic(solid_torus(2), solid_torus_data(TorusData::Rho23Loop)));
  CHECK(solid_torus(1).boundaries[0].fiber == 2);
  CHECK(solid_torus(2).boundaries[0].fiber == 1);
  CHECK_THROWS_AS(solid_torus(3), std::invalid_argument);
  // The rho12 loop squares to zero.
  CHECK_FALSE(validate(solid_torus(1)).has_value());
}

TEST_CASE("filling pants along the base returns the identity bimodule") {
  CHECK(isomorphic(glue(pants(), 0, solid_torus(2), 0), identity_dd()));
  CHECK(isomorphic(glue(pants(), 2, solid_torus(2), 0), identity_dd()));
  CHECK(isomorphic(glue(mirror_pants(), 0, solid_torus(1), 0), identity_dd()));
}

TEST_CASE("S1 x S2 from two caps on the identity") {
  DModule closed = glue(glue(solid_torus(1), 0, identity_dd(), 0), 0, solid_torus(2), 0);
  CHECK(homology_rank(closed) == 2);
}

TEST_CASE("inverse laws up to homotopy") {
  const auto id = testing::closed_fillings(identity_dd());
  for (int arc : {1, 2}) {
    CHECK(testing::closed_fillings(glue(twist(arc, 1), 1, twist(arc, -1), 0)) == id);
    CHECK(testing::closed_fillings(glue(twist(arc, -1), 1, twist(arc, 1), 0)) == id);
  }
  CHECK(testing::closed_fillings(glue(fiber_flip(1), 1, fiber_flip(2), 0)) == id);
  CHECK(testing::closed_fillings(glue(identity_dd(), 1, identity_dd(), 0)) == id);
}

TEST_CASE("twists change the filling") {
  // One twist on a meridian filling moves the slope, so some filling differs.
  CHECK(testing::closed_fillings(twist(1, 1)) != testing::closed_fillings(identity_dd()));
}

TEST_CASE("flip toggles the fiber marker") {
  DModule g = glue(pants(), 1, fiber_flip(1), 0);  // sigma has fiber alpha_1
  CHECK(g.boundaries.back().fiber == 2);
  DModule h = glue(pants(), 0, fiber_flip(2), 0);  // rho has fiber alpha_2
  CHECK(h.boundaries.back().fiber == 1);
}

TEST_CASE("genus piece closes up to T^3 and Sigma_2 x S^1") {
  // Boundaries (fiber 2, fiber 1), each filled along the base.
  auto close = [](const DModule& m) { return homology_rank(glue(glue(solid_torus(1), 0, m, 1), 0, solid_torus(2), 0)); };
  DModule gp = genus_piece();
  CHECK(close(gp) == 6);
  CHECK(close(glue(gp, 1, gp, 0)) == 24);
}
