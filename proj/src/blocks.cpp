#include "hfgraph/blocks.hpp"

#include <stdexcept>

#include "hfgraph/pairing.hpp"
#include "hfgraph/reduce.hpp"

namespace hfgraph {

namespace {

using E = AlgElem;
constexpr int R = 0, S = 1, T = 2;  // rho, sigma, tau

std::vector<Boundary> pants_boundaries() { return {{"rho", 2}, {"sigma", 1}, {"tau", 2}}; }

// Intersection points of the pants diagram on the alpha arcs: which boundary,
// and which idempotent a point on that arc contributes.
struct Point {
  char name;
  int boundary;
  E idem;
};
constexpr Point kPoints[] = {{'a', R, E::Iota1}, {'f', R, E::Iota0}, {'g', S, E::Iota1}, {'i', S, E::Iota0},
                             {'c', T, E::Iota1}, {'h', T, E::Iota1}, {'b', T, E::Iota0}, {'d', T, E::Iota0},
                             {'e', T, E::Iota0}};

void point_gen(ModuleBuilder& b, const std::string& name) {
  std::vector<int> occ(3, 0);
  std::vector<E> idem(3, E::Iota0);
  for (char ch : name) {
    for (const Point& p : kPoints) {
      if (p.name != ch) continue;
      ++occ[p.boundary];
      idem[p.boundary] = p.idem;
    }
  }
  b.gen(name, occ, idem);
}

void pants_middle_gens(ModuleBuilder& b) {
  b.gen("v", {1, 1, 1}, {E::Iota0, E::Iota0, E::Iota0});
  b.gen("w", {1, 1, 1}, {E::Iota0, E::Iota0, E::Iota0});
  b.gen("x", {1, 1, 1}, {E::Iota1, E::Iota0, E::Iota0});
  b.gen("y", {1, 1, 1}, {E::Iota1, E::Iota1, E::Iota1});
  b.gen("z", {1, 1, 1}, {E::Iota0, E::Iota0, E::Iota1});
}

void pants_common_arrows(ModuleBuilder& b) {
  b.arrow("v", "x", {{R, E::Rho3}});
  b.arrow("x", "v", {{R, E::Rho2}, {S, E::Rho12}});
  b.arrow("w", "x", {{R, E::Rho3}, {S, E::Rho12}});
  b.arrow("x", "w", {{R, E::Rho2}});
  b.arrow("y", "x", {{T, E::Rho2}, {S, E::Rho2}});
  b.arrow("x", "y", {{T, E::Rho3}, {S, E::Rho1}});
  b.arrow("z", "y", {{R, E::Rho3}, {S, E::Rho1}});
  b.arrow("y", "z", {{R, E::Rho2}, {S, E::Rho2}});
  b.arrow("v", "z", {{T, E::Rho3}});
  b.arrow("z", "w", {{T, E::Rho2}});
}

void pants_extremal(ModuleBuilder& b) {
  for (const char* n : {"agi", "afi", "afh", "bfh", "aeh", "dfh", "bgi", "cgi", "dgi", "dgh", "cei", "bgh"})
    point_gen(b, n);
  b.arrow("bfh", "aeh", {{R, E::Rho3}});
  b.arrow("aeh", "dfh", {{R, E::Rho2}});
  b.arrow("bgi", "cgi", {{T, E::Rho3}});
  b.arrow("cgi", "dgi", {{T, E::Rho2}});
  b.arrow("dgh", "cei", {{S, E::Rho2}});
  b.arrow("cei", "bgh", {{S, E::Rho1}});
}

DModule cap(const DModule& m, int b, const DModule& torus) { return glue(m, b, torus, 0); }

}  // namespace

DModule pants() {
  ModuleBuilder b(pants_boundaries());
  pants_middle_gens(b);
  pants_common_arrows(b);
  b.arrow("v", "y", {{R, E::Rho1}, {T, E::Rho123}, {S, E::Rho3}});
  b.arrow("v", "y", {{R, E::Rho123}, {T, E::Rho123}, {S, E::Rho123}});
  b.arrow("w", "y", {{R, E::Rho1}, {T, E::Rho1}, {S, E::Rho3}});
  b.arrow("w", "y", {{R, E::Rho123}, {T, E::Rho1}, {S, E::Rho123}});
  pants_extremal(b);
  return b.build();
}

DModule pants_middle_unreduced() {
  ModuleBuilder b(pants_boundaries());
  pants_middle_gens(b);
  b.gen("t", {1, 1, 1}, {E::Iota1, E::Iota0, E::Iota1});
  b.gen("s", {1, 1, 1}, {E::Iota1, E::Iota0, E::Iota1});
  pants_common_arrows(b);
  b.arrow("t", "s");
  b.arrow("v", "s", {{R, E::Rho1}, {T, E::Rho123}});
  b.arrow("w", "s", {{R, E::Rho1}, {T, E::Rho1}});
  b.arrow("t", "y", {{S, E::Rho3}});
  b.arrow("t", "y", {{R, E::Rho23}, {S, E::Rho123}});
  return b.build();
}

DModule mirror_pants() { return mirror(pants()); }

DModule solid_torus_data(TorusData d) {
  ModuleBuilder b({{"t", 0}});
  switch (d) {
    case TorusData::Rho12Loop:
      b.gen("n", {1}, {E::Iota0});
      b.arrow("n", "n", {{0, E::Rho12}});
      break;
    case TorusData::Rho23Loop:
      b.gen("n", {1}, {E::Iota1});
      b.arrow("n", "n", {{0, E::Rho23}});
      break;
    case TorusData::Rho1Rho3:
      b.gen("a", {1}, {E::Iota0});
      b.gen("b", {1}, {E::Iota1});
      b.arrow("a", "b", {{0, E::Rho1}});
      b.arrow("a", "b", {{0, E::Rho3}});
      break;
    case TorusData::Rho2Rho123:
      b.gen("a", {1}, {E::Iota0});
      b.gen("b", {1}, {E::Iota1});
      b.arrow("b", "a", {{0, E::Rho2}});
      b.arrow("a", "b", {{0, E::Rho123}});
      break;
  }
  return b.build();
}

DModule solid_torus(int meridian_arc) {
  if (meridian_arc != 1 && meridian_arc != 2) throw std::invalid_argument("meridian arc must be 1 or 2");
  // Gluing identifies alpha_1 with alpha_2, so this torus fills a boundary
  // whose fiber is alpha_(meridian_arc) along its base.
  DModule m = solid_torus_data(meridian_arc == 1 ? TorusData::Rho12Loop : TorusData::Rho23Loop);
  m.boundaries[0].fiber = 3 - meridian_arc;
  return m;
}

DModule solid_torus_twisting(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  return solid_torus_data(sign > 0 ? TorusData::Rho1Rho3 : TorusData::Rho2Rho123);
}

DModule identity_dd() {
  ModuleBuilder b({{"rho", 2}, {"sigma", 1}});
  b.gen("p", {1, 1}, {E::Iota0, E::Iota0});
  b.gen("q", {1, 1}, {E::Iota1, E::Iota1});
  b.arrow("q", "p", {{0, E::Rho2}, {1, E::Rho2}});
  b.arrow("p", "q", {{0, E::Rho1}, {1, E::Rho3}});
  b.arrow("p", "q", {{0, E::Rho3}, {1, E::Rho1}});
  b.arrow("p", "q", {{0, E::Rho123}, {1, E::Rho123}});
  b.gen("u", {2, 0});
  b.gen("l", {0, 2});
  return b.build();
}

DModule self_gluer() {
  RawModule raw;
  raw.boundaries = {{"rho", 1}, {"sigma", 2}};
  const char* cols[] = {"eb", "af", "ed", "ah"};
  const char rows[] = {'i', 'j', 'k', 'l'};
  for (const char* c : cols)
    for (char r : rows) raw.names.push_back(std::string(c) + r);
  for (const char* n : {"enc", "ang", "emc", "amg"}) raw.names.push_back(n);
  raw.occupancy.assign(raw.names.size(), {1, 1});
  auto arrow = [&](std::string s, std::string d, std::vector<std::pair<int, E>> comps) {
    raw.arrows.push_back({std::move(s), std::move(d), std::move(comps)});
  };
  for (char r : rows) {
    arrow(std::string("eb") + r, std::string("af") + r, {{0, E::Rho3}});
    arrow(std::string("af") + r, std::string("ed") + r, {{0, E::Rho2}});
    arrow(std::string("ed") + r, std::string("ah") + r, {{0, E::Rho1}});
  }
  for (std::string c : cols) {
    arrow(c + "l", c + "k", {{1, E::Rho3}});
    arrow(c + "k", c + "j", {{1, E::Rho2}});
    arrow(c + "j", c + "i", {{1, E::Rho1}});
    arrow(c + "l", c + "i", {{1, E::Rho123}});
  }
  arrow("ebl", "enc", {});
  arrow("ebj", "enc", {{0, E::Rho12}});
  arrow("edl", "enc", {{1, E::Rho12}});
  arrow("ebi", "ang", {{0, E::Rho123}});
  arrow("ebk", "ang", {{0, E::Rho1}});
  arrow("afl", "ang", {{1, E::Rho1}});
  arrow("ahl", "ang", {{1, E::Rho123}});
  arrow("amg", "ahi", {});
  arrow("amg", "ahk", {{0, E::Rho23}});
  arrow("amg", "afi", {{1, E::Rho23}});
  arrow("emc", "ahl", {{0, E::Rho123}});
  arrow("emc", "ahj", {{0, E::Rho3}});
  arrow("emc", "edi", {{1, E::Rho3}});
  arrow("emc", "ebi", {{1, E::Rho123}});
  for (auto [from, to] : {std::pair{"ang", "enc"}, std::pair{"amg", "emc"}})
    arrow(from, to, {{0, E::Rho2}, {1, E::Rho2}});
  for (auto [from, to] : {std::pair{"enc", "ang"}, std::pair{"emc", "amg"}}) {
    arrow(from, to, {{0, E::Rho1}, {1, E::Rho3}});
    arrow(from, to, {{0, E::Rho3}, {1, E::Rho1}});
    arrow(from, to, {{0, E::Rho123}, {1, E::Rho123}});
  }
  auto r = derive_idempotents(raw);
  if (!std::holds_alternative<DModule>(r)) throw std::logic_error("self-gluer idempotents do not resolve");
  return std::get<DModule>(r);
}

DModule twist(int arc, int sign) {
  if (arc != 1 && arc != 2) throw std::invalid_argument("twist arc must be 1 or 2");
  // Filling the tau boundary of the pants along a slope one fiber away from
  // the base leaves an annulus bundle of Euler number +-1: rho (fiber 2), sigma (fiber 1).
  DModule m = cap(pants(), T, solid_torus_twisting(sign));
  return arc == 2 ? m : permute_boundaries(m, {1, 0});
}

DModule genus_piece() {
  DModule a = glue(mirror_pants(), S, self_gluer(), 0);   // mirror rho, mirror tau, gluer
  DModule b = self_glue(a, 2, 1);                         // mirror rho (fiber 1)
  return glue(pants(), T, b, 0);                          // rho (fiber 2), sigma (fiber 1)
}

DModule fiber_flip(int from) {
  // Extend along rho and fill sigma along its base.
  if (from == 1) return cap(pants(), S, solid_torus(1));          // rho, tau: fibers 2, 2
  if (from == 2) return cap(mirror_pants(), S, solid_torus(2));   // rho, tau: fibers 1, 1
  throw std::invalid_argument("flip direction must start at arc 1 or 2");
}

BlockCatalog& BlockCatalog::instance() {
  static BlockCatalog c;
  return c;
}

std::vector<std::string> BlockCatalog::names() {
  return {"pants",        "mirror_pants", "identity_dd",   "self_gluer",    "genus_piece",
          "solid_torus_1", "solid_torus_2", "twist_1_plus", "twist_1_minus", "twist_2_plus",
          "twist_2_minus", "flip_1_2",      "flip_2_1"};
}

const DModule& BlockCatalog::get(const std::string& name) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = store_.find(name); it != store_.end()) return it->second;
  }
  DModule m;
  if (name == "pants") m = pants();
  else if (name == "mirror_pants") m = mirror_pants();
  else if (name == "identity_dd") m = identity_dd();
  else if (name == "self_gluer") m = self_gluer();
  else if (name == "genus_piece") m = genus_piece();
  else if (name == "solid_torus_1") m = solid_torus(1);
  else if (name == "solid_torus_2") m = solid_torus(2);
  else if (name == "twist_1_plus") m = twist(1, 1);
  else if (name == "twist_1_minus") m = twist(1, -1);
  else if (name == "twist_2_plus") m = twist(2, 1);
  else if (name == "twist_2_minus") m = twist(2, -1);
  else if (name == "flip_1_2") m = fiber_flip(1);
  else if (name == "flip_2_1") m = fiber_flip(2);
  else throw std::invalid_argument("unknown block " + name);
  if (auto v = validate(m)) throw std::logic_error("block " + name + " invalid: " + v->message);
  std::lock_guard<std::mutex> lock(mu_);
  return store_.emplace(name, std::move(m)).first->second;
}

}  // namespace hfgraph
