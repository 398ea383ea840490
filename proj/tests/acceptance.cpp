// One line per acceptance criterion. Usage: acceptance [N ...]; with no
// arguments runs 1 through 11. Exit status is nonzero if any selected
// criterion fails.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hfgraph/plumbing.hpp"
#include "support.hpp"

using namespace hfgraph;
using testing::G;

namespace {

// Time limits in seconds.
constexpr double kSecondsShort = 10;
constexpr double kSecondsSigma2 = 60;
constexpr double kSecondsFig12 = 60;
constexpr double kSecondsFig11 = 30 * 60;
constexpr double kSecondsSurvey = 6 * 60 * 60;

constexpr int kRandomComplexes = 200;
constexpr int kMaxComplexSize = 12;

const std::string kData = HFGRAPH_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t closed_rank(const std::string& path) { return *compute(parse_file(path)).rank; }

std::string profile_string(const DModule& m) {
  std::ostringstream os;
  os << m.num_generators() << " gens {";
  bool first = true;
  for (const auto& [occ, n] : summand_profile(m)) {
    os << (first ? "" : " ");
    for (int o : occ) os << o;
    os << ":" << n;
    first = false;
  }
  os << "} " << m.arrows.size() << " arrows";
  return os.str();
}

// The gluing outputs the other criteria use.
std::vector<std::pair<std::string, DModule>> pairing_outputs() {
  std::vector<std::pair<std::string, DModule>> out;
  const DModule id = identity_dd();
  for (int b = 0; b < 3; ++b) out.push_back({"I*pants" + std::to_string(b), glue(id, 1, pants(), b)});
  for (int b = 0; b < 2; ++b) out.push_back({"I*gluer" + std::to_string(b), glue(id, 1, self_gluer(), b)});
  for (int k : {1, 2}) out.push_back({"twist" + std::to_string(k) + "+*-", glue(twist(k, 1), 1, twist(k, -1), 0)});
  out.push_back({"flip*flip", glue(fiber_flip(1), 1, fiber_flip(2), 0)});
  for (int m : {1, 2}) {
    DModule half = glue(solid_torus(m), 0, self_gluer(), 0);
    out.push_back({"fig9 half " + std::to_string(m), half});
    out.push_back({"fig9 closed " + std::to_string(m), glue(half, 0, solid_torus(m), 0)});
  }
  DModule a = glue(mirror_pants(), 1, self_gluer(), 0);
  out.push_back({"genus step 1", a});
  DModule b = self_glue(a, 2, 1);
  out.push_back({"genus step 2", b});
  out.push_back({"genus step 3", glue(pants(), 2, b, 0)});
  out.push_back({"bordered graph", compute(parse("vertex a genus=0 euler=-2\nvertex b genus=1 euler=3 boundary=1\nedge a b\n")).module});
  return out;
}

void criterion1(Outcome& o) {
  int checked = 0;
  for (const std::string& name : BlockCatalog::names()) {
    o.require(!validate(BlockCatalog::instance().get(name)).has_value(), name);
    ++checked;
  }
  for (const DModule& s : summand_split(pants())) {
    o.require(!validate(s).has_value(), "pants summand");
    ++checked;
  }
  o.require(summand_split(pants()).size() == 7, "pants has 7 summands");
  for (const DModule& t : testing::all_tori()) {
    o.require(!validate(t).has_value(), "solid torus");
    ++checked;
  }
  for (const auto& [name, m] : pairing_outputs()) {
    o.require(!validate(m).has_value(), name);
    ++checked;
  }
  o.detail << checked << " modules valid";
}

void criterion2(Outcome& o) {
  const DModule id = identity_dd();
  auto check = [&](const std::string& name, const DModule& block, int b) {
    DModule want = reduce(block);
    for (int side : {0, 1}) {
      DModule got = reduce(glue(id, side, block, b));
      bool ok = isomorphic(got, want);
      o.detail << " " << name << b << "/" << side << ":" << (ok ? "iso" : profile_string(got) + " vs " + profile_string(want));
      o.require(ok, name + std::to_string(b));
    }
  };
  for (int b = 0; b < 3; ++b) check("pants", pants(), b);
  for (int b = 0; b < 2; ++b) check("self_gluer", self_gluer(), b);
}

void criterion3(Outcome& o) {
  const DModule id = identity_dd();
  auto check = [&](const std::string& name, const DModule& m) {
    DModule r = reduce(m);
    bool ok = isomorphic(r, id);
    o.detail << " " << name << ":" << (ok ? "iso" : profile_string(r) + " vs " + profile_string(id));
    o.require(ok, name);
  };
  for (int k : {1, 2}) check("twist" + std::to_string(k), glue(twist(k, 1), 1, twist(k, -1), 0));
  check("flips", glue(fiber_flip(1), 1, fiber_flip(2), 0));
}

void criterion4(Outcome& o) {
  for (int m : {1, 2}) {
    DModule closed = glue(glue(solid_torus(m), 0, self_gluer(), 0), 0, solid_torus(m), 0);
    std::size_t r = homology_rank(closed);
    o.detail << " solid_torus(" << m << ") caps: rank " << r;
    o.require(r == 2, "rank 2");
  }
}

void criterion5(Outcome& o) {
  DModule gp = genus_piece();
  o.detail << "genus piece " << profile_string(gp) << ", expected 16 gens";
  o.require(gp.num_generators() == 16, "16 generators");
}

void criterion6(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t r = closed_rank(kData + "/sigma2_x_s1.graph");
  double s = seconds_since(t0);
  o.detail << "rank " << r << " in " << s << "s";
  o.require(r == 24, "rank 24");
  o.require(s < kSecondsSigma2, "time");
}

void criterion7(Outcome& o) {
  struct Case {
    const char* file;
    std::size_t rank;
    int h1;
  };
  for (const Case& c : {Case{"fig12_left", 17600, 17600}, Case{"fig12_middle", 230, 228}, Case{"fig12_right", 72, 20}}) {
    auto t0 = std::chrono::steady_clock::now();
    PlumbingGraph g = parse_file(kData + "/" + c.file + ".graph");
    std::size_t r = *compute(g).rank;
    double s = seconds_since(t0);
    H1Order h = h1_order(g);
    o.detail << " " << c.file << ": rank " << r << " h1 " << h.value << " (" << s << "s)";
    o.require(r == c.rank, std::string(c.file) + " rank");
    o.require(h.kind == H1Order::Finite && h.value == c.h1, std::string(c.file) + " h1");
    o.require(s < kSecondsFig12, std::string(c.file) + " time");
  }
}

void criterion8(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t r = closed_rank(kData + "/fig11.graph");
  double s = seconds_since(t0);
  o.detail << "rank " << r << " in " << s << "s";
  o.require(r == 213312, "rank 213312");
  o.require(s < kSecondsFig11, "time");
}

void criterion9(Outcome& o) {
  for (int n = 1; n <= 8; ++n) {
    PlumbingGraph g = parse_file(kData + "/lens_" + std::to_string(n) + ".graph");
    std::size_t r = *compute(g).rank;
    H1Order h = h1_order(g);
    o.detail << " " << n << ":" << r;
    o.require(r == static_cast<std::size_t>(n), "lens " + std::to_string(n));
    o.require(h.kind == H1Order::Finite && h.value == n, "h1 " + std::to_string(n));
  }
}

void criterion10(Outcome& o) {
  std::mt19937_64 rng(0x5eed);
  int agree = 0;
  for (int t = 0; t < kRandomComplexes; ++t) {
    auto rc = testing::random_complex(rng, kMaxComplexSize);
    bool ok = !validate(rc.module).has_value() && homology_rank(rc.module) == testing::oracle_rank(rc.module) &&
              testing::oracle_rank(rc.module) == rc.expected_rank;
    agree += ok;
  }
  o.detail << agree << "/" << kRandomComplexes << " complexes agree";
  o.require(agree == kRandomComplexes, "all agree");
}

void criterion11(Outcome& o) {
  int exact = 0, coset = 0;
  auto eq = [&](const GradingElem& got, const GradingElem& want, const std::string& what) {
    o.require(got == want, what + " = " + g_string(want) + ", got " + g_string(got));
    ++exact;
  };
  {
    DModule m = summand_split(pants())[0];
    std::vector<std::size_t> tree = {testing::arrow_index(m, "x", "w"), testing::arrow_index(m, "z", "w"),
                                     testing::arrow_index(m, "v", "z"), testing::arrow_index(m, "y", "x")};
    PropagationResult r = propagate(m, *m.find("x"), tree);
    auto gr = [&](const char* g) { return r.gradings[*m.find(g)]; };
    eq(gr("w"), G(-1, {-1, -1, 0, 0, 0, 0}), "gr(w)");
    eq(gr("z"), G(0, {-1, -1, 0, 0, 1, 1}), "gr(z)");
    eq(gr("v"), G(0, {-1, -1, 0, 0, 0, 2}), "gr(v)");
    eq(gr("y"), G(0, {0, 0, 1, 1, 1, 1}), "gr(y)");
    const GradingElem x0 = GradingElem::identity(3);
    GradingElem p1 = arrow_step(testing::arrow_between(m, "v", "x"), 3, gr("v"), true);
    GradingElem y = arrow_step(testing::arrow_between(m, "y", "x"), 3, x0, false);
    GradingElem p2 = arrow_step(testing::arrow_between(m, "x", "y"), 3, y, false);
    Label l;
    l.set(0, Chord::R1);
    l.set(1, Chord::R3);
    l.set(2, Chord::R1);
    GradingElem w = arrow_step(testing::arrow_between(m, "w", "y", l), 3, y, false);
    GradingElem p3 = arrow_step(testing::arrow_between(m, "x", "w"), 3, w, false);
    // The displayed first element has its tau pair printed on sigma; the
    // displayed factors multiply to the value checked here.
    eq(p1, G(-2, {0, -2, 0, 0, 0, 2}), "pants P1 (as multiplied out)");
    eq(p2, G(0, {0, 0, 2, 0, 0, 2}), "pants P2");
    eq(p3, G(-1, {2, 0, 0, 2, 2, 0}), "pants P3");
    o.require(same_subgroup(r.periodic, {p1, p2, p3}), "pants P(x) subgroup");
  }
  {
    DModule m = self_gluer();
    std::vector<std::size_t> tree;
    for (auto [s, d] : std::vector<std::pair<const char*, const char*>>{
             {"ebl", "afl"}, {"afl", "edl"}, {"edl", "ahl"}, {"ebl", "ebk"}, {"ebk", "ebj"}, {"ebj", "ebi"},
             {"afl", "afk"}, {"afk", "afj"}, {"afj", "afi"}, {"edl", "edk"}, {"edk", "edj"}, {"edj", "edi"},
             {"ahl", "ahk"}, {"ahk", "ahj"}, {"ahj", "ahi"}, {"ebl", "enc"}, {"amg", "ahi"}, {"ang", "enc"},
             {"amg", "emc"}})
      tree.push_back(testing::arrow_index(m, s, d));
    PropagationResult r = propagate(m, *m.find("ebl"), tree);
    auto gr = [&](const char* g) { return r.gradings[*m.find(g)]; };
    const std::vector<std::pair<const char*, GradingElem>> table = {
        {"afl", G(-1, {1, -1, 0, 0})},   {"edl", G(-1, {0, -2, 0, 0})},   {"ahl", G(-1, {-1, -1, 0, 0})},
        {"ebk", G(-1, {0, 0, 1, -1})},   {"ebj", G(-1, {0, 0, 0, -2})},   {"ebi", G(-1, {0, 0, -1, -1})},
        {"afk", G(-2, {1, -1, 1, -1})},  {"afj", G(-2, {1, -1, 0, -2})},  {"afi", G(-2, {1, -1, -1, -1})},
        {"edk", G(-2, {0, -2, 1, -1})},  {"edj", G(-2, {0, -2, 0, -2})},  {"edi", G(-2, {0, -2, -1, -1})},
        {"ahk", G(-2, {-1, -1, 1, -1})}, {"ahj", G(-2, {-1, -1, 0, -2})}, {"ahi", G(-2, {-1, -1, -1, -1})},
        {"enc", G(-2, {0, 0, 0, 0})},    {"amg", G(0, {-1, -1, -1, -1})}, {"ang", G(-2, {1, 1, 1, 1})}};
    for (const auto& [name, want] : table) eq(gr(name), want, std::string("gr(") + name + ")");
    // emc is displayed through an arrow drawn against its idempotents; the
    // value along the real arrow amg -> emc is in the displayed coset.
    o.require(same_coset(G(0, {0, 0, 0, 0}), gr("emc"), r.periodic), "gr(emc) coset");
    ++coset;
    const GradingElem e0 = GradingElem::identity(2);
    auto step = [&](const char* s, const char* d, const GradingElem& g, bool along) {
      return arrow_step(testing::arrow_between(m, s, d), 2, g, along);
    };
    GradingElem l1 = step("ebl", "enc", step("edl", "enc", step("afl", "edl", step("ebl", "afl", e0, true), true), true), false);
    GradingElem l2 = step("ebl", "enc", step("ebj", "enc", step("ebk", "ebj", step("ebl", "ebk", e0, true), true), true), false);
    eq(l1, G(0, {0, -2, -2, 0}), "gluer P1");
    eq(l2, G(0, {-2, 0, 0, -2}), "gluer P2");
    o.require(same_subgroup(r.periodic, {G(0, {0, -2, -2, 0}), G(0, {-2, 0, 0, -2})}), "gluer P(ebl) subgroup");
  }
  o.detail << exact << " exact values, " << coset << " coset value, 2 subgroups";
}

void criterion12(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  struct Center {
    int e, l1, l2;
  };
  std::vector<Center> centers;
  for (int e = -5; e <= 5; ++e)
    for (int l1 = -5; l1 <= -2; ++l1)
      for (int l2 = l1; l2 <= -2; ++l2) centers.push_back({e, l1, l2});
  long graphs = 0, lspaces = 0;
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i; j < centers.size(); ++j) {
      PlumbingGraph g;
      for (auto [id, e] : std::vector<std::pair<const char*, int>>{{"a", centers[i].e},
                                                                  {"b", centers[j].e},
                                                                  {"c", centers[i].l1},
                                                                  {"d", centers[i].l2},
                                                                  {"e", centers[j].l1},
                                                                  {"f", centers[j].l2}})
        g.vertices.push_back({id, 0, e, 0});
      g.edges = {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 4, 1}, {1, 5, 1}};
      ++graphs;
      H1Order h = h1_order(g);
      if (h.kind == H1Order::Finite && h.value == *compute(g).rank) ++lspaces;
    }
  double s = seconds_since(t0);
  o.detail << graphs << " graphs, " << lspaces << " with rank = |H1| (expected 6106 and 5643) in " << s << "s";
  o.require(graphs == 6106, "6106 graphs");
  o.require(lspaces == 5643, "5643 L-spaces");
  o.require(s < kSecondsSurvey, "time");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Outcome&)>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,  criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [1-12 ...]\n";
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (int n = 1; n <= 11; ++n) selected.push_back(n);

  bool all = true;
  for (int n : selected) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[n - 1](o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double s = seconds_since(t0);
    if (n != 6 && n != 7 && n != 8 && n != 12) o.require(s < kSecondsShort, "time");
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str() << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
