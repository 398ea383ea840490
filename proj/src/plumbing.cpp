#include "hfgraph/plumbing.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "hfgraph/blocks.hpp"
#include "hfgraph/pairing.hpp"
#include "hfgraph/reduce.hpp"

namespace hfgraph {

using boost::multiprecision::cpp_int;

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line(line), column(column) {}

std::vector<std::size_t> PlumbingGraph::degree() const {
  std::vector<std::size_t> d(vertices.size(), 0);
  for (const auto& e : edges) {
    ++d[e.v];
    ++d[e.w];
  }
  return d;
}

int PlumbingGraph::total_boundary() const {
  int s = 0;
  for (const auto& v : vertices) s += v.boundary;
  return s;
}

std::size_t PlumbingGraph::first_betti() const { return edges.size() + 1 - vertices.size(); }

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

int parse_int(const Token& t, std::string_view value, int line) {
  int x = 0;
  const char* b = value.data();
  const char* e = b + value.size();
  if (!value.empty() && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || p != e || b == e)
    throw ParseError(line, t.column, "expected an integer in '" + std::string(t.text) + "'");
  return x;
}

}  // namespace

PlumbingGraph parse(std::string_view text) {
  PlumbingGraph g;
  std::map<std::string, std::size_t, std::less<>> index;
  int lineno = 0;
  while (!text.empty()) {
    ++lineno;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split(line);
    if (toks.empty()) continue;
    if (toks[0].text == "vertex") {
      if (toks.size() < 2) throw ParseError(lineno, toks[0].column, "vertex needs an id");
      PlumbingVertex v;
      v.id = std::string(toks[1].text);
      if (index.count(v.id)) throw ParseError(lineno, toks[1].column, "duplicate vertex '" + v.id + "'");
      bool has_genus = false, has_euler = false;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        auto eq = toks[i].text.find('=');
        if (eq == std::string_view::npos) throw ParseError(lineno, toks[i].column, "expected key=value");
        auto key = toks[i].text.substr(0, eq), value = toks[i].text.substr(eq + 1);
        if (key == "genus") {
          v.genus = parse_int(toks[i], value, lineno);
          has_genus = true;
          if (v.genus < 0) throw NegativeGenus(lineno, toks[i].column, "negative genus on vertex '" + v.id + "'");
        } else if (key == "euler") {
          v.euler = parse_int(toks[i], value, lineno);
          has_euler = true;
        } else if (key == "boundary") {
          v.boundary = parse_int(toks[i], value, lineno);
          if (v.boundary < 0) throw ParseError(lineno, toks[i].column, "negative boundary count");
        } else {
          throw ParseError(lineno, toks[i].column, "unknown key '" + std::string(key) + "'");
        }
      }
      if (!has_genus || !has_euler) throw ParseError(lineno, toks[0].column, "vertex needs genus= and euler=");
      index.emplace(v.id, g.vertices.size());
      g.vertices.push_back(std::move(v));
    } else if (toks[0].text == "edge") {
      if (toks.size() < 3) throw ParseError(lineno, toks[0].column, "edge needs two vertex ids");
      PlumbingEdge e;
      for (int k = 0; k < 2; ++k) {
        auto it = index.find(toks[1 + k].text);
        if (it == index.end())
          throw ParseError(lineno, toks[1 + k].column, "undeclared vertex '" + std::string(toks[1 + k].text) + "'");
        (k == 0 ? e.v : e.w) = it->second;
      }
      for (std::size_t i = 3; i < toks.size(); ++i) {
        if (toks[i].text == "sign=+") e.sign = 1;
        else if (toks[i].text == "sign=-") e.sign = -1;
        else throw ParseError(lineno, toks[i].column, "expected sign=+ or sign=-");
      }
      g.edges.push_back(e);
    } else {
      throw ParseError(lineno, toks[0].column, "unknown directive '" + std::string(toks[0].text) + "'");
    }
  }
  if (g.vertices.empty()) throw ParseError(lineno, 1, "no vertices");
  std::vector<std::size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e.v)] = find(e.w);
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    if (find(i) != find(0)) throw Disconnected(lineno, 1, "vertex '" + g.vertices[i].id + "' is not connected to '" + g.vertices[0].id + "'");
  return g;
}

PlumbingGraph parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string format(const PlumbingGraph& g) {
  std::ostringstream os;
  for (const auto& v : g.vertices) {
    os << "vertex " << v.id << " genus=" << v.genus << " euler=" << v.euler;
    if (v.boundary) os << " boundary=" << v.boundary;
    os << "\n";
  }
  for (const auto& e : g.edges)
    os << "edge " << g.vertices[e.v].id << " " << g.vertices[e.w].id << " sign=" << (e.sign > 0 ? '+' : '-') << "\n";
  return os.str();
}

H1Order h1_order(const PlumbingGraph& g) {
  H1Order r;
  const std::size_t n = g.vertices.size();
  // b1 >= 2 * total genus + b1 of the graph, and boundary tori add more.
  bool free_part = g.edges.size() + 1 != n || g.total_boundary() > 0;
  for (const auto& v : g.vertices) free_part = free_part || v.genus != 0;
  if (free_part) {
    r.kind = H1Order::Infinite;
    return r;
  }
  // Fraction-free elimination keeps every entry an exact minor.
  std::vector<std::vector<cpp_int>> a(n, std::vector<cpp_int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = g.vertices[i].euler;
  for (const auto& e : g.edges) {
    a[e.v][e.w] += 1;
    a[e.w][e.v] += 1;
  }
  cpp_int prev = 1;
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) {
        r.kind = H1Order::Infinite;
        return r;
      }
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  cpp_int det = a[n - 1][n - 1];
  if (negate) det = -det;
  if (det == 0) {
    r.kind = H1Order::Infinite;
    return r;
  }
  r.kind = H1Order::Finite;
  r.value = abs(det);
  return r;
}

namespace {

// Fiber of each boundary of trivial_bundle(genus, k), mirroring its
// construction: pants chains extend at the last fiber-1 boundary.
std::vector<int> trivial_fibers(int genus, int k) {
  std::vector<int> f;
  if (genus == 0) {
    if (k == 1) return {2};
    if (k == 2) return {2, 1};
    f = {2, 1, 2};
  } else {
    f = {2, 1};
    if (k == 1) return {2};
  }
  while (static_cast<int>(f.size()) < k) {
    auto it = std::find(f.rbegin(), f.rend(), 1);
    f.erase(std::next(it).base());
    f.push_back(1);
    f.push_back(2);
  }
  return f;
}

int last_fiber_one(const DModule& m) {
  for (int b = m.num_boundaries() - 1; b >= 0; --b)
    if (m.boundaries[b].fiber == 1) return b;
  throw std::logic_error("no boundary with fiber alpha_1");
}

// Ports of a vertex: edge ends in edge order (a loop contributes two), then
// extra boundaries.
struct Port {
  std::size_t vertex;
  std::ptrdiff_t edge = -1;  // -1 for an extra boundary
  int end = 0;
};

std::vector<std::vector<Port>> vertex_ports(const PlumbingGraph& g) {
  std::vector<std::vector<Port>> ports(g.vertices.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    ports[g.edges[i].v].push_back({g.edges[i].v, static_cast<std::ptrdiff_t>(i), 0});
    ports[g.edges[i].w].push_back({g.edges[i].w, static_cast<std::ptrdiff_t>(i), 1});
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    for (int k = 0; k < g.vertices[v].boundary; ++k) ports[v].push_back({v, -1, k});
  return ports;
}

std::size_t estimate_block(const PlumbingVertex& v, std::size_t ports) {
  std::size_t k = std::max<std::size_t>(ports, 1);
  std::size_t s = k == 1 ? 1 : (k == 2 ? 4 : 17);
  for (std::size_t i = 3; i < k; ++i) s *= 6;
  for (int i = 0; i < v.genus; ++i) s *= 16;
  return s + 2 * static_cast<std::size_t>(std::abs(v.euler));
}

// Greedy gluing order shared by plan() and compute(): a pending edge whose
// ends already share a component goes first, otherwise the tree edge
// joining the two smallest components.
class Scheduler {
 public:
  Scheduler(const PlumbingGraph& g, std::vector<std::size_t> sizes)
      : g_(g), comp_(g.vertices.size()), size_(std::move(sizes)), done_(g.edges.size(), false) {
    std::iota(comp_.begin(), comp_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (comp_[x] != x) x = comp_[x] = comp_[comp_[x]];
    return x;
  }
  // Returns the next edge and whether it joins two components.
  std::optional<std::pair<std::size_t, bool>> next() {
    std::optional<std::size_t> best;
    unsigned __int128 best_cost = 0;
    for (std::size_t i = 0; i < g_.edges.size(); ++i) {
      if (done_[i]) continue;
      std::size_t a = find(g_.edges[i].v), b = find(g_.edges[i].w);
      if (a == b) return std::pair{i, false};
      unsigned __int128 cost = static_cast<unsigned __int128>(size_[a]) * size_[b];
      if (!best || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (!best) return std::nullopt;
    return std::pair{*best, true};
  }
  void finish(std::size_t edge, std::size_t new_size) {
    done_[edge] = true;
    std::size_t a = find(g_.edges[edge].v), b = find(g_.edges[edge].w);
    comp_[b] = a;
    size_[a] = new_size;
  }
  std::size_t size_of(std::size_t v) { return size_[find(v)]; }

 private:
  const PlumbingGraph& g_;
  std::vector<std::size_t> comp_, size_;
  std::vector<bool> done_;
};

int required_fiber(int sign) { return sign > 0 ? 1 : 2; }

}  // namespace

DModule trivial_bundle(int genus, int k) {
  if (genus < 0 || k < 1) throw std::invalid_argument("trivial bundle needs genus >= 0 and a boundary");
  DModule m;
  if (genus == 0) {
    if (k == 1) return solid_torus(1);
    if (k == 2) return identity_dd();
    m = pants();
  } else {
    m = genus_piece();
    for (int i = 1; i < genus; ++i) m = glue(m, 1, genus_piece(), 0);
    if (k == 1) return glue(m, 1, solid_torus(1), 0);
  }
  while (m.num_boundaries() < k) m = glue(m, last_fiber_one(m), pants(), 0);
  return m;
}

std::string step_string(const PlumbingGraph& g, const Step& s) {
  std::ostringstream os;
  auto edge = [&](std::size_t e) {
    return g.vertices[g.edges[e].v].id + "-" + g.vertices[g.edges[e].w].id;
  };
  switch (s.kind) {
    case Step::BuildVertexBlock: os << "build " << g.vertices[s.vertex].id; break;
    case Step::Twist: os << "twist " << g.vertices[s.vertex].id << " arc=" << s.arc << " sign=" << (s.sign > 0 ? '+' : '-'); break;
    case Step::Cap: os << "cap " << g.vertices[s.vertex].id; break;
    case Step::Flip: os << "flip " << edge(s.edge) << " end=" << s.end << " " << s.arc << "->" << 3 - s.arc; break;
    case Step::GlueEdge: os << "glue " << edge(s.edge) << " sign=" << (s.sign > 0 ? '+' : '-'); break;
    case Step::SelfGlueEdge: os << "self-glue " << edge(s.edge) << " sign=" << (s.sign > 0 ? '+' : '-'); break;
  }
  return os.str();
}

namespace {

// Vertex-local steps: block, twists at the first port, flips of edge ports to
// the fiber their edge sign asks for, and the cap of a boundaryless vertex.
void vertex_steps(const PlumbingGraph& g, std::size_t v, const std::vector<Port>& ports, int twist_site,
                  std::vector<Step>& out) {
  const auto& vx = g.vertices[v];
  out.push_back({Step::BuildVertexBlock, v});
  const int k = std::max<int>(static_cast<int>(ports.size()), 1);
  const std::vector<int> fib = trivial_fibers(vx.genus, k);
  const int site = std::clamp(twist_site, 0, k - 1);
  for (int i = 0; i < std::abs(vx.euler); ++i) {
    Step s{Step::Twist, v};
    s.arc = 3 - fib[site];
    s.sign = vx.euler > 0 ? 1 : -1;
    out.push_back(s);
  }
  if (ports.empty()) out.push_back({Step::Cap, v});
  for (std::size_t p = 0; p < ports.size(); ++p) {
    if (ports[p].edge < 0) continue;
    const int want = required_fiber(g.edges[ports[p].edge].sign);
    if (fib[p] == want) continue;
    Step s{Step::Flip, v, static_cast<std::size_t>(ports[p].edge)};
    s.end = ports[p].end;
    s.arc = fib[p];
    out.push_back(s);
  }
}

}  // namespace

AssemblyPlan plan(const PlumbingGraph& g, const std::vector<std::size_t>& vertex_sizes) {
  AssemblyPlan p;
  p.tree_edge.assign(g.edges.size(), false);
  const auto ports = vertex_ports(g);
  std::vector<std::size_t> sizes = vertex_sizes;
  if (sizes.size() != g.vertices.size()) {
    sizes.clear();
    for (std::size_t v = 0; v < g.vertices.size(); ++v) sizes.push_back(estimate_block(g.vertices[v], ports[v].size()));
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v) vertex_steps(g, v, ports[v], 0, p.steps);
  Scheduler sched(g, sizes);
  while (auto nx = sched.next()) {
    auto [e, joins] = *nx;
    const std::size_t a = sched.size_of(g.edges[e].v), b = sched.size_of(g.edges[e].w);
    p.tree_edge[e] = joins;
    p.steps.push_back({joins ? Step::GlueEdge : Step::SelfGlueEdge, 0, e, 0, 0, g.edges[e].sign});
    sched.finish(e, joins ? a * b : a);
  }
  return p;
}

ComputeResult compute(const PlumbingGraph& g, const ComputeOptions& opt) {
  ComputeResult res;
  res.executed.tree_edge.assign(g.edges.size(), false);
  const auto ports = vertex_ports(g);
  auto record = [&](const Step& s, const DModule& m) {
    if (m.num_generators() > opt.generator_cap)
      throw CapExceeded("module after '" + step_string(g, s) + "' has " + std::to_string(m.num_generators()) +
                        " generators, above the cap of " + std::to_string(opt.generator_cap));
    res.executed.steps.push_back(s);
    if (opt.trace) opt.trace(s, m.num_generators());
  };
  auto check_raw = [&](std::size_t a, std::size_t b, const Step& s) {
    // A pairing creates at most three generators per pair before reduction.
    if (static_cast<unsigned __int128>(a) * b > static_cast<unsigned __int128>(opt.generator_cap) * 8)
      throw CapExceeded("pairing for '" + step_string(g, s) + "' would exceed the generator cap");
  };

  // Each component is a module whose boundaries are labeled by ports.
  struct Part {
    DModule m;
    std::vector<Port> ports;
  };
  std::vector<Part> part(g.vertices.size());
  std::vector<std::size_t> owner(g.vertices.size());
  std::iota(owner.begin(), owner.end(), 0);

  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    std::vector<Step> steps;
    vertex_steps(g, v, ports[v], opt.twist_site, steps);
    const auto& vx = g.vertices[v];
    const int k = std::max<int>(static_cast<int>(ports[v].size()), 1);
    Part& P = part[v];
    P.ports = ports[v];
    for (const Step& s : steps) {
      switch (s.kind) {
        case Step::BuildVertexBlock:
          P.m = trivial_bundle(vx.genus, k);
          break;
        case Step::Twist: {
          // The twisted boundary comes back last; restore the port order.
          const int site = std::clamp(opt.twist_site, 0, k - 1);
          P.m = glue(P.m, site, twist(s.arc, s.sign), 0);
          std::vector<int> order(k);
          for (int b = 0; b < k; ++b) order[b] = b < site ? b : (b == site ? k - 1 : b - 1);
          P.m = permute_boundaries(P.m, order);
          break;
        }
        case Step::Cap:
          P.m = glue(P.m, 0, solid_torus(P.m.boundaries[0].fiber), 0);
          P.ports.clear();
          break;
        default:
          break;
      }
      if (s.kind != Step::Flip) record(s, P.m);
    }
    for (const Step& s : steps) {
      if (s.kind != Step::Flip) continue;
      int b = 0;
      while (!(P.ports[b].edge == static_cast<std::ptrdiff_t>(s.edge) && P.ports[b].end == s.end)) ++b;
      if (P.m.boundaries[b].fiber != s.arc) throw std::logic_error("fiber marker disagrees with the plan");
      P.m = glue(P.m, b, fiber_flip(s.arc), 0);
      Port moved = P.ports[b];
      P.ports.erase(P.ports.begin() + b);
      P.ports.push_back(moved);
      record(s, P.m);
    }
  }

  std::vector<std::size_t> sizes;
  for (const Part& P : part) sizes.push_back(P.m.num_generators());
  Scheduler sched(g, sizes);
  auto locate = [](const Part& P, std::size_t edge, int end) {
    for (std::size_t b = 0; b < P.ports.size(); ++b)
      if (P.ports[b].edge == static_cast<std::ptrdiff_t>(edge) && P.ports[b].end == end) return static_cast<int>(b);
    throw std::logic_error("edge end not found among open boundaries");
  };
  while (auto nx = sched.next()) {
    auto [e, joins] = *nx;
    const auto& ed = g.edges[e];
    const std::size_t ca = sched.find(ed.v), cb = sched.find(ed.w);
    Part& A = part[ca];
    const int ba = locate(A, e, 0);
    const int want = required_fiber(ed.sign);
    Step s{joins ? Step::GlueEdge : Step::SelfGlueEdge, 0, e, 0, 0, ed.sign};
    if (joins) {
      Part& B = part[cb];
      const int bb = locate(B, e, 1);
      if (A.m.boundaries[ba].fiber != want || B.m.boundaries[bb].fiber != want)
        throw std::logic_error("edge glued across boundaries with the wrong fibers");
      check_raw(A.m.num_generators(), B.m.num_generators(), s);
      A.m = glue(A.m, ba, B.m, bb);
      A.ports.erase(A.ports.begin() + ba);
      B.ports.erase(B.ports.begin() + bb);
      A.ports.insert(A.ports.end(), B.ports.begin(), B.ports.end());
      B = Part{};
      res.executed.tree_edge[e] = true;
    } else {
      const int bb = locate(A, e, 1);
      if (A.m.boundaries[ba].fiber != want || A.m.boundaries[bb].fiber != want)
        throw std::logic_error("edge glued across boundaries with the wrong fibers");
      check_raw(A.m.num_generators(), 20, s);
      // The self-gluer takes the place of the identity between the two ends.
      DModule m = glue(A.m, ba, self_gluer(), 0);
      const int last = m.num_boundaries() - 1;
      const int other = bb < ba ? bb : bb - 1;
      A.m = self_glue(m, last, other);
      std::vector<Port> rest;
      for (std::size_t b = 0; b < A.ports.size(); ++b)
        if (static_cast<int>(b) != ba && static_cast<int>(b) != bb) rest.push_back(A.ports[b]);
      A.ports = std::move(rest);
    }
    record(s, A.m);
    sched.finish(e, A.m.num_generators());
  }

  Part& whole = part[sched.find(0)];
  for (const Port& p : whole.ports) res.open.push_back({p.vertex, 0});
  for (std::size_t b = 0; b < res.open.size(); ++b) res.open[b].fiber = whole.m.boundaries[b].fiber;
  if (whole.m.num_boundaries() == 0) res.rank = homology_rank(whole.m);
  res.module = std::move(whole.m);
  return res;
}

}  // namespace hfgraph
