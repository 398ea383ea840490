#include "hfgraph/gradings.hpp"

#include <cstdlib>
#include <numeric>
#include <queue>

namespace hfgraph {

bool GradingElem::well_formed() const {
  if (a2.size() != b2.size()) return false;
  for (std::size_t i = 0; i < a2.size(); ++i)
    if ((a2[i] + b2[i]) % 2 != 0) return false;
  return true;
}

GradingElem g_mul(const GradingElem& g, const GradingElem& h) {
  if (g.a2.size() != h.a2.size()) throw SignatureMismatch("grading elements over different boundary counts");
  GradingElem r = g;
  int det4 = 0;  // four times the correction
  for (std::size_t i = 0; i < g.a2.size(); ++i) {
    det4 += g.a2[i] * h.b2[i] - h.a2[i] * g.b2[i];
    r.a2[i] += h.a2[i];
    r.b2[i] += h.b2[i];
  }
  r.maslov2 = g.maslov2 + h.maslov2 + det4 / 2;
  return r;
}

GradingElem g_inv(const GradingElem& g) {
  GradingElem r = g;
  r.maslov2 = -g.maslov2;
  for (auto& x : r.a2) x = -x;
  for (auto& x : r.b2) x = -x;
  return r;
}

GradingElem g_pow(const GradingElem& g, long long k) {
  // Powers of one element commute, so the correction vanishes.
  GradingElem r = g;
  r.maslov2 = static_cast<int>(g.maslov2 * k);
  for (auto& x : r.a2) x = static_cast<int>(x * k);
  for (auto& x : r.b2) x = static_cast<int>(x * k);
  return r;
}

GradingElem gr_elem(int boundary, int n, AlgElem a) {
  if (is_idempotent(a)) throw std::invalid_argument("idempotents have no grading");
  if (boundary < 0 || boundary >= n) throw std::invalid_argument("boundary out of range");
  GradingElem g = GradingElem::identity(n);
  g.maslov2 = -1;
  int& x = g.a2[boundary];
  int& y = g.b2[boundary];
  switch (a) {
    case AlgElem::Rho1: x = 1, y = -1; break;
    case AlgElem::Rho2: x = 1, y = 1; break;
    case AlgElem::Rho3: x = -1, y = 1; break;
    case AlgElem::Rho12: x = 2, y = 0; break;
    case AlgElem::Rho23: x = 0, y = 2; break;
    case AlgElem::Rho123: x = 1, y = 1; break;
    default: break;
  }
  return g;
}

GradingElem gr_label(Label l, int n) {
  GradingElem g = GradingElem::identity(n);
  for (int b = 0; b < n; ++b)
    if (Chord c = l.get(b); c != Chord::None) g = g_mul(g, gr_elem(b, n, chord_elem(c)));
  return g;
}

namespace {

std::string half(int doubled) {
  if (doubled % 2 == 0) return std::to_string(doubled / 2);
  return std::to_string(doubled) + "/2";
}

}  // namespace

std::string g_string(const GradingElem& g) {
  std::string s = "(" + half(g.maslov2);
  for (std::size_t i = 0; i < g.a2.size(); ++i) s += "; " + half(g.a2[i]) + "," + half(g.b2[i]);
  return s + ")";
}

GradingElem arrow_step(const Arrow& a, int n, const GradingElem& from, bool along) {
  if (along) return g_mul(g_mul(GradingElem::lambda(n, -1), g_inv(gr_label(a.label, n))), from);
  return g_mul(g_mul(gr_label(a.label, n), GradingElem::lambda(n)), from);
}

PropagationResult propagate(const DModule& m, std::size_t base, const std::vector<std::size_t>& prefer) {
  const std::size_t ng = m.num_generators();
  const int n = m.num_boundaries();
  if (base >= ng) throw std::invalid_argument("base generator out of range");
  std::vector<std::vector<std::size_t>> incident(ng);
  for (std::size_t i = 0; i < m.arrows.size(); ++i) {
    incident[m.arrows[i].src].push_back(i);
    if (m.arrows[i].dst != m.arrows[i].src) incident[m.arrows[i].dst].push_back(i);
  }
  auto forward = [&](const Arrow& a, const GradingElem& gx) { return arrow_step(a, n, gx, true); };
  auto backward = [&](const Arrow& a, const GradingElem& gy) { return arrow_step(a, n, gy, false); };

  PropagationResult r;
  r.gradings.assign(ng, GradingElem::identity(n));
  std::vector<bool> seen(ng, false), tree(m.arrows.size(), false);
  std::vector<bool> preferred(m.arrows.size(), prefer.empty());
  for (std::size_t i : prefer) {
    if (i >= m.arrows.size()) throw std::invalid_argument("preferred arrow out of range");
    preferred[i] = true;
  }
  seen[base] = true;
  // First pass over preferred arrows only, second over everything.
  for (int pass = 0; pass < 2; ++pass) {
    std::queue<std::size_t> q;
    for (std::size_t g = 0; g < ng; ++g)
      if (seen[g]) q.push(g);
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop();
      for (std::size_t i : incident[x]) {
        if (pass == 0 && !preferred[i]) continue;
        const Arrow& a = m.arrows[i];
        std::size_t other = a.src == x ? a.dst : a.src;
        if (seen[other]) continue;
        seen[other] = true;
        tree[i] = true;
        r.gradings[other] = a.src == x ? forward(a, r.gradings[x]) : backward(a, r.gradings[x]);
        q.push(other);
      }
    }
  }
  for (std::size_t g = 0; g < ng; ++g)
    if (!seen[g]) throw GradingDisconnected("generator " + m.name(g) + " is not connected to the base");
  for (std::size_t i = 0; i < m.arrows.size(); ++i) {
    if (tree[i]) continue;
    const Arrow& a = m.arrows[i];
    r.periodic.push_back(g_mul(g_inv(r.gradings[a.dst]), forward(a, r.gradings[a.src])));
  }
  return r;
}

namespace {

std::vector<int> coords(const GradingElem& g) {
  std::vector<int> v;
  for (std::size_t i = 0; i < g.a2.size(); ++i) {
    v.push_back(g.a2[i]);
    v.push_back(g.b2[i]);
  }
  return v;
}

bool zero_vector(const GradingElem& g) {
  for (int x : coords(g))
    if (x != 0) return false;
  return true;
}

// Integer row reduction of group elements by right multiplication, which
// keeps the generated subgroup. Returns pivot rows in column order, plus the
// gcd of Maslov values the subgroup has over the zero vector.
struct Echelon {
  std::vector<GradingElem> rows;
  std::vector<int> pivot_col;
  std::vector<GradingElem> leftover;  // rows reduced to a zero vector
  int central = 0;
};

Echelon echelon(std::vector<GradingElem> gens) {
  Echelon e;
  if (gens.empty()) return e;
  const std::size_t cols = coords(gens[0]).size();
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < gens.size(); ++c) {
    while (true) {
      std::size_t best = gens.size();
      for (std::size_t r = top; r < gens.size(); ++r) {
        int v = coords(gens[r])[c];
        if (v != 0 && (best == gens.size() || std::abs(v) < std::abs(coords(gens[best])[c]))) best = r;
      }
      if (best == gens.size()) break;
      std::swap(gens[top], gens[best]);
      const int p = coords(gens[top])[c];
      bool clean = true;
      for (std::size_t r = top + 1; r < gens.size(); ++r) {
        int v = coords(gens[r])[c];
        if (v == 0) continue;
        gens[r] = g_mul(gens[r], g_pow(gens[top], -(v / p)));
        if (coords(gens[r])[c] != 0) clean = false;
      }
      if (clean) {
        e.rows.push_back(gens[top]);
        e.pivot_col.push_back(static_cast<int>(c));
        ++top;
        break;
      }
    }
  }
  int d = 0;
  for (std::size_t r = top; r < gens.size(); ++r) {
    d = std::gcd(d, std::abs(gens[r].maslov2));
    if (gens[r].maslov2 != 0) e.leftover.push_back(gens[r]);
  }
  for (std::size_t i = 0; i < e.rows.size(); ++i)
    for (std::size_t j = i + 1; j < e.rows.size(); ++j) {
      GradingElem comm = g_mul(g_mul(e.rows[i], e.rows[j]), g_inv(g_mul(e.rows[j], e.rows[i])));
      d = std::gcd(d, std::abs(comm.maslov2));
    }
  e.central = d;
  return e;
}

}  // namespace

bool in_subgroup(const GradingElem& g, const std::vector<GradingElem>& gens) {
  Echelon e = echelon(gens);
  GradingElem x = g;
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const int c = e.pivot_col[i];
    const int v = coords(x)[c], p = coords(e.rows[i])[c];
    if (v % p != 0) return false;
    x = g_mul(x, g_pow(e.rows[i], -(v / p)));
  }
  if (!zero_vector(x)) return false;
  return e.central == 0 ? x.maslov2 == 0 : x.maslov2 % e.central == 0;
}

bool same_coset(const GradingElem& g, const GradingElem& h, const std::vector<GradingElem>& gens) {
  return in_subgroup(g_mul(g_inv(g), h), gens);
}

bool same_subgroup(const std::vector<GradingElem>& a, const std::vector<GradingElem>& b) {
  for (const auto& g : a)
    if (!in_subgroup(g, b)) return false;
  for (const auto& g : b)
    if (!in_subgroup(g, a)) return false;
  return true;
}

std::vector<GradingElem> independent_generators(const std::vector<GradingElem>& cycles) {
  Echelon e = echelon(cycles);
  std::vector<GradingElem> out = e.rows;
  if (!same_subgroup(out, cycles)) out.insert(out.end(), e.leftover.begin(), e.leftover.end());
  return out;
}

}  // namespace hfgraph
