#include "hfgraph/reduce.hpp"

#include <algorithm>
#include <queue>
#include <random>

namespace hfgraph {

namespace {

struct Half {
  std::uint32_t other;
  std::uint64_t label;
};

// Mutable adjacency form of a module, used only while cancelling.
class WorkGraph {
 public:
  explicit WorkGraph(const DModule& m) : nb_(m.num_boundaries()), out_(m.num_generators()), in_(m.num_generators()), alive_(m.num_generators(), 1) {
    for (const Arrow& a : m.arrows) {
      out_[a.src].push_back({a.dst, a.label.bits});
      in_[a.dst].push_back({a.src, a.label.bits});
    }
  }

  bool has_identity(std::uint32_t i, std::uint32_t j) const {
    if (!alive_[i] || !alive_[j]) return false;
    for (const Half& h : out_[i])
      if (h.other == j && h.label == 0) return true;
    return false;
  }

  std::uint64_t cost(std::uint32_t i, std::uint32_t j) const {
    return static_cast<std::uint64_t>(in_[j].size()) * out_[i].size();
  }

  template <class OnIdentity>
  void cancel(std::uint32_t i, std::uint32_t j, OnIdentity&& on_identity) {
    std::vector<Half> ins, outs;
    for (const Half& h : in_[j])
      if (h.other != i && h.other != j) ins.push_back(h);
    for (const Half& h : out_[i])
      if (h.other != i && h.other != j) outs.push_back(h);
    detach(i);
    detach(j);
    alive_[i] = alive_[j] = 0;
    for (const Half& a : ins) {
      for (const Half& b : outs) {
        auto p = label_mul(Label{a.label}, Label{b.label}, nb_);
        if (!p) continue;
        if (toggle(a.other, b.other, p->bits) && p->bits == 0) on_identity(a.other, b.other);
      }
    }
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> identity_arrows() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> r;
    for (std::uint32_t u = 0; u < out_.size(); ++u)
      if (alive_[u])
        for (const Half& h : out_[u])
          if (h.label == 0) r.emplace_back(u, h.other);
    return r;
  }

  DModule result(const DModule& m) const {
    DModule out;
    out.boundaries = m.boundaries;
    std::vector<std::uint32_t> map(out_.size(), 0);
    bool named = !m.names.empty();
    for (std::uint32_t u = 0; u < out_.size(); ++u) {
      if (!alive_[u]) continue;
      map[u] = static_cast<std::uint32_t>(out.slots.size());
      out.slots.push_back(m.slots[u]);
      if (named) out.names.push_back(m.name(u));
    }
    for (std::uint32_t u = 0; u < out_.size(); ++u) {
      if (!alive_[u]) continue;
      for (const Half& h : out_[u]) out.arrows.push_back({map[u], map[h.other], Label{h.label}});
    }
    out.normalize();
    return out;
  }

 private:
  static void erase(std::vector<Half>& v, std::uint32_t other, std::uint64_t label) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].other == other && v[k].label == label) {
        v[k] = v.back();
        v.pop_back();
        return;
      }
    }
  }

  void detach(std::uint32_t u) {
    for (const Half& h : out_[u])
      if (h.other != u) erase(in_[h.other], u, h.label);
    for (const Half& h : in_[u])
      if (h.other != u) erase(out_[h.other], u, h.label);
    out_[u].clear();
    out_[u].shrink_to_fit();
    in_[u].clear();
    in_[u].shrink_to_fit();
  }

  // Returns true if the arrow is now present.
  bool toggle(std::uint32_t u, std::uint32_t v, std::uint64_t label) {
    auto& o = out_[u];
    for (std::size_t k = 0; k < o.size(); ++k) {
      if (o[k].other == v && o[k].label == label) {
        o[k] = o.back();
        o.pop_back();
        erase(in_[v], u, label);
        return false;
      }
    }
    o.push_back({v, label});
    in_[v].push_back({u, label});
    return true;
  }

  int nb_;
  std::vector<std::vector<Half>> out_, in_;
  std::vector<std::uint8_t> alive_;
};

}  // namespace

DModule cancel(const DModule& m, const Arrow& e) {
  if (!e.label.is_identity()) throw NotCancelable("arrow label is not the identity");
  if (e.src == e.dst) throw NotCancelable("identity self-loop");
  if (!std::binary_search(m.arrows.begin(), m.arrows.end(), e)) throw NotCancelable("arrow not in module");
  WorkGraph g(m);
  g.cancel(e.src, e.dst, [](auto, auto) {});
  return g.result(m);
}

DModule reduce(const DModule& m, ReductionTrace* trace) {
  WorkGraph g(m);
  using Entry = std::tuple<std::uint64_t, std::uint32_t, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (auto [i, j] : g.identity_arrows()) heap.emplace(g.cost(i, j), i, j);
  if (trace) {
    trace->canceled.clear();
    trace->generators_before = m.num_generators();
  }
  while (!heap.empty()) {
    auto [c, i, j] = heap.top();
    heap.pop();
    if (!g.has_identity(i, j)) continue;
    std::uint64_t now = g.cost(i, j);
    if (now > c) {
      heap.emplace(now, i, j);
      continue;
    }
    g.cancel(i, j, [&](std::uint32_t k, std::uint32_t l) { heap.emplace(g.cost(k, l), k, l); });
    if (trace) trace->canceled.emplace_back(i, j);
  }
  DModule r = g.result(m);
  if (trace) trace->generators_after = r.num_generators();
  return r;
}

DModule reduce_random_order(const DModule& m, std::uint64_t seed) {
  WorkGraph g(m);
  std::mt19937_64 rng(seed);
  for (;;) {
    auto ids = g.identity_arrows();
    if (ids.empty()) break;
    auto [i, j] = ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
    g.cancel(i, j, [](auto, auto) {});
  }
  return g.result(m);
}

std::size_t homology_rank(const DModule& c) {
  if (c.num_boundaries() != 0) throw std::invalid_argument("homology_rank needs a closed complex");
  return reduce(c).num_generators();
}

std::size_t homology_rank_elimination(const DModule& c) {
  if (c.num_boundaries() != 0) throw std::invalid_argument("homology_rank needs a closed complex");
  const std::size_t n = c.num_generators();
  // Column x holds the sorted support of d(x); standard pivot reduction.
  std::vector<std::vector<std::uint32_t>> col(n);
  for (const Arrow& a : c.arrows) col[a.src].push_back(a.dst);
  std::vector<std::int64_t> owner(n, -1);
  std::size_t rank = 0;
  std::vector<std::uint32_t> tmp;
  for (std::size_t x = 0; x < n; ++x) {
    auto& v = col[x];
    std::sort(v.begin(), v.end());
    while (!v.empty()) {
      std::uint32_t low = v.back();
      if (owner[low] < 0) {
        owner[low] = static_cast<std::int64_t>(x);
        ++rank;
        break;
      }
      const auto& w = col[owner[low]];
      tmp.clear();
      std::set_symmetric_difference(v.begin(), v.end(), w.begin(), w.end(), std::back_inserter(tmp));
      v.swap(tmp);
    }
  }
  return n - 2 * rank;
}

}  // namespace hfgraph
