#include "hfgraph/dstruct.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hfgraph {

std::uint32_t occupancy_key(SlotWord w, int nb) {
  std::uint32_t k = 0;
  for (int b = 0; b < nb; ++b) k |= static_cast<std::uint32_t>(slot_occupancy(w.get(b))) << (2 * b);
  return k;
}

std::optional<Label> label_mul(Label a, Label b, int nb) {
  Label r;
  for (int i = 0; i < nb; ++i) {
    Chord c = chord_mul(a.get(i), b.get(i));
    if (c == Chord::Zero) return std::nullopt;
    r.set(i, c);
  }
  return r;
}

std::string DModule::name(std::size_t g) const {
  if (g < names.size() && !names[g].empty()) return names[g];
  return "g" + std::to_string(g);
}

std::optional<std::size_t> DModule::find(const std::string& n) const {
  for (std::size_t g = 0; g < slots.size(); ++g)
    if (name(g) == n) return g;
  return std::nullopt;
}

std::vector<int> DModule::occupancy(std::size_t g) const {
  std::vector<int> occ(boundaries.size());
  for (int b = 0; b < num_boundaries(); ++b) occ[b] = slot_occupancy(slots[g].get(b));
  return occ;
}

void DModule::normalize() {
  std::sort(arrows.begin(), arrows.end());
  std::vector<Arrow> out;
  out.reserve(arrows.size());
  for (std::size_t i = 0; i < arrows.size();) {
    std::size_t j = i;
    while (j < arrows.size() && arrows[j] == arrows[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(arrows[i]);
    i = j;
  }
  arrows = std::move(out);
}

std::optional<AlgElem> DModule::component(const Arrow& a, int b) const {
  Slot s = slots[a.src].get(b);
  if (!slot_middle(s)) return std::nullopt;
  Chord c = a.label.get(b);
  if (c == Chord::None) return idem_of_slot(s);
  return chord_elem(c);
}

ModuleBuilder::ModuleBuilder(std::vector<Boundary> boundaries) {
  if (boundaries.size() > static_cast<std::size_t>(kMaxBoundaries))
    throw std::invalid_argument("too many boundaries");
  m_.boundaries = std::move(boundaries);
}

std::size_t ModuleBuilder::gen(const std::string& name, const std::vector<int>& occ,
                               const std::vector<AlgElem>& idem) {
  if (occ.size() != m_.boundaries.size()) throw std::invalid_argument("occupancy size mismatch");
  SlotWord w;
  for (std::size_t b = 0; b < occ.size(); ++b) {
    Slot s = occ[b] == 0 ? Slot::Empty : occ[b] == 2 ? Slot::Full : slot_of_idem(idem.at(b));
    w.set(static_cast<int>(b), s);
  }
  m_.slots.push_back(w);
  m_.names.push_back(name);
  return m_.slots.size() - 1;
}

void ModuleBuilder::arrow(const std::string& src, const std::string& dst,
                          const std::vector<std::pair<int, AlgElem>>& comps) {
  auto s = m_.find(src), d = m_.find(dst);
  if (!s || !d) throw std::invalid_argument("unknown generator in arrow " + src + " -> " + dst);
  Label l;
  for (auto [b, e] : comps) {
    if (auto c = elem_chord(e)) l.set(b, *c);
  }
  m_.arrows.push_back({static_cast<std::uint32_t>(*s), static_cast<std::uint32_t>(*d), l});
}

DModule ModuleBuilder::build() const {
  DModule m = m_;
  m.normalize();
  return m;
}

std::optional<Violation> validate(const DModule& m) {
  const int nb = m.num_boundaries();
  for (std::size_t g = 0; g < m.slots.size(); ++g) {
    int sum = 0;
    for (int b = 0; b < nb; ++b) sum += slot_occupancy(m.slots[g].get(b));
    if (sum != nb)
      return Violation{Violation::Occupancy, static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(g),
                       {}, "occupancy of " + m.name(g) + " does not sum to the boundary count"};
  }
  for (std::size_t i = 1; i < m.arrows.size(); ++i) {
    if (!(m.arrows[i - 1] < m.arrows[i]))
      return Violation{Violation::SquareNonzero, m.arrows[i].src, m.arrows[i].dst, m.arrows[i].label,
                       "arrow list not normalized"};
  }
  for (const Arrow& a : m.arrows) {
    for (int b = 0; b < nb; ++b) {
      Slot s = m.slots[a.src].get(b), t = m.slots[a.dst].get(b);
      Chord c = a.label.get(b);
      auto fail = [&](Violation::Kind k, const std::string& why) {
        return Violation{k, a.src, a.dst, a.label,
                         m.name(a.src) + " -> " + m.name(a.dst) + " : " + label_string(m, a.label) +
                             ": " + why + " at boundary " + m.boundaries[b].name};
      };
      if (slot_occupancy(s) != slot_occupancy(t)) return fail(Violation::CrossSummand, "occupancy changes");
      if (!slot_middle(s)) {
        if (c != Chord::None) return fail(Violation::ExtremalChord, "chord on extremal boundary");
        continue;
      }
      if (c == Chord::Zero) return fail(Violation::Idempotent, "zero component");
      if (c == Chord::None) {
        if (s != t) return fail(Violation::Idempotent, "identity component changes idempotent");
      } else if (slot_of_idem(chord_left_idem(c)) != s || slot_of_idem(chord_right_idem(c)) != t) {
        return fail(Violation::Idempotent, "idempotents incompatible with chord");
      }
    }
  }
  // d^2 = 0: length-two paths grouped by (start, end, product label).
  std::vector<std::size_t> first(m.slots.size() + 1, 0);
  for (const Arrow& a : m.arrows) ++first[a.src + 1];
  for (std::size_t g = 0; g < m.slots.size(); ++g) first[g + 1] += first[g];
  std::vector<std::pair<std::uint32_t, std::uint64_t>> ends;
  for (std::size_t x = 0; x < m.slots.size(); ++x) {
    ends.clear();
    for (std::size_t i = first[x]; i < first[x + 1]; ++i) {
      const Arrow& a = m.arrows[i];
      for (std::size_t j = first[a.dst]; j < first[a.dst + 1]; ++j) {
        const Arrow& b = m.arrows[j];
        if (auto p = label_mul(a.label, b.label, nb)) ends.emplace_back(b.dst, p->bits);
      }
    }
    std::sort(ends.begin(), ends.end());
    for (std::size_t i = 0; i < ends.size();) {
      std::size_t j = i;
      while (j < ends.size() && ends[j] == ends[i]) ++j;
      if ((j - i) % 2 == 1) {
        Label l{ends[i].second};
        return Violation{Violation::SquareNonzero, static_cast<std::uint32_t>(x), ends[i].first, l,
                         "d^2 nonzero from " + m.name(x) + " to " + m.name(ends[i].first) + " with label " +
                             label_string(m, l)};
      }
      i = j;
    }
  }
  return std::nullopt;
}

namespace {

DModule sub_module(const DModule& m, const std::vector<std::uint32_t>& gens) {
  DModule out;
  out.boundaries = m.boundaries;
  std::vector<std::int64_t> map(m.slots.size(), -1);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    map[gens[i]] = static_cast<std::int64_t>(i);
    out.slots.push_back(m.slots[gens[i]]);
    out.names.push_back(m.name(gens[i]));
  }
  for (const Arrow& a : m.arrows) {
    if (map[a.src] >= 0 && map[a.dst] >= 0)
      out.arrows.push_back({static_cast<std::uint32_t>(map[a.src]), static_cast<std::uint32_t>(map[a.dst]), a.label});
  }
  out.normalize();
  return out;
}

}  // namespace

std::vector<DModule> summand_split(const DModule& m) {
  std::vector<std::uint32_t> keys;
  std::vector<std::vector<std::uint32_t>> groups;
  for (std::size_t g = 0; g < m.slots.size(); ++g) {
    std::uint32_t k = occupancy_key(m.slots[g], m.num_boundaries());
    auto it = std::find(keys.begin(), keys.end(), k);
    if (it == keys.end()) {
      keys.push_back(k);
      groups.emplace_back();
      it = keys.end() - 1;
    }
    groups[it - keys.begin()].push_back(static_cast<std::uint32_t>(g));
  }
  std::vector<DModule> out;
  for (auto& g : groups) out.push_back(sub_module(m, g));
  return out;
}

DModule direct_sum(const std::vector<DModule>& parts) {
  DModule out;
  if (parts.empty()) return out;
  out.boundaries = parts.front().boundaries;
  for (const DModule& p : parts) {
    std::uint32_t off = static_cast<std::uint32_t>(out.slots.size());
    for (std::size_t g = 0; g < p.slots.size(); ++g) {
      out.slots.push_back(p.slots[g]);
      out.names.push_back(p.name(g));
    }
    for (const Arrow& a : p.arrows) out.arrows.push_back({a.src + off, a.dst + off, a.label});
  }
  out.normalize();
  return out;
}

std::vector<std::pair<std::vector<int>, std::size_t>> summand_profile(const DModule& m) {
  std::map<std::vector<int>, std::size_t> counts;
  for (std::size_t g = 0; g < m.slots.size(); ++g) ++counts[m.occupancy(g)];
  return {counts.begin(), counts.end()};
}

DModule mirror(const DModule& m) {
  DModule out;
  out.boundaries = m.boundaries;
  for (Boundary& b : out.boundaries)
    if (b.fiber) b.fiber = 3 - b.fiber;
  out.names = m.names;
  const int nb = m.num_boundaries();
  for (SlotWord w : m.slots) {
    SlotWord r;
    for (int b = 0; b < nb; ++b) r.set(b, static_cast<Slot>(3 - static_cast<int>(w.get(b))));
    out.slots.push_back(r);
  }
  for (const Arrow& a : m.arrows) {
    Label l;
    for (int b = 0; b < nb; ++b) l.set(b, chord_mirror(a.label.get(b)));
    out.arrows.push_back({a.dst, a.src, l});
  }
  out.normalize();
  return out;
}

DModule permute_boundaries(const DModule& m, const std::vector<int>& order) {
  const int nb = m.num_boundaries();
  if (static_cast<int>(order.size()) != nb) throw std::invalid_argument("permutation size mismatch");
  DModule out;
  out.names = m.names;
  for (int i = 0; i < nb; ++i) out.boundaries.push_back(m.boundaries.at(order[i]));
  for (SlotWord w : m.slots) {
    SlotWord r;
    for (int i = 0; i < nb; ++i) r.set(i, w.get(order[i]));
    out.slots.push_back(r);
  }
  for (const Arrow& a : m.arrows) {
    Label l;
    for (int i = 0; i < nb; ++i) l.set(i, a.label.get(order[i]));
    out.arrows.push_back({a.src, a.dst, l});
  }
  out.normalize();
  return out;
}

std::variant<DModule, Inconsistent, Underdetermined> derive_idempotents(const RawModule& raw) {
  const int nb = static_cast<int>(raw.boundaries.size());
  const std::size_t n = raw.names.size();
  auto index = [&](const std::string& s) -> std::size_t {
    for (std::size_t i = 0; i < n; ++i)
      if (raw.names[i] == s) return i;
    throw std::invalid_argument("unknown generator " + s);
  };
  // idem[g][b]: -1 unknown, 0 or 1 once forced.
  std::vector<std::vector<int>> idem(n, std::vector<int>(nb, -1));
  struct Edge {
    std::size_t other;
    int b;
    int forced_here;   // forced value at this end, or -1
    int forced_other;  // forced value at the other end, or -1
    std::size_t arrow;
  };
  std::vector<std::vector<Edge>> adj(n);
  std::vector<std::pair<std::size_t, std::size_t>> ends(raw.arrows.size());
  for (std::size_t ai = 0; ai < raw.arrows.size(); ++ai) {
    const auto& a = raw.arrows[ai];
    std::size_t s = index(a.src), d = index(a.dst);
    ends[ai] = {s, d};
    for (int b = 0; b < nb; ++b) {
      if (raw.occupancy[s][b] != 1 || raw.occupancy[d][b] != 1) continue;
      std::optional<AlgElem> e;
      for (auto [bb, x] : a.comps)
        if (bb == b) e = x;
      if (e && !is_idempotent(*e)) {
        int li = left_idem(*e) == AlgElem::Iota0 ? 0 : 1;
        int ri = right_idem(*e) == AlgElem::Iota0 ? 0 : 1;
        adj[s].push_back({d, b, li, ri, ai});
        adj[d].push_back({s, b, ri, li, ai});
      } else {
        adj[s].push_back({d, b, -1, -1, ai});
        adj[d].push_back({s, b, -1, -1, ai});
      }
    }
  }
  // Seed with forced values, then propagate equalities along identity components.
  std::deque<std::pair<std::size_t, int>> queue;
  auto assign = [&](std::size_t g, int b, int v, std::size_t ai) -> std::optional<Inconsistent> {
    if (idem[g][b] == -1) {
      idem[g][b] = v;
      queue.emplace_back(g, b);
    } else if (idem[g][b] != v) {
      const auto& a = raw.arrows[ai];
      return Inconsistent{ai, "idempotent conflict at " + raw.names[g] + " boundary " + raw.boundaries[b].name +
                                  " via arrow " + a.src + " -> " + a.dst};
    }
    return std::nullopt;
  };
  for (std::size_t g = 0; g < n; ++g)
    for (const Edge& e : adj[g])
      if (e.forced_here >= 0)
        if (auto bad = assign(g, e.b, e.forced_here, e.arrow)) return *bad;
  while (!queue.empty()) {
    auto [g, b] = queue.front();
    queue.pop_front();
    for (const Edge& e : adj[g]) {
      if (e.b != b || e.forced_here >= 0) continue;
      if (auto bad = assign(e.other, b, idem[g][b], e.arrow)) return *bad;
    }
  }
  Underdetermined under;
  for (std::size_t g = 0; g < n; ++g) {
    for (int b = 0; b < nb; ++b)
      if (raw.occupancy[g][b] == 1 && idem[g][b] == -1) {
        under.generators.push_back(raw.names[g]);
        break;
      }
  }
  if (!under.generators.empty()) return under;
  ModuleBuilder builder(raw.boundaries);
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<AlgElem> id(nb, AlgElem::Iota0);
    for (int b = 0; b < nb; ++b)
      if (idem[g][b] == 1) id[b] = AlgElem::Iota1;
    builder.gen(raw.names[g], raw.occupancy[g], id);
  }
  for (const auto& a : raw.arrows) builder.arrow(a.src, a.dst, a.comps);
  return builder.build();
}

std::string label_string(const DModule& m, Label l) {
  std::string s;
  for (int b = 0; b < m.num_boundaries(); ++b) {
    if (b) s += '*';
    Chord c = l.get(b);
    if (c == Chord::None) {
      s += '1';
      continue;
    }
    std::string n = m.boundaries[b].name;
    if (!n.empty() && std::isdigit(static_cast<unsigned char>(n.back()))) n += '.';
    std::string_view e = elem_name(chord_elem(c));
    s += n;
    s += e.substr(3);
  }
  return s;
}

void dump(std::ostream& os, const DModule& m) {
  const int nb = m.num_boundaries();
  os << "boundaries";
  for (const Boundary& b : m.boundaries) os << ' ' << b.name << "(fiber=" << b.fiber << ')';
  os << '\n';
  for (std::size_t g = 0; g < m.slots.size(); ++g) {
    os << m.name(g) << " :";
    for (int b = 0; b < nb; ++b) {
      Slot s = m.slots[g].get(b);
      os << ' ' << (s == Slot::Empty ? "empty" : s == Slot::Full ? "full" : elem_name(idem_of_slot(s)));
    }
    os << '\n';
  }
  for (const Arrow& a : m.arrows) os << m.name(a.src) << " -> " << m.name(a.dst) << " : " << label_string(m, a.label) << '\n';
}

std::string dump_string(const DModule& m) {
  std::ostringstream os;
  dump(os, m);
  return os.str();
}

namespace {

using Colors = std::vector<std::uint64_t>;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

Colors refine(const DModule& m) {
  const std::size_t n = m.slots.size();
  Colors c(n);
  for (std::size_t g = 0; g < n; ++g) c[g] = mix(1, m.slots[g].bits);
  std::size_t classes = 0;
  for (int round = 0; round < 64; ++round) {
    std::vector<std::vector<std::uint64_t>> sig(n);
    for (const Arrow& a : m.arrows) {
      sig[a.src].push_back(mix(mix(2, a.label.bits), c[a.dst]));
      sig[a.dst].push_back(mix(mix(3, a.label.bits), c[a.src]));
    }
    Colors next(n);
    for (std::size_t g = 0; g < n; ++g) {
      std::sort(sig[g].begin(), sig[g].end());
      std::uint64_t h = c[g];
      for (auto v : sig[g]) h = mix(h, v);
      next[g] = h;
    }
    Colors tmp = next;
    std::sort(tmp.begin(), tmp.end());
    std::size_t k = std::unique(tmp.begin(), tmp.end()) - tmp.begin();
    c = std::move(next);
    if (k == classes) break;
    classes = k;
  }
  return c;
}

}  // namespace

bool isomorphic(const DModule& a, const DModule& b) {
  if (a.num_boundaries() != b.num_boundaries()) return false;
  if (a.slots.size() != b.slots.size() || a.arrows.size() != b.arrows.size()) return false;
  const std::size_t n = a.slots.size();
  Colors ca = refine(a), cb = refine(b);
  {
    Colors sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint64_t>> ea, eb;
  for (const Arrow& x : a.arrows) ea[{x.src, x.dst}].push_back(x.label.bits);
  for (const Arrow& x : b.arrows) eb[{x.src, x.dst}].push_back(x.label.bits);
  for (auto& [k, v] : ea) std::sort(v.begin(), v.end());
  for (auto& [k, v] : eb) std::sort(v.begin(), v.end());
  auto labels = [](const auto& e, std::uint32_t s, std::uint32_t d) -> std::vector<std::uint64_t> {
    auto it = e.find({s, d});
    return it == e.end() ? std::vector<std::uint64_t>{} : it->second;
  };
  std::vector<std::int64_t> fwd(n, -1), back(n, -1);
  // Order nodes of a by rarity of their color, to shrink the search.
  std::map<std::uint64_t, int> freq;
  for (auto c : ca) ++freq[c];
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return freq[ca[x]] < freq[ca[y]]; });
  std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
    if (k == n) return true;
    std::uint32_t u = order[k];
    for (std::uint32_t v = 0; v < n; ++v) {
      if (back[v] != -1 || cb[v] != ca[u]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        std::uint32_t w = order[j];
        auto w2 = static_cast<std::uint32_t>(fwd[w]);
        ok = labels(ea, u, w) == labels(eb, v, w2) && labels(ea, w, u) == labels(eb, w2, v);
      }
      if (ok) ok = labels(ea, u, u) == labels(eb, v, v);
      if (!ok) continue;
      fwd[u] = v;
      back[v] = u;
      if (go(k + 1)) return true;
      fwd[u] = -1;
      back[v] = -1;
    }
    return false;
  };
  return go(0);
}

}  // namespace hfgraph
