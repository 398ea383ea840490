#include "hfgraph/pairing.hpp"

#include <array>
#include <limits>
#include <map>
#include <tuple>

#include "hfgraph/reduce.hpp"

namespace hfgraph {

namespace {

AAIdentity build_identity() {
  AAIdentity t;
  t.a_max = 1;
  for (AlgElem b : kAllElems) t.gens.push_back({b, swap_idem(left_idem(b)), right_idem(b)});
  for (std::size_t p = 0; p < t.gens.size(); ++p) {
    const AlgElem b = t.gens[p].elem;
    for (AlgElem a : kReebElems) {
      if (left_idem(a) == t.gens[p].left)
        if (auto l = mul(mirror_elem(a), b)) t.ops.push_back({p, {a}, {}, static_cast<std::size_t>(*l)});
      if (left_idem(a) == t.gens[p].right)
        if (auto r = mul(b, a)) t.ops.push_back({p, {}, {a}, static_cast<std::size_t>(*r)});
    }
  }
  return t;
}

// One-input operations as lookup tables: act[p][chord] is the target
// generator or -1.
struct Actions {
  std::array<std::array<int, 16>, 8> left{}, right{};
  Actions() {
    for (auto& row : left) row.fill(-1);
    for (auto& row : right) row.fill(-1);
    for (const auto& op : aa_identity().ops) {
      if (op.left_seq.size() == 1) left[op.src][static_cast<int>(*elem_chord(op.left_seq[0]))] = static_cast<int>(op.dst);
      if (op.right_seq.size() == 1)
        right[op.src][static_cast<int>(*elem_chord(op.right_seq[0]))] = static_cast<int>(op.dst);
    }
  }
  // Generator reached from p by chords c1 on the left and c2 on the right.
  int apply(int p, Chord c1, Chord c2) const {
    if (c1 != Chord::None) p = left[p][static_cast<int>(c1)];
    if (p >= 0 && c2 != Chord::None) p = right[p][static_cast<int>(c2)];
    return p;
  }
};

const Actions& actions() {
  static const Actions a;
  return a;
}

// Identity generators pairing with idempotents (i, j) on the two sides.
const std::vector<int>& gens_for(AlgElem i, AlgElem j) {
  static const auto table = [] {
    std::array<std::array<std::vector<int>, 2>, 2> t;
    const auto& g = aa_identity().gens;
    for (std::size_t p = 0; p < g.size(); ++p)
      t[g[p].left == AlgElem::Iota1][g[p].right == AlgElem::Iota1].push_back(static_cast<int>(p));
    return t;
  }();
  return table[i == AlgElem::Iota1][j == AlgElem::Iota1];
}

// Drop boundary b from a packed word with `width` bits per boundary.
std::uint64_t drop(std::uint64_t bits, int b, int width) {
  std::uint64_t low_mask = (std::uint64_t{1} << (width * b)) - 1;
  return (bits & low_mask) | ((bits >> (width * (b + 1))) << (width * b));
}

std::uint64_t drop2(std::uint64_t bits, int b1, int b2, int width) {
  if (b1 < b2) std::swap(b1, b2);
  return drop(drop(bits, b1, width), b2, width);
}

constexpr std::size_t kNameLimit = 20000;

}  // namespace

const AAIdentity& aa_identity() {
  static const AAIdentity t = build_identity();
  return t;
}

std::optional<std::string> validate_aa(const AAIdentity& t) {
  using Seq = std::vector<AlgElem>;
  for (const auto& op : t.ops) {
    if (op.src >= t.gens.size() || op.dst >= t.gens.size()) return "operation refers to a missing generator";
    for (const Seq* s : {&op.left_seq, &op.right_seq})
      for (AlgElem c : *s)
        if (is_idempotent(c)) return "operation consumes an idempotent";
    if (op.left_seq.empty() && op.right_seq.empty()) return "operation with no inputs";
    if (static_cast<int>(op.left_seq.size() + op.right_seq.size()) > t.a_max) return "operation above a_max";
    // Both sequences must run from the source idempotent to the target one.
    const std::array<std::tuple<const Seq*, AlgElem, AlgElem>, 2> sides = {
        std::tuple{&op.left_seq, t.gens[op.src].left, t.gens[op.dst].left},
        std::tuple{&op.right_seq, t.gens[op.src].right, t.gens[op.dst].right}};
    for (const auto& [s, start, stop] : sides) {
      AlgElem at = start;
      for (AlgElem c : *s) {
        if (left_idem(c) != at) return "operation chords do not follow idempotents";
        at = right_idem(c);
      }
      if (at != stop) return "operation lands in the wrong generator";
    }
  }
  std::map<std::tuple<std::size_t, Seq, Seq>, std::vector<std::size_t>> table;
  for (const auto& op : t.ops) table[{op.src, op.left_seq, op.right_seq}].push_back(op.dst);
  auto apply = [&](std::size_t p, const Seq& l, const Seq& r) -> const std::vector<std::size_t>* {
    auto it = table.find({p, l, r});
    return it == table.end() ? nullptr : &it->second;
  };
  // Idempotent-consistent chord sequences from each idempotent.
  std::array<std::vector<Seq>, 2> seqs;
  for (int i = 0; i < 2; ++i) {
    AlgElem start = i == 0 ? AlgElem::Iota0 : AlgElem::Iota1;
    std::vector<Seq> layer{{}};
    seqs[i].push_back({});
    for (int len = 1; len <= t.a_max + 1; ++len) {
      std::vector<Seq> next;
      for (const Seq& s : layer) {
        AlgElem at = s.empty() ? start : right_idem(s.back());
        for (AlgElem c : kReebElems)
          if (left_idem(c) == at) {
            Seq x = s;
            x.push_back(c);
            next.push_back(std::move(x));
          }
      }
      seqs[i].insert(seqs[i].end(), next.begin(), next.end());
      layer = std::move(next);
    }
  }
  auto merged = [](const Seq& s, std::size_t k) -> std::optional<Seq> {
    auto prod = mul(s[k], s[k + 1]);
    if (!prod) return std::nullopt;
    Seq x(s.begin(), s.begin() + k);
    x.push_back(*prod);
    x.insert(x.end(), s.begin() + k + 2, s.end());
    return x;
  };
  for (std::size_t p = 0; p < t.gens.size(); ++p) {
    int li = t.gens[p].left == AlgElem::Iota0 ? 0 : 1, ri = t.gens[p].right == AlgElem::Iota0 ? 0 : 1;
    for (const Seq& l : seqs[li]) {
      for (const Seq& r : seqs[ri]) {
        const std::size_t total = l.size() + r.size();
        if (total < 2 || static_cast<int>(total) > t.a_max + 1) continue;
        std::map<std::size_t, int> count;
        for (std::size_t i = 0; i <= l.size(); ++i)
          for (std::size_t j = 0; j <= r.size(); ++j) {
            if (i + j == 0 || i + j == total) continue;
            const auto* first = apply(p, Seq(l.begin(), l.begin() + i), Seq(r.begin(), r.begin() + j));
            if (!first) continue;
            for (std::size_t q : *first)
              if (const auto* second = apply(q, Seq(l.begin() + i, l.end()), Seq(r.begin() + j, r.end())))
                for (std::size_t s : *second) ++count[s];
          }
        for (std::size_t k = 0; k + 1 < l.size(); ++k)
          if (auto x = merged(l, k))
            if (const auto* res = apply(p, *x, r))
              for (std::size_t s : *res) ++count[s];
        for (std::size_t k = 0; k + 1 < r.size(); ++k)
          if (auto x = merged(r, k))
            if (const auto* res = apply(p, l, *x))
              for (std::size_t s : *res) ++count[s];
        for (auto [s, c] : count) {
          if (c % 2 == 0) continue;
          std::string msg = "A-infinity relation fails at generator " + std::to_string(p) + " with inputs (";
          for (AlgElem e : l) msg += " " + std::string(elem_name(e));
          msg += " ;";
          for (AlgElem e : r) msg += " " + std::string(elem_name(e));
          msg += " )";
          return msg;
        }
      }
    }
  }
  return std::nullopt;
}

DModule glue_raw(const DModule& m, int b1, const DModule& n, int b2) {
  const int k1 = m.num_boundaries(), k2 = n.num_boundaries();
  if (b1 < 0 || b1 >= k1 || b2 < 0 || b2 >= k2) throw BoundaryTypeMismatch("boundary index out of range");
  if (k1 + k2 - 2 > kMaxBoundaries) throw BoundaryTypeMismatch("too many boundaries in glued module");
  const Actions& act = actions();
  const int bound = PairingTermBound::of(aa_identity(), k1 + k2 - 2).max_path_length;
  if (bound < 1) throw NonTermination("pairing path bound exceeded");

  // Generators of n grouped by their slot at b2. Generator x of m owns a
  // block: for a middle slot, every middle y of n contributes one generator
  // per matching identity generator (iota0 class first); for an extremal
  // slot, every y of the complementary occupancy contributes one.
  const std::size_t mg = m.num_generators(), ng = n.num_generators();
  std::array<std::vector<std::uint32_t>, 4> nclass;
  std::vector<std::uint32_t> nrank(ng);
  for (std::uint32_t y = 0; y < ng; ++y) {
    const int t = static_cast<int>(n.slots[y].get(b2));
    nrank[y] = static_cast<std::uint32_t>(nclass[t].size());
    nclass[t].push_back(y);
  }
  const std::size_t n0 = nclass[static_cast<int>(Slot::Idem0)].size();
  auto width = [](Slot s, Slot t) -> std::uint32_t {
    return static_cast<std::uint32_t>(gens_for(idem_of_slot(s), idem_of_slot(t)).size());
  };
  std::vector<std::uint64_t> offset(mg + 1, 0);
  for (std::uint32_t x = 0; x < mg; ++x) {
    const Slot s = m.slots[x].get(b1);
    std::uint64_t c;
    if (slot_middle(s))
      c = n0 * width(s, Slot::Idem0) + nclass[static_cast<int>(Slot::Idem1)].size() * width(s, Slot::Idem1);
    else
      c = nclass[3 - static_cast<int>(s)].size();
    offset[x + 1] = offset[x] + c;
  }
  const std::size_t total = offset[mg];
  if (total > std::numeric_limits<std::uint32_t>::max()) throw NonTermination("glued module too large to index");
  // Generators of the pair (x, y), or an empty range when they do not pair.
  auto block = [&](std::uint32_t x, std::uint32_t y) -> std::pair<std::uint32_t, std::uint32_t> {
    const Slot s = m.slots[x].get(b1), t = n.slots[y].get(b2);
    if (slot_middle(s) != slot_middle(t)) return {0, 0};
    if (!slot_middle(s)) {
      if (static_cast<int>(s) + static_cast<int>(t) != 3) return {0, 0};
      return {static_cast<std::uint32_t>(offset[x] + nrank[y]), 1};
    }
    std::uint64_t start = offset[x];
    if (t == Slot::Idem1) start += n0 * width(s, Slot::Idem0);
    const std::uint32_t w = width(s, t);
    return {static_cast<std::uint32_t>(start + std::uint64_t(nrank[y]) * w), w};
  };
  auto which = [&](std::uint32_t x, std::uint32_t y, std::uint32_t i) {
    const Slot s = m.slots[x].get(b1);
    return slot_middle(s) ? gens_for(idem_of_slot(s), idem_of_slot(n.slots[y].get(b2)))[i] : -1;
  };
  auto local = [&](std::uint32_t x, std::uint32_t y, int p) -> int {
    const Slot s = m.slots[x].get(b1);
    if (!slot_middle(s)) return p < 0 ? 0 : -1;
    const auto& g = gens_for(idem_of_slot(s), idem_of_slot(n.slots[y].get(b2)));
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] == p) return static_cast<int>(i);
    return -1;
  };
  // The n generators that can pair with x.
  auto partners = [&](std::uint32_t x, auto&& f) {
    const Slot s = m.slots[x].get(b1);
    if (slot_middle(s)) {
      for (std::uint32_t y : nclass[static_cast<int>(Slot::Idem0)]) f(y);
      for (std::uint32_t y : nclass[static_cast<int>(Slot::Idem1)]) f(y);
    } else {
      for (std::uint32_t y : nclass[3 - static_cast<int>(s)]) f(y);
    }
  };

  DModule out;
  for (int b = 0; b < k1; ++b)
    if (b != b1) out.boundaries.push_back(m.boundaries[b]);
  for (int b = 0; b < k2; ++b)
    if (b != b2) out.boundaries.push_back(n.boundaries[b]);
  out.slots.resize(total);
  const bool named = total <= kNameLimit;
  if (named) out.names.resize(total);
  for (std::uint32_t x = 0; x < mg; ++x)
    partners(x, [&](std::uint32_t y) {
      const auto [start, w] = block(x, y);
      for (std::uint32_t i = 0; i < w; ++i) {
        out.slots[start + i].bits = static_cast<std::uint32_t>(drop(m.slots[x].bits, b1, 2) |
                                                             (drop(n.slots[y].bits, b2, 2) << (2 * (k1 - 1))));
        if (named) {
          const int p = which(x, y, i);
          out.names[start + i] =
              p < 0 ? m.name(x) + "|" + n.name(y)
                    : m.name(x) + "|" + std::string(elem_name(aa_identity().gens[p].elem)) + "|" + n.name(y);
        }
      }
    });

  // An arrow of either factor moves the identity generator by its chord on
  // the glued boundary; an extremal pair only sees chord-free arrows.
  const int shift = 4 * (k1 - 1);
  for (const Arrow& a : m.arrows) {
    const Chord c = a.label.get(b1);
    const Label l{drop(a.label.bits, b1, 4)};
    partners(a.src, [&](std::uint32_t y) {
      const auto [start, w] = block(a.src, y);
      const auto dst = block(a.dst, y);
      for (std::uint32_t i = 0; i < w; ++i) {
        const int p = which(a.src, y, i);
        if (p < 0 && c != Chord::None) continue;
        const int q = p < 0 ? -1 : act.apply(p, c, Chord::None);
        if (p >= 0 && q < 0) continue;
        const int j = local(a.dst, y, q);
        if (j >= 0) out.arrows.push_back({start + i, dst.first + static_cast<std::uint32_t>(j), l});
      }
    });
  }
  // Arrows of n, visited through the m generators each source pairs with.
  std::array<std::vector<std::uint32_t>, 4> mclass;
  for (std::uint32_t x = 0; x < mg; ++x) mclass[static_cast<int>(m.slots[x].get(b1))].push_back(x);
  for (const Arrow& a : n.arrows) {
    const Chord c = a.label.get(b2);
    const Label l{drop(a.label.bits, b2, 4) << shift};
    const Slot t = n.slots[a.src].get(b2);
    auto visit = [&](std::uint32_t x) {
      const auto [start, w] = block(x, a.src);
      const auto dst = block(x, a.dst);
      for (std::uint32_t i = 0; i < w; ++i) {
        const int p = which(x, a.src, i);
        if (p < 0 && c != Chord::None) continue;
        const int q = p < 0 ? -1 : act.apply(p, Chord::None, c);
        if (p >= 0 && q < 0) continue;
        const int j = local(x, a.dst, q);
        if (j >= 0) out.arrows.push_back({start + i, dst.first + static_cast<std::uint32_t>(j), l});
      }
    };
    if (slot_middle(t)) {
      for (std::uint32_t x : mclass[static_cast<int>(Slot::Idem0)]) visit(x);
      for (std::uint32_t x : mclass[static_cast<int>(Slot::Idem1)]) visit(x);
    } else {
      for (std::uint32_t x : mclass[3 - static_cast<int>(t)]) visit(x);
    }
  }
  out.normalize();
  return out;
}

DModule self_glue_raw(const DModule& m, int b1, int b2) {
  const int k = m.num_boundaries();
  if (b1 == b2) throw SameBoundary("self_glue needs two distinct boundaries");
  if (b1 < 0 || b1 >= k || b2 < 0 || b2 >= k) throw BoundaryTypeMismatch("boundary index out of range");
  const Actions& act = actions();
  if (PairingTermBound::of(aa_identity(), k - 2).max_path_length < 1)
    throw NonTermination("self-pairing path bound exceeded");

  const std::size_t mg = m.num_generators();
  std::vector<std::uint32_t> first(mg + 1, 0);
  auto gens_of = [&](std::uint32_t x) -> const std::vector<int>* {
    const Slot s = m.slots[x].get(b1), t = m.slots[x].get(b2);
    if (slot_middle(s) && slot_middle(t)) return &gens_for(idem_of_slot(s), idem_of_slot(t));
    return nullptr;
  };
  for (std::uint32_t x = 0; x < mg; ++x) {
    const Slot s = m.slots[x].get(b1), t = m.slots[x].get(b2);
    std::size_t c = 0;
    if (const auto* g = gens_of(x))
      c = g->size();
    else if (!slot_middle(s) && !slot_middle(t) && slot_occupancy(s) + slot_occupancy(t) == 2)
      c = 1;
    first[x + 1] = first[x] + static_cast<std::uint32_t>(c);
  }
  auto local = [&](std::uint32_t x, int p) -> int {
    const auto* g = gens_of(x);
    if (!g) return p < 0 && first[x + 1] > first[x] ? 0 : -1;
    for (std::size_t i = 0; i < g->size(); ++i)
      if ((*g)[i] == p) return static_cast<int>(i);
    return -1;
  };

  DModule out;
  for (int b = 0; b < k; ++b)
    if (b != b1 && b != b2) out.boundaries.push_back(m.boundaries[b]);
  const std::size_t total = first.back();
  out.slots.resize(total);
  const bool named = total <= kNameLimit;
  if (named) out.names.resize(total);
  for (std::uint32_t x = 0; x < mg; ++x) {
    const auto* g = gens_of(x);
    for (std::uint32_t i = first[x]; i < first[x + 1]; ++i) {
      out.slots[i].bits = static_cast<std::uint32_t>(drop2(m.slots[x].bits, b1, b2, 2));
      if (named)
        out.names[i] = g ? m.name(x) + "|" + std::string(elem_name(aa_identity().gens[(*g)[i - first[x]]].elem))
                         : m.name(x);
    }
  }
  for (const Arrow& a : m.arrows) {
    const Chord c1 = a.label.get(b1), c2 = a.label.get(b2);
    const Label l{drop2(a.label.bits, b1, b2, 4)};
    const auto* g = gens_of(a.src);
    for (std::uint32_t i = first[a.src]; i < first[a.src + 1]; ++i) {
      int q = -1;
      if (g) {
        q = act.apply((*g)[i - first[a.src]], c1, c2);
        if (q < 0) continue;
      } else if (c1 != Chord::None || c2 != Chord::None) {
        continue;
      }
      const int j = local(a.dst, q);
      if (j >= 0) out.arrows.push_back({i, first[a.dst] + static_cast<std::uint32_t>(j), l});
    }
  }
  out.normalize();
  return out;
}

DModule glue(const DModule& m, int b1, const DModule& n, int b2) {
  return reduce(glue_raw(reduce(m), b1, reduce(n), b2));
}

DModule self_glue(const DModule& m, int b1, int b2) { return reduce(self_glue_raw(reduce(m), b1, b2)); }

}  // namespace hfgraph
