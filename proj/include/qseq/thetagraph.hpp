#pragma once

// The functional graph of theta(a) = a + 1/a on the projective line over
// GF(2^n), with theta(0) = theta(inf) = inf.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qseq/gf2poly.hpp"
#include "qseq/irreducibility.hpp"
#include "qseq/qtransform.hpp"

namespace qseq {

struct FieldElem {
  BitPoly residue;  // degree < n

  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

/// GF(2^n) as GF(2)[x] / (modulus).
class BinaryField {
 public:
  explicit BinaryField(BitPoly modulus) : modulus_(std::move(modulus)) {
    if (modulus_.is_zero() || modulus_.deg() == 0 || !is_irreducible(modulus_))
      throw Error(Errc::bad_modulus, to_hex(modulus_) + " is not an irreducible polynomial of positive degree");
    n_ = modulus_.deg();
  }

  /// Field built on the hex-smallest irreducible of degree n.
  static BinaryField with_default_modulus(std::size_t n) { return BinaryField(smallest_irreducible(n)); }

  std::size_t degree() const noexcept { return n_; }
  const BitPoly& modulus() const noexcept { return modulus_; }

  FieldElem zero() const { return {}; }
  FieldElem one() const { return {BitPoly::one()}; }
  /// Residue class of x; a root of the modulus.
  FieldElem generator() const { return {mod(BitPoly::x(), modulus_)}; }

  FieldElem element(std::uint64_t bits) const { return {mod(BitPoly(bits), modulus_)}; }
  FieldElem reduce(const BitPoly& p) const { return {mod(p, modulus_)}; }

  FieldElem add(const FieldElem& a, const FieldElem& b) const { return {a.residue + b.residue}; }
  FieldElem mul(const FieldElem& a, const FieldElem& b) const { return {mulmod(a.residue, b.residue, modulus_)}; }
  FieldElem square(const FieldElem& a) const { return {sqrmod(a.residue, modulus_)}; }

  /// Inverse by the extended Euclidean algorithm.
  FieldElem inverse(const FieldElem& a) const {
    if (a.residue.is_zero()) throw Error(Errc::division_by_zero, "inverse of 0");
    BitPoly r0 = modulus_, r1 = a.residue;
    BitPoly s0, s1 = BitPoly::one();
    while (r1.deg() > 0) {
      auto [q, r] = divrem(r0, r1);
      BitPoly s = s0 + qseq::mul(q, s1);
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    return {mod(s1, modulus_)};
  }

  /// Absolute trace a + a^2 + ... + a^(2^(n-1)).
  bool trace(const FieldElem& a) const {
    FieldElem power = a;
    BitPoly acc = a.residue;
    for (std::size_t i = 1; i < n_; ++i) {
      power = square(power);
      acc += power.residue;
    }
    if (acc.is_zero()) return false;
    if (acc == BitPoly::one()) return true;
    throw Error(Errc::internal_bound_violated, "trace left the prime field");
  }

  /// Horner evaluation of a polynomial with coefficients in GF(2).
  FieldElem evaluate(const BitPoly& f, const FieldElem& a) const {
    if (f.is_zero()) return zero();
    FieldElem acc = zero();
    for (std::size_t i = f.deg() + 1; i-- > 0;) {
      acc = mul(acc, a);
      if (f.coeff(i)) acc.residue += BitPoly::one();
    }
    return acc;
  }

 private:
  BitPoly modulus_;
  std::size_t n_ = 0;
};

inline bool trace(const FieldElem& a, const BinaryField& field) { return field.trace(a); }

/// A point of P^1(GF(2^n)): a field element or infinity.
class ProjPoint {
 public:
  static ProjPoint infinity() { return ProjPoint(); }
  ProjPoint(FieldElem a) : finite_(std::move(a)) {}  // NOLINT(google-explicit-constructor)

  bool is_infinity() const noexcept { return !finite_.has_value(); }
  const FieldElem& finite() const { return finite_.value(); }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  ProjPoint() = default;
  std::optional<FieldElem> finite_;
};

inline ProjPoint theta(const ProjPoint& p, const BinaryField& field) {
  if (p.is_infinity() || p.finite().residue.is_zero()) return ProjPoint::infinity();
  return field.add(p.finite(), field.inverse(p.finite()));
}

enum class SetMembership : char { A = 'A', B = 'B' };

inline constexpr std::size_t graph_degree_cap = 20;

/// Vertices are indexed by the residue bits of a finite point; index 2^n is infinity.
class ThetaGraph {
 public:
  using node_id = std::uint32_t;

  std::size_t n() const noexcept { return n_; }
  std::size_t l() const noexcept { return degree_profile(n_).l; }
  const BitPoly& modulus() const noexcept { return modulus_; }
  std::size_t node_count() const noexcept { return successor_.size(); }
  node_id infinity_node() const noexcept { return static_cast<node_id>(node_count() - 1); }
  node_id zero_node() const noexcept { return 0; }

  node_id successor(node_id v) const { return successor_[v]; }
  SetMembership membership(node_id v) const { return membership_[v]; }
  bool periodic(node_id v) const { return periodic_[v] != 0; }
  std::size_t level(node_id v) const { return level_[v]; }
  /// Cycle vertex whose tree contains v.
  node_id tree_root(node_id v) const { return root_[v]; }
  std::size_t component(node_id v) const { return component_[v]; }

  std::span<const node_id> preimages(node_id v) const {
    return std::span<const node_id>(pre_).subspan(pre_offset_[v], pre_offset_[v + 1] - pre_offset_[v]);
  }

  /// Non-periodic preimages: the children of v in its tree.
  std::vector<node_id> children(node_id v) const {
    std::vector<node_id> out;
    for (auto u : preimages(v))
      if (!periodic(u)) out.push_back(u);
    return out;
  }

  ProjPoint point(node_id v) const {
    if (v == infinity_node()) return ProjPoint::infinity();
    return FieldElem{BitPoly(v)};
  }

  std::string label(node_id v) const { return v == infinity_node() ? "inf" : to_hex(BitPoly(v)); }

 private:
  friend ThetaGraph build_graph(std::size_t n, std::optional<BitPoly> modulus);

  std::size_t n_ = 0;
  BitPoly modulus_;
  std::vector<node_id> successor_;
  std::vector<SetMembership> membership_;
  std::vector<char> periodic_;
  std::vector<std::uint32_t> level_;
  std::vector<node_id> root_;
  std::vector<std::size_t> component_;
  std::vector<std::size_t> pre_offset_;
  std::vector<node_id> pre_;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

inline ThetaGraph build_graph(std::size_t n, std::optional<BitPoly> modulus = std::nullopt) {
  if (n == 0 || n > graph_degree_cap)
    throw Error(Errc::degree_too_large, "graph degree must lie in 1.." + std::to_string(graph_degree_cap));
  if (modulus && (modulus->is_zero() || modulus->deg() != n))
    throw Error(Errc::bad_modulus, "modulus must have degree " + std::to_string(n));
  const BinaryField field = modulus ? BinaryField(*modulus) : BinaryField::with_default_modulus(n);

  using node_id = ThetaGraph::node_id;
  const std::size_t finite = std::size_t{1} << n;
  const node_id inf = static_cast<node_id>(finite);

  ThetaGraph g;
  g.n_ = n;
  g.modulus_ = field.modulus();
  g.successor_.assign(finite + 1, inf);
  g.membership_.assign(finite + 1, SetMembership::A);

  // The trace is linear, so Tr(a) is the parity of a & mask with mask bit i = Tr(x^i).
  std::uint64_t trace_mask = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (field.trace(field.element(std::uint64_t{1} << i))) trace_mask |= std::uint64_t{1} << i;
  auto tr = [trace_mask](std::uint64_t a) { return (std::popcount(a & trace_mask) & 1) != 0; };

  std::vector<node_id> inverse(finite, 0);
  for (std::uint64_t a = 1; a < finite; ++a) {
    if (inverse[a] != 0) continue;
    const auto inv = static_cast<node_id>(field.inverse(field.element(a)).residue.low_word());
    inverse[a] = inv;
    inverse[inv] = static_cast<node_id>(a);
  }
  for (std::uint64_t a = 1; a < finite; ++a) {
    g.successor_[a] = static_cast<node_id>(a ^ inverse[a]);
    g.membership_[a] = tr(a) == tr(inverse[a]) ? SetMembership::A : SetMembership::B;
  }

  const std::size_t total = finite + 1;

  // preimages in CSR form
  g.pre_offset_.assign(total + 1, 0);
  for (std::size_t v = 0; v < total; ++v) ++g.pre_offset_[g.successor_[v] + 1];
  std::partial_sum(g.pre_offset_.begin(), g.pre_offset_.end(), g.pre_offset_.begin());
  g.pre_.assign(total, 0);
  {
    std::vector<std::size_t> fill(g.pre_offset_.begin(), g.pre_offset_.end() - 1);
    for (std::size_t v = 0; v < total; ++v) g.pre_[fill[g.successor_[v]]++] = static_cast<node_id>(v);
  }

  // periodic points: walk each unvisited path and mark the cycle it closes, if new
  g.periodic_.assign(total, 0);
  {
    std::vector<std::uint8_t> state(total, 0);  // 0 new, 1 on current path, 2 done
    std::vector<node_id> path;
    for (std::size_t start = 0; start < total; ++start) {
      if (state[start] != 0) continue;
      path.clear();
      auto v = static_cast<node_id>(start);
      while (state[v] == 0) {
        state[v] = 1;
        path.push_back(v);
        v = g.successor_[v];
      }
      if (state[v] == 1) {
        node_id c = v;
        do {
          g.periodic_[c] = 1;
          c = g.successor_[c];
        } while (c != v);
      }
      for (auto p : path) state[p] = 2;
    }
  }

  // tree levels by backward BFS from the cycles
  g.level_.assign(total, 0);
  g.root_.assign(total, 0);
  {
    std::deque<node_id> queue;
    for (std::size_t v = 0; v < total; ++v) {
      if (!g.periodic_[v]) continue;
      g.root_[v] = static_cast<node_id>(v);
      queue.push_back(static_cast<node_id>(v));
    }
    while (!queue.empty()) {
      const node_id v = queue.front();
      queue.pop_front();
      for (auto u : g.preimages(v)) {
        if (g.periodic_[u]) continue;
        g.level_[u] = g.level_[v] + 1;
        g.root_[u] = g.root_[v];
        queue.push_back(u);
      }
    }
  }

  detail::DisjointSets sets(total);
  for (std::size_t v = 0; v < total; ++v) sets.unite(v, g.successor_[v]);
  g.component_.resize(total);
  for (std::size_t v = 0; v < total; ++v) g.component_[v] = sets.find(v);
  return g;
}

/// Number of roots of y^2 + b y + 1 (the preimage equation of b), counted with multiplicity.
/// A preimage u of b is a double root exactly when the derivative b vanishes, i.e. b = 0.
inline std::size_t in_degree_with_multiplicity(const ThetaGraph& g, ThetaGraph::node_id v) {
  std::size_t count = 0;
  for (auto u : g.preimages(v)) count += (v == g.zero_node() && u != g.infinity_node()) ? 2 : 1;
  return count;
}

struct StructureReport {
  std::size_t n = 0;
  std::size_t l = 0;
  std::size_t a_components = 0;
  std::size_t b_components = 0;
  std::size_t cycle_vertices = 0;
  std::size_t zero_setwise_in_degree = 0;  // expected 1: the preimage of 0 is the double root 1

  bool in_degree_setwise_ok = true;       // {0,2} except at vertex 0
  bool in_degree_multiplicity_ok = true;  // {0,2} everywhere
  bool homogeneous_ok = true;
  bool tree_depth_ok = true;  // every A-component tree has depth exactly l+2
  bool two_children_ok = true;

  std::vector<std::string> violations;

  bool passed() const noexcept {
    return in_degree_setwise_ok && in_degree_multiplicity_ok && homogeneous_ok && tree_depth_ok && two_children_ok;
  }
};

inline StructureReport verify_structure(const ThetaGraph& g) {
  using node_id = ThetaGraph::node_id;
  StructureReport r;
  r.n = g.n();
  r.l = g.l();
  const std::size_t total = g.node_count();
  auto fail = [&r](bool& flag, std::string msg) {
    flag = false;
    if (r.violations.size() < 64) r.violations.push_back(std::move(msg));
  };

  for (std::size_t i = 0; i < total; ++i) {
    const auto v = static_cast<node_id>(i);
    const std::size_t setwise = g.preimages(v).size();
    if (v == g.zero_node()) {
      r.zero_setwise_in_degree = setwise;
      if (setwise != 1) fail(r.in_degree_setwise_ok, "vertex 0 has set-wise in-degree " + std::to_string(setwise));
    } else if (setwise != 0 && setwise != 2) {
      fail(r.in_degree_setwise_ok, "vertex " + g.label(v) + " has in-degree " + std::to_string(setwise));
    }
    const std::size_t mult = in_degree_with_multiplicity(g, v);
    if (mult != 0 && mult != 2)
      fail(r.in_degree_multiplicity_ok,
           "vertex " + g.label(v) + " has in-degree " + std::to_string(mult) + " with multiplicity");
    if (g.periodic(v)) ++r.cycle_vertices;
  }

  // component membership
  std::vector<int> comp_set(total, -1);  // -1 unseen, 0 A, 1 B, 2 mixed
  for (std::size_t v = 0; v < total; ++v) {
    const int m = g.membership(static_cast<node_id>(v)) == SetMembership::A ? 0 : 1;
    int& c = comp_set[g.component(static_cast<node_id>(v))];
    if (c == -1)
      c = m;
    else if (c != m && c != 2) {
      c = 2;
      fail(r.homogeneous_ok, "component of " + g.label(static_cast<node_id>(v)) + " mixes A and B vertices");
    }
  }
  for (std::size_t v = 0; v < total; ++v) {
    if (g.component(static_cast<node_id>(v)) != v) continue;
    if (comp_set[v] == 0) ++r.a_components;
    if (comp_set[v] == 1) ++r.b_components;
  }

  // tree depths per cycle vertex, A components only
  std::vector<std::size_t> depth(total, 0);
  for (std::size_t v = 0; v < total; ++v) {
    const auto id = static_cast<node_id>(v);
    depth[g.tree_root(id)] = std::max(depth[g.tree_root(id)], g.level(id));
  }
  const std::size_t want = r.l + 2;
  for (std::size_t v = 0; v < total; ++v) {
    const auto id = static_cast<node_id>(v);
    if (g.membership(id) != SetMembership::A) continue;
    if (g.periodic(id) && depth[v] != want)
      fail(r.tree_depth_ok, "tree at cycle vertex " + g.label(id) + " has depth " + std::to_string(depth[v]) +
                                ", expected " + std::to_string(want));
    const std::size_t lvl = g.level(id);
    if (lvl >= 1 && lvl < want && id != g.zero_node()) {
      const std::size_t kids = g.children(id).size();
      if (kids != 2)
        fail(r.two_children_ok, "vertex " + g.label(id) + " at level " + std::to_string(lvl) + " has " +
                                    std::to_string(kids) + " children");
    }
  }
  return r;
}

/// Graphviz rendering. Node names are the hex residues (or "inf"); A_n vertices are filled
/// lightblue and B_n vertices lightsalmon; edges between periodic vertices are bold red.
inline std::string to_dot(const ThetaGraph& g) {
  std::ostringstream os;
  os << "digraph theta_" << g.n() << " {\n";
  os << "  graph [label=\"theta over GF(2^" << g.n() << "), modulus " << to_hex(g.modulus()) << "\"];\n";
  os << "  node [style=filled];\n";
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto id = static_cast<ThetaGraph::node_id>(v);
    os << "  \"" << g.label(id) << "\" [fillcolor="
       << (g.membership(id) == SetMembership::A ? "lightblue" : "lightsalmon") << ", set=\""
       << static_cast<char>(g.membership(id)) << "\", level=" << g.level(id)
       << (g.periodic(id) ? ", shape=doublecircle" : "") << "];\n";
  }
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto id = static_cast<ThetaGraph::node_id>(v);
    const auto s = g.successor(id);
    os << "  \"" << g.label(id) << "\" -> \"" << g.label(s) << "\"";
    if (g.periodic(id) && g.periodic(s)) os << " [style=bold, color=red]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace qseq
