#pragma once

// Cycles supported on the braid arrangement. A cone is an ordered set
// partition of [n], stored as the chain of unions S_1 ⊊ ... ⊊ S_m = [n]; it is
// spanned by the rays V_S = -e_S (S proper) and the lineality line R·(1,...,1).
// Every cycle is kept in this finest subdivision, so two cycles are equal
// exactly when their facet maps agree.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tropint/error.hpp"
#include "tropint/matroid.hpp"
#include "tropint/numeric.hpp"

namespace tropint {

using Chain = std::vector<SubsetMask>;

/// Declared dimension of the zero cycle.
inline constexpr int kZeroDim = std::numeric_limits<int>::min();

inline std::string chain_to_string(const Chain& chain) {
  std::string out = "(";
  SubsetMask prev = 0;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (k) out += "|";
    bool first = true;
    for (int e : elements_of(chain[k] & ~prev)) {
      out += (first ? "" : ",") + std::to_string(e + 1);
      first = false;
    }
    prev = chain[k];
  }
  return out + ")";
}

/// Blocks S_k \ S_{k-1} of a chain.
inline std::vector<SubsetMask> chain_blocks(const Chain& chain) {
  std::vector<SubsetMask> blocks;
  SubsetMask prev = 0;
  for (SubsetMask s : chain) {
    blocks.push_back(s & ~prev);
    prev = s;
  }
  return blocks;
}

inline Chain chain_from_blocks(const std::vector<SubsetMask>& blocks) {
  Chain chain;
  SubsetMask acc = 0;
  for (SubsetMask b : blocks) chain.push_back(acc |= b);
  return chain;
}

inline bool is_valid_chain(const Chain& chain, int n) {
  if (chain.empty() || chain.back() != full_mask(n)) return false;
  SubsetMask prev = 0;
  for (SubsetMask s : chain) {
    if (s == prev || !contains(s, prev)) return false;
    prev = s;
  }
  return true;
}

/// Sublevel chain of a point: F_k = {i : p_i <= v_k} for its distinct
/// values v_1 < ... < v_m. The point lies in the relative interior of the
/// braid cone of this chain.
template <class Vec>
Chain point_chain(const Vec& p) {
  std::vector<typename Vec::value_type> values(p.begin(), p.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Chain chain;
  for (const auto& v : values) {
    SubsetMask s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] <= v) s |= SubsetMask{1} << i;
    chain.push_back(s);
  }
  return chain;
}

/// All interleavings of several block sequences, each kept in order.
inline void for_each_shuffle(const std::vector<std::vector<SubsetMask>>& sequences,
                             const std::function<void(const Chain&)>& visit) {
  std::vector<std::size_t> pos(sequences.size(), 0);
  std::size_t total = 0;
  for (const auto& s : sequences) total += s.size();
  Chain chain;
  chain.reserve(total);
  std::function<void(SubsetMask)> rec = [&](SubsetMask acc) {
    if (chain.size() == total) {
      visit(chain);
      return;
    }
    for (std::size_t i = 0; i < sequences.size(); ++i) {
      if (pos[i] == sequences[i].size()) continue;
      const SubsetMask next = acc | sequences[i][pos[i]];
      ++pos[i];
      chain.push_back(next);
      rec(next);
      chain.pop_back();
      --pos[i];
    }
  };
  rec(0);
}

class BraidCycle {
 public:
  BraidCycle(int ambient, int dim) : n_(ambient), dim_(dim) {
    require(ambient >= 1 && ambient <= 31, ErrorKind::DimensionMismatch, "braid cycles need 1 <= n <= 31");
  }

  int ambient() const noexcept { return n_; }
  /// Dimension, or kZeroDim for the zero cycle.
  int dim() const noexcept { return facets_.empty() ? kZeroDim : dim_; }
  /// The dimension this cycle was created with, kept even when it cancels.
  int declared_dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return facets_.empty(); }
  const std::map<Chain, Integer>& facets() const noexcept { return facets_; }

  void add(const Chain& chain, const Integer& weight) {
    require(is_valid_chain(chain, n_), ErrorKind::DimensionMismatch, "invalid chain " + chain_to_string(chain));
    require(static_cast<int>(chain.size()) == dim_, ErrorKind::NotPure,
            "chain " + chain_to_string(chain) + " has dimension " + std::to_string(chain.size()) + ", expected " +
                std::to_string(dim_));
    if (weight == 0) return;
    auto [it, inserted] = facets_.try_emplace(chain, weight);
    if (!inserted) {
      it->second += weight;
      if (it->second == 0) facets_.erase(it);
    }
  }

  Integer weight(const Chain& chain) const {
    const auto it = facets_.find(chain);
    return it == facets_.end() ? Integer(0) : it->second;
  }

  BraidCycle& operator+=(const BraidCycle& other) {
    require(n_ == other.n_, ErrorKind::DimensionMismatch, "adding cycles in different ambient spaces");
    if (other.is_zero()) return *this;
    if (is_zero()) dim_ = other.dim_;
    require(dim_ == other.dim_, ErrorKind::NotPure, "adding cycles of different dimensions");
    for (const auto& [c, w] : other.facets_) add(c, w);
    return *this;
  }

  friend BraidCycle operator+(BraidCycle a, const BraidCycle& b) { return a += b; }

  friend BraidCycle operator*(const Integer& m, const BraidCycle& x) {
    BraidCycle out(x.n_, x.dim_);
    if (m != 0)
      for (const auto& [c, w] : x.facets_) out.facets_.emplace(c, m * w);
    return out;
  }

  friend BraidCycle operator-(const BraidCycle& a, const BraidCycle& b) { return a + Integer(-1) * b; }

  friend bool operator==(const BraidCycle& a, const BraidCycle& b) {
    return a.n_ == b.n_ && a.facets_ == b.facets_ && a.dim() == b.dim();
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& [c, w] : facets_) out += w.str() + "*" + chain_to_string(c) + " ";
    return out;
  }

 private:
  int n_;
  int dim_;
  std::map<Chain, Integer> facets_;
};

/// Function on R^n that is linear on every braid cone, given by its values
/// on the rays V_S (S nonempty; S = [n] gives the value on -(1,...,1)).
/// Rays outside the function's domain carry kUndefined.
class BraidFunction {
 public:
  static constexpr std::int64_t kUndefined = std::numeric_limits<std::int64_t>::min();

  explicit BraidFunction(int n) : n_(n), values_(std::size_t{1} << n, kUndefined) { values_[0] = 0; }

  template <class F>
  static BraidFunction from(int n, F&& value_of_mask) {
    BraidFunction f(n);
    for (SubsetMask s = 1; s <= full_mask(n); ++s) f.values_[s] = value_of_mask(s);
    return f;
  }

  /// The integer-linear function x -> <a, x>.
  static BraidFunction linear(const std::vector<std::int64_t>& a) {
    const int n = static_cast<int>(a.size());
    return from(n, [&](SubsetMask s) {
      std::int64_t v = 0;
      for (int i : elements_of(s)) v -= a[i];
      return v;
    });
  }

  int ambient() const noexcept { return n_; }

  bool defined(SubsetMask s) const { return values_[s] != kUndefined; }

  std::int64_t value(SubsetMask s) const {
    if (values_[s] == kUndefined)
      fail(ErrorKind::NotLinearOnFacet, "function undefined on ray V_{" + chain_to_string({s}) + "}");
    return values_[s];
  }

  void set(SubsetMask s, std::int64_t v) { values_[s] = v; }

  /// Value on the lineality vector (1,...,1).
  std::int64_t lineality_value() const { return -value(full_mask(n_)); }

  Rational evaluate(const RatVector& p) const {
    require(static_cast<int>(p.size()) == n_, ErrorKind::DimensionMismatch, "point has wrong length");
    std::vector<Rational> values(p.begin(), p.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const Chain chain = point_chain(p);
    Rational out = 0;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) out += (values[k + 1] - values[k]) * value(chain[k]);
    out -= values.back() * value(chain.back());
    return out;
  }

  BraidFunction& operator+=(const BraidFunction& o) {
    require(n_ == o.n_, ErrorKind::DimensionMismatch, "adding functions on different spaces");
    for (std::size_t s = 0; s < values_.size(); ++s)
      values_[s] = (values_[s] == kUndefined || o.values_[s] == kUndefined) ? kUndefined : values_[s] + o.values_[s];
    return *this;
  }

  const std::vector<std::int64_t>& table() const noexcept { return values_; }

 private:
  int n_;
  std::vector<std::int64_t> values_;
};

namespace detail {

struct FaceSum {
  std::vector<Integer> vec;  // sum of weight * V_{S_j} over adjacent facets
  Integer value = 0;         // sum of weight * phi(V_{S_j})
};

/// For every codimension-one face: the weighted sum of primitive normal
/// vectors of the adjacent facets (and of phi on them when given).
inline std::map<Chain, FaceSum> face_sums(const BraidCycle& x, const BraidFunction* phi) {
  std::map<Chain, FaceSum> faces;
  const int n = x.ambient();
  for (const auto& [chain, w] : x.facets()) {
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      Chain tau;
      tau.reserve(chain.size() - 1);
      for (std::size_t k = 0; k < chain.size(); ++k)
        if (k != j) tau.push_back(chain[k]);
      auto& f = faces[tau];
      if (f.vec.empty()) f.vec.assign(n, 0);
      for (int i : elements_of(chain[j])) f.vec[i] -= w;
      if (phi) f.value += w * phi->value(chain[j]);
    }
  }
  return faces;
}

/// Block values of a vector that is constant on the blocks of tau, or
/// nullopt if it is not (then the vector leaves the span of tau).
inline std::optional<std::vector<Integer>> block_values(const Chain& tau, const std::vector<Integer>& v) {
  std::vector<Integer> out;
  for (SubsetMask b : chain_blocks(tau)) {
    const auto el = elements_of(b);
    for (int i : el)
      if (v[i] != v[el.front()]) return std::nullopt;
    out.push_back(v[el.front()]);
  }
  return out;
}

}  // namespace detail

/// First unbalanced codimension-one face, if any.
inline std::optional<std::string> balancing_violation(const BraidCycle& x) {
  for (const auto& [tau, f] : detail::face_sums(x, nullptr))
    if (!detail::block_values(tau, f.vec)) return "cycle is not balanced at face " + chain_to_string(tau);
  return std::nullopt;
}

inline bool is_balanced(const BraidCycle& x) { return !balancing_violation(x); }

/// Weil divisor phi · X.
inline BraidCycle divisor(const BraidFunction& phi, const BraidCycle& x) {
  require(phi.ambient() == x.ambient(), ErrorKind::DimensionMismatch, "function and cycle live in different spaces");
  if (x.is_zero() || x.declared_dim() <= 1) {
    // A one-dimensional cycle is only its lineality line; its divisor is zero.
    return BraidCycle(x.ambient(), x.is_zero() ? kZeroDim : x.declared_dim() - 1);
  }
  BraidCycle out(x.ambient(), x.dim() - 1);
  for (const auto& [tau, f] : detail::face_sums(x, &phi)) {
    const auto w = detail::block_values(tau, f.vec);
    if (!w) fail(ErrorKind::NotBalanced, "input cycle is not balanced at face " + chain_to_string(tau));
    // phi restricted to span(tau): e_{B_k} = V_{T_{k-1}} - V_{T_k}.
    Integer linear = 0;
    SubsetMask prev = 0;
    for (std::size_t k = 0; k < tau.size(); ++k) {
      linear += (*w)[k] * ((prev ? phi.value(prev) : 0) - phi.value(tau[k]));
      prev = tau[k];
    }
    out.add(tau, f.value - linear);
  }
  return out;
}

/// X × Y in R^{n1 + n2}, second factor on the trailing coordinates.
inline BraidCycle cross_product(const BraidCycle& x, const BraidCycle& y) {
  const int n1 = x.ambient();
  const int n2 = y.ambient();
  if (x.is_zero() || y.is_zero()) return BraidCycle(n1 + n2, kZeroDim);
  BraidCycle out(n1 + n2, x.dim() + y.dim());
  for (const auto& [cx, wx] : x.facets()) {
    for (const auto& [cy, wy] : y.facets()) {
      std::vector<SubsetMask> by = chain_blocks(cy);
      for (auto& b : by) b <<= n1;
      const Integer w = wx * wy;
      for_each_shuffle({chain_blocks(cx), by}, [&](const Chain& c) { out.add(c, w); });
    }
  }
  return out;
}

/// Push-forward along the coordinate map x -> (x_{s[0]}, ..., x_{s[m-1]}).
/// Every target coordinate copies one source coordinate, so braid cones map
/// onto braid cones with lattice index one; cones whose dimension drops are
/// discarded.
inline BraidCycle push_forward(const BraidCycle& x, const std::vector<int>& source_of) {
  const int m = static_cast<int>(source_of.size());
  for (int s : source_of)
    require(s >= 0 && s < x.ambient(), ErrorKind::IndexOutOfRange, "coordinate map index out of range");
  BraidCycle out(m, x.declared_dim());
  for (const auto& [chain, w] : x.facets()) {
    std::vector<SubsetMask> blocks;
    bool injective = true;
    for (SubsetMask b : chain_blocks(chain)) {
      SubsetMask image = 0;
      for (int j = 0; j < m; ++j)
        if (b & (SubsetMask{1} << source_of[j])) image |= SubsetMask{1} << j;
      if (!image) {
        injective = false;
        break;
      }
      blocks.push_back(image);
    }
    if (injective) out.add(chain_from_blocks(blocks), w);
  }
  return out;
}

/// Relabels coordinates: coordinate i of the result is coordinate perm[i].
inline BraidCycle permute_coordinates(const BraidCycle& x, const std::vector<int>& perm) {
  return push_forward(x, perm);
}

namespace detail {

/// Whether every set of p occurs in sigma.
inline bool chain_refines(const Chain& sigma, const Chain& p) {
  std::size_t k = 0;
  for (SubsetMask s : sigma)
    if (k < p.size() && s == p[k]) ++k;
  return k == p.size();
}

}  // namespace detail

inline bool contains_point(const BraidCycle& x, const RatVector& p) {
  require(static_cast<int>(p.size()) == x.ambient(), ErrorKind::DimensionMismatch, "point has wrong length");
  const Chain pc = point_chain(p);
  for (const auto& [chain, w] : x.facets())
    if (detail::chain_refines(chain, pc)) return true;
  return false;
}

/// Star of X at p: tangent cones of the facets containing p.
inline BraidCycle star_at(const BraidCycle& x, const RatVector& p) {
  require(static_cast<int>(p.size()) == x.ambient(), ErrorKind::DimensionMismatch, "point has wrong length");
  const Chain pc = point_chain(p);
  BraidCycle out(x.ambient(), x.declared_dim());
  const auto p_blocks = chain_blocks(pc);
  for (const auto& [chain, w] : x.facets()) {
    if (!detail::chain_refines(chain, pc)) continue;
    std::vector<std::vector<SubsetMask>> seqs(p_blocks.size());
    for (SubsetMask b : chain_blocks(chain)) {
      for (std::size_t i = 0; i < p_blocks.size(); ++i)
        if (contains(p_blocks[i], b)) seqs[i].push_back(b);
    }
    for_each_shuffle(seqs, [&](const Chain& c) { out.add(c, w); });
  }
  return out;
}

/// Sum of weights of a cycle consisting of the lineality line only.
inline Integer degree_zero_dim(const BraidCycle& x) {
  if (x.is_zero()) return 0;
  require(x.dim() == 1, ErrorKind::NotZeroDimensional,
          "degree needs a cycle of dimension zero modulo lineality, got " + std::to_string(x.dim() - 1));
  return x.facets().begin()->second;
}

/// Projective degree of a cycle of dimension k in R^n: homogenize to X × R in
/// R^{n+1} and intersect k times with max{x_1, ..., x_n, t} - t.
inline Integer projective_degree(const BraidCycle& x) {
  if (x.is_zero()) return 0;
  const int n = x.ambient();
  BraidCycle line(1, 1);
  line.add({1}, 1);
  BraidCycle y = cross_product(x, line);
  const SubsetMask t = SubsetMask{1} << n;
  const SubsetMask all = full_mask(n + 1);
  const auto g = BraidFunction::from(n + 1, [&](SubsetMask s) {
    return std::int64_t{(s & t) ? 1 : 0} - (s == all ? 1 : 0);
  });
  for (int k = 0; k < x.dim(); ++k) y = divisor(g, y);
  return degree_zero_dim(y);
}

/// Slice of X by {x_R = -λ} for λ → ∞, as a cycle in the remaining
/// coordinates. Computed from the star at V_R, which must split as
/// R^R × Y; otherwise the slice is not a cone of the expected dimension.
inline BraidCycle face_at_infinity(const BraidCycle& x, SubsetMask r) {
  const int n = x.ambient();
  require((r & ~full_mask(n)) == 0, ErrorKind::IndexOutOfRange, "slice set outside the ground set");
  if (r == 0) return x;
  require(r != full_mask(n), ErrorKind::NonConicalSlice, "cannot slice away every coordinate");
  const int k = popcount(r);
  std::vector<int> kept;  // remaining coordinates
  for (int i = 0; i < n; ++i)
    if (!(r & (SubsetMask{1} << i))) kept.push_back(i);
  const int m = static_cast<int>(kept.size());
  if (x.is_zero() || x.declared_dim() - k < 1) return BraidCycle(m, kZeroDim);

  RatVector v(n, 0);
  for (int i : elements_of(r)) v[i] = -1;
  const BraidCycle star = star_at(x, v);
  if (star.is_zero()) return BraidCycle(m, kZeroDim);

  // Canonical facets start with the elements of R as singletons in order.
  const auto r_elems = elements_of(r);
  BraidCycle y(m, x.dim() - k);
  for (const auto& [chain, w] : star.facets()) {
    const auto blocks = chain_blocks(chain);
    if (static_cast<int>(blocks.size()) <= k) continue;
    bool canonical = true;
    for (int j = 0; j < k; ++j)
      if (blocks[j] != (SubsetMask{1} << r_elems[j])) canonical = false;
    if (!canonical) continue;
    std::vector<SubsetMask> rest;
    for (std::size_t j = k; j < blocks.size(); ++j) rest.push_back(detail::remap(blocks[j], kept));
    y.add(chain_from_blocks(rest), w);
  }
  // Check star = R^R × Y, rebuilt in the original coordinate order.
  BraidCycle free_part(k, k);
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  do {
    std::vector<SubsetMask> blocks;
    for (int i : order) blocks.push_back(SubsetMask{1} << i);
    free_part.add(chain_from_blocks(blocks), 1);
  } while (std::next_permutation(order.begin(), order.end()));
  std::vector<int> back(n);
  for (int j = 0; j < m; ++j) back[kept[j]] = j;
  for (int j = 0; j < k; ++j) back[r_elems[j]] = m + j;
  const BraidCycle rebuilt = push_forward(cross_product(y, free_part), back);
  if (!(rebuilt == star))
    fail(ErrorKind::NonConicalSlice, "star at the slice direction does not split off the sliced coordinates");
  return y;
}

}  // namespace tropint
