#pragma once

// Intersection products of cycles in matroid varieties, pull-backs along
// coordinate morphisms, and the recursive product via modifications.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tropint/bergman.hpp"
#include "tropint/braid.hpp"
#include "tropint/error.hpp"
#include "tropint/matroid.hpp"

namespace tropint {

/// C · D = π_*(φ_r ··· φ_1 · C × D) in trop(M); `factor` selects the
/// projection to the first (0) or second (1) copy of trop(M).
inline BraidCycle intersect_on_matroid(const Matroid& m, const BraidCycle& c, const BraidCycle& d, int factor = 0) {
  m.require_loopfree("intersect_on_matroid");
  require_subcycle(c, m, "intersect_on_matroid (C)");
  require_subcycle(d, m, "intersect_on_matroid (D)");
  const int n = m.size();
  if (c.is_zero() || d.is_zero()) return BraidCycle(n, kZeroDim);
  BraidCycle x = apply_divisors(diagonal_functions(m), cross_product(c, d));
  std::vector<int> proj(n);
  std::iota(proj.begin(), proj.end(), factor == 0 ? 0 : n);
  return push_forward(x, proj);
}

/// Linear map between matroid varieties that copies coordinates:
/// f(x)_j = x_{source_of[j]}.
class CoordinateMorphism {
 public:
  CoordinateMorphism(Matroid source, Matroid target, std::vector<int> source_of)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(source_of)) {
    require(static_cast<int>(map_.size()) == target_.size(), ErrorKind::DimensionMismatch,
            "morphism: map length differs from target ground set");
    for (int s : map_)
      require(s >= 0 && s < source_.size(), ErrorKind::IndexOutOfRange, "morphism: source index out of range");
    source_.require_loopfree("morphism source");
    target_.require_loopfree("morphism target");
    // Rays V_F map to V_G with G = {j : source_of[j] ∈ F}; all must be flats.
    for (SubsetMask f : source_.flats()) {
      const SubsetMask g = preimage(f);
      if (!target_.is_flat(g))
        fail(ErrorKind::NotSubcycle, "morphism: image of ray V_" + chain_to_string({f}) + " leaves the target fan");
    }
  }

  const Matroid& source() const noexcept { return source_; }
  const Matroid& target() const noexcept { return target_; }
  const std::vector<int>& map() const noexcept { return map_; }

  SubsetMask preimage(SubsetMask f) const {
    SubsetMask g = 0;
    for (std::size_t j = 0; j < map_.size(); ++j)
      if (f & (SubsetMask{1} << map_[j])) g |= SubsetMask{1} << j;
    return g;
  }

  /// Matroid on source ⊔ target whose Bergman fan is trop(M_X) × trop(M_Y).
  Matroid product_matroid() const { return direct_sum(source_, target_); }

  /// Γ_f for a cycle A in the source: push-forward along x -> (x, f(x)).
  BraidCycle graph(const BraidCycle& a) const {
    std::vector<int> m(source_.size());
    std::iota(m.begin(), m.end(), 0);
    m.insert(m.end(), map_.begin(), map_.end());
    return push_forward(a, m);
  }

  BraidCycle graph() const { return graph(bergman_fan(source_)); }

  BraidCycle push(const BraidCycle& a) const {
    require_subcycle(a, source_, "push-forward");
    return push_forward(a, map_);
  }

  /// f^* C = π_*(Γ_f · (X × C)).
  BraidCycle pullback(const BraidCycle& c) const {
    require_subcycle(c, target_, "pullback");
    const int n = source_.size();
    if (c.is_zero()) return BraidCycle(n, kZeroDim);
    const BraidCycle prod = intersect_on_matroid(product_matroid(), graph(), cross_product(bergman_fan(source_), c));
    std::vector<int> proj(n);
    std::iota(proj.begin(), proj.end(), 0);
    return push_forward(prod, proj);
  }

  /// g ∘ f for g: target -> other.
  CoordinateMorphism then(const CoordinateMorphism& g) const {
    std::vector<int> composed;
    for (int j : g.map_) composed.push_back(map_[j]);
    return CoordinateMorphism(source_, g.target_, composed);
  }

 private:
  Matroid source_;
  Matroid target_;
  std::vector<int> map_;
};

namespace detail {

inline std::vector<int> identity_map(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

inline bool is_free(const Matroid& m) { return m.rank() == m.size(); }

/// An element that can be split off by a modification: not a coloop and a
/// flat on its own (so M / e stays loopfree).
inline std::optional<int> modification_element(const Matroid& m) {
  for (int e = m.size() - 1; e >= 0; --e) {
    const SubsetMask bit = SubsetMask{1} << e;
    if (m.rank(m.ground() & ~bit) == m.rank() && m.is_flat(bit)) return e;
  }
  return std::nullopt;
}

inline BraidCycle shaw_recursion_last(const Matroid& m, const BraidCycle& c, const BraidCycle& d, int depth);

}  // namespace detail

/// Recursive product C.D = π^*(π_*C . π_*D) + π^*π_*C . Δ_D + Δ_C . π^*π_*D
/// + Δ_C . Δ_D along the modification π : trop(M) -> trop(M \ e), with
/// Δ_C = C - π^*π_*C. π^* is the modification lift and the first term
/// recurses down to a free matroid.
inline BraidCycle intersect_shaw_recursion(const Matroid& m, int e, const BraidCycle& c, const BraidCycle& d) {
  m.require_loopfree("intersect_shaw_recursion");
  require(e >= 0 && e < m.size(), ErrorKind::IndexOutOfRange, "recursion element out of range");
  const SubsetMask bit = SubsetMask{1} << e;
  require(m.rank(m.ground() & ~bit) == m.rank(), ErrorKind::NotAQuotient,
          "element " + std::to_string(e + 1) + " is a coloop; no modification splits it off");
  require(m.is_flat(bit), ErrorKind::HasLoop,
          "element " + std::to_string(e + 1) + " has parallel elements; contracting it creates loops");
  require_subcycle(c, m, "intersect_shaw_recursion (C)");
  require_subcycle(d, m, "intersect_shaw_recursion (D)");
  // Move e to the last coordinate: new coordinate i is old coordinate perm[i].
  std::vector<int> perm;
  for (int i = 0; i < m.size(); ++i)
    if (i != e) perm.push_back(i);
  perm.push_back(e);
  std::vector<int> inverse(m.size());
  for (int i = 0; i < m.size(); ++i) inverse[perm[i]] = i;
  const Matroid pm = permuted(m, perm);
  const BraidCycle result =
      detail::shaw_recursion_last(pm, permute_coordinates(c, perm), permute_coordinates(d, perm), 0);
  return permute_coordinates(result, inverse);
}

namespace detail {

inline BraidCycle shaw_recursion_last(const Matroid& m, const BraidCycle& c, const BraidCycle& d, int depth) {
  const int n = m.size();
  if (c.is_zero() || d.is_zero()) return BraidCycle(n, kZeroDim);
  if (depth > 0 && is_free(m)) return intersect_on_matroid(m, c, d);
  const Minor del = deletion(m, SubsetMask{1} << (n - 1));
  const Matroid contracted = contraction(m, SubsetMask{1} << (n - 1)).matroid;
  const std::vector<int> proj = identity_map(n - 1);
  auto lift = [&](const BraidCycle& x) { return modification_lift(del.matroid, contracted, x); };
  const BraidCycle pc = push_forward(c, proj);
  const BraidCycle pd = push_forward(d, proj);

  BraidCycle first(n, kZeroDim);
  if (!pc.is_zero() && !pd.is_zero()) {
    BraidCycle below(n - 1, kZeroDim);
    if (auto e = modification_element(del.matroid); e && !is_free(del.matroid)) {
      std::vector<int> perm;
      for (int i = 0; i < n - 1; ++i)
        if (i != *e) perm.push_back(i);
      perm.push_back(*e);
      std::vector<int> inverse(n - 1);
      for (int i = 0; i < n - 1; ++i) inverse[perm[i]] = i;
      below = permute_coordinates(shaw_recursion_last(permuted(del.matroid, perm), permute_coordinates(pc, perm),
                                                      permute_coordinates(pd, perm), depth + 1),
                                  inverse);
    } else {
      below = intersect_on_matroid(del.matroid, pc, pd);
    }
    first = lift(below);
  }
  const BraidCycle ppc = pc.is_zero() ? BraidCycle(n, kZeroDim) : lift(pc);
  const BraidCycle ppd = pd.is_zero() ? BraidCycle(n, kZeroDim) : lift(pd);
  const BraidCycle dc = c - ppc;
  const BraidCycle dd = d - ppd;
  BraidCycle out = first;
  for (const BraidCycle& term :
       {intersect_on_matroid(m, ppc, dd), intersect_on_matroid(m, dc, ppd), intersect_on_matroid(m, dc, dd)})
    out += term;
  return out;
}

}  // namespace detail

/// Compares Star_{C·D}(p) with Star_C(p) · Star_D(p) computed in trop(M_p).
inline bool local_product_check(const Matroid& m, const BraidCycle& c, const BraidCycle& d, const RatVector& p) {
  const Matroid mp = induced_matroid_at(m, p);
  if (!mp.is_loopfree()) fail(ErrorKind::PointNotOnCycle, "point is not in trop(M)");
  const BraidCycle lhs = star_at(intersect_on_matroid(m, c, d), p);
  const BraidCycle rhs = intersect_on_matroid(mp, star_at(c, p), star_at(d, p));
  return lhs == rhs;
}

}  // namespace tropint
