#pragma once

// Rational polyhedral cones with a lineality space, kept in both generator
// and inequality form.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "tropint/error.hpp"
#include "tropint/linalg.hpp"
#include "tropint/numeric.hpp"

namespace tropint {

namespace detail {

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

inline IntMatrix stacked(std::initializer_list<const IntMatrix*> parts) {
  IntMatrix out;
  for (const IntMatrix* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

}  // namespace detail

/// Cone R_{>=0}·rays + R·lineality in R^n. Rays are primitive and extreme
/// modulo the lineality space; the lineality basis is saturated and in
/// Hermite normal form.
class Cone {
 public:
  Cone() = default;

  /// `inequalities`, when given, must be valid on the cone and include a
  /// normal of every facet; this skips the facet search.
  Cone(int n, const IntMatrix& generators, const IntMatrix& lineality, const IntMatrix* inequalities = nullptr)
      : n_(n) {
    for (const auto& g : generators)
      require(static_cast<int>(g.size()) == n, ErrorKind::DimensionMismatch, "ray has wrong length");
    for (const auto& l : lineality)
      require(static_cast<int>(l.size()) == n, ErrorKind::DimensionMismatch, "lineality vector has wrong length");
    normalize(generators, lineality, inequalities);
  }

  int ambient() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }
  int lineality_dim() const noexcept { return static_cast<int>(lineality_.size()); }
  const IntMatrix& rays() const noexcept { return rays_; }
  const IntMatrix& lineality() const noexcept { return lineality_; }
  /// Integer basis of the orthogonal complement of the span.
  const IntMatrix& span_equations() const noexcept { return equations_; }
  /// Primitive inner normals a with a·x >= 0 on the cone, taken inside the span.
  const IntMatrix& facet_normals() const noexcept { return facets_; }

  /// Generators of the span: rays followed by lineality.
  IntMatrix span_generators() const { return detail::stacked({&rays_, &lineality_}); }

  /// Saturated lattice basis of span ∩ Z^n.
  IntMatrix span_lattice() const { return linalg::saturation(span_generators(), n_); }

  bool contains(const RatVector& x) const {
    for (const auto& e : equations_)
      if (dot(e, x) != 0) return false;
    for (const auto& a : facets_)
      if (dot(a, x) < 0) return false;
    return true;
  }
  bool contains(const IntVector& x) const { return contains(tropint::to_rational(x)); }

  bool in_relative_interior(const RatVector& x) const {
    if (!contains(x)) return false;
    for (const auto& a : facets_)
      if (dot(a, x) == 0) return false;
    return true;
  }

  /// A point in the relative interior: the sum of the rays.
  IntVector interior_point() const {
    IntVector p(n_, 0);
    for (const auto& r : rays_) p = add(std::move(p), r);
    return p;
  }

  /// The face cut out by a facet normal.
  Cone facet(const IntVector& normal) const {
    IntMatrix gens;
    for (const auto& r : rays_)
      if (dot(normal, r) == 0) gens.push_back(r);
    return Cone(n_, gens, lineality_, &facets_);
  }

  std::vector<Cone> facets() const {
    std::vector<Cone> out;
    for (const auto& a : facets_) out.push_back(facet(a));
    return out;
  }

  /// Canonical representative of a direction modulo the lineality space:
  /// zero at the lineality pivot columns, primitive.
  IntVector reduce(const IntVector& v) const { return reduce_modulo(v, lineality_); }

  /// Canonical description: lineality basis and reduced rays.
  const std::vector<IntVector>& key() const noexcept { return key_; }

  friend bool operator==(const Cone& a, const Cone& b) { return a.n_ == b.n_ && a.key_ == b.key_; }
  friend bool operator<(const Cone& a, const Cone& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.key_ < b.key_;
  }

  /// The part of the cone where h·x >= 0; the result may be lower dimensional.
  Cone intersect_halfspace(const IntVector& h) const {
    std::vector<Integer> hl;
    std::size_t lead = lineality_.size();
    for (std::size_t i = 0; i < lineality_.size(); ++i) {
      hl.push_back(dot(h, lineality_[i]));
      if (hl.back() != 0 && lead == lineality_.size()) lead = i;
    }
    IntMatrix gens;
    IntMatrix lin;
    if (lead == lineality_.size()) {
      // h vanishes on the lineality: Fourier-Motzkin on the rays.
      IntMatrix pos, neg;
      for (const auto& r : rays_) {
        const Integer v = dot(h, r);
        if (v >= 0) gens.push_back(r);
        if (v > 0) pos.push_back(r);
        if (v < 0) neg.push_back(r);
      }
      // Only adjacent pairs give extreme rays of the cut cone.
      const int need = dim_ - lineality_dim() - 2;
      for (const auto& p : pos)
        for (const auto& q : neg) {
          if (need > 0) {
            IntMatrix common;
            for (const auto& a : facets_)
              if (dot(a, p) == 0 && dot(a, q) == 0) common.push_back(a);
            if (static_cast<int>(linalg::rank(common)) != need) continue;
          }
          gens.push_back(primitive(add(scaled(q, dot(h, p)), scaled(p, -dot(h, q)))));
        }
      lin = lineality_;
    } else {
      // Pick l with h(l) > 0; the rest of the lineality moves into ker h.
      IntVector l = lineality_[lead];
      Integer hl0 = hl[lead];
      if (hl0 < 0) {
        l = negated(l);
        hl0 = -hl0;
      }
      for (const auto& r : rays_) gens.push_back(primitive(add(scaled(r, hl0), scaled(l, -dot(h, r)))));
      for (std::size_t i = 0; i < lineality_.size(); ++i)
        if (i != lead) lin.push_back(primitive(add(scaled(lineality_[i], hl0), scaled(l, -hl[i]))));
      gens.push_back(l);
    }
    std::erase_if(gens, [](const IntVector& g) { return is_zero(g); });
    IntMatrix ineq = facets_;
    ineq.push_back(h);
    return Cone(n_, gens, lin, &ineq);
  }

  std::string to_string() const {
    std::string out = "cone{rays:";
    for (const auto& r : rays_) out += tropint::to_string(r);
    out += " lin:";
    for (const auto& l : lineality_) out += tropint::to_string(l);
    return out + "}";
  }

  static IntVector reduce_modulo(IntVector v, const IntMatrix& hnf) {
    // Rows of a Hermite basis have increasing pivot columns.
    RatVector w = tropint::to_rational(v);
    for (const auto& row : hnf) {
      std::size_t p = 0;
      while (row[p] == 0) ++p;
      if (w[p] == 0) continue;
      const Rational c = w[p] / Rational(row[p]);
      for (std::size_t i = p; i < w.size(); ++i) w[i] -= c * Rational(row[i]);
    }
    return primitive(w);
  }

 private:
  void normalize(const IntMatrix& generators, const IntMatrix& lineality, const IntMatrix* inequalities) {
    IntMatrix lin = linalg::saturation(lineality, n_);
    // Directions modulo the given lineality, deduplicated.
    IntMatrix gens;
    std::vector<IntVector> seen;
    for (const auto& g : generators) {
      if (is_zero(g)) continue;
      const IntVector red = reduce_modulo(g, lin);
      if (is_zero(red)) continue;
      if (std::find(seen.begin(), seen.end(), red) != seen.end()) continue;
      seen.push_back(red);
      gens.push_back(primitive(g));
    }
    equations_ = linalg::integer_kernel(detail::stacked({&gens, &lin}), n_);
    dim_ = n_ - static_cast<int>(equations_.size());
    facets_.clear();
    const int l = static_cast<int>(lin.size());
    auto add_facet = [&](const std::vector<std::size_t>& idx) {
      IntMatrix sys = detail::stacked({&lin, &equations_});
      for (std::size_t i : idx) sys.push_back(gens[i]);
      const IntMatrix ns = linalg::integer_kernel(sys, n_);
      if (ns.size() != 1) return;
      IntVector a = ns.front();
      int sign = 0;
      for (const auto& g : gens) {
        const Integer v = dot(a, g);
        const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (sign == 0) sign = s;
        if (s != sign) return;
      }
      if (sign == 0) return;
      if (sign < 0) a = negated(a);
      if (std::find(facets_.begin(), facets_.end(), a) == facets_.end()) facets_.push_back(a);
    };
    if (dim_ > l && inequalities) {
      // Each candidate's tight generators span a facet iff they have rank dim - 1.
      std::vector<std::vector<std::size_t>> seen_tight;
      for (const auto& a : *inequalities) {
        std::vector<std::size_t> tight;
        for (std::size_t i = 0; i < gens.size(); ++i)
          if (dot(a, gens[i]) == 0) tight.push_back(i);
        if (tight.size() == gens.size()) continue;
        if (std::find(seen_tight.begin(), seen_tight.end(), tight) != seen_tight.end()) continue;
        seen_tight.push_back(tight);
        IntMatrix span = lin;
        for (std::size_t i : tight) span.push_back(gens[i]);
        if (static_cast<int>(linalg::rank(span)) == dim_ - 1) add_facet(tight);
      }
    } else if (dim_ > l) {
      const std::size_t k = static_cast<std::size_t>(dim_ - l - 1);
      detail::for_each_subset(gens.size(), k, add_facet);
    }
    std::sort(facets_.begin(), facets_.end());
    // True lineality: the span cut by all facet hyperplanes.
    if (dim_ > l) {
      lineality_ = linalg::integer_kernel(detail::stacked({&equations_, &facets_}), n_);
    } else {
      lineality_ = lin;
    }
    const int true_l = static_cast<int>(lineality_.size());
    rays_.clear();
    key_.clear();
    std::vector<std::pair<IntVector, IntVector>> kept;  // (reduced, original)
    for (const auto& g : gens) {
      const IntVector red = reduce_modulo(g, lineality_);
      if (is_zero(red)) continue;
      bool dup = false;
      for (const auto& [r, o] : kept)
        if (r == red) dup = true;
      if (dup) continue;
      IntMatrix tight;
      for (const auto& a : facets_)
        if (dot(a, g) == 0) tight.push_back(a);
      if (static_cast<int>(linalg::rank(tight)) != dim_ - true_l - 1) continue;
      kept.emplace_back(red, g);
    }
    std::sort(kept.begin(), kept.end());
    for (const auto& [r, o] : kept) {
      rays_.push_back(o);
      key_.push_back(r);
    }
    key_.insert(key_.begin(), lineality_.begin(), lineality_.end());
    key_.insert(key_.begin(), IntVector{Integer(static_cast<long>(lineality_.size()))});
  }

  int n_ = 0;
  int dim_ = 0;
  IntMatrix rays_;
  IntMatrix lineality_;
  IntMatrix equations_;
  IntMatrix facets_;
  std::vector<IntVector> key_;
};

}  // namespace tropint
