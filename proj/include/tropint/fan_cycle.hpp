#pragma once

// Weighted fan cycles built from arbitrary rational cones. This layer handles
// what the braid representation cannot: general linear maps, quotients by
// lineality spaces and fans read from files.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropint/braid.hpp"
#include "tropint/cone.hpp"
#include "tropint/error.hpp"
#include "tropint/linalg.hpp"
#include "tropint/numeric.hpp"

namespace tropint {

class FanCycle {
 public:
  FanCycle(int ambient, int dim) : n_(ambient), dim_(dim) {}

  int ambient() const noexcept { return n_; }
  int dim() const noexcept { return facets_.empty() ? kZeroDim : dim_; }
  int declared_dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return facets_.empty(); }
  const std::map<Cone, Integer>& facets() const noexcept { return facets_; }

  void add(const Cone& cone, const Integer& weight) {
    require(cone.ambient() == n_, ErrorKind::DimensionMismatch, "cone lives in a different ambient space");
    require(cone.dim() == dim_, ErrorKind::NotPure,
            "cone of dimension " + std::to_string(cone.dim()) + " in a cycle of dimension " + std::to_string(dim_));
    if (weight == 0) return;
    auto [it, inserted] = facets_.try_emplace(cone, weight);
    if (!inserted) {
      it->second += weight;
      if (it->second == 0) facets_.erase(it);
    }
  }

  FanCycle& operator+=(const FanCycle& other) {
    require(n_ == other.n_, ErrorKind::DimensionMismatch, "adding cycles in different ambient spaces");
    if (other.is_zero()) return *this;
    if (is_zero()) dim_ = other.dim_;
    require(dim_ == other.dim_, ErrorKind::NotPure, "adding cycles of different dimensions");
    for (const auto& [c, w] : other.facets_) add(c, w);
    return *this;
  }

  friend FanCycle operator+(FanCycle a, const FanCycle& b) { return a += b; }

  friend FanCycle operator*(const Integer& m, const FanCycle& x) {
    FanCycle out(x.n_, x.dim_);
    if (m != 0)
      for (const auto& [c, w] : x.facets_) out.facets_.emplace(c, m * w);
    return out;
  }

  friend FanCycle operator-(const FanCycle& a, const FanCycle& b) { return a + Integer(-1) * b; }

 private:
  int n_;
  int dim_;
  std::map<Cone, Integer> facets_;
};

/// Piecewise linear function on R^n that is linear on every cell cut out by
/// the hyperplanes in `breaks`.
struct PLFunction {
  int n = 0;
  IntMatrix breaks;
  std::function<Rational(const RatVector&)> evaluate;

  static PLFunction linear(const IntVector& a) {
    return {static_cast<int>(a.size()), {}, [a](const RatVector& x) { return dot(a, x); }};
  }

  /// max_i <forms[i], x>.
  static PLFunction max_of(const IntMatrix& forms) {
    require(!forms.empty(), ErrorKind::DimensionMismatch, "max of an empty family");
    PLFunction f;
    f.n = static_cast<int>(forms.front().size());
    for (std::size_t i = 0; i < forms.size(); ++i)
      for (std::size_t j = i + 1; j < forms.size(); ++j) {
        IntVector d = add(forms[i], negated(forms[j]));
        if (!is_zero(d)) f.breaks.push_back(primitive(d));
      }
    f.evaluate = [forms](const RatVector& x) {
      Rational best = dot(forms.front(), x);
      for (const auto& a : forms) best = std::max(best, dot(a, x));
      return best;
    };
    return f;
  }

  /// max{0, x_1, ..., x_n}.
  static PLFunction max_zero_coordinates(int n) {
    IntMatrix forms(1, IntVector(n, 0));
    for (int i = 0; i < n; ++i) {
      IntVector e(n, 0);
      e[i] = 1;
      forms.push_back(e);
    }
    return max_of(forms);
  }

  static PLFunction from_braid(const BraidFunction& phi) {
    PLFunction f;
    f.n = phi.ambient();
    for (int i = 0; i < f.n; ++i)
      for (int j = i + 1; j < f.n; ++j) {
        IntVector d(f.n, 0);
        d[i] = 1;
        d[j] = -1;
        f.breaks.push_back(d);
      }
    f.evaluate = [phi](const RatVector& x) { return phi.evaluate(x); };
    return f;
  }
};

namespace detail {

inline IntVector sign_normalized(IntVector v) {
  v = primitive(std::move(v));
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0) v = negated(std::move(v));
    break;
  }
  return v;
}

inline bool splits(const Cone& c, const IntVector& h) {
  for (const auto& l : c.lineality())
    if (dot(h, l) != 0) return true;
  bool pos = false, neg = false;
  for (const auto& r : c.rays()) {
    const Integer v = dot(h, r);
    if (v > 0) pos = true;
    if (v < 0) neg = true;
  }
  return pos && neg;
}

}  // namespace detail

/// Subdivides every cone along the given hyperplanes (through the origin).
inline FanCycle refine(const FanCycle& x, const IntMatrix& hyperplanes) {
  FanCycle out(x.ambient(), x.declared_dim());
  for (const auto& [cone, w] : x.facets()) {
    std::vector<Cone> pieces{cone};
    for (const auto& h : hyperplanes) {
      std::vector<Cone> next;
      for (const auto& p : pieces) {
        if (!detail::splits(p, h)) {
          next.push_back(p);
          continue;
        }
        next.push_back(p.intersect_halfspace(h));
        next.push_back(p.intersect_halfspace(negated(h)));
      }
      pieces = std::move(next);
    }
    for (const auto& p : pieces) out.add(p, w);
  }
  return out;
}

/// All facet and span hyperplanes of the cones of X, normalized and deduplicated.
inline IntMatrix cone_hyperplanes(const FanCycle& x) {
  std::set<IntVector> hs;
  for (const auto& [cone, w] : x.facets()) {
    for (const auto& a : cone.facet_normals()) hs.insert(detail::sign_normalized(a));
    for (const auto& e : cone.span_equations()) hs.insert(detail::sign_normalized(e));
  }
  return IntMatrix(hs.begin(), hs.end());
}

/// Refines X (and the extra hyperplanes) until any two cones meet in a common
/// face; coincident cones are merged.
inline FanCycle make_fan(const FanCycle& x, const IntMatrix& extra = {}) {
  IntMatrix hs = cone_hyperplanes(x);
  std::set<IntVector> seen(hs.begin(), hs.end());
  for (const auto& h : extra)
    if (!is_zero(h) && seen.insert(detail::sign_normalized(h)).second) hs.push_back(detail::sign_normalized(h));
  return refine(x, hs);
}

/// Common refinement of X with the cones of Y (weights from X).
inline FanCycle common_refinement(const FanCycle& x, const FanCycle& y) {
  return make_fan(x, cone_hyperplanes(y));
}

/// Primitive generator of (Z^n ∩ span σ) / (Z^n ∩ span τ) pointing into σ,
/// where τ is the facet of σ with inner normal a.
inline IntVector lattice_normal(const Cone& sigma, const IntVector& a) {
  const IntMatrix basis = sigma.span_lattice();
  IntVector values;
  for (const auto& b : basis) values.push_back(dot(a, b));
  const Integer g = vector_gcd(values);
  require(g != 0, ErrorKind::DimensionMismatch, "facet normal vanishes on the span");
  for (auto& v : values) v /= g;
  const IntVector x = linalg::unit_preimage(values);
  IntVector u(sigma.ambient(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) u = add(std::move(u), scaled(basis[i], x[i]));
  return u;
}

namespace detail {

struct GeneralFace {
  Cone cone;
  IntVector sum;
  Rational value = 0;
};

/// Codimension-one faces with the weighted sums of lattice normals (and of
/// φ on them). X must already satisfy the face property.
inline std::map<Cone, GeneralFace> general_face_sums(const FanCycle& x, const PLFunction* phi) {
  std::map<Cone, GeneralFace> faces;
  for (const auto& [sigma, w] : x.facets()) {
    std::optional<RatVector> coeffs;
    const IntMatrix gens = sigma.span_generators();
    std::vector<Rational> gen_values;
    if (phi)
      for (const auto& g : gens) gen_values.push_back(phi->evaluate(tropint::to_rational(g)));
    for (const auto& a : sigma.facet_normals()) {
      const Cone tau = sigma.facet(a);
      const IntVector u = lattice_normal(sigma, a);
      auto [it, inserted] = faces.try_emplace(tau, GeneralFace{tau, IntVector(x.ambient(), 0), 0});
      it->second.sum = add(std::move(it->second.sum), scaled(u, w));
      if (phi) {
        const auto c = linalg::solve(gens, u);
        Rational v = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) v += (*c)[i] * gen_values[i];
        it->second.value += Rational(w) * v;
      }
    }
  }
  return faces;
}

inline bool in_span(const Cone& c, const IntVector& v) {
  for (const auto& e : c.span_equations())
    if (dot(e, v) != 0) return false;
  return true;
}

/// Value at v ∈ span(c) of the linear extension of φ from c.
inline Rational linear_extension(const PLFunction& phi, const Cone& c, const IntVector& v) {
  const IntMatrix gens = c.span_generators();
  if (gens.empty()) return 0;
  const auto coeffs = linalg::solve(gens, v);
  require(coeffs.has_value(), ErrorKind::DimensionMismatch, "vector outside the span of the cone");
  Rational out = 0;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if ((*coeffs)[i] != 0) out += (*coeffs)[i] * phi.evaluate(tropint::to_rational(gens[i]));
  return out;
}

inline void require_linear_on(const PLFunction& phi, const Cone& c) {
  const IntVector p = c.interior_point();
  Rational expected = 0;
  for (const auto& r : c.rays()) expected += phi.evaluate(tropint::to_rational(r));
  for (const auto& l : c.lineality()) {
    // Linear along the lineality: φ(l) + φ(-l) = 0.
    if (phi.evaluate(tropint::to_rational(l)) + phi.evaluate(tropint::to_rational(negated(l))) != 0)
      fail(ErrorKind::NotLinearOnFacet, "function is not linear along the lineality of " + c.to_string());
  }
  if (phi.evaluate(tropint::to_rational(p)) != expected)
    fail(ErrorKind::NotLinearOnFacet, "function is not linear on " + c.to_string());
}

}  // namespace detail

/// First unbalanced codimension-one face, if any. X is refined first.
inline std::optional<std::string> balancing_violation(const FanCycle& x) {
  if (x.is_zero()) return std::nullopt;
  const FanCycle fan = make_fan(x);
  for (const auto& [tau, f] : detail::general_face_sums(fan, nullptr))
    if (!detail::in_span(tau, f.sum)) return "cycle is not balanced at face " + tau.to_string();
  return std::nullopt;
}

inline bool is_balanced(const FanCycle& x) { return !balancing_violation(x); }

/// Weil divisor φ · X; X is refined along φ's breaks first.
inline FanCycle divisor(const PLFunction& phi, const FanCycle& x) {
  require(phi.n == x.ambient(), ErrorKind::DimensionMismatch, "function and cycle live in different spaces");
  if (x.is_zero() || x.declared_dim() <= 0) return FanCycle(x.ambient(), kZeroDim);
  const FanCycle fan = make_fan(x, phi.breaks);
  for (const auto& [sigma, w] : fan.facets()) detail::require_linear_on(phi, sigma);
  FanCycle out(x.ambient(), x.dim() - 1);
  for (const auto& [tau, f] : detail::general_face_sums(fan, &phi)) {
    if (!detail::in_span(tau, f.sum)) fail(ErrorKind::NotBalanced, "input cycle is not balanced at " + tau.to_string());
    const Rational weight = f.value - detail::linear_extension(phi, tau, f.sum);
    require(boost::multiprecision::denominator(weight) == 1, ErrorKind::NotLinearOnFacet,
            "function is not integral on the lattice");
    out.add(tau, boost::multiprecision::numerator(weight));
  }
  return out;
}

inline FanCycle cross_product(const FanCycle& x, const FanCycle& y) {
  const int n1 = x.ambient(), n2 = y.ambient();
  if (x.is_zero() || y.is_zero()) return FanCycle(n1 + n2, kZeroDim);
  FanCycle out(n1 + n2, x.dim() + y.dim());
  auto pad = [&](const IntVector& v, bool first) {
    IntVector out(n1 + n2, 0);
    for (std::size_t i = 0; i < v.size(); ++i) out[first ? i : n1 + i] = v[i];
    return out;
  };
  for (const auto& [a, wa] : x.facets())
    for (const auto& [b, wb] : y.facets()) {
      IntMatrix rays, lin;
      for (const auto& r : a.rays()) rays.push_back(pad(r, true));
      for (const auto& r : b.rays()) rays.push_back(pad(r, false));
      for (const auto& l : a.lineality()) lin.push_back(pad(l, true));
      for (const auto& l : b.lineality()) lin.push_back(pad(l, false));
      out.add(Cone(n1 + n2, rays, lin), wa * wb);
    }
  return out;
}

/// Index of f(Z^n ∩ span σ) in the lattice points of its span.
inline Integer lattice_index(const IntMatrix& f, const Cone& sigma) {
  IntMatrix images;
  for (const auto& b : sigma.span_lattice()) images.push_back(apply(f, b));
  if (static_cast<int>(linalg::rank(images)) != sigma.dim())
    fail(ErrorKind::NotInjective, "map is not injective on the span of " + sigma.to_string());
  return linalg::saturation_index(images, f.size());
}

/// f_* X for an integer matrix f (rows = target coordinates).
inline FanCycle push_forward(const IntMatrix& f, const FanCycle& x) {
  const int m = static_cast<int>(f.size());
  for (const auto& row : f)
    require(static_cast<int>(row.size()) == x.ambient(), ErrorKind::DimensionMismatch, "map has wrong source dimension");
  FanCycle out(m, x.declared_dim());
  for (const auto& [sigma, w] : x.facets()) {
    IntMatrix images;
    for (const auto& b : sigma.span_lattice()) images.push_back(apply(f, b));
    if (static_cast<int>(linalg::rank(images)) != sigma.dim()) continue;
    const Integer index = linalg::saturation_index(images, m);
    IntMatrix rays, lin;
    for (const auto& r : sigma.rays()) rays.push_back(apply(f, r));
    for (const auto& l : sigma.lineality()) lin.push_back(apply(f, l));
    out.add(Cone(m, rays, lin), w * index);
  }
  return make_fan(out);
}

inline bool contains_point(const FanCycle& x, const RatVector& p) {
  for (const auto& [c, w] : x.facets())
    if (c.contains(p)) return true;
  return false;
}

/// Star of X at p: cones σ + R·p over the cones σ containing p.
inline FanCycle star_at(const FanCycle& x, const RatVector& p) {
  require(static_cast<int>(p.size()) == x.ambient(), ErrorKind::DimensionMismatch, "point has wrong length");
  if (!x.is_zero() && !contains_point(x, p)) fail(ErrorKind::PointNotOnCycle, "point is not on the cycle");
  const FanCycle fan = make_fan(x);
  FanCycle out(x.ambient(), x.declared_dim());
  for (const auto& [c, w] : fan.facets()) {
    if (!c.contains(p)) continue;
    IntMatrix rays = c.rays();
    IntMatrix lin = c.lineality();
    if (!is_zero(p)) lin.push_back(primitive(p));
    out.add(Cone(x.ambient(), rays, lin), w);
  }
  return make_fan(out);
}

/// Whether X and Y agree as cycles (equal support and weights after refinement).
inline bool cycle_equals(const FanCycle& x, const FanCycle& y) {
  if (x.ambient() != y.ambient()) return false;
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  if (x.dim() != y.dim()) return false;
  return make_fan(x - y).is_zero();
}

/// Sum of the weights of a zero-dimensional cycle.
inline Integer degree_zero_dim(const FanCycle& x) {
  if (x.is_zero()) return 0;
  require(x.dim() == 0, ErrorKind::NotZeroDimensional,
          "degree needs a zero-dimensional cycle, got dimension " + std::to_string(x.dim()));
  Integer total = 0;
  for (const auto& [c, w] : x.facets()) total += w;
  return total;
}

/// deg(max{0, x_1, ..., x_n}^k · X) for X of dimension k.
inline Integer projective_degree(const FanCycle& x) {
  if (x.is_zero()) return 0;
  const PLFunction h = PLFunction::max_zero_coordinates(x.ambient());
  FanCycle y = x;
  for (int k = x.dim(); k > 0 && !y.is_zero(); --k) y = divisor(h, y);
  return degree_zero_dim(y);
}

/// The cone of a braid chain: rays V_{S_k} for the proper sets, lineality (1,...,1).
inline Cone braid_cone(int n, const Chain& chain) {
  IntMatrix rays;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    IntVector v(n, 0);
    for (int i : elements_of(chain[k])) v[i] = -1;
    rays.push_back(v);
  }
  return Cone(n, rays, {IntVector(n, 1)});
}

inline FanCycle to_fan(const BraidCycle& x) {
  FanCycle out(x.ambient(), x.is_zero() ? x.declared_dim() : x.dim());
  for (const auto& [chain, w] : x.facets()) out.add(braid_cone(x.ambient(), chain), w);
  return out;
}

/// X on the braid arrangement, or nothing unless every cone contains the
/// lineality line and is a union of braid cones.
inline std::optional<BraidCycle> as_braid(const FanCycle& x) {
  const int n = x.ambient();
  BraidCycle out(n, x.is_zero() ? x.declared_dim() : x.dim());
  if (x.is_zero()) return out;
  const RatVector ones(n, 1);
  IntMatrix hs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      IntVector d(n, 0);
      d[i] = 1;
      d[j] = -1;
      hs.push_back(d);
    }
  for (const auto& [c, w] : x.facets())
    if (!c.contains(ones) || !c.contains(RatVector(n, -1))) return std::nullopt;
  const FanCycle fine = refine(x, hs);
  for (const auto& [c, w] : fine.facets()) {
    const Chain chain = point_chain(c.interior_point());
    if (braid_cone(n, chain) != c) return std::nullopt;
    out.add(chain, w);
  }
  return out;
}

/// As as_braid, throwing NotSubcycle.
inline BraidCycle to_braid(const FanCycle& x) {
  auto b = as_braid(x);
  require(b.has_value(), ErrorKind::NotSubcycle, "cycle is not a union of braid cones containing (1,...,1)");
  return *std::move(b);
}

/// Slice at x_R -> -∞, through the braid representation.
inline FanCycle face_at_infinity(const FanCycle& x, SubsetMask r) { return to_fan(face_at_infinity(to_braid(x), r)); }

/// Quotient map R^n -> R^n / L for a saturated lattice L, with a fixed
/// complement. When some maximal minor of L on coordinates K is ±1 (K taken
/// as far right as possible) the complement is spanned by the remaining unit
/// vectors, so q(x) = x_J - B_J B_K^{-1} x_K.
class LinealityQuotient {
 public:
  LinealityQuotient(int n, const IntMatrix& generators) : n_(n) {
    basis_ = linalg::saturation(generators, n);
    const int l = static_cast<int>(basis_.size());
    const int m = n - l;
    std::optional<std::vector<std::size_t>> best;
    detail::for_each_subset(n, l, [&](const std::vector<std::size_t>& k) {
      IntMatrix minor(l, IntVector(l));
      for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) minor[i][j] = basis_[i][k[j]];
      const Integer d = linalg::determinant(minor);
      if (d != 1 && d != -1) return;
      if (!best || std::lexicographical_compare(best->rbegin(), best->rend(), k.rbegin(), k.rend())) best = k;
    });
    // Full basis P = [B | C] as columns; q = last m rows of P^{-1}.
    IntMatrix cols = basis_;
    if (best) {
      for (int j = 0; j < n; ++j) {
        if (std::find(best->begin(), best->end(), static_cast<std::size_t>(j)) != best->end()) continue;
        IntVector e(n, 0);
        e[j] = 1;
        cols.push_back(e);
        section_cols_.push_back(e);
      }
    } else {
      const IntMatrix dual = linalg::integer_kernel(basis_, n);
      section_cols_ = linalg::right_inverse_columns(dual);
      cols.insert(cols.end(), section_cols_.begin(), section_cols_.end());
    }
    RatMatrix p(n, RatVector(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p[i][j] = Rational(cols[j][i]);
    const RatMatrix inv = linalg::inverse(p);
    for (int i = l; i < n; ++i) {
      IntVector row;
      for (int j = 0; j < n; ++j) {
        require(boost::multiprecision::denominator(inv[i][j]) == 1, ErrorKind::NotALinealitySpace,
                "lineality lattice has no unimodular complement");
        row.push_back(boost::multiprecision::numerator(inv[i][j]));
      }
      q_.push_back(row);
    }
    (void)m;
  }

  int ambient() const noexcept { return n_; }
  int quotient_dim() const noexcept { return static_cast<int>(q_.size()); }
  const IntMatrix& basis() const noexcept { return basis_; }
  const IntMatrix& matrix() const noexcept { return q_; }

  IntVector project(const IntVector& x) const { return apply(q_, x); }

  IntVector section(const IntVector& y) const {
    IntVector x(n_, 0);
    for (std::size_t j = 0; j < section_cols_.size(); ++j) x = add(std::move(x), scaled(section_cols_[j], y[j]));
    return x;
  }

  /// X / L; every cone must contain L in its lineality space.
  FanCycle quotient(const FanCycle& x) const {
    require(x.ambient() == n_, ErrorKind::DimensionMismatch, "quotient: ambient dimension mismatch");
    const int l = static_cast<int>(basis_.size());
    FanCycle out(quotient_dim(), x.is_zero() ? kZeroDim : x.dim() - l);
    for (const auto& [c, w] : x.facets()) {
      for (const auto& b : basis_)
        if (!linalg::solve(c.lineality(), b))
          fail(ErrorKind::NotALinealitySpace, "L is not contained in the lineality of " + c.to_string());
      IntMatrix rays, lin;
      for (const auto& r : c.rays()) rays.push_back(project(r));
      for (const auto& v : c.lineality()) lin.push_back(project(v));
      out.add(Cone(quotient_dim(), rays, lin), w);
    }
    return out;
  }

  /// q^{-1}(C).
  FanCycle lift(const FanCycle& c) const {
    require(c.ambient() == quotient_dim(), ErrorKind::DimensionMismatch, "lift: ambient dimension mismatch");
    const int l = static_cast<int>(basis_.size());
    FanCycle out(n_, c.is_zero() ? kZeroDim : c.dim() + l);
    for (const auto& [cone, w] : c.facets()) {
      IntMatrix rays, lin = basis_;
      for (const auto& r : cone.rays()) rays.push_back(section(r));
      for (const auto& v : cone.lineality()) lin.push_back(section(v));
      out.add(Cone(n_, rays, lin), w);
    }
    return out;
  }

 private:
  int n_;
  IntMatrix basis_;
  IntMatrix q_;
  IntMatrix section_cols_;
};

/// X / L with the fixed complement of LinealityQuotient.
inline FanCycle quotient_by_lineality(const FanCycle& x, const IntMatrix& l) {
  return LinealityQuotient(x.ambient(), l).quotient(x);
}

}  // namespace tropint
