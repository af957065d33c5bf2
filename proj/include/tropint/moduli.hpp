#pragma once

// Intersection products on trop(M)/L and the moduli fans M_n realised as
// quotients of graphic Bergman fans.

#include <string>
#include <vector>

#include "tropint/bergman.hpp"
#include "tropint/fan_cycle.hpp"
#include "tropint/intersection.hpp"

namespace tropint {

/// Cycles with an arbitrary fan structure must lie in B(M); each cell of the
/// braid refinement is checked at a relative interior point.
inline void require_supported(const Matroid& m, const FanCycle& x, const std::string& what) {
  require(x.ambient() == m.size(), ErrorKind::DimensionMismatch, what + ": ambient dimension mismatch");
  const FanCycle fine = make_fan(x, PLFunction::from_braid(BraidFunction(m.size())).breaks);
  for (const auto& [c, w] : fine.facets())
    if (!induced_matroid_at(m, to_rational(c.interior_point())).is_loopfree())
      fail(ErrorKind::NotSubcycle, what + ": " + c.to_string() + " is not contained in B(" + m.label() + ")");
}

/// C · D on B(M) for cycles with any fan structure: the diagonal functions
/// cut C × D in the general layer, then project to the first factor.
inline FanCycle intersect_on_matroid(const Matroid& m, const FanCycle& c, const FanCycle& d) {
  m.require_loopfree("intersect_on_matroid");
  require_supported(m, c, "intersect_on_matroid (C)");
  require_supported(m, d, "intersect_on_matroid (D)");
  const int n = m.size();
  FanCycle x = cross_product(c, d);
  if (m.rank(full_mask(n)) == n) {
    // On R^n the cutters max{x_i, y_i} give the same product with far fewer breaks.
    for (int i = 0; i < n; ++i) {
      IntMatrix forms(2, IntVector(2 * n, 0));
      forms[0][i] = forms[1][n + i] = 1;
      x = divisor(PLFunction::max_of(forms), x);
    }
  } else {
    for (const auto& phi : diagonal_functions(m)) x = divisor(PLFunction::from_braid(phi), x);
  }
  IntMatrix first(n, IntVector(2 * n, 0));
  for (int i = 0; i < n; ++i) first[i][i] = 1;
  return push_forward(first, x);
}

/// C · D := (q^{-1}C · q^{-1}D) / L for cycles C, D in B(M)/L.
inline FanCycle intersect_mod_lineality(const Matroid& m, const LinealityQuotient& q, const FanCycle& c,
                                        const FanCycle& d) {
  require(q.ambient() == m.size(), ErrorKind::DimensionMismatch, "quotient map does not match the matroid");
  const FanCycle lc = q.lift(c), ld = q.lift(d);
  const auto bc = as_braid(lc), bd = as_braid(ld);
  if (bc && bd) return q.quotient(to_fan(intersect_on_matroid(m, *bc, *bd)));
  return q.quotient(intersect_on_matroid(m, lc, ld));
}

/// Pair index of {i, j} (0-based, i < j) in the lexicographic list of pairs of [n].
inline int pair_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// The vector M_{I|J} in R^{C(n,2)}: 1 on pairs separated by the split.
inline IntVector split_vector(int n, SubsetMask i_side) {
  IntVector v(n * (n - 1) / 2, 0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const bool ia = i_side & (SubsetMask{1} << a);
      const bool ib = i_side & (SubsetMask{1} << b);
      if (ia != ib) v[pair_index(n, a, b)] = 1;
    }
  return v;
}

/// trop(K_{n-1})/L together with the linear map f onto M_n.
struct ModuliModel {
  int n = 0;
  Matroid graph = uniform(1, 1);
  LinealityQuotient domain{1, {}};         // R^{edges} -> R^{edges}/L
  LinealityQuotient target{1, {}};         // R^{C(n,2)} -> R^{C(n,2)}/Im φ_n
  IntMatrix lambda_basis;                  // basis of Λ_n in target quotient coordinates
  IntMatrix f_tilde;                       // b = f~(a) on R^{edges} -> R^{C(n,2)}
  IntMatrix map;                           // f in (domain quotient, Λ_n) coordinates
  Integer determinant = 0;
  FanCycle quotient_fan{1, kZeroDim};      // B(K_{n-1})/L
  FanCycle image{1, kZeroDim};             // f_*(B(K_{n-1})/L) in Λ_n coordinates

  /// Λ_n coordinates of a vector of R^{C(n,2)} lying in the lattice.
  IntVector lambda_coordinates(const IntVector& b) const {
    return linalg::lattice_coordinates(lambda_basis, target.project(b));
  }
};

inline ModuliModel moduli_mn(int n) {
  require(n >= 4 && n <= 7, ErrorKind::OutOfRange, "moduli_mn supports 4 <= n <= 7, got " + std::to_string(n));
  ModuliModel out;
  out.n = n;
  out.graph = graphic_complete(n - 1);
  const auto edges = complete_graph_edges(n - 1);
  const int e = static_cast<int>(edges.size());
  const int pairs = n * (n - 1) / 2;
  out.domain = LinealityQuotient(e, {IntVector(e, 1)});

  // Im φ_n: columns a ↦ (a_i + a_j).
  IntMatrix phi_cols;
  for (int k = 0; k < n; ++k) {
    IntVector col(pairs, 0);
    for (int j = 0; j < n; ++j)
      if (j != k) col[pair_index(n, k, j)] = 1;
    phi_cols.push_back(col);
  }
  out.target = LinealityQuotient(pairs, phi_cols);

  out.f_tilde.assign(pairs, IntVector(e, 0));
  for (int k = 0; k < e; ++k) out.f_tilde[pair_index(n, edges[k].u, edges[k].v)][k] = 2;

  IntMatrix generators;
  for (SubsetMask s = 1; s < full_mask(n); ++s) {
    if (s & (SubsetMask{1} << (n - 1))) continue;  // n lies in J
    if (popcount(s) < 2 || popcount(s) > n - 2) continue;
    generators.push_back(out.target.project(split_vector(n, s)));
  }
  out.lambda_basis = linalg::hermite(generators);
  const int m = out.target.quotient_dim();
  require(static_cast<int>(out.lambda_basis.size()) == m, ErrorKind::DimensionMismatch, "splits do not span Λ_n");

  // f on the domain quotient lattice, column by column.
  out.map.assign(m, IntVector(out.domain.quotient_dim(), 0));
  for (int k = 0; k < out.domain.quotient_dim(); ++k) {
    IntVector y(out.domain.quotient_dim(), 0);
    y[k] = 1;
    const IntVector col = out.lambda_coordinates(tropint::apply(out.f_tilde, out.domain.section(y)));
    for (int i = 0; i < m; ++i) out.map[i][k] = col[i];
  }
  out.determinant = linalg::determinant(out.map);
  out.quotient_fan = out.domain.quotient(to_fan(bergman_fan(out.graph)));
  out.image = push_forward(out.map, out.quotient_fan);
  return out;
}

/// M_n^lab(Δ, R^r) ≅ trop(K_{N-1} ⊕ U_{r+1,r+1}) / (L × L') with N = n + |Δ|.
struct ModuliLabModel {
  Matroid matroid = uniform(1, 1);
  LinealityQuotient quotient{1, {}};
  FanCycle fan{1, kZeroDim};
};

inline ModuliLabModel moduli_mlab(int n, int degree, int r) {
  const int marks = n + degree;
  require(marks >= 3, ErrorKind::OutOfRange, "moduli_mlab needs n + |Δ| >= 3");
  require(r >= 0, ErrorKind::OutOfRange, "ambient dimension must be nonnegative");
  ModuliLabModel out;
  const Matroid g = graphic_complete(marks - 1);
  out.matroid = direct_sum(g, uniform(r + 1, r + 1));
  const int e = g.size();
  const int total = out.matroid.size();
  IntVector l1(total, 0), l2(total, 0);
  for (int i = 0; i < total; ++i) (i < e ? l1 : l2)[i] = 1;
  out.quotient = LinealityQuotient(total, {l1, l2});
  // B(M ⊕ N) = B(M) × B(N); the product structure carries the full lineality L × L'.
  out.fan = out.quotient.quotient(cross_product(to_fan(bergman_fan(g)), to_fan(bergman_fan(uniform(r + 1, r + 1)))));
  return out;
}

}  // namespace tropint
