#pragma once

// Exact linear algebra over Q and Z: echelon forms, kernels, saturation and
// lattice indices. Sizes are small (ambient dimension rarely above 20), so
// everything is dense and straightforward.

#include <optional>
#include <utility>

#include "tropint/error.hpp"
#include "tropint/numeric.hpp"

namespace tropint::linalg {

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t cols = a.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  a.resize(row);
  return pivots;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

inline std::size_t rank(const IntMatrix& rows) {
  RatMatrix a = to_rational(rows);
  return rref(a).size();
}

inline std::size_t rank(RatMatrix rows) { return rref(rows).size(); }

/// Basis of {x : A x = 0}; A has `cols` columns (needed when A is empty).
inline RatMatrix nullspace(RatMatrix a, std::size_t cols) {
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVector v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline RatMatrix nullspace(const IntMatrix& a, std::size_t cols) { return nullspace(to_rational(a), cols); }

/// Coefficients c with sum_i c_i * gens[i] = target, if any exist.
inline std::optional<RatVector> solve(const IntMatrix& gens, const RatVector& target) {
  const std::size_t k = gens.size();
  const std::size_t n = target.size();
  // Augmented system: n equations, k unknowns.
  RatMatrix a(n, RatVector(k + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = gens[j][i];
    a[i][k] = target[i];
  }
  const auto pivots = rref(a);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  RatVector c(k, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) c[pivots[r]] = a[r][k];
  return c;
}

inline std::optional<RatVector> solve(const IntMatrix& gens, const IntVector& target) {
  return solve(gens, tropint::to_rational(target));
}

/// Row-style Hermite normal form of the lattice spanned by the rows.
/// Pivots are positive and entries above a pivot are reduced into [0, pivot).
/// Zero rows are dropped, so the result is a canonical lattice basis.
inline IntMatrix hermite(IntMatrix a) {
  if (a.empty()) return a;
  const std::size_t cols = a.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    while (true) {
      // Pick the row (>= row) with the smallest nonzero |entry| in this column.
      std::size_t best = a.size();
      for (std::size_t r = row; r < a.size(); ++r) {
        if (a[r][col] == 0) continue;
        if (best == a.size() || abs(a[r][col]) < abs(a[best][col])) best = r;
      }
      if (best == a.size()) break;
      std::swap(a[row], a[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < a.size(); ++r) {
        if (a[r][col] == 0) continue;
        const Integer q = a[r][col] / a[row][col];
        for (std::size_t c = col; c < cols; ++c) a[r][c] -= q * a[row][c];
        if (a[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (row >= a.size() || a[row][col] == 0) continue;
    if (a[row][col] < 0)
      for (auto& x : a[row]) x = -x;
    for (std::size_t r = 0; r < row; ++r) {
      Integer q = a[r][col] / a[row][col];
      if (a[r][col] - q * a[row][col] < 0) q -= 1;
      if (q != 0)
        for (std::size_t c = col; c < cols; ++c) a[r][c] -= q * a[row][c];
    }
    ++row;
  }
  a.resize(row);
  return a;
}

/// Lattice basis of {x in Z^cols : A x = 0}. The result is saturated and in
/// Hermite normal form.
inline IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols) {
  const std::size_t m = a.size();
  // Work on [A^T | I]; unimodular row operations keep the right block a basis
  // transform, so rows whose left block vanishes span the kernel.
  IntMatrix w(cols, IntVector(m + cols, 0));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < m; ++j) w[i][j] = a[j][i];
    w[i][m + i] = 1;
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < cols; ++col) {
    while (true) {
      std::size_t best = cols;
      for (std::size_t r = row; r < cols; ++r) {
        if (w[r][col] == 0) continue;
        if (best == cols || abs(w[r][col]) < abs(w[best][col])) best = r;
      }
      if (best == cols) break;
      std::swap(w[row], w[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < cols; ++r) {
        if (w[r][col] == 0) continue;
        const Integer q = w[r][col] / w[row][col];
        for (std::size_t c = col; c < m + cols; ++c) w[r][c] -= q * w[row][c];
        if (w[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (w[row][col] != 0) ++row;
  }
  IntMatrix kernel;
  for (std::size_t r = row; r < cols; ++r) kernel.emplace_back(w[r].begin() + static_cast<std::ptrdiff_t>(m), w[r].end());
  return hermite(std::move(kernel));
}

/// Canonical basis of span_R(gens) ∩ Z^n.
inline IntMatrix saturation(const IntMatrix& gens, std::size_t n) {
  if (gens.empty()) return {};
  const IntMatrix orth = integer_kernel(gens, n);
  return integer_kernel(orth, n);
}

/// Integer basis of the orthogonal complement of span(gens) in R^n.
inline IntMatrix orthogonal_complement(const IntMatrix& gens, std::size_t n) { return integer_kernel(gens, n); }

inline Rational determinant(RatMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      std::swap(a[sel], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

inline Integer determinant(const IntMatrix& a) {
  const Rational d = determinant(to_rational(a));
  return boost::multiprecision::numerator(d);
}

/// Coordinates of v in the lattice basis `basis`; throws if v is not an
/// integral combination.
inline IntVector lattice_coordinates(const IntMatrix& basis, const IntVector& v) {
  auto c = solve(basis, v);
  require(c.has_value(), ErrorKind::DimensionMismatch, "vector " + to_string(v) + " not in lattice span");
  IntVector out;
  out.reserve(c->size());
  for (const auto& x : *c) {
    require(boost::multiprecision::denominator(x) == 1, ErrorKind::DimensionMismatch,
            "vector " + to_string(v) + " not an integral combination of the basis");
    out.push_back(boost::multiprecision::numerator(x));
  }
  return out;
}

/// Index of the lattice spanned by `gens` inside its saturation.
inline Integer saturation_index(const IntMatrix& gens, std::size_t n) {
  const IntMatrix basis = hermite(gens);
  if (basis.empty()) return 1;
  const IntMatrix sat = saturation(basis, n);
  IntMatrix coords;
  for (const auto& b : basis) coords.push_back(lattice_coordinates(sat, b));
  Integer d = determinant(coords);
  return d < 0 ? Integer(-d) : d;
}

/// Inverse of a square rational matrix; throws if singular.
inline RatMatrix inverse(const RatMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix w(n, RatVector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a[i][j];
    w[i][n + i] = 1;
  }
  const auto pivots = rref(w);
  require(pivots.size() == n && (n == 0 || pivots.back() == n - 1), ErrorKind::DimensionMismatch,
          "matrix is singular");
  RatMatrix out(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = w[i][n + j];
  return out;
}

/// Integer vectors s_1, ..., s_m with q s_j = e_j, for q (m x n) whose rows
/// span a saturated lattice.
inline IntMatrix right_inverse_columns(const IntMatrix& q) {
  const std::size_t m = q.size();
  if (m == 0) return {};
  const std::size_t n = q.front().size();
  IntMatrix w(n, IntVector(m + n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) w[i][j] = q[j][i];
    w[i][m + i] = 1;
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    while (true) {
      std::size_t best = n;
      for (std::size_t r = row; r < n; ++r) {
        if (w[r][col] == 0) continue;
        if (best == n || abs(w[r][col]) < abs(w[best][col])) best = r;
      }
      if (best == n) break;
      std::swap(w[row], w[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < n; ++r) {
        if (w[r][col] == 0) continue;
        const Integer f = w[r][col] / w[row][col];
        for (std::size_t c = col; c < m + n; ++c) w[r][c] -= f * w[row][c];
        if (w[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (w[row][col] != 0) ++row;
  }
  require(row == m, ErrorKind::DimensionMismatch, "rows are not independent");
  // q u_r = t_r for the top rows; s = U^T (T^T)^{-1}.
  RatMatrix tt(m, RatVector(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) tt[i][j] = Rational(w[j][i]);
  const RatMatrix tinv = inverse(tt);
  IntMatrix out(m, IntVector(n, 0));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Rational v = 0;
      for (std::size_t r = 0; r < m; ++r) v += Rational(w[r][m + i]) * tinv[r][j];
      require(boost::multiprecision::denominator(v) == 1, ErrorKind::DimensionMismatch, "row lattice is not saturated");
      out[j][i] = boost::multiprecision::numerator(v);
    }
  return out;
}

/// Solves a·x = 1 for a primitive integer vector a (extended Euclid).
inline IntVector unit_preimage(const IntVector& a) {
  const std::size_t n = a.size();
  IntVector x(n, 0);
  Integer g = 0;
  // Running combination: g = sum x_i a_i.
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    if (g == 0) {
      g = a[i];
      x[i] = 1;
      continue;
    }
    // Extended gcd of (g, a[i]).
    Integer old_r = g, r = a[i], old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      const Integer q = old_r / r;
      Integer tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
      tmp = old_t - q * t;
      old_t = t;
      t = tmp;
    }
    for (auto& xi : x) xi *= old_s;
    x[i] += old_t;
    g = old_r;
  }
  require(g == 1 || g == -1, ErrorKind::DimensionMismatch, "unit_preimage: vector is not primitive");
  if (g == -1)
    for (auto& xi : x) xi = -xi;
  return x;
}

}  // namespace tropint::linalg
