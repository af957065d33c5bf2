#pragma once

// Bergman fans and the piecewise linear functions that cut one matroid
// variety out of another.

#include <vector>

#include "tropint/braid.hpp"
#include "tropint/error.hpp"
#include "tropint/matroid.hpp"

namespace tropint {

/// B(M): one cone per maximal chain of flats, weight 1.
inline BraidCycle bergman_fan(const Matroid& m) {
  m.require_loopfree("bergman_fan");
  BraidCycle out(m.size(), m.rank());
  for (const auto& chain : m.maximal_chains()) out.add(chain.flats, 1);
  return out;
}

/// B(Δ_M) in R^{E ⊔ E}.
inline BraidCycle diagonal_fan(const Matroid& m) { return bergman_fan(diagonal_matroid(m)); }

/// Whether every cone of X is a cone of B(M), i.e. all chain sets are flats.
inline bool supported_on(const BraidCycle& x, const Matroid& m) {
  if (x.ambient() != m.size()) return false;
  for (const auto& [chain, w] : x.facets())
    for (SubsetMask s : chain)
      if (!m.is_flat(s)) return false;
  return true;
}

inline void require_subcycle(const BraidCycle& x, const Matroid& m, const std::string& what) {
  require(x.ambient() == m.size(), ErrorKind::DimensionMismatch, what + ": ambient dimension differs from matroid");
  for (const auto& [chain, w] : x.facets())
    for (SubsetMask s : chain)
      if (!m.is_flat(s))
        fail(ErrorKind::NotSubcycle, what + ": cone " + chain_to_string(chain) + " is not a cone of B(M)");
}

/// φ(V_F) = rank_N(F) - rank_M(F) for an elementary quotient N of M.
inline BraidFunction modification_function(const Matroid& m, const Matroid& n) {
  require(m.size() == n.size(), ErrorKind::GroundSetMismatch, "modification_function: ground sets differ");
  if (!is_quotient(m, n)) fail(ErrorKind::NotAQuotient, "modification_function: N is not a quotient of M");
  require(m.rank() - n.rank() == 1, ErrorKind::NotElementaryQuotient,
          "modification_function: rank gap is " + std::to_string(m.rank() - n.rank()) + ", expected 1");
  return BraidFunction::from(m.size(), [&](SubsetMask s) { return std::int64_t{n.rank(s)} - m.rank(s); });
}

/// φ_1, ..., φ_r on R^{E ⊔ E}: φ_i(V_{A⊔B}) = -1 if
/// rank(A) + rank(B) - rank(A ∪ B) >= i, else 0. Application order.
inline std::vector<BraidFunction> diagonal_functions(const Matroid& m) {
  m.require_loopfree("diagonal_functions");
  const int n = m.size();
  Matroid::check_size(2 * n);
  const SubsetMask low = m.ground();
  std::vector<BraidFunction> out;
  for (int i = 1; i <= m.rank(); ++i) {
    out.push_back(BraidFunction::from(2 * n, [&](SubsetMask s) {
      const SubsetMask a = s & low, b = s >> n;
      return std::int64_t{m.rank(a) + m.rank(b) - m.rank(a | b) >= i ? -1 : 0};
    }));
  }
  return out;
}

/// Modification functions of the intermediate chain M = M_k, ..., M_0 = N:
/// φ_j = modification_function(M_j, M_{j-1}), returned in application
/// order j = k, ..., 1 so that each divisor descends one step.
inline std::vector<BraidFunction> quotient_chain_functions(const Matroid& m, const Matroid& n) {
  require(m.size() == n.size(), ErrorKind::GroundSetMismatch, "quotient_chain_functions: ground sets differ");
  if (!is_quotient(m, n)) fail(ErrorKind::NotAQuotient, "quotient_chain_functions: N is not a quotient of M");
  const int k = m.rank() - n.rank();
  std::vector<BraidFunction> out;
  for (int j = k; j >= 1; --j)
    out.push_back(modification_function(intermediate_matroid(m, n, j), intermediate_matroid(m, n, j - 1)));
  return out;
}

/// Applies functions in order: φ_last ··· φ_first · X.
inline BraidCycle apply_divisors(const std::vector<BraidFunction>& phis, BraidCycle x) {
  for (const auto& phi : phis) x = divisor(phi, x);
  return x;
}

/// Tropical modification of C ⊆ B(M) along φ = modification_function(M, N):
/// the graph of φ on C together with the downward cells over φ · C. The new
/// coordinate is appended last.
inline BraidCycle modification_lift(const Matroid& m, const Matroid& n, const BraidCycle& c) {
  const BraidFunction phi = modification_function(m, n);
  require_subcycle(c, m, "modification_lift");
  const int size = m.size();
  const SubsetMask e = SubsetMask{1} << size;
  if (c.is_zero()) return BraidCycle(size + 1, kZeroDim);
  BraidCycle out(size + 1, c.dim());
  for (const auto& [chain, w] : c.facets()) {
    Chain graph;
    for (SubsetMask s : chain) graph.push_back(phi.value(s) == -1 ? (s | e) : s);
    out.add(graph, w);
  }
  const BraidCycle div = divisor(phi, c);
  for (const auto& [tau, w] : div.facets()) {
    const auto blocks = chain_blocks(tau);
    std::size_t first = 0;  // first block whose union has φ = -1
    while (phi.value(tau[first]) != -1) ++first;
    for (std::size_t j = 0; j <= first; ++j) {
      std::vector<SubsetMask> lifted;
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (k == j) lifted.push_back(e);
        lifted.push_back(blocks[k]);
      }
      out.add(chain_from_blocks(lifted), w);
    }
  }
  return out;
}

}  // namespace tropint
