#pragma once

// Loopfree matroids stored as a full rank table over subsets of the ground
// set, plus the constructions needed for quotients and diagonals.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tropint/error.hpp"
#include "tropint/numeric.hpp"

namespace tropint {

/// Subset of a ground set {0, ..., n-1}; bit i set means element i is present.
using SubsetMask = std::uint32_t;

inline constexpr int kMaxGroundSet = 20;

/// Ground-set cap, optionally lowered through TROPINT_MAX_GROUND_SET.
inline int max_ground_set() {
  static const int cap = [] {
    if (const char* env = std::getenv("TROPINT_MAX_GROUND_SET")) {
      const int v = std::atoi(env);
      if (v > 0 && v < kMaxGroundSet) return v;
    }
    return kMaxGroundSet;
  }();
  return cap;
}

inline constexpr SubsetMask full_mask(int n) { return n >= 32 ? ~SubsetMask{0} : (SubsetMask{1} << n) - 1; }

inline constexpr int popcount(SubsetMask m) { return std::popcount(m); }

inline constexpr bool contains(SubsetMask big, SubsetMask small) { return (big & small) == small; }

inline SubsetMask mask_of(std::initializer_list<int> elements) {
  SubsetMask m = 0;
  for (int e : elements) m |= SubsetMask{1} << e;
  return m;
}

inline std::vector<int> elements_of(SubsetMask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

/// Strictly increasing chain of flats; the last entry is the full ground set.
struct FlatChain {
  std::vector<SubsetMask> flats;
  auto operator<=>(const FlatChain&) const = default;
};

class Matroid;

/// Result of deletion or contraction: the minor and, for each of its
/// elements, the index of that element in the original ground set.
struct Minor;

class Matroid {
 public:
  /// Builds a matroid directly from a rank table (2^n entries). The table is
  /// validated against the local rank axioms when `validate` is set.
  Matroid(int n, std::vector<std::uint8_t> rank_table, std::string label = {}, bool validate = true)
      : n_(n), rank_(std::move(rank_table)), label_(std::move(label)) {
    check_size(n);
    require(rank_.size() == (std::size_t{1} << n), ErrorKind::NotAMatroid, "rank table has wrong size");
    if (validate) {
      if (auto witness = axiom_violation()) fail(ErrorKind::NotAMatroid, *witness);
    }
  }

  static void check_size(int n) {
    require(n >= 0, ErrorKind::SizeOverflow, "negative ground set size");
    require(n <= max_ground_set(), ErrorKind::SizeOverflow,
            "ground set of size " + std::to_string(n) + " exceeds cap " + std::to_string(max_ground_set()));
  }

  int size() const noexcept { return n_; }
  SubsetMask ground() const noexcept { return full_mask(n_); }
  int rank() const noexcept { return rank_.back(); }
  int rank(SubsetMask a) const { return rank_[a]; }
  const std::vector<std::uint8_t>& rank_table() const noexcept { return rank_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool operator==(const Matroid& other) const { return n_ == other.n_ && rank_ == other.rank_; }

  std::vector<int> loops() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (rank_[SubsetMask{1} << i] == 0) out.push_back(i);
    return out;
  }
  bool is_loopfree() const { return loops().empty(); }
  void require_loopfree(const std::string& context) const {
    const auto l = loops();
    if (!l.empty()) fail(ErrorKind::HasLoop, context + ": element " + std::to_string(l.front() + 1) + " is a loop");
  }

  SubsetMask closure(SubsetMask a) const {
    SubsetMask c = a;
    const int r = rank_[a];
    for (int i = 0; i < n_; ++i) {
      const SubsetMask bit = SubsetMask{1} << i;
      if (!(a & bit) && rank_[a | bit] == r) c |= bit;
    }
    return c;
  }

  bool is_flat(SubsetMask a) const { return closure(a) == a; }

  /// All flats, sorted as unsigned integers.
  std::vector<SubsetMask> flats() const {
    std::vector<SubsetMask> out;
    for (SubsetMask a = 0; a <= ground(); ++a) {
      if (is_flat(a)) out.push_back(a);
      if (a == ground()) break;
    }
    return out;
  }

  /// Maximal chains of flats ∅ ⊊ F_1 ⊊ ... ⊊ F_r = E (the ∅ entry is implicit).
  std::vector<FlatChain> maximal_chains() const {
    std::vector<FlatChain> out;
    std::vector<SubsetMask> current;
    extend_chain(closure(0), current, out);
    return out;
  }

  /// Covers of a flat F: flats cl(F ∪ x) for x outside F, deduplicated.
  std::vector<SubsetMask> covers(SubsetMask flat) const {
    std::vector<SubsetMask> out;
    for (int i = 0; i < n_; ++i) {
      const SubsetMask bit = SubsetMask{1} << i;
      if (flat & bit) continue;
      const SubsetMask c = closure(flat | bit);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// All bases (subsets of size rank() with full rank).
  std::vector<SubsetMask> bases() const {
    std::vector<SubsetMask> out;
    const int r = rank();
    for (SubsetMask a = 0; a <= ground(); ++a) {
      if (popcount(a) == r && rank_[a] == r) out.push_back(a);
      if (a == ground()) break;
    }
    return out;
  }

  /// Returns a description of the first violated rank axiom, if any.
  std::optional<std::string> axiom_violation() const {
    if (rank_[0] != 0) return "rank(∅) != 0";
    const SubsetMask g = ground();
    for (SubsetMask a = 0;; ++a) {
      const int ra = rank_[a];
      for (int x = 0; x < n_; ++x) {
        const SubsetMask bx = SubsetMask{1} << x;
        if (a & bx) continue;
        const int rx = rank_[a | bx];
        if (rx < ra || rx > ra + 1)
          return "unit increase fails at A=" + std::to_string(a) + ", x=" + std::to_string(x + 1);
        if (rx != ra) continue;
        for (int y = x + 1; y < n_; ++y) {
          const SubsetMask by = SubsetMask{1} << y;
          if (a & by) continue;
          if (rank_[a | by] == ra && rank_[a | bx | by] != ra)
            return "local submodularity fails at A=" + std::to_string(a) + ", x=" + std::to_string(x + 1) +
                   ", y=" + std::to_string(y + 1);
        }
      }
      if (a == g) break;
    }
    return std::nullopt;
  }

 private:
  void extend_chain(SubsetMask flat, std::vector<SubsetMask>& current, std::vector<FlatChain>& out) const {
    if (flat == ground()) {
      FlatChain chain{current};
      chain.flats.push_back(flat);
      // The bottom flat cl(∅) = ∅ for loopfree matroids; it is not stored.
      if (!chain.flats.empty() && chain.flats.front() == 0) chain.flats.erase(chain.flats.begin());
      out.push_back(std::move(chain));
      return;
    }
    if (flat != 0 || !current.empty()) current.push_back(flat);
    for (SubsetMask next : covers(flat)) extend_chain(next, current, out);
    if (flat != 0 || !current.empty()) current.pop_back();
  }

  int n_;
  std::vector<std::uint8_t> rank_;
  std::string label_;
};

struct Minor {
  Matroid matroid;
  std::vector<int> kept;  // kept[i] = original index of new element i
};

namespace detail {

/// Rank table from a family of independent "generators": rank(A) is the
/// largest |A ∩ B| over sets B of the family.
inline std::vector<std::uint8_t> rank_from_family(int n, const std::vector<SubsetMask>& family) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint8_t> indep(size, 0);
  for (SubsetMask b : family) indep[b] = 1;
  // Downward closure, largest sets first.
  for (std::size_t a = size; a-- > 0;) {
    if (!indep[a]) continue;
    for (int i = 0; i < n; ++i) {
      const SubsetMask bit = SubsetMask{1} << i;
      if (a & bit) indep[a & ~bit] = 1;
    }
  }
  std::vector<std::uint8_t> rank(size, 0);
  for (std::size_t a = 1; a < size; ++a) {
    if (indep[a]) {
      rank[a] = static_cast<std::uint8_t>(popcount(static_cast<SubsetMask>(a)));
      continue;
    }
    std::uint8_t best = 0;
    for (int i = 0; i < n; ++i) {
      const SubsetMask bit = SubsetMask{1} << i;
      if (a & bit) best = std::max(best, rank[a & ~bit]);
    }
    rank[a] = best;
  }
  return rank;
}

inline SubsetMask remap(SubsetMask a, const std::vector<int>& kept) {
  SubsetMask out = 0;
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (a & (SubsetMask{1} << kept[i])) out |= SubsetMask{1} << i;
  return out;
}

inline SubsetMask expand(SubsetMask a, const std::vector<int>& kept) {
  SubsetMask out = 0;
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (a & (SubsetMask{1} << i)) out |= SubsetMask{1} << kept[i];
  return out;
}

inline std::vector<int> complement_indices(int n, SubsetMask r) {
  std::vector<int> kept;
  for (int i = 0; i < n; ++i)
    if (!(r & (SubsetMask{1} << i))) kept.push_back(i);
  return kept;
}

}  // namespace detail

/// Matroid with the given bases. Checks equicardinality, the exchange axiom
/// (exhaustively for n <= 12, on a deterministic sample above) and loops.
inline Matroid from_bases(int n, std::vector<SubsetMask> bases, std::string label = {}) {
  Matroid::check_size(n);
  require(!bases.empty(), ErrorKind::NotAMatroid, "empty basis family");
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  const int r = popcount(bases.front());
  for (SubsetMask b : bases) {
    require((b & ~full_mask(n)) == 0, ErrorKind::NotAMatroid, "basis uses elements outside the ground set");
    require(popcount(b) == r, ErrorKind::NotAMatroid, "bases are not equicardinal");
  }
  auto is_basis = [&](SubsetMask b) { return std::binary_search(bases.begin(), bases.end(), b); };
  auto check_pair = [&](SubsetMask b1, SubsetMask b2) {
    for (int x : elements_of(b1 & ~b2)) {
      bool ok = false;
      for (int y : elements_of(b2 & ~b1)) {
        if (is_basis((b1 & ~(SubsetMask{1} << x)) | (SubsetMask{1} << y))) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        std::string b1s, b2s;
        for (int e : elements_of(b1)) b1s += std::to_string(e + 1) + " ";
        for (int e : elements_of(b2)) b2s += std::to_string(e + 1) + " ";
        fail(ErrorKind::NotAMatroid, "basis exchange fails for B1={" + b1s + "}, B2={" + b2s + "}, x=" +
                                         std::to_string(x + 1));
      }
    }
  };
  if (n <= 12) {
    for (SubsetMask b1 : bases)
      for (SubsetMask b2 : bases) check_pair(b1, b2);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, bases.size() - 1);
    for (int s = 0; s < 20000; ++s) check_pair(bases[pick(rng)], bases[pick(rng)]);
  }
  Matroid m(n, detail::rank_from_family(n, bases), std::move(label), false);
  m.require_loopfree("from_bases");
  return m;
}

inline Matroid uniform(int k, int n) {
  require(k >= 1 && k <= n, ErrorKind::InvalidRank,
          "uniform matroid needs 1 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
  Matroid::check_size(n);
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  for (std::size_t a = 0; a < table.size(); ++a)
    table[a] = static_cast<std::uint8_t>(std::min(popcount(static_cast<SubsetMask>(a)), k));
  return Matroid(n, std::move(table), "U" + std::to_string(k) + "," + std::to_string(n), false);
}

/// Edge of the complete graph K_m; vertices are 0-based.
struct Edge {
  int u, v;
};

/// Edges of K_m in lexicographic order (0,1), (0,2), ..., (m-2,m-1).
inline std::vector<Edge> complete_graph_edges(int m) {
  std::vector<Edge> edges;
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) edges.push_back({u, v});
  return edges;
}

/// Cycle matroid of K_m: rank(A) = m - #components of the edge set A.
inline Matroid graphic_complete(int m) {
  require(m >= 2, ErrorKind::OutOfRange, "graphic_complete needs at least 2 vertices");
  const auto edges = complete_graph_edges(m);
  const int n = static_cast<int>(edges.size());
  Matroid::check_size(n);
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  std::vector<int> parent(m);
  for (std::size_t a = 0; a < table.size(); ++a) {
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int merges = 0;
    for (int e = 0; e < n; ++e) {
      if (!(a & (std::size_t{1} << e))) continue;
      const int ru = find(edges[e].u), rv = find(edges[e].v);
      if (ru != rv) {
        parent[ru] = rv;
        ++merges;
      }
    }
    table[a] = static_cast<std::uint8_t>(merges);
  }
  return Matroid(n, std::move(table), "K" + std::to_string(m), false);
}

inline Minor deletion(const Matroid& q, SubsetMask r) {
  require((r & ~q.ground()) == 0, ErrorKind::GroundSetMismatch, "deletion set outside ground set");
  auto kept = detail::complement_indices(q.size(), r);
  const int n = static_cast<int>(kept.size());
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  for (std::size_t a = 0; a < table.size(); ++a)
    table[a] = static_cast<std::uint8_t>(q.rank(detail::expand(static_cast<SubsetMask>(a), kept)));
  return {Matroid(n, std::move(table), {}, false), std::move(kept)};
}

/// Contraction Q/R. The result may contain loops (exactly when R is not a
/// flat); callers needing a loopfree matroid must check.
inline Minor contraction(const Matroid& q, SubsetMask r) {
  require((r & ~q.ground()) == 0, ErrorKind::GroundSetMismatch, "contraction set outside ground set");
  auto kept = detail::complement_indices(q.size(), r);
  const int n = static_cast<int>(kept.size());
  const int rr = q.rank(r);
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  for (std::size_t a = 0; a < table.size(); ++a)
    table[a] = static_cast<std::uint8_t>(q.rank(detail::expand(static_cast<SubsetMask>(a), kept) | r) - rr);
  return {Matroid(n, std::move(table), {}, false), std::move(kept)};
}

/// M ⊕ N on E(M) followed by E(N).
inline Matroid direct_sum(const Matroid& m, const Matroid& n) {
  const int total = m.size() + n.size();
  Matroid::check_size(total);
  std::vector<std::uint8_t> table(std::size_t{1} << total);
  const SubsetMask low = m.ground();
  for (std::size_t a = 0; a < table.size(); ++a) {
    const auto s = static_cast<SubsetMask>(a);
    table[a] = static_cast<std::uint8_t>(m.rank(s & low) + n.rank(s >> m.size()));
  }
  std::string label;
  if (!m.label().empty() && !n.label().empty()) label = m.label() + "+" + n.label();
  return Matroid(total, std::move(table), std::move(label), false);
}

/// Δ_M on E ⊔ E with rank(A ⊔ B) = rank_M(A ∪ B).
inline Matroid diagonal_matroid(const Matroid& m) {
  const int n = m.size();
  Matroid::check_size(2 * n);
  std::vector<std::uint8_t> table(std::size_t{1} << (2 * n));
  const SubsetMask low = m.ground();
  for (std::size_t a = 0; a < table.size(); ++a) {
    const auto s = static_cast<SubsetMask>(a);
    table[a] = static_cast<std::uint8_t>(m.rank((s & low) | (s >> n)));
  }
  return Matroid(2 * n, std::move(table), m.label().empty() ? "" : "Diag(" + m.label() + ")", false);
}

/// N is a quotient of M iff every flat of N is a flat of M.
inline bool is_quotient(const Matroid& m, const Matroid& n) {
  require(m.size() == n.size(), ErrorKind::GroundSetMismatch, "is_quotient: ground sets differ");
  for (SubsetMask f : n.flats())
    if (!m.is_flat(f)) return false;
  return true;
}

/// The matroid Q on E ⊔ R (R appended after E, |R| = r - s) with
/// rank_Q(I ⊔ J) = min(rank_M(I) + |J|, rank_N(I) + r - s), so that
/// Q \ R = M and Q / R = N.
inline Matroid quotient_witness(const Matroid& m, const Matroid& n) {
  require(is_quotient(m, n), ErrorKind::NotAQuotient, "quotient_witness: N is not a quotient of M");
  const int gap = m.rank() - n.rank();
  const int e = m.size();
  const int total = e + gap;
  Matroid::check_size(total);
  std::vector<std::uint8_t> table(std::size_t{1} << total);
  const SubsetMask low = m.ground();
  for (std::size_t a = 0; a < table.size(); ++a) {
    const auto s = static_cast<SubsetMask>(a);
    const SubsetMask i = s & low;
    const int j = popcount(s >> e);
    table[a] = static_cast<std::uint8_t>(std::min(m.rank(i) + j, n.rank(i) + gap));
  }
  return Matroid(total, std::move(table), {}, false);
}

/// M_i with rank min(rank_N(A) + i, rank_M(A)); M_0 = N and M_{r-s} = M.
inline Matroid intermediate_matroid(const Matroid& m, const Matroid& n, int i) {
  require(is_quotient(m, n), ErrorKind::NotAQuotient, "intermediate_matroid: N is not a quotient of M");
  const int gap = m.rank() - n.rank();
  require(i >= 0 && i <= gap, ErrorKind::IndexOutOfRange,
          "intermediate index " + std::to_string(i) + " outside [0," + std::to_string(gap) + "]");
  std::vector<std::uint8_t> table(m.rank_table().size());
  for (std::size_t a = 0; a < table.size(); ++a) {
    const auto s = static_cast<SubsetMask>(a);
    table[a] = static_cast<std::uint8_t>(std::min(n.rank(s) + i, m.rank(s)));
  }
  return Matroid(m.size(), std::move(table), {}, false);
}

/// M_p: the matroid whose bases are the p-minimum bases of M. May have loops.
inline Matroid induced_matroid_at(const Matroid& m, const RatVector& p) {
  require(static_cast<int>(p.size()) == m.size(), ErrorKind::GroundSetMismatch, "point has wrong length");
  const auto all = m.bases();
  std::vector<SubsetMask> best;
  Rational best_weight;
  for (SubsetMask b : all) {
    Rational w = 0;
    for (int i : elements_of(b)) w += p[i];
    if (best.empty() || w < best_weight) {
      best.assign(1, b);
      best_weight = w;
    } else if (w == best_weight) {
      best.push_back(b);
    }
  }
  return Matroid(m.size(), detail::rank_from_family(m.size(), best), {}, false);
}

/// Connected components (as masks, ordered by smallest element): the
/// minimal nonempty separators S with rank(S) + rank(E \ S) = rank(E).
inline std::vector<SubsetMask> connected_components(const Matroid& m) {
  const SubsetMask g = m.ground();
  std::vector<SubsetMask> component(m.size(), g);
  for (SubsetMask s = 1; s < g; ++s) {
    if (m.rank(s) + m.rank(g & ~s) != m.rank()) continue;
    for (int i = 0; i < m.size(); ++i)
      if (s & (SubsetMask{1} << i)) component[i] &= s;
  }
  std::vector<SubsetMask> out;
  for (int i = 0; i < m.size(); ++i)
    if (std::find(out.begin(), out.end(), component[i]) == out.end()) out.push_back(component[i]);
  return out;
}

struct IntersectionReport {
  Matroid matroid;  // N ∧ N', possibly with loops
  int rank;
};

/// Matroid intersection N ∧ N' = (N* ∨ N'*)*: its bases are the sets
/// B ∩ B' of minimum cardinality.
inline IntersectionReport matroid_intersection(const Matroid& a, const Matroid& b) {
  require(a.size() == b.size(), ErrorKind::GroundSetMismatch, "matroid_intersection: ground sets differ");
  std::vector<SubsetMask> meets;
  int best = a.size() + 1;
  for (SubsetMask x : a.bases())
    for (SubsetMask y : b.bases()) {
      const int c = popcount(x & y);
      if (c < best) {
        best = c;
        meets.clear();
      }
      if (c == best) meets.push_back(x & y);
    }
  std::sort(meets.begin(), meets.end());
  meets.erase(std::unique(meets.begin(), meets.end()), meets.end());
  Matroid result(a.size(), detail::rank_from_family(a.size(), meets), {}, false);
  const int r = result.rank();
  return {std::move(result), r};
}

/// Relabels the ground set: element i of the result is element perm[i] of m.
inline Matroid permuted(const Matroid& m, const std::vector<int>& perm) {
  require(static_cast<int>(perm.size()) == m.size(), ErrorKind::GroundSetMismatch, "permutation has wrong length");
  std::vector<std::uint8_t> table(m.rank_table().size());
  for (std::size_t a = 0; a < table.size(); ++a)
    table[a] = static_cast<std::uint8_t>(m.rank(detail::expand(static_cast<SubsetMask>(a), perm)));
  return Matroid(m.size(), std::move(table), m.label(), false);
}

}  // namespace tropint
