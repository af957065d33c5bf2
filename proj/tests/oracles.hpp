#pragma once

// Independent reference constructions shared by unit and acceptance tests.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "tropint/moduli.hpp"

namespace tropint::oracle {

/// Splits I|J of [n] with n ∈ J and |I|, |J| >= 2, as masks of I.
inline std::vector<SubsetMask> splits(int n) {
  std::vector<SubsetMask> out;
  for (SubsetMask s = 1; s < full_mask(n - 1) + 1; ++s)
    if (popcount(s) >= 2 && popcount(s) <= n - 2 && !(s >> (n - 1))) out.push_back(s);
  return out;
}

/// Two splits with n on the J side are compatible iff the I sides are nested or disjoint.
inline bool compatible(SubsetMask a, SubsetMask b) { return (a & b) == 0 || (a & b) == a || (a & b) == b; }

/// Maximal sets of pairwise compatible splits.
inline std::vector<std::vector<SubsetMask>> trees(int n) {
  const auto all = splits(n);
  std::vector<std::vector<SubsetMask>> out;
  std::vector<SubsetMask> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == n - 3) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < all.size(); ++i) {
      bool ok = true;
      for (SubsetMask s : cur) ok = ok && compatible(s, all[i]);
      if (!ok) continue;
      cur.push_back(all[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// The space of phylogenetic trees: one cone per maximal compatible split set, weight 1,
/// written in the Λ_n coordinates of `model`.
inline FanCycle tree_fan(const ModuliModel& model) {
  const int n = model.n;
  const int m = model.target.quotient_dim();
  FanCycle out(m, n - 3);
  for (const auto& t : trees(n)) {
    IntMatrix rays;
    for (SubsetMask s : t) rays.push_back(model.lambda_coordinates(split_vector(n, s)));
    out.add(Cone(m, rays, {}), 1);
  }
  return out;
}

/// Basis families satisfying the exchange axiom, checked directly.
inline bool exchange_holds(const std::vector<SubsetMask>& bases) {
  const std::set<SubsetMask> family(bases.begin(), bases.end());
  for (SubsetMask b1 : bases)
    for (SubsetMask b2 : bases)
      for (int x : elements_of(b1 & ~b2)) {
        bool found = false;
        for (int y : elements_of(b2 & ~b1))
          found = found || family.count((b1 & ~(SubsetMask{1} << x)) | (SubsetMask{1} << y));
        if (!found) return false;
      }
  return true;
}

/// Sorted basis list of the image of `bases` under the lexicographically least relabelling.
inline std::vector<SubsetMask> canonical_bases(int n, const std::vector<SubsetMask>& bases) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<SubsetMask> best;
  do {
    std::vector<SubsetMask> img;
    for (SubsetMask b : bases) {
      SubsetMask c = 0;
      for (int i : elements_of(b)) c |= SubsetMask{1} << perm[i];
      img.push_back(c);
    }
    std::sort(img.begin(), img.end());
    if (best.empty() || img < best) best = img;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// All matroids on n elements up to isomorphism, as basis families.
inline std::vector<std::vector<SubsetMask>> matroids_up_to_isomorphism(int n) {
  std::set<std::vector<SubsetMask>> seen;
  for (int r = 0; r <= n; ++r) {
    std::vector<SubsetMask> candidates;
    for (SubsetMask s = 0; s <= full_mask(n); ++s)
      if (popcount(s) == r) candidates.push_back(s);
    const std::size_t k = candidates.size();
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << k); ++pick) {
      std::vector<SubsetMask> bases;
      for (std::size_t i = 0; i < k; ++i)
        if (pick >> i & 1) bases.push_back(candidates[i]);
      if (exchange_holds(bases)) seen.insert(canonical_bases(n, bases));
    }
  }
  return {seen.begin(), seen.end()};
}

/// Loopfree matroids on at most `max_n` elements up to isomorphism.
inline std::vector<Matroid> loopfree_corpus(int max_n) {
  std::vector<Matroid> out;
  for (int n = 1; n <= max_n; ++n)
    for (const auto& bases : matroids_up_to_isomorphism(n)) {
      SubsetMask covered = 0;
      for (SubsetMask b : bases) covered |= b;
      if (covered == full_mask(n)) out.push_back(from_bases(n, bases));
    }
  return out;
}

}  // namespace tropint::oracle
