// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tropint/tropint.hpp"

using namespace tropint;

namespace {

// Pinned limits (seconds) and sample sizes.
constexpr double kSelfIntersectionLimit = 5;
constexpr double kDiagonalU34Limit = 60;
constexpr double kDiagonalU23Limit = 5;
constexpr double kPropertiesLimit = 600;
constexpr double kModuliLimit = 60;
constexpr int kPropertyInstances = 54;
constexpr int kShawInstances = 20;
constexpr int kPullbackInstances = 20;
constexpr int kMembershipPoints = 1000;
constexpr std::uint64_t kSeed = 20240601;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Every cycle produced below is recorded for the balancing criterion.
struct BalanceLog {
  long checked = 0;
  std::vector<std::string> failures;

  void operator()(const BraidCycle& x, const std::string& what) {
    ++checked;
    if (!is_balanced(x)) failures.push_back(what);
  }
  void operator()(const FanCycle& x, const std::string& what) {
    ++checked;
    if (!is_balanced(x)) failures.push_back(what);
  }
} balance;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail = "first failure: " + what;
    pass = pass && ok;
  }
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), since(t),
              o.detail.empty() ? "" : " -- ", o.detail.c_str());
  std::fflush(stdout);
}

BraidCycle braid_line(int n, Integer w) {
  BraidCycle x(n, 1);
  x.add({full_mask(n)}, w);
  return x;
}

Matroid two_lines() { return from_bases(4, {0b0101, 0b0110, 0b1001, 0b1010}, "N"); }

/// Random integer function on all braid rays, values in [-2, 2].
BraidFunction random_function(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> v(-2, 2);
  return BraidFunction::from(n, [&](SubsetMask) { return static_cast<std::int64_t>(v(rng)); });
}

/// Quotients of M (same ground set) from the small corpus, plus truncations.
std::vector<Matroid> quotients_of(const Matroid& m, const std::vector<Matroid>& corpus) {
  std::vector<Matroid> out;
  for (const auto& n : corpus)
    if (n.size() == m.size() && is_quotient(m, n)) out.push_back(n);
  if (out.empty()) {
    const int r = m.rank(full_mask(m.size()));
    for (int k = 1; k <= r; ++k) {
      std::vector<std::uint8_t> table(std::size_t{1} << m.size());
      for (SubsetMask s = 0; s < table.size(); ++s) table[s] = static_cast<std::uint8_t>(std::min(m.rank(s), k));
      out.emplace_back(m.size(), std::move(table));
    }
  }
  return out;
}

struct Instance {
  Matroid m;
  BraidCycle c, d, e;
  std::string label;
};

/// Subcycles of B(M): B(N) for quotients N, divisors of random functions, and sums.
std::vector<Instance> property_corpus(const std::vector<Matroid>& small, std::mt19937_64& rng) {
  std::vector<Matroid> ambients{uniform(2, 3), uniform(3, 4), graphic_complete(4)};
  std::vector<Instance> out;
  const int per = kPropertyInstances / static_cast<int>(ambients.size());
  for (const auto& m : ambients) {
    const auto qs = quotients_of(m, small);
    const BraidCycle whole = bergman_fan(m);
    auto random_cycle = [&](int kind) -> BraidCycle {
      std::uniform_int_distribution<std::size_t> pick(0, qs.size() - 1);
      switch (kind) {
        case 0:
          return bergman_fan(qs[pick(rng)]);
        case 1:
          return divisor(random_function(m.size(), rng), whole);
        default: {
          // Sum of two cycles of the same dimension.
          const BraidCycle a = divisor(random_function(m.size(), rng), whole);
          const BraidCycle b = divisor(random_function(m.size(), rng), whole);
          return a + b;
        }
      }
    };
    std::uniform_int_distribution<int> kind(0, 2);
    for (int i = 0; i < per; ++i) {
      Instance inst{m, random_cycle(kind(rng)), random_cycle(kind(rng)), random_cycle(kind(rng)),
                    m.label() + "#" + std::to_string(i)};
      out.push_back(std::move(inst));
    }
  }
  return out;
}

bool support_within(const BraidCycle& x, const BraidCycle& y) {
  for (const auto& [chain, w] : x.facets()) {
    RatVector p(x.ambient(), 0);
    for (SubsetMask f : chain)
      for (int i : elements_of(f)) p[i] -= 1;
    if (!contains_point(y, p)) return false;
  }
  return true;
}

}  // namespace

int main() {
  std::mt19937_64 rng(kSeed);
  const std::vector<Matroid> small = oracle::loopfree_corpus(5);

  report(1, "self-intersection of B(N) in B(U34) is the line R(1,1,1,1) with weight -1", [] {
    Outcome o;
    const auto t = Clock::now();
    const BraidCycle x = intersect_on_matroid(uniform(3, 4), bergman_fan(two_lines()), bergman_fan(two_lines()));
    balance(x, "criterion 1 product");
    o.check(x == braid_line(4, -1), "got " + x.to_string());
    o.check(since(t) < kSelfIntersectionLimit, "runtime");
    return o;
  });

  report(2, "diagonal functions cut B(M x M) down to the diagonal for U34 and U23", [] {
    Outcome o;
    for (const auto& [m, limit] : {std::pair{uniform(3, 4), kDiagonalU34Limit}, std::pair{uniform(2, 3), kDiagonalU23Limit}}) {
      const auto t = Clock::now();
      BraidCycle x = bergman_fan(direct_sum(m, m));
      balance(x, "B(M+M)");
      for (const auto& phi : diagonal_functions(m)) {
        x = divisor(phi, x);
        balance(x, "partial diagonal cut of " + m.label());
      }
      // Oracle: B(M) pushed forward along x -> (x, x).
      std::vector<int> twice(2 * m.size());
      for (int i = 0; i < 2 * m.size(); ++i) twice[i] = i % m.size();
      o.check(x == push_forward(bergman_fan(m), twice), "diagonal of " + m.label());
      o.check(x == diagonal_fan(m), "diagonal_fan of " + m.label());
      o.check(since(t) < limit, "runtime for " + m.label());
    }
    return o;
  });

  report(3, "projective degree of B(M) is 1 for all loopfree matroids on <= 5 elements, U34, K4", [&] {
    Outcome o;
    const int counts[] = {1, 2, 4, 8, 17, 38};
    for (int n = 0; n <= 5; ++n)
      o.check(oracle::matroids_up_to_isomorphism(n).size() == static_cast<std::size_t>(counts[n]),
              "isomorphism class count on " + std::to_string(n) + " elements");
    std::vector<Matroid> all = small;
    all.push_back(uniform(3, 4));
    all.push_back(graphic_complete(4));
    for (const auto& m : all) {
      const BraidCycle b = bergman_fan(m);
      balance(b, "B(M)");
      o.check(projective_degree(b) == 1, "degree of B(" + m.label() + ")");
      // Independent route through the general layer; it is slow beyond four elements.
      if (m.size() <= 4) o.check(projective_degree(to_fan(b)) == 1, "fan-layer degree of B(" + m.label() + ")");
    }
    o.detail = o.pass ? std::to_string(all.size()) + " matroids" : o.detail;
    return o;
  });

  report(4, "deletion is projection and contraction is the face at infinity", [] {
    Outcome o;
    std::vector<Matroid> qs{uniform(2, 3), uniform(3, 4), quotient_witness(uniform(3, 4), two_lines()),
                            quotient_witness(uniform(2, 3), uniform(1, 3)), quotient_witness(uniform(3, 4), uniform(2, 4))};
    int cases = 0;
    for (const auto& q : qs) {
      const int n = q.size();
      const BraidCycle b = bergman_fan(q);
      for (SubsetMask r = 1; r < full_mask(n); ++r) {
        // Hypotheses: R is a flat and some basis avoids R.
        if (!q.is_flat(r)) continue;
        const Minor del = deletion(q, r), con = contraction(q, r);
        if (del.matroid.rank(full_mask(del.matroid.size())) != q.rank(full_mask(n))) continue;
        if (!del.matroid.is_loopfree()) continue;
        ++cases;
        const BraidCycle pushed = push_forward(b, del.kept);
        balance(pushed, "projection");
        o.check(pushed == bergman_fan(del.matroid), "projection of " + q.label() + " at " + chain_to_string({r}));
        const BraidCycle face = face_at_infinity(b, r);
        balance(face, "face at infinity");
        o.check(face == bergman_fan(con.matroid), "face at infinity of " + q.label() + " at " + chain_to_string({r}));
      }
    }
    o.check(cases > 0, "no admissible cases");
    if (o.pass) o.detail = std::to_string(cases) + " (Q, R) pairs";
    return o;
  });

  std::vector<Instance> corpus = property_corpus(small, rng);

  report(5, "product properties (support, fan, divisor, unit, commutative, cut-out, associative, distributive)", [&] {
    Outcome o;
    const auto t = Clock::now();
    int count = 0;
    for (const auto& inst : corpus) {
      const Matroid& m = inst.m;
      const BraidCycle whole = bergman_fan(m);
      const BraidCycle cd = intersect_on_matroid(m, inst.c, inst.d);
      balance(cd, "C.D");
      // (1) support and (2) fan: every facet of C.D is a braid cone through 0 inside |C| and |D|.
      o.check(support_within(cd, inst.c) && support_within(cd, inst.d), "(1) support " + inst.label);
      o.check(cd.is_zero() || cd.dim() == inst.c.dim() + inst.d.dim() - m.rank(full_mask(m.size())),
              "(2) dimension " + inst.label);
      // (3) a Cartier divisor on C commutes with the product.
      const BraidFunction phi = random_function(m.size(), rng);
      const BraidCycle lhs3 = intersect_on_matroid(m, divisor(phi, inst.c), inst.d);
      balance(lhs3, "(phi.C).D");
      o.check(lhs3 == divisor(phi, cd), "(3) " + inst.label);
      // (4) unit.
      o.check(intersect_on_matroid(m, inst.c, whole) == inst.c, "(4) " + inst.label);
      // (5) commutativity.
      o.check(intersect_on_matroid(m, inst.d, inst.c) == cd, "(5) " + inst.label);
      // (6) C cut out by functions: C.D = psi_s ... psi_1 . D.
      std::vector<BraidFunction> psis{random_function(m.size(), rng)};
      if (m.rank(full_mask(m.size())) > 2) psis.push_back(random_function(m.size(), rng));
      const BraidCycle cut = apply_divisors(psis, whole);
      balance(cut, "psi . B(M)");
      o.check(intersect_on_matroid(m, cut, inst.d) == apply_divisors(psis, inst.d), "(6) " + inst.label);
      // (7) associativity.
      const BraidCycle left = intersect_on_matroid(m, cd, inst.e);
      const BraidCycle right = intersect_on_matroid(m, inst.c, intersect_on_matroid(m, inst.d, inst.e));
      balance(left, "(C.D).E");
      o.check(left == right, "(7) " + inst.label);
      // (8) distributivity, when C and D have the same dimension.
      if (inst.c.is_zero() || inst.d.is_zero() || inst.c.dim() == inst.d.dim()) {
        const BraidCycle sum = intersect_on_matroid(m, inst.c + inst.d, inst.e);
        o.check(sum == intersect_on_matroid(m, inst.c, inst.e) + intersect_on_matroid(m, inst.d, inst.e),
                "(8) " + inst.label);
      } else {
        const BraidCycle sum = intersect_on_matroid(m, inst.c + inst.c, inst.e);
        o.check(sum == intersect_on_matroid(m, inst.c, inst.e) + intersect_on_matroid(m, inst.c, inst.e),
                "(8) " + inst.label);
      }
      ++count;
    }
    o.check(count >= 50, "fewer than 50 instances");
    o.check(since(t) < kPropertiesLimit, "runtime");
    if (o.pass) o.detail = std::to_string(count) + " instances";
    return o;
  });

  report(6, "recursive product along a modification element equals the diagonal product", [&] {
    Outcome o;
    int count = 0;
    // Stride through the corpus so every ambient matroid is represented.
    const std::size_t stride = std::max<std::size_t>(1, corpus.size() / kShawInstances);
    for (std::size_t k = 0; k < corpus.size() && count < kShawInstances; k += stride) {
      const auto& inst = corpus[k];
      const Matroid& m = inst.m;
      const BraidCycle direct = intersect_on_matroid(m, inst.c, inst.d);
      for (int e = 0; e < m.size(); ++e) {
        if (m.rank(full_mask(m.size()) & ~(SubsetMask{1} << e)) < m.rank(full_mask(m.size()))) continue;  // coloop
        const BraidCycle rec = intersect_shaw_recursion(m, e, inst.c, inst.d);
        balance(rec, "recursive product");
        o.check(rec == direct, inst.label + " at element " + std::to_string(e + 1));
      }
      ++count;
    }
    o.check(count >= kShawInstances, "too few instances");
    if (o.pass) o.detail = std::to_string(count) + " instances, every non-coloop element";
    return o;
  });

  report(7, "pull-back laws: projection formula, multiplicativity, functoriality", [&] {
    Outcome o;
    struct Chain3 {
      CoordinateMorphism f, g;
    };
    const Matroid u23 = uniform(2, 3), u34 = uniform(3, 4), u24 = uniform(2, 4), u25 = uniform(2, 5);
    std::vector<Chain3> chains;
    // X -f-> Y -g-> Z built from projections, diagonal embeddings and permutations.
    // Free targets and 8-element graphs blow up the braid chain count, so stay small.
    chains.push_back({CoordinateMorphism(u24, u23, {0, 1, 2}), CoordinateMorphism(u23, u23, {1, 2, 0})});
    chains.push_back({CoordinateMorphism(u23, u23, {2, 0, 1}), CoordinateMorphism(u23, u34, {0, 1, 2, 2})});
    chains.push_back({CoordinateMorphism(u25, u24, {0, 1, 2, 3}), CoordinateMorphism(u24, u23, {0, 1, 2})});
    chains.push_back({CoordinateMorphism(u24, u24, {3, 2, 1, 0}), CoordinateMorphism(u24, u23, {1, 2, 3})});
    chains.push_back({CoordinateMorphism(u24, u23, {3, 1, 0}), CoordinateMorphism(u23, u34, {2, 1, 0, 0})});
    int count = 0;
    std::uniform_int_distribution<int> pick(0, 1);
    while (count < kPullbackInstances) {
      const Chain3& ch = chains[count % chains.size()];
      const Matroid& x = ch.f.source();
      const Matroid& y = ch.f.target();
      const Matroid& z = ch.g.target();
      auto random_sub = [&](const Matroid& m) {
        const BraidCycle whole = bergman_fan(m);
        return pick(rng) ? divisor(random_function(m.size(), rng), whole) : whole;
      };
      const BraidCycle c = random_sub(y), c2 = random_sub(y), d = random_sub(x), e = random_sub(z);
      const std::string tag = "instance " + std::to_string(count);
      // (1) C . f_*D = f_*(f^*C . D)
      const BraidCycle fd = ch.f.push(d);
      balance(fd, "f_* D");
      const BraidCycle lhs1 = intersect_on_matroid(y, c, fd);
      const BraidCycle fc = ch.f.pullback(c);
      balance(fc, "f^* C");
      const BraidCycle rhs1 = ch.f.push(intersect_on_matroid(x, fc, d));
      o.check(lhs1 == rhs1, "(1) " + tag);
      // (2) f^*(C . C') = f^*C . f^*C'
      const BraidCycle lhs2 = ch.f.pullback(intersect_on_matroid(y, c, c2));
      balance(lhs2, "f^*(C.C')");
      o.check(lhs2 == intersect_on_matroid(x, fc, ch.f.pullback(c2)), "(2) " + tag);
      // (3) (g o f)^*E = f^* g^* E
      const BraidCycle lhs3 = ch.f.then(ch.g).pullback(e);
      balance(lhs3, "(g o f)^* E");
      o.check(lhs3 == ch.f.pullback(ch.g.pullback(e)), "(3) " + tag);
      ++count;
    }
    if (o.pass) o.detail = std::to_string(count) + " instances";
    return o;
  });

  report(8, "M_n for n = 4, 5: f is a lattice isomorphism onto the space of trees", [] {
    Outcome o;
    const auto t = Clock::now();
    for (int n : {4, 5}) {
      const ModuliModel model = moduli_mn(n);
      balance(model.quotient_fan, "B(K)/L");
      balance(model.image, "image in M_n");
      o.check(model.determinant == 1 || model.determinant == -1, "determinant for n = " + std::to_string(n));
      o.check(cycle_equals(model.image, oracle::tree_fan(model)), "tree space for n = " + std::to_string(n));
    }
    o.check(since(t) < kModuliLimit, "runtime");
    return o;
  });

  report(9, "membership in B(M) agrees with loopfreeness of M_p on random rational points", [&] {
    Outcome o;
    std::vector<Matroid> all = small;
    all.push_back(graphic_complete(4));
    all.push_back(direct_sum(uniform(3, 4), uniform(3, 4)));
    long inside = 0, total = 0;
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3), coin(0, 1);
    for (const auto& m : all) {
      const int n = m.size();
      const BraidCycle b = bergman_fan(m);
      const auto chains = m.maximal_chains();
      std::uniform_int_distribution<std::size_t> pick(0, chains.size() - 1);
      for (int k = 0; k < kMembershipPoints; ++k) {
        RatVector p(n);
        if (coin(rng)) {
          for (auto& x : p) x = Rational(num(rng), den(rng));
        } else {
          // A point of a random cone of B(M), sometimes pushed off it.
          for (SubsetMask f : chains[pick(rng)].flats) {
            const Rational step(std::abs(num(rng)), den(rng));
            for (int i : elements_of(f)) p[i] -= step;
          }
          if (coin(rng)) p[static_cast<std::size_t>(std::abs(num(rng))) % n] += Rational(1, den(rng));
        }
        const bool by_cone = contains_point(b, p);
        const bool by_matroid = induced_matroid_at(m, p).is_loopfree();
        inside += by_cone;
        ++total;
        o.check(by_cone == by_matroid, m.label() + " at a sampled point");
      }
    }
    if (o.pass)
      o.detail = std::to_string(all.size()) + " matroids, " + std::to_string(total) + " points, " +
                 std::to_string(inside) + " inside";
    return o;
  });

  report(10, "every cycle produced above is balanced", [] {
    Outcome o;
    o.check(balance.failures.empty(), balance.failures.empty() ? "" : balance.failures.front());
    o.check(balance.checked > 0, "nothing recorded");
    o.detail = std::to_string(balance.checked) + " cycles, " + std::to_string(balance.failures.size()) + " unbalanced";
    return o;
  });

  return failures == 0 ? 0 : 1;
}
