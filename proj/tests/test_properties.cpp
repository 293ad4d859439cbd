// Randomized and exhaustive consistency sweeps across the library: algebraic
// identities of the action layer, invariance of the h constant, and agreement
// of the three solver paths (pruned, unpruned, brute force) wherever more than
// one of them applies.
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sehgalkit/algorithms.hpp"

using namespace sehgalkit;

namespace {

std::vector<std::vector<i64>> tuples_of(const std::vector<ESolution>& sols) {
  std::vector<std::vector<i64>> out;
  for (const auto& s : sols) out.push_back(s.tuple);
  std::sort(out.begin(), out.end());
  return out;
}

AutGroup full_gl2(const AbelianGroup& core, i64 q) {
  i64 z = primitive_root(q);
  return generate(core,
                  {make_aut(core, {{z, 0, 0, 1}}), make_aut(core, {{q - 1, 1, q - 1, 0}}),
                   make_aut(core, {{1, 1, 0, 1}})},
                  "GL(2," + std::to_string(q) + ")");
}

std::vector<Gl2Subgroup> kernel_sweep(i64 q) {
  return q <= 5 ? subgroup_class_reps(q) : abelian_candidates(q);
}

// One random automorphism: a random unit per cyclic component, a random
// invertible 2x2 matrix per rank-2 component.
AutElem random_aut(const AbelianGroup& A, std::mt19937& rng) {
  std::vector<std::vector<i64>> blocks;
  for (const auto& comp : A.components) {
    i64 m = 1;
    for (int e = 0; e < comp.exponents[0]; ++e) m *= comp.prime;
    if (comp.exponents.size() == 1) {
      std::uniform_int_distribution<i64> pick(1, m - 1);
      i64 u = pick(rng);
      while (std::gcd(u, m) != 1) u = pick(rng);
      blocks.push_back({u});
    } else {
      std::uniform_int_distribution<i64> pick(0, m - 1);
      while (true) {
        i64 a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
        i64 det = ((a * d - b * c) % m + m) % m;
        if (std::gcd(det, m) == 1) {
          blocks.push_back({a, b, c, d});
          break;
        }
      }
    }
  }
  return make_aut(A, blocks);
}

const Alg3Outcome& scan(i64 q, WeightMode mode = WeightMode::count) {
  static std::map<std::pair<i64, int>, Alg3Outcome> memo;
  auto key = std::make_pair(q, static_cast<int>(mode));
  auto it = memo.find(key);
  if (it == memo.end())
    it = memo.emplace(key, algorithm3(make_group({{q, {1, 1}}}), mode, 2)).first;
  return it->second;
}

}  // namespace

TEST_CASE("orbit-stabilizer identity holds across 1000 randomized subgroup/point pairs") {
  std::mt19937 rng(20260818u);
  const std::vector<AbelianGroup> pool = {
      make_group({{3, {1, 1}}}),           make_group({{5, {1, 1}}}),
      make_group({{7, {1, 1}}}),           make_group({{3, {1, 1}}, {5, {1}}}),
      make_group({{2, {1, 1}}, {3, {2}}}), make_group({{2, {2}}, {5, {1, 1}}}),
  };
  int pairs = 0;
  for (int round = 0; round < 200; ++round) {
    const AbelianGroup& A = pool[static_cast<size_t>(round) % pool.size()];
    AutGroup H = generate(A, {random_aut(A, rng), random_aut(A, rng)});
    std::uniform_int_distribution<i64> pick(0, A.order - 1);
    for (int j = 0; j < 5; ++j) {
      Element a = unpack(A, pick(rng));
      ActionClass orb = orbit_of(H, a);         // breadth-first sweep
      AutGroup stab = stabilizer(H, a);         // independent element filter
      CHECK(static_cast<i64>(orb.members.size()) * stab.order() == H.order());
      CHECK(orb.stabilizer_order == stab.order());
      CHECK(std::binary_search(orb.members.begin(), orb.members.end(), pack(A, a)));
      for (const auto& s : stab.elements) {
        if (pairs % 97 == 0) CHECK(pack(A, apply(A, s, a)) == pack(A, a));
      }
      ++pairs;
    }
  }
  CHECK(pairs == 1000);
}

TEST_CASE("the h constant ignores appended coprime cyclic factors: 200 randomized cases") {
  // h depends only on the primes and per-prime ranks, so gluing an extra
  // cyclic component at a fresh prime must leave it fixed.
  std::mt19937 rng(77210u);
  const std::vector<i64> primes = {2, 3, 5, 7, 11, 13, 17, 19};
  for (int round = 0; round < 200; ++round) {
    std::vector<i64> avail = primes;
    std::shuffle(avail.begin(), avail.end(), rng);
    std::uniform_int_distribution<int> ncomp(1, 2), rank(1, 2), expo(1, 3);

    std::vector<std::pair<i64, std::vector<int>>> comps;
    int nc = ncomp(rng);
    for (int i = 0; i < nc; ++i) {
      std::vector<int> exps(static_cast<size_t>(rank(rng)), 0);
      int top = expo(rng);
      for (auto& e : exps) e = top;  // homocyclic per prime
      comps.push_back({avail[static_cast<size_t>(i)], exps});
    }
    AbelianGroup A = make_group(comps);
    Rational h = h_invariant(A);

    auto extended = comps;
    extended.push_back({avail[static_cast<size_t>(nc)], {expo(rng)}});
    CHECK(h_invariant(make_group(extended)) == h);

    // A second coprime factor on top changes nothing either.
    extended.push_back({avail[static_cast<size_t>(nc) + 1], {expo(rng)}});
    CHECK(h_invariant(make_group(extended)) == h);
  }

  // The exponent of a homocyclic component is likewise invisible to h.
  for (i64 q : {2, 3, 5}) {
    CHECK(h_invariant(make_group({{q, {2, 2}}})) == h_invariant(make_group({{q, {1, 1}}})));
    CHECK(h_invariant(make_group({{q, {3}}})) == h_invariant(make_group({{q, {1}}})));
  }
}

TEST_CASE("pruning never changes a solution set: all kernel candidates up to q = 7") {
  for (i64 q : {2, 3, 5, 7}) {
    CAPTURE(q);
    AbelianGroup core = make_group({{q, {1, 1}}});
    AutGroup S = full_gl2(core, q);
    std::vector<i64> nonzero;
    for (i64 i = 1; i < core.order; ++i) nonzero.push_back(i);
    std::vector<CocyclicCoset> cosets = minimal_cocyclic_cosets(core);

    for (const Gl2Subgroup& K : kernel_sweep(q)) {
      CAPTURE(K.label);
      for (WeightMode mode : {WeightMode::count, WeightMode::inner}) {
        EConstraintSystem plain = build_system(S, K.group, core, nonzero, mode, &cosets);
        EConstraintSystem pruned = plain;
        apply_pruning(pruned, K.group, &cosets);
        CHECK(tuples_of(enumerate_solutions(plain)) == tuples_of(enumerate_solutions(pruned)));
      }
    }
  }
}

TEST_CASE("branch-and-prune agrees with the brute-force box scan wherever the box fits") {
  int checked = 0;
  for (i64 q : {2, 3, 5, 7}) {
    AbelianGroup core = make_group({{q, {1, 1}}});
    AutGroup S = full_gl2(core, q);
    std::vector<i64> nonzero;
    for (i64 i = 1; i < core.order; ++i) nonzero.push_back(i);
    std::vector<CocyclicCoset> cosets = minimal_cocyclic_cosets(core);

    for (const Gl2Subgroup& K : kernel_sweep(q)) {
      for (WeightMode mode : {WeightMode::count, WeightMode::inner}) {
        EConstraintSystem sys = build_system(S, K.group, core, nonzero, mode, &cosets);
        apply_pruning(sys, K.group, &cosets);
        if (sys.provably_empty) continue;
        std::vector<i64> ub = sys.upper_bounds();
        i128 volume = 1;
        bool fits = true;
        for (int i = 0; i < sys.nvars() && fits; ++i) {
          volume *= ub[static_cast<size_t>(i)] - sys.lower_bounds[static_cast<size_t>(i)] + 1;
          if (volume > 10000000) fits = false;
        }
        if (!fits) continue;
        CAPTURE(q);
        CAPTURE(K.label);
        CHECK(tuples_of(brute_force_solutions(sys)) == tuples_of(enumerate_solutions(sys)));
        ++checked;
      }
    }
  }
  CHECK(checked > 50);  // the sweep must not silently skip everything
}

TEST_CASE("emitted solutions satisfy the coset inequality over every cocyclic coset") {
  // The solver only imposes the inequality on minimal cocyclic cosets; on a
  // valid solution it must then hold for all of them, in both weightings.
  int functions_seen = 0;
  for (i64 q : {2, 3, 5, 7}) {
    for (WeightMode mode : {WeightMode::count, WeightMode::inner}) {
      const Alg3Outcome& out = scan(q, mode);
      for (const auto& entry : out.entries) {
        // Per-element centralizer orders for the inner weighting.
        const AbelianGroup& A = entry.system.A;
        std::vector<i64> weight(static_cast<size_t>(A.order), 1);
        if (mode == WeightMode::inner) {
          for (const auto& orb : orbits_all(entry.K.group))
            for (i64 m : orb.members) weight[static_cast<size_t>(m)] = orb.stabilizer_order;
        }
        for (const auto& sol : entry.solutions) {
          ++functions_seen;
          for (const Subgroup& U : cocyclic_subgroups(A)) {
            for (const CocyclicCoset& C : cosets_of(A, U)) {
              i64 total = 0;
              for (i64 m : C.members)
                total += weight[static_cast<size_t>(m)] * sol.function.dense[static_cast<size_t>(m)];
              CAPTURE(q);
              CAPTURE(entry.K.label);
              CHECK(total >= 0);
            }
          }
          CHECK(sol.function.class_sum() == 1);
          CHECK(sol.function.min_value() < 0);
        }
      }
    }
  }
  // q = 7 carries everything: three functions on the order-16 kernel per
  // weighting, plus six more that only the inner weighting admits, on an
  // order-12 diagonal kernel (the action there is not semiregular, so the
  // two weightings genuinely differ).
  CHECK(functions_seen == 12);
}

TEST_CASE("the scan verdict is invariant under appended coprime cyclic factors") {
  const std::vector<std::pair<i64, std::vector<int>>> tails = {
      {3, {1}}, {2, {2}}, {3, {2}}, {11, {1}}};  // orders 3, 4, 9, 11
  for (i64 q : {2, 3, 5}) {
    for (const auto& tail : tails) {
      if (tail.first == q) continue;  // sharing the prime would change the rank structure
      Alg3Outcome out = algorithm3(make_group({{q, {1, 1}}, tail}), WeightMode::count, 2);
      CAPTURE(q);
      CAPTURE(tail.first);
      CHECK(out.verdict_true);
      CHECK(out.exhaustive);
      CHECK(out.entries.empty());
      CHECK(out.core.order == q * q);
      CHECK(out.core.components.size() == 1);
    }
  }

  // On the negative side the surviving entry must come through unchanged.
  Alg3Outcome big = algorithm3(make_group({{7, {1, 1}}, {3, {1}}}), WeightMode::count, 2);
  const Alg3Outcome& base = scan(7);
  REQUIRE(big.entries.size() == 1);
  REQUIRE(base.entries.size() == 1);
  CHECK_FALSE(big.verdict_true);
  CHECK(big.core.order == 49);
  CHECK(big.entries[0].K.label == base.entries[0].K.label);
  CHECK(big.entries[0].K.order() == 16);
  CHECK(tuples_of(big.entries[0].solutions) == tuples_of(base.entries[0].solutions));
}
