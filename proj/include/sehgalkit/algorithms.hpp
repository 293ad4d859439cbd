#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sehgalkit/esystem.hpp"
#include "sehgalkit/gl2.hpp"

namespace sehgalkit {

// Split metabelian datum G = N ⋊ Γ with N abelian and Γ ≤ Aut(N). Conjugation
// of N inside G is exactly the Γ-action, so all class and centralizer
// computations happen at the matrix level; only split actions on an abelian
// normal subgroup are supported, which covers every group treated here.
struct MetabelianGroup {
  AbelianGroup N;
  AutGroup gamma;
  std::string name;
};

// Validates that gamma acts on N.
MetabelianGroup make_metabelian(const AbelianGroup& N, const AutGroup& gamma,
                                const std::string& name = "");

// Provenance of one witness: the prime handled, the packed index (in N) of the
// chosen p-part representative y, the label of the inner image of C_G(y) on
// A = N_{p'}, and the solution f on A that lifted to the witness.
struct WitnessOrigin {
  i64 p = 0;
  i64 y = 0;
  std::string inner_label;
  ClassFunction f;
};

struct Witness {
  ClassFunction epsilon;               // G-class function on N
  std::vector<WitnessOrigin> origins;  // one entry per prime that produced it
};

// Group-level outcome: verdict `true` means no witness survives, settling the
// torsion-unit question positively for (G, N).
struct AlgOutcome {
  bool verdict_true = false;
  std::vector<Witness> witnesses;
};

// One per-prime pass: for each representative y of the G-classes in N_p, solve
// the constraint systems on A = N_{p'} with inner group C_G(y) (definitional
// centralizer-order weights), and lift each solution f to the class function
// eps(n) = f(n_{p'}^g) where n_p^g = y, zero when n_p is not conjugate to y.
// A prime not dividing |N| degenerates to y = 1. Witness order is
// deterministic: y by least packed representative, then local classes by least
// member, then solutions lexicographically.
AlgOutcome algorithm1(const MetabelianGroup& G, i64 p, int threads = 1);

// Intersection of the per-prime passes over all primes dividing |N|, compared
// exactly as G-class functions on N; stops early once empty.
AlgOutcome algorithm2(const MetabelianGroup& G, int threads = 1);

struct Alg3Entry {
  Gl2Subgroup K;
  EConstraintSystem system;
  std::vector<ESolution> solutions;
};

// Group-independent outcome. `exhaustive` records whether every conjugacy
// class of subgroups of Aut(core) was scanned (q <= 5) or only the abelian
// candidates (7 <= q <= 19); verdict `true` is claimed only in the exhaustive
// regime.
struct Alg3Outcome {
  bool verdict_true = false;
  bool exhaustive = true;
  AbelianGroup core;  // input with cyclic Sylow components removed
  std::vector<Alg3Entry> entries;
};

// Optional read-through/write-through storage for the per-kernel solution
// sets, consulted inside the kernel sweep. `load` returning a value skips the
// enumeration for that kernel; otherwise the computed set is handed to
// `store`. Either callback may be empty. Both run on worker threads, possibly
// concurrently, but never twice for the same kernel in one sweep.
struct ESetHooks {
  std::function<std::optional<std::vector<ESolution>>(const Gl2Subgroup&, const EConstraintSystem&)>
      load;
  std::function<void(const Gl2Subgroup&, const EConstraintSystem&, const std::vector<ESolution>&)>
      store;
};

// Scans subgroups K of Aut(A_core) and keeps the pairs (K, E) with E nonempty,
// after discarding cyclic Sylow components of A (which cannot change the
// verdict). Supported cores: trivial, or C_q x C_q with q <= 19. The default
// `count` weighting matches the published result tables; pass `inner` for the
// definitional weights (the two agree wherever the action is semiregular).
Alg3Outcome algorithm3(const AbelianGroup& A, WeightMode mode = WeightMode::count,
                       int threads = 1, const ESetHooks* hooks = nullptr);

// Drops the Sylow components that are cyclic; the algorithm3 verdict is
// invariant under this reduction.
AbelianGroup reduce_cyclic_factors(const AbelianGroup& A);

// Lifts a solution f on A = N_{p'} to eps on N: eps(n) = f(n_{p'}^g) whenever
// n_p^g = y for some g, and 0 otherwise. Well-defined because f is constant on
// C_G(y)-classes.
ClassFunction assemble_epsilon(const MetabelianGroup& G, i64 p, const Element& y,
                               const ClassFunction& f);

// The non-identity local classes of the ambient group of G (elements grouped
// by simultaneous conjugacy of all their prime parts), each sorted, ordered by
// least member. The identity always forms a singleton class of its own and is
// omitted.
std::vector<std::vector<i64>> local_class_partition(const AutGroup& G);

}  // namespace sehgalkit
