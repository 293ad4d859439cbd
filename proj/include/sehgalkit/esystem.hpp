#pragma once

#include <string>
#include <vector>

#include "sehgalkit/action.hpp"

namespace sehgalkit {

// Weighting of the cone rows: `inner` weights each class by the centralizer
// order |C_H(a_X)| (the defining form; the sound choice when the system output
// feeds the verification algorithms), `count` uses plain intersection counts
// |X ∩ C| (the convention of the published class diagrams and result tables;
// identical to `inner` whenever the action is semiregular).
enum class WeightMode { inner, count };

// Integer-valued function on A constant on the classes of an acting group,
// zero outside the listed classes.
struct ClassFunction {
  AbelianGroup domain;
  std::string acting_label;
  std::vector<Element> class_reps;
  std::vector<i64> class_values;
  std::vector<i64> dense;  // one value per packed element of domain

  i64 value_at(const Element& a) const;
  i64 min_value() const;
  i64 class_sum() const;
  friend bool operator==(const ClassFunction& x, const ClassFunction& y) {
    return x.domain.moduli == y.domain.moduli && x.dense == y.dense;
  }
};

struct EConstraintSystem {
  AbelianGroup A;
  std::string acting_label;
  WeightMode mode = WeightMode::inner;
  std::vector<ActionClass> vars;            // H-classes inside one local class, by least rep
  std::vector<i64> inner_orders;            // |C_H(a_X)| per variable
  std::vector<std::vector<i64>> cone_rows;  // gcd-normalized, deduplicated, uniform rows dropped
  std::vector<i64> lower_bounds;            // ceil(-h_A * [C_H(a_pi):C_H(a)]) per variable
  std::vector<i64> local_cls;               // the carrying local class (sorted packed indices)
  bool require_negative = true;
  bool provably_empty = false;
  std::string empty_note;

  int nvars() const { return static_cast<int>(vars.size()); }
  // Elementwise upper bound implied by the sum row: 1 - sum of the other lower bounds.
  std::vector<i64> upper_bounds() const;
};

struct ESolution {
  ClassFunction function;
  std::vector<i64> tuple;            // values in variable order
  std::vector<i64> canonical_tuple;  // least cyclic rotation of tuple
};

// Build the constraint system attached to one local class of the ambient
// acting group: one variable per H-class inside it, one cone row per minimal
// cocyclic coset of A, sum target 1, lower bounds from the h invariant.
// Pass precomputed minimal cocyclic cosets via `cosets` to amortize across calls.
EConstraintSystem build_system(const AutGroup& Gact, const AutGroup& H, const AbelianGroup& A,
                               const std::vector<i64>& local_cls, WeightMode mode,
                               const std::vector<CocyclicCoset>* cosets = nullptr);

// Sound tightenings: forces variables to be non-negative when a cocyclic coset
// meets the local class inside a single H-class, or (for A with cyclic q'-part)
// when centralizer indices are < q or divisible by q; detects the verdict-empty
// case when the scalar automorphisms of a C_q^2 component all lie in H. Never
// removes a solution. Hypothesis checks are per-prime; unmet parts are skipped.
void apply_pruning(EConstraintSystem& sys, const AutGroup& H,
                   const std::vector<CocyclicCoset>* cosets = nullptr);

// Materializes solution records (class function, tuple, canonical rotation)
// from raw value tuples of the system, sorted and deduplicated. The tuples are
// trusted; no constraint is re-checked.
std::vector<ESolution> package_solutions(const EConstraintSystem& sys,
                                         std::vector<std::vector<i64>> tuples);

// Complete integer solution set (condition (V) applied as a post-filter),
// ordered lexicographically by value tuple. Branch-and-prune inside the
// [lb, 1 - sum(other lbs)] box, with exact-LP box tightening when it helps.
std::vector<ESolution> enumerate_solutions(const EConstraintSystem& sys);

// Plain box-scan oracle; refuses boxes with more than 10^7 points.
std::vector<ESolution> brute_force_solutions(const EConstraintSystem& sys);

// Least rotation in lexicographic order.
std::vector<i64> canonical_cyclic(const std::vector<i64>& tuple);

// Human-readable matrix form of the system.
std::string system_text(const EConstraintSystem& sys);

}  // namespace sehgalkit
