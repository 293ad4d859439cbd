#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sehgalkit/action.hpp"

namespace sehgalkit {

// How a subgroup of GL(2,q) sits inside the two maximal abelian reference
// subgroups: inside a Singer cycle (irreducible torus), inside the diagonal
// torus, or unclassified.
enum class Gl2Kind { singer_cyclic, diagonalizable, general };

std::string kind_name(Gl2Kind k);

struct Gl2Subgroup {
  i64 q = 0;
  std::vector<std::vector<i64>> generators;  // row-major 2x2 matrices mod q
  Gl2Kind kind = Gl2Kind::general;
  std::string label;
  AutGroup group;  // the generated subgroup acting on C_q x C_q

  i64 order() const { return static_cast<i64>(group.elements.size()); }
};

// Multiplication by a root alpha of the lexicographically least primitive
// quadratic X^2 - aX - b over F_q, written in the basis {1, alpha}; generates
// the full Singer cycle of order q^2 - 1.
struct SingerBasis {
  i64 a = 0;
  i64 b = 0;
  AutElem mult_alpha;
};
SingerBasis singer_basis(const AbelianGroup& A);

// The subgroup of the Singer cycle of exact order m; errors unless m | q^2-1.
Gl2Subgroup singer_subgroup(i64 q, i64 m);

// The group of diagonal matrices diag(a,b) generated by the given pairs;
// errors on non-unit entries. Label keeps the "(a,b),(c,d)" convention.
Gl2Subgroup diagonal_subgroup(i64 q, const std::vector<std::pair<i64, i64>>& pairs);

// One representative per conjugacy class of subgroups of GL(2,q), by
// closure extension over a multiplication table plus conjugacy folding.
// Deterministic: each representative is the least member set among its
// conjugates, output sorted by (order, member set). Capped at q <= 5.
std::vector<Gl2Subgroup> subgroup_class_reps(i64 q);

// Up to conjugacy, every abelian K <= GL(2,q) with |K| > q, q not dividing
// |K|, K not containing the scalar center and K non-transitive on nonzero
// vectors: subgroups of the Singer cycle on one side, subgroups of the
// diagonal torus (deduplicated under the eigenline swap) on the other.
std::vector<Gl2Subgroup> abelian_candidates(i64 q);

// The subgroup classes the general vanishing arguments do not settle, i.e.
// those needing an explicit enumeration: non-transitive on nonzero vectors,
// not containing the scalar center, order greater than q and not divisible
// by q. Empty for q in {2, 3}; exactly seven classes for q = 5. Capped at
// q <= 5 like subgroup_class_reps.
std::vector<Gl2Subgroup> residual_kernels(i64 q);

// For abelian T containing a subgroup of order > q prime to q: exactly one
// of singer_cyclic (no invariant line) or diagonalizable (two or more).
// Errors when the hypothesis fails.
Gl2Kind dichotomy_classify(const Gl2Subgroup& T);

// Isomorphism-type label for the small groups appearing here: exact
// invariant factors for abelian groups ("C16", "C12xC4"), a fixed name
// table for the small non-abelian types ("D6", "D8", "Q8", "C3:C4", "D12",
// "A4", ...), a deterministic order/statistics code otherwise.
std::string iso_label(const AutGroup& G);

// Least primitive root mod q.
i64 primitive_root(i64 q);

// Conjugate of a materialized group: x G x^-1.
AutGroup conjugate_group(const AutGroup& G, const AutElem& x);

bool is_transitive_on_nonzero(const AutGroup& G);
bool contains_center(const Gl2Subgroup& K);

}  // namespace sehgalkit
