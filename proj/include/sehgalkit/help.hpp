#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sehgalkit/abelian.hpp"

namespace sehgalkit {

// The quadratic extension F_{p^2} = F_p(alpha) with alpha^2 = a*alpha + b.
// Elements are coefficient pairs (c0, c1) meaning c0 + c1*alpha, both mod p.
// alpha is always a generator of the multiplicative group.
struct QuadField {
  i64 p = 0;
  i64 a = 0;
  i64 b = 0;

  using Elt = std::pair<i64, i64>;

  Elt mul(const Elt& u, const Elt& v) const;
  // alpha^k for any integer k (reduced mod p^2 - 1).
  Elt alpha_power(i64 k) const;
};

// Builds F_{p^2} with the least (a, b) (lexicographically, 0 <= a, b < p)
// making X^2 - aX - b the minimal polynomial of a multiplicative generator.
// For p = 7 this is X^2 - X - 4, i.e. X^2 - X + 3, the modulus used by the
// published worked examples; the basis agrees with the one behind the Singer
// cycle construction, so coefficient coordinates match the C_p x C_p packing.
QuadField make_quadfield(i64 p);

// The metabelian family G_d(p, q): the normal subgroup N is the additive
// group F_{p^2} x F_{q^2}, acted on by the abelian group H = <a, b, c> with
//   (x, y)^a = (alpha^d x, y),  (x, y)^b = (x, beta^d y),
//   (x, y)^c = (alpha x, beta y),
// where alpha, beta generate the multiplicative groups. d must divide both
// p^2 - 1 and q^2 - 1.
struct GdGroup {
  i64 p = 0;
  i64 q = 0;
  i64 d = 1;
  QuadField fp;
  QuadField fq;
};

GdGroup make_gd_group(i64 p, i64 q, i64 d);

// Multiplicity of the eigenvalue indexed by (r, s) in the relevant induced
// character, for the candidate unit whose partial augmentation sits at the
// class of m_i = (1, beta^i): the number of pairs (x, y) with
//   0 <= x < p^2 - 1,  0 <= y < q^2 - 1,
//   alpha^x - r*alpha in F_p,  beta^y - s*beta in F_q,
//   x == y + i (mod d).
// i is taken mod d, r mod p, s mod q. Always nonnegative by construction.
i64 mu(const GdGroup& G, i64 i, i64 r, i64 s);

// True exactly when gcd(d, gcd(p+1, q+1)) == 1. In that case H permutes the
// cyclic subgroups of order pq of N transitively, so a single induced
// character carries the full strength of the character-multiplicity method
// for units of order pq.
bool transitivity_check(i64 p, i64 q, i64 d);

// The multiplicity constraints for units of order pq in G_d(p, q): one row
// per eigenvalue index (r, s) (r-major order), with row[i] = mu(i, r, s).
// A tuple (x_0, ..., x_{d-1}) of candidate partial augmentations passes the
// method iff the x_i sum to 1 and every row inner product is >= 0.
struct HelpSystem {
  i64 p = 0;
  i64 q = 0;
  i64 d = 1;
  std::vector<std::vector<i64>> rows;
};

// Builds the full multiplicity table. Requires transitivity_check(p, q, d);
// otherwise the single-character system would not capture the method and the
// call is refused. The table fills in parallel when threads > 1; the result
// is identical for every thread count.
HelpSystem help_system(const GdGroup& G, int threads = 1);

// All integer tuples with sum 1 and every multiplicity row >= 0, in
// lexicographic order. Variable bounds come from exact linear programming
// over the rational relaxation; a row with all-positive entries must exist
// (it always does for these systems) or the system is reported unbounded.
std::vector<std::vector<i64>> help_solutions(const HelpSystem& sys);

}  // namespace sehgalkit
