#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sehgalkit/rational.hpp"

namespace sehgalkit {

struct scope_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One primary component: all cyclic factors for a single prime, exponents descending.
struct PrimaryComponent {
  i64 prime = 0;
  std::vector<int> exponents;  // e1 >= e2 >= ... >= 1; length = rank of the socle of A_p
};

// Finite abelian group in primary decomposition. Elements are exponent vectors
// with one coordinate per cyclic factor (component order = prime order), so
// p-parts are coordinate projections and the packed index of an element is its
// lexicographic position (first coordinate most significant).
struct AbelianGroup {
  std::vector<PrimaryComponent> components;  // primes strictly increasing
  std::vector<i64> moduli;                   // p^e per cyclic factor, flattened
  std::vector<i64> factor_primes;            // prime of each cyclic factor
  std::vector<i64> suffix;                   // suffix[i] = prod of moduli[i..]; suffix[rank] = 1
  i64 order = 1;

  int rank() const { return static_cast<int>(moduli.size()); }
  bool trivial() const { return order == 1; }
  bool cyclic() const;  // at most one factor per prime
};

using Element = std::vector<i64>;

AbelianGroup make_group(const std::vector<std::pair<i64, std::vector<int>>>& comps);
// Spec-string form, e.g. "7^[1,1]x13^[1,1]" or "2^[4]".
AbelianGroup parse_group(const std::string& text);
std::string group_spec(const AbelianGroup& A);  // inverse of parse_group
std::string group_name(const AbelianGroup& A);  // e.g. "C16" or "C7xC7"

i64 pack(const AbelianGroup& A, const Element& a);
Element unpack(const AbelianGroup& A, i64 index);
Element identity_of(const AbelianGroup& A);
bool is_identity(const Element& a);
Element mul(const AbelianGroup& A, const Element& a, const Element& b);
Element inverse(const AbelianGroup& A, const Element& a);
Element power(const AbelianGroup& A, const Element& a, i64 n);
i64 element_order(const AbelianGroup& A, const Element& a);
std::vector<Element> enumerate_elements(const AbelianGroup& A);

std::vector<i64> primes_of(const AbelianGroup& A);
// The pi-part of a: coordinates at primes outside pi zeroed.
Element part(const AbelianGroup& A, const Element& a, const std::vector<i64>& pi);
// The pi'-part: coordinates at primes inside pi zeroed.
Element copart(const AbelianGroup& A, const Element& a, const std::vector<i64>& pi);

// The subgroup A_pi as a group of its own (components with primes in pi), plus
// coordinate projection/embedding between A and A_pi.
AbelianGroup restricted_group(const AbelianGroup& A, const std::vector<i64>& pi);
Element project(const AbelianGroup& A, const Element& a, const std::vector<i64>& pi);
Element embed(const AbelianGroup& A, const Element& x, const std::vector<i64>& pi);

// h_A = (sum over odd-size subsets X of the prime set of prod_p (p^(k_p - [p in X]) - 1))
//       / (prod_p (p-1) p^(k_p - 1)).  Zero iff A is cyclic.  Errors on the trivial group.
Rational h_invariant(const AbelianGroup& A);

struct Subgroup {
  std::vector<Element> gens;  // at most two generators per prime
  std::vector<i64> members;   // sorted packed indices
  i64 size() const { return static_cast<i64>(members.size()); }
  bool contains(i64 idx) const;
};

Subgroup closure(const AbelianGroup& A, const std::vector<Element>& gens);
// All subgroups. Requires |A| <= 10^4 and rank <= 2 per prime; anything larger
// is out of scope and rejected.
std::vector<Subgroup> all_subgroups(const AbelianGroup& A);
bool quotient_is_cyclic(const AbelianGroup& A, const Subgroup& K);
std::vector<Subgroup> cocyclic_subgroups(const AbelianGroup& A);
std::vector<Subgroup> minimal_cocyclic_subgroups(const AbelianGroup& A);

struct CocyclicCoset {
  std::vector<Element> subgroup_gens;
  std::vector<i64> subgroup_members;  // sorted packed indices
  Element rep;                        // lexicographically least member
  std::vector<i64> members;           // sorted packed indices
};

std::vector<CocyclicCoset> cosets_of(const AbelianGroup& A, const Subgroup& K);
std::vector<CocyclicCoset> minimal_cocyclic_cosets(const AbelianGroup& A);

}  // namespace sehgalkit
