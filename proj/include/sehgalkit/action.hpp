#pragma once

#include <string>
#include <vector>

#include "sehgalkit/abelian.hpp"

namespace sehgalkit {

// Automorphism of an AbelianGroup: one invertible square matrix per primary
// component, acting on column vectors (a -> M*a mod p^e). Supported components:
// cyclic (1x1 unit) and homocyclic of rank 2 (2x2, all four factor orders p^e
// equal). Mixed-exponent or rank >= 3 components are rejected at construction.
struct AutElem {
  std::vector<std::vector<i64>> blocks;  // row-major, one block per component

  std::vector<i64> key() const {
    std::vector<i64> k;
    for (const auto& b : blocks) k.insert(k.end(), b.begin(), b.end());
    return k;
  }
  friend bool operator==(const AutElem& a, const AutElem& b) { return a.blocks == b.blocks; }
  friend bool operator<(const AutElem& a, const AutElem& b) { return a.key() < b.key(); }
};

// Validates block shapes and invertibility, reduces entries mod the component modulus.
AutElem make_aut(const AbelianGroup& A, const std::vector<std::vector<i64>>& blocks);
AutElem identity_aut(const AbelianGroup& A);
Element apply(const AbelianGroup& A, const AutElem& s, const Element& a);
// apply(compose(s,t), a) = apply(s, apply(t, a))
AutElem compose(const AbelianGroup& A, const AutElem& s, const AutElem& t);
AutElem aut_inverse(const AbelianGroup& A, const AutElem& s);
AutElem aut_power(const AbelianGroup& A, const AutElem& s, i64 n);
i64 aut_order(const AbelianGroup& A, const AutElem& s);

struct AutGroup {
  AbelianGroup ambient;
  std::vector<AutElem> generators;
  std::vector<AutElem> elements;  // full element list, sorted by key
  std::string label;

  i64 order() const { return static_cast<i64>(elements.size()); }
  bool contains(const AutElem& s) const;
};

// Breadth-first closure of the generators; throws scope_error beyond 10^6 elements.
AutGroup generate(const AbelianGroup& A, const std::vector<AutElem>& gens, const std::string& label = "");
AutGroup trivial_group(const AbelianGroup& A);

struct ActionClass {
  Element rep;               // least member by packed index
  std::vector<i64> members;  // sorted packed indices
  i64 stabilizer_order = 0;  // |H| / |members|
};

ActionClass orbit_of(const AutGroup& H, const Element& a);
// Partition of the given packed-index subset into H-orbits, ordered by least member.
std::vector<ActionClass> orbits(const AutGroup& H, const std::vector<i64>& subset);
std::vector<ActionClass> orbits_all(const AutGroup& H);  // orbits on all of A

// The local class l_G(a) = { x : x_p lies in the G-orbit of a_p for every p },
// as sorted packed indices.
std::vector<i64> local_class(const AutGroup& G, const Element& a);

AutGroup stabilizer(const AutGroup& H, const Element& a);

// Block projection of an automorphism to A_pi = restricted_group(A, pi).
AutElem restrict_aut(const AbelianGroup& A, const AutElem& s, const std::vector<i64>& pi);
// Image of H under the restriction homomorphism, acting on A_pi.
AutGroup inn_image(const AutGroup& H, const std::vector<i64>& pi);

}  // namespace sehgalkit
