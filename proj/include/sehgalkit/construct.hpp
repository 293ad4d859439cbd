#pragma once

#include <string>
#include <vector>

#include "sehgalkit/algorithms.hpp"
#include "sehgalkit/esystem.hpp"
#include "sehgalkit/gl2.hpp"

namespace sehgalkit {

// One row of the published result tables: a kernel K acting on C_p x C_p with
// a non-empty constraint set, the order of the cyclic quotient of its maximal
// torus, and the solution values read along the quotient translation cycle,
// canonicalized up to rotation. Tuples for another generator choice of the
// quotient are index dilations by a unit mod r of the ones listed here.
struct TableRow {
  i64 p = 0;
  bool diagonal = false;  // false: K inside the Singer cycle; true: inside the diagonal torus
  Gl2Subgroup K;
  i64 quotient_order = 1;  // r = [C : K] resp. [D : K]
  bool quotient_cyclic = true;
  std::vector<std::vector<i64>> tuples;  // canonical rotations, sorted
  bool off_axis_only = true;  // diagonal rows: solutions vanish on the two axis classes
};

// All rows for p in {7, 11, 13, 17, 19} up to qmax, from the full per-prime
// scans in the published counting convention.
std::vector<TableRow> tables(i64 qmax = 19, int threads = 1,
                             const std::string& cache_dir = std::string());

// A matched pair of per-prime scan results that glue to a candidate group:
// kernels K and solutions f on the two Sylow sides, abelian overgroups T
// inside the same maximal torus with cyclic quotients of one common order r,
// the gluing exponent u (the quotient isomorphism maps the chosen p-side
// generator coset to the u-th power of the q-side one), and a base point n
// with f_p(n_p) = f_q(n_q) != 0. The recorded value cycles satisfy
// svals[j] = tvals[-j*u mod r].
struct MatchedPair {
  i64 p = 0, q = 0;
  Gl2Subgroup Kp, Kq;
  ESolution fp, fq;
  Gl2Subgroup Tp, Tq;
  std::vector<i64> cp, cq;  // quotient generator matrices (2x2 row-major)
  i64 r = 1;
  i64 u = 1;
  Element n;  // 4 coordinates: p-block first, then q-block
  std::vector<i64> svals, tvals;
  std::string key;  // canonical identity (rotation-independent), for deduplication
};

struct MatchReport {
  std::vector<MatchedPair> pairs;
  std::vector<std::string> notes;  // skipped combinations and why
};

// All matched pairs between two per-prime scan outputs (p < q required; the
// outputs' cores must be C_p x C_p and C_q x C_q). Overgroups are searched
// inside the torus containing the kernel - the torus is self-centralizing,
// so every abelian overgroup lies there. Non-cyclic torus quotients are
// reported in the notes and skipped.
MatchReport match_pairs(i64 p, const Alg3Outcome& out_p, i64 q, const Alg3Outcome& out_q,
                        int threads = 1);

// Re-derives the support and value conditions of a matched pair from scratch;
// throws std::invalid_argument naming the first violated condition.
void validate_pair(const MatchedPair& mp);

struct CandidateGroup {
  AbelianGroup N;  // C_pq x C_pq
  std::vector<AutElem> gamma_gens;
  AutGroup gamma;  // the pullback; |gamma| = |Kp| * |Kq| * r
  ClassFunction epsilon;
  MatchedPair pair;
  bool has_gd_type = false;  // both kernels cyclic inside full Singer cycles
  i64 gd_d = 0;              // the d of the d-glued Singer family (with p, q)
};

// Builds the pullback group Gamma = { sigma in Tp x Tq : the two quotient
// images correspond under the gluing } acting on N = C_pq x C_pq, and
// assembles the candidate partial-augmentation function
//   epsilon(x) = 0 if x_q is outside the orbit of n_q, else f_p(x_p^g)
//   where g moves x_q onto n_q.
// Validates the pair first; throws if either restriction of Gamma fails to
// reach its overgroup (a malformed quotient isomorphism).
CandidateGroup build_candidate(const MatchedPair& mp);

struct VerifyReport {
  bool pass = false;
  bool centralizer_collapse_p = false;  // C_Gamma(n_p) = C_Gamma(N_p)
  bool centralizer_collapse_q = false;  // C_Gamma(n_q) = C_Gamma(N_q)
  bool inner_is_kp = false;  // restriction of C_Gamma(N_q) to the p-side equals Kp
  bool inner_is_kq = false;
  bool symmetric_formula = false;  // epsilon computed from f_q with roles swapped matches
  bool membership_p = false;  // f_p solves the system over (G, C_G(n_q), N_p)
  bool membership_q = false;
  bool epsilon_among_witnesses = false;  // the full two-prime verification finds epsilon
  i64 witness_count = 0;
};

// Independent checks on a built candidate, ending with a re-run of the
// two-prime verification algorithm on N x| Gamma.
VerifyReport verify_candidate(const CandidateGroup& c, int threads = 1);

// The realization direction: decomposes a verification witness on a candidate
// back into a base point, per-prime class functions and gluing data, and
// reports whether the reconstruction coincides (by canonical identity) with
// one of the pairs in `report`.
bool witness_decomposes(const CandidateGroup& c, const ClassFunction& epsilon,
                        const MatchReport& report);

}  // namespace sehgalkit
