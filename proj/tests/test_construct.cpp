#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sehgalkit/algorithms.hpp"
#include "sehgalkit/construct.hpp"

using namespace sehgalkit;

namespace {

const Alg3Outcome& scan(i64 p) {
  static std::map<i64, Alg3Outcome> cache;
  auto it = cache.find(p);
  if (it == cache.end())
    it = cache.emplace(p, algorithm3(make_group({{p, {1, 1}}}), WeightMode::count, 2)).first;
  return it->second;
}

std::vector<i64> dilate(const std::vector<i64>& t, i64 u) {
  const i64 r = static_cast<i64>(t.size());
  std::vector<i64> out(t.size());
  for (i64 j = 0; j < r; ++j) out[j] = t[(j * u) % r];
  return out;
}

// Published tuples are read along one generator of the translation quotient;
// another generator choice dilates all indices by one unit mod r uniformly.
bool row_tuples_match(const TableRow& row, std::vector<std::vector<i64>> expected) {
  for (auto& t : expected) t = canonical_cyclic(t);
  std::sort(expected.begin(), expected.end());
  for (i64 u = 1; u <= row.quotient_order; ++u) {
    if (std::gcd(u, row.quotient_order) != 1) continue;
    std::vector<std::vector<i64>> got;
    for (const auto& t : row.tuples) got.push_back(canonical_cyclic(dilate(t, u)));
    std::sort(got.begin(), got.end());
    if (got == expected) return true;
  }
  return false;
}

// A value walk read along the other generator of the translation quotient is
// an index dilation by a unit mod r; accept any of those directions.
bool same_cycle_up_to_unit(const std::vector<i64>& vals, std::vector<i64> base) {
  base = canonical_cyclic(base);
  const i64 r = static_cast<i64>(vals.size());
  if (static_cast<i64>(base.size()) != r) return false;
  for (i64 u = 1; u <= r; ++u) {
    if (std::gcd(u, r) != 1) continue;
    if (canonical_cyclic(dilate(vals, u)) == base) return true;
  }
  return false;
}

const TableRow* find_row(const std::vector<TableRow>& rows, i64 p, bool diagonal, i64 order) {
  for (const TableRow& r : rows)
    if (r.p == p && r.diagonal == diagonal && r.K.order() == order) return &r;
  return nullptr;
}

// A one-kernel scan outcome for a Singer-cycle kernel, bypassing the full
// subgroup sweep (used to reach q = 19 cheaply in unit tests).
Alg3Outcome synth_singer_outcome(i64 q, i64 m) {
  const AbelianGroup A = make_group({{q, {1, 1}}});
  const Gl2Subgroup K = singer_subgroup(q, m);
  const Gl2Subgroup full = singer_subgroup(q, q * q - 1);
  EConstraintSystem sys = build_system(full.group, K.group, A,
                                       local_class(full.group, unpack(A, 1)), WeightMode::count);
  apply_pruning(sys, K.group);
  std::vector<ESolution> sols = enumerate_solutions(sys);
  return Alg3Outcome{false, false, A, {Alg3Entry{K, sys, std::move(sols)}}};
}

}  // namespace

TEST_CASE("translation tables match the published rows up to p=13") {
  const std::vector<TableRow> rows = tables(13, 2);
  for (const TableRow& r : rows) {
    CHECK(r.quotient_cyclic);
    CHECK(r.off_axis_only);
    CHECK(r.quotient_order >= 2);
  }
  std::vector<std::pair<i64, std::string>> inventory;
  for (const TableRow& r : rows) inventory.emplace_back(r.p, iso_label(r.K.group));
  std::sort(inventory.begin(), inventory.end());
  std::vector<std::pair<i64, std::string>> want = {{7, "C16"},  {11, "C24"},   {13, "C28"},
                                                   {13, "C42"}, {13, "C56"}, {13, "C12xC4"}};
  std::sort(want.begin(), want.end());
  CHECK(inventory == want);

  const TableRow* r7 = find_row(rows, 7, false, 16);
  REQUIRE(r7 != nullptr);
  CHECK(r7->quotient_order == 3);
  CHECK(row_tuples_match(*r7, {{-1, 2, 0}}));

  const TableRow* r11 = find_row(rows, 11, false, 24);
  REQUIRE(r11 != nullptr);
  CHECK(r11->quotient_order == 5);
  CHECK(row_tuples_match(*r11, {{-2, 2, 1, 0, 0}, {-1, 1, 1, 0, 0}}));

  const TableRow* r28 = find_row(rows, 13, false, 28);
  REQUIRE(r28 != nullptr);
  CHECK(r28->quotient_order == 6);
  CHECK(row_tuples_match(*r28, {{-1, 1, 1, 0, 0, 0}, {-1, 0, 1, 1, 0, 0}}));

  const TableRow* r42 = find_row(rows, 13, false, 42);
  REQUIRE(r42 != nullptr);
  CHECK(r42->quotient_order == 4);
  CHECK(row_tuples_match(*r42, {{-1, 1, 1, 0}}));

  const TableRow* r56 = find_row(rows, 13, false, 56);
  REQUIRE(r56 != nullptr);
  CHECK(r56->quotient_order == 3);
  CHECK(row_tuples_match(*r56, {{-2, 2, 1}, {-1, 1, 1}}));

  const TableRow* rd = find_row(rows, 13, true, 48);
  REQUIRE(rd != nullptr);
  CHECK(rd->quotient_order == 3);
  CHECK(row_tuples_match(*rd, {{-1, 2, 0}}));
  const Gl2Subgroup k1 = diagonal_subgroup(13, {{6, 3}, {1, 5}});
  const Gl2Subgroup k2 = diagonal_subgroup(13, {{3, 6}, {5, 1}});
  CHECK((rd->K.group.elements == k1.group.elements || rd->K.group.elements == k2.group.elements));
}

TEST_CASE("pair matching finds exactly the Singer/diagonal partner for (7,13)") {
  const MatchReport rep = match_pairs(7, scan(7), 13, scan(13), 2);
  CHECK(rep.notes.empty());
  REQUIRE(rep.pairs.size() == 1);
  const MatchedPair& mp = rep.pairs[0];
  CHECK(mp.p == 7);
  CHECK(mp.q == 13);
  CHECK(iso_label(mp.Kp.group) == "C16");
  CHECK(iso_label(mp.Kq.group) == "C12xC4");
  CHECK(mp.Kp.kind == Gl2Kind::singer_cyclic);
  CHECK(mp.Tp.order() == 48);
  CHECK(mp.Tq.order() == 144);
  CHECK(mp.r == 3);
  CHECK((mp.u == 1 || mp.u == 2));
  CHECK(mp.svals[0] != 0);
  CHECK(mp.svals[0] == mp.tvals[0]);
  CHECK(same_cycle_up_to_unit(mp.svals, {-1, 2, 0}));
  CHECK(same_cycle_up_to_unit(mp.tvals, {-1, 2, 0}));
  CHECK(mp.n.size() == 4);
  CHECK(mp.n[2] != 0);
  CHECK(mp.n[3] != 0);
  CHECK_NOTHROW(validate_pair(mp));
}

TEST_CASE("corrupted gluing data is rejected") {
  const MatchReport rep = match_pairs(7, scan(7), 13, scan(13), 2);
  REQUIRE(rep.pairs.size() == 1);

  MatchedPair bad_u = rep.pairs[0];
  bad_u.u = bad_u.u == 1 ? 2 : 1;
  bool threw = false;
  try {
    validate_pair(bad_u);
  } catch (const std::invalid_argument& e) {
    threw = true;
    CHECK(std::string(e.what()).find("value condition fails") != std::string::npos);
  }
  CHECK(threw);

  MatchedPair bad_n = rep.pairs[0];
  bad_n.n[2] = 1;  // base point moved onto an eigenline, outside the support orbit
  bad_n.n[3] = 0;
  CHECK_THROWS_AS(validate_pair(bad_n), std::invalid_argument);

  MatchedPair bad_r = rep.pairs[0];
  bad_r.r = 6;
  CHECK_THROWS_AS(validate_pair(bad_r), std::invalid_argument);
}

TEST_CASE("the (7,13) candidate builds, verifies, and realizes its witnesses") {
  const MatchReport rep = match_pairs(7, scan(7), 13, scan(13), 2);
  REQUIRE(rep.pairs.size() == 1);
  const CandidateGroup cand = build_candidate(rep.pairs[0]);
  CHECK(cand.N.order == 91 * 91);
  CHECK(cand.gamma.order() == 2304);  // 16 * 48 * 3
  CHECK_FALSE(cand.has_gd_type);
  CHECK(cand.epsilon.class_sum() == 1);
  CHECK(cand.epsilon.min_value() == -1);
  i64 nonzero = 0;
  for (i64 v : cand.epsilon.dense) nonzero += v != 0 ? 1 : 0;
  CHECK(nonzero == 4608);  // 144 off-eigenline 13-parts x 32 non-vanishing 7-parts
  CHECK(cand.epsilon.dense[pack(cand.N, cand.pair.n)] == cand.pair.svals[0]);
  CHECK(cand.epsilon.value_at({1, 0, 0, 0}) == 0);  // pure 7-part
  CHECK(cand.epsilon.value_at({0, 0, 1, 1}) == 0);  // pure 13-part

  const VerifyReport vr = verify_candidate(cand, 2);
  CHECK(vr.centralizer_collapse_p);
  CHECK(vr.centralizer_collapse_q);
  CHECK(vr.inner_is_kp);
  CHECK(vr.inner_is_kq);
  CHECK(vr.symmetric_formula);
  CHECK(vr.membership_p);
  CHECK(vr.membership_q);
  CHECK(vr.epsilon_among_witnesses);
  CHECK(vr.witness_count == 3);
  CHECK(vr.pass);

  const AlgOutcome out = algorithm2(make_metabelian(cand.N, cand.gamma, "candidate"), 2);
  REQUIRE(out.witnesses.size() == 3);
  for (const Witness& w : out.witnesses) CHECK(witness_decomposes(cand, w.epsilon, rep));
  const ClassFunction zero{cand.N, "none", {}, {}, std::vector<i64>(cand.N.order, 0)};
  CHECK_FALSE(witness_decomposes(cand, zero, rep));
}

TEST_CASE("a full Singer pair at (7,19) yields the d=3 glued family") {
  const Alg3Outcome out19 = synth_singer_outcome(19, 120);
  REQUIRE(out19.entries.size() == 1);
  CHECK(out19.entries[0].solutions.size() == 9);
  const MatchReport rep = match_pairs(7, scan(7), 19, out19, 2);
  REQUIRE(rep.pairs.size() == 1);
  const MatchedPair& mp = rep.pairs[0];
  CHECK(mp.Tp.order() == 48);
  CHECK(mp.Tq.order() == 360);
  CHECK(mp.r == 3);
  CHECK(same_cycle_up_to_unit(mp.svals, {-1, 2, 0}));
  CHECK(same_cycle_up_to_unit(mp.tvals, {-1, 2, 0}));
  const CandidateGroup cand = build_candidate(mp);
  CHECK(cand.has_gd_type);
  CHECK(cand.gd_d == 3);
  CHECK(cand.gamma.order() == 5760);  // 16 * 120 * 3
  const VerifyReport vr = verify_candidate(cand, 2);
  CHECK(vr.pass);
  CHECK(vr.witness_count == 3);
}

TEST_CASE("no gluing exists for (7,11) or (11,13); product actions stay witness-free") {
  REQUIRE(scan(11).entries.size() == 1);
  CHECK(iso_label(scan(11).entries[0].K.group) == "C24");
  CHECK(match_pairs(7, scan(7), 11, scan(11), 2).pairs.empty());
  CHECK(match_pairs(11, scan(11), 13, scan(13), 2).pairs.empty());

  // With no common quotient order there is nothing to glue; the only actions
  // assembled from the per-prime kernels are the direct products, and the
  // two-prime verification clears every one of them.
  const Gl2Subgroup& K11 = scan(11).entries[0].K;
  const AbelianGroup N = make_group({{11, {1, 1}}, {13, {1, 1}}});
  const std::vector<i64> id2 = {1, 0, 0, 1};
  bool spot_checked = false;
  for (const Alg3Entry& e : scan(13).entries) {
    std::vector<AutElem> gens;
    for (const auto& g : K11.generators) gens.push_back(make_aut(N, {g, id2}));
    for (const auto& g : e.K.generators) gens.push_back(make_aut(N, {id2, g}));
    const AutGroup gamma = generate(N, gens, "product");
    CHECK(gamma.order() == K11.order() * e.K.order());
    const MetabelianGroup G = make_metabelian(N, gamma, "C143xC143 product");
    CHECK(algorithm2(G, 2).verdict_true);
    if (!spot_checked) {
      CHECK(algorithm1(G, 13).verdict_true);
      spot_checked = true;
    }
  }
}

TEST_CASE("kernels that cannot glue are reported; malformed inputs are rejected") {
  const AbelianGroup A3 = make_group({{3, {1, 1}}});
  Gl2Subgroup nonab;
  nonab.q = 3;
  nonab.generators = {{1, 1, 0, 1}, {1, 0, 1, 1}};
  nonab.kind = Gl2Kind::general;
  nonab.label = "transvections";
  nonab.group = generate(A3, {make_aut(A3, {{1, 1, 0, 1}}), make_aut(A3, {{1, 0, 1, 1}})},
                         "transvections");
  Gl2Subgroup swap;
  swap.q = 3;
  swap.generators = {{0, 1, 1, 0}};
  swap.kind = Gl2Kind::general;
  swap.label = "swap";
  swap.group = generate(A3, {make_aut(A3, {{0, 1, 1, 0}})}, "swap");
  const Alg3Outcome synth{false, false, A3, {Alg3Entry{nonab, {}, {}}, Alg3Entry{swap, {}, {}}}};
  const MatchReport rep = match_pairs(3, synth, 7, scan(7), 2);
  CHECK(rep.pairs.empty());
  REQUIRE(rep.notes.size() == 2);
  CHECK(rep.notes[0].find("non-abelian") != std::string::npos);
  CHECK(rep.notes[1].find("not inside a reference torus") != std::string::npos);

  CHECK_THROWS_AS(match_pairs(13, scan(13), 7, scan(7), 2), std::invalid_argument);
  CHECK_THROWS_AS(match_pairs(7, scan(11), 13, scan(13), 2), std::invalid_argument);
}
