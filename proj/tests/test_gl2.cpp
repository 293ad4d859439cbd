#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sehgalkit/gl2.hpp"

using namespace sehgalkit;

namespace {

const std::vector<Gl2Subgroup>& reps5() {
  static const std::vector<Gl2Subgroup> v = subgroup_class_reps(5);
  return v;
}

const AutGroup& gl25() {
  static const AutGroup g = [] {
    AbelianGroup A = parse_group("5^[1,1]");
    i64 z = primitive_root(5);
    return generate(A, {make_aut(A, {{z, 0, 0, 1}}), make_aut(A, {{4, 1, 4, 0}}), make_aut(A, {{1, 1, 0, 1}})});
  }();
  return g;
}

bool conjugate_in(const AutGroup& big, const AutGroup& a, const AutGroup& b) {
  if (a.order() != b.order()) return false;
  for (const auto& x : big.elements)
    if (conjugate_group(a, x).elements == b.elements) return true;
  return false;
}

std::vector<std::string> labels_of(const std::vector<Gl2Subgroup>& v) {
  std::vector<std::string> out;
  for (const auto& k : v) out.push_back(k.label);
  std::sort(out.begin(), out.end());
  return out;
}

bool abelian_group(const AutGroup& G) {
  for (size_t i = 0; i < G.generators.size(); ++i)
    for (size_t j = i + 1; j < G.generators.size(); ++j)
      if (!(compose(G.ambient, G.generators[i], G.generators[j]) ==
            compose(G.ambient, G.generators[j], G.generators[i])))
        return false;
  return true;
}

bool candidate_predicates(const Gl2Subgroup& K) {
  return abelian_group(K.group) && K.order() > K.q && K.order() % K.q != 0 && !contains_center(K) &&
         !is_transitive_on_nonzero(K.group);
}

}  // namespace

TEST_CASE("primitive roots") {
  CHECK(primitive_root(2) == 1);
  CHECK(primitive_root(3) == 2);
  CHECK(primitive_root(5) == 2);
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(11) == 2);
  CHECK(primitive_root(13) == 2);
  CHECK(primitive_root(17) == 3);
  CHECK(primitive_root(19) == 2);
  CHECK_THROWS_AS(primitive_root(6), std::invalid_argument);
}

TEST_CASE("singer basis: least primitive quadratic, pinned for the small fields") {
  // X^2 - aX - b; pins documented since the table values are stated in this basis.
  struct Pin {
    i64 q, a, b;
  };
  for (Pin p : {Pin{2, 1, 1}, Pin{3, 1, 1}, Pin{5, 1, 3}, Pin{7, 1, 4}}) {
    AbelianGroup A = parse_group(std::to_string(p.q) + "^[1,1]");
    SingerBasis basis = singer_basis(A);
    CAPTURE(p.q);
    CHECK(basis.a == p.a);
    CHECK(basis.b == p.b);
    CHECK(aut_order(A, basis.mult_alpha) == p.q * p.q - 1);
  }
  for (i64 q : {11, 13, 17, 19}) {
    AbelianGroup A = parse_group(std::to_string(q) + "^[1,1]");
    CHECK(aut_order(A, singer_basis(A).mult_alpha) == q * q - 1);
  }
}

TEST_CASE("singer subgroups: orders, semiregularity, transitivity") {
  Gl2Subgroup s = singer_subgroup(7, 16);
  CHECK(s.order() == 16);
  CHECK(s.kind == Gl2Kind::singer_cyclic);
  CHECK(s.label == "C16");
  std::vector<i64> nonzero;
  for (i64 i = 1; i < 49; ++i) nonzero.push_back(i);
  std::vector<ActionClass> cls = orbits(s.group, nonzero);
  REQUIRE(cls.size() == 3);
  for (const auto& c : cls) {
    CHECK(c.members.size() == 16);
    CHECK(c.stabilizer_order == 1);
  }

  CHECK(is_transitive_on_nonzero(singer_subgroup(5, 24).group));
  CHECK_FALSE(is_transitive_on_nonzero(s.group));

  Gl2Subgroup s13 = singer_subgroup(13, 56);
  CHECK(s13.order() == 56);
  std::vector<i64> nz13;
  for (i64 i = 1; i < 169; ++i) nz13.push_back(i);
  std::vector<ActionClass> cls13 = orbits(s13.group, nz13);
  REQUIRE(cls13.size() == 3);
  for (const auto& c : cls13) CHECK(c.stabilizer_order == 1);

  CHECK_THROWS_AS(singer_subgroup(7, 5), std::invalid_argument);
  CHECK_THROWS_AS(singer_subgroup(6, 5), std::invalid_argument);
}

TEST_CASE("diagonal subgroups: orders, types, labels") {
  Gl2Subgroup d = diagonal_subgroup(13, {{6, 3}, {1, 5}});
  CHECK(d.order() == 48);
  CHECK(d.kind == Gl2Kind::diagonalizable);
  CHECK(d.label == "(6,3),(1,5)");
  CHECK(iso_label(d.group) == "C12xC4");

  Gl2Subgroup d17 = diagonal_subgroup(17, {{3, 9}, {1, 16}});
  CHECK(d17.order() == 32);
  CHECK(iso_label(d17.group) == "C16xC2");

  CHECK(diagonal_subgroup(7, {{1, 1}}).order() == 1);
  CHECK_THROWS_AS(diagonal_subgroup(7, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("GL(2,2): four subgroup classes") {
  std::vector<Gl2Subgroup> reps = subgroup_class_reps(2);
  REQUIRE(reps.size() == 4);
  std::vector<i64> orders;
  for (const auto& k : reps) orders.push_back(k.order());
  CHECK(orders == std::vector<i64>{1, 2, 3, 6});
  CHECK(labels_of(reps) == std::vector<std::string>{"C1", "C2", "C3", "D6"});
  CHECK_THROWS_AS(subgroup_class_reps(7), scope_error);
}

TEST_CASE("GL(2,3): classes agree with an independent raw enumeration") {
  std::vector<Gl2Subgroup> reps = subgroup_class_reps(3);

  AbelianGroup A = parse_group("3^[1,1]");
  i64 z = primitive_root(3);
  AutGroup GL = generate(A, {make_aut(A, {{z, 0, 0, 1}}), make_aut(A, {{2, 1, 2, 0}}), make_aut(A, {{1, 1, 0, 1}})});
  REQUIRE(GL.order() == 48);
  auto idx = [&](const AutElem& e) {
    return static_cast<int>(std::lower_bound(GL.elements.begin(), GL.elements.end(), e) - GL.elements.begin());
  };
  auto mul = [&](int i, int j) {
    return idx(compose(A, GL.elements[static_cast<size_t>(i)], GL.elements[static_cast<size_t>(j)]));
  };
  int id = idx(identity_aut(A));

  // Raw closure-extension over generator lists: every subgroup, not folded by
  // conjugacy. An intentionally different code path from the library's.
  auto close = [&](const std::vector<int>& gens) {
    std::vector<char> in(48, 0);
    std::vector<int> members = {id}, stack = {id};
    in[static_cast<size_t>(id)] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int g : gens) {
        int y = mul(x, g);
        if (!in[static_cast<size_t>(y)]) {
          in[static_cast<size_t>(y)] = 1;
          members.push_back(y);
          stack.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    return members;
  };
  std::map<std::vector<int>, std::vector<int>> raw;  // members -> generating set
  raw[{id}] = {};
  std::vector<std::vector<int>> queue = {{id}};
  while (!queue.empty()) {
    std::vector<int> S = queue.back();
    queue.pop_back();
    std::vector<int> gens = raw[S];
    for (int g = 0; g < 48; ++g) {
      if (std::binary_search(S.begin(), S.end(), g)) continue;
      std::vector<int> gens2 = gens;
      gens2.push_back(g);
      std::vector<int> T = close(gens2);
      if (!raw.count(T)) {
        raw[T] = gens2;
        queue.push_back(T);
      }
    }
  }
  // 55 subgroups of GL(2,3) in 16 conjugacy classes.
  CHECK(raw.size() == 55);
  CHECK(reps.size() == 16);

  std::vector<int> invs(48);
  for (int i = 0; i < 48; ++i) invs[static_cast<size_t>(i)] = idx(aut_inverse(A, GL.elements[static_cast<size_t>(i)]));
  auto canon = [&](const std::vector<int>& S) {
    std::vector<int> best = S;
    for (int x = 0; x < 48; ++x) {
      std::vector<int> c;
      for (int s : S) c.push_back(mul(mul(x, s), invs[static_cast<size_t>(x)]));
      std::sort(c.begin(), c.end());
      if (c < best) best = c;
    }
    return best;
  };
  std::set<std::vector<int>> canons;
  for (const auto& [S, g] : raw) canons.insert(canon(S));
  CHECK(canons.size() == reps.size());
  for (const auto& rep : reps) {
    std::vector<int> members;
    for (const auto& e : rep.group.elements) members.push_back(idx(e));
    std::sort(members.begin(), members.end());
    CHECK(canons.count(members) == 1);  // representatives are already canonical
  }
}

TEST_CASE("GL(2,5): the filter leaves exactly the seven listed class types") {
  const std::vector<Gl2Subgroup>& reps = reps5();
  std::vector<const Gl2Subgroup*> filtered;
  for (const auto& k : reps)
    if (!is_transitive_on_nonzero(k.group) && !contains_center(k) && k.order() > 5 && k.order() % 5 != 0)
      filtered.push_back(&k);
  REQUIRE(filtered.size() == 7);
  std::vector<std::string> labels;
  for (const auto* k : filtered) labels.push_back(k->label);
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<std::string>{"C3:C4", "C4xC2", "C6", "D12", "D6", "D8", "Q8"});
}

TEST_CASE("GL(2,5): the seven published generator sets land in the seven classes") {
  // Published as right-action matrices; transposed here to act on columns.
  struct Entry {
    std::vector<std::vector<i64>> gens;
    std::string label;
  };
  std::vector<Entry> table = {
      {{{0, -1, 1, 1}}, "C6"},
      {{{-1, 0, 1, 1}, {-1, -1, 1, 0}}, "D6"},
      {{{-2, 0, -2, 2}, {-2, -1, 0, 2}}, "Q8"},
      {{{1, -2, 0, -1}, {1, 0, 1, -1}}, "D8"},
      {{{-1, 0, 0, -1}, {2, -1, 0, 1}}, "C4xC2"},
      {{{2, 0, -2, -2}, {0, 1, -1, -1}}, "C3:C4"},
      {{{1, 0, -1, -1}, {0, -1, 1, 1}}, "D12"},
  };
  AbelianGroup A = parse_group("5^[1,1]");
  for (const auto& entry : table) {
    std::vector<AutElem> gens;
    for (const auto& g : entry.gens) gens.push_back(make_aut(A, {g}));
    AutGroup K = generate(A, gens);
    CAPTURE(entry.label);
    CHECK(iso_label(K) == entry.label);
    int matches = 0;
    for (const auto& rep : reps5())
      if (rep.label == entry.label && rep.order() == K.order() && conjugate_in(gl25(), K, rep.group)) ++matches;
    CHECK(matches == 1);
  }
}

TEST_CASE("abelian candidates: q = 2, 3, 5 cross-checked against the full enumeration") {
  CHECK(abelian_candidates(2).empty());
  CHECK(abelian_candidates(3).empty());

  std::vector<Gl2Subgroup> cand5 = abelian_candidates(5);
  REQUIRE(cand5.size() == 2);
  CHECK(cand5[0].order() == 6);
  CHECK(cand5[0].kind == Gl2Kind::singer_cyclic);
  CHECK(cand5[0].label == "C6");
  CHECK(cand5[1].order() == 8);
  CHECK(cand5[1].kind == Gl2Kind::diagonalizable);
  CHECK(iso_label(cand5[1].group) == "C4xC2");

  // Same predicates applied to the full conjugacy-class list give the same
  // groups up to conjugacy.
  std::vector<const Gl2Subgroup*> oracle;
  for (const auto& k : reps5())
    if (candidate_predicates(k)) oracle.push_back(&k);
  REQUIRE(oracle.size() == cand5.size());
  for (const auto& c : cand5) {
    int matched = 0;
    for (const auto* k : oracle)
      if (conjugate_in(gl25(), c.group, k->group)) ++matched;
    CHECK(matched == 1);
  }

  for (i64 q : {2, 3}) {
    for (const auto& k : subgroup_class_reps(q))
      CHECK_FALSE(candidate_predicates(k));  // matches the empty candidate list
  }
}

TEST_CASE("abelian candidates: q = 7 both sides") {
  std::vector<Gl2Subgroup> cand = abelian_candidates(7);
  REQUIRE(cand.size() == 6);
  std::vector<std::string> singer, diag;
  for (const auto& k : cand) {
    CHECK(candidate_predicates(k));
    if (k.kind == Gl2Kind::singer_cyclic)
      singer.push_back(k.label);
    else
      diag.push_back(iso_label(k.group));
  }
  std::sort(singer.begin(), singer.end());
  std::sort(diag.begin(), diag.end());
  CHECK(singer == std::vector<std::string>{"C16", "C8"});
  CHECK(diag == std::vector<std::string>{"C3xC3", "C6xC2", "C6xC2", "C6xC3"});
}

TEST_CASE("abelian candidates: singer orders for the table primes") {
  auto singer_orders = [](i64 q) {
    std::vector<i64> out;
    for (const auto& k : abelian_candidates(q))
      if (k.kind == Gl2Kind::singer_cyclic) out.push_back(k.order());
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(singer_orders(11) == std::vector<i64>{12, 15, 24});
  CHECK(singer_orders(13) == std::vector<i64>{14, 21, 28, 42, 56});
  CHECK(singer_orders(17) == std::vector<i64>{18, 24, 36, 72});
  CHECK(singer_orders(19) == std::vector<i64>{20, 24, 30, 40, 45, 60, 120});
}

TEST_CASE("abelian candidates: published diagonal groups appear for q = 13 and 17") {
  auto contains_up_to_swap = [](i64 q, const std::vector<std::pair<i64, i64>>& pairs) {
    Gl2Subgroup d = diagonal_subgroup(q, pairs);
    AbelianGroup A = parse_group(std::to_string(q) + "^[1,1]");
    AutGroup swapped = conjugate_group(d.group, make_aut(A, {{0, 1, 1, 0}}));
    for (const auto& k : abelian_candidates(q))
      if (k.kind == Gl2Kind::diagonalizable &&
          (k.group.elements == d.group.elements || k.group.elements == swapped.elements))
        return true;
    return false;
  };
  CHECK(contains_up_to_swap(13, {{6, 3}, {1, 5}}));
  CHECK(contains_up_to_swap(17, {{3, 9}, {1, 16}}));
  CHECK(contains_up_to_swap(17, {{3, 10}, {1, 13}}));
  CHECK(contains_up_to_swap(19, {{2, 9}, {1, 18}}));
  CHECK(contains_up_to_swap(19, {{2, 15}, {1, 7}}));
}

TEST_CASE("dichotomy classification") {
  CHECK(dichotomy_classify(singer_subgroup(7, 16)) == Gl2Kind::singer_cyclic);
  CHECK(dichotomy_classify(singer_subgroup(5, 24)) == Gl2Kind::singer_cyclic);
  CHECK(dichotomy_classify(diagonal_subgroup(13, {{6, 3}, {1, 5}})) == Gl2Kind::diagonalizable);

  for (i64 q : {5, 7, 13}) {
    for (const auto& k : abelian_candidates(q)) {
      CAPTURE(q);
      CAPTURE(k.label);
      CHECK(dichotomy_classify(k) == k.kind);
    }
  }

  // Non-abelian input: the D8 representative.
  AbelianGroup A = parse_group("5^[1,1]");
  Gl2Subgroup bad;
  bad.q = 5;
  bad.group = generate(A, {make_aut(A, {{1, -2, 0, -1}}), make_aut(A, {{1, 0, 1, -1}})});
  CHECK_THROWS_AS(dichotomy_classify(bad), std::invalid_argument);

  // Abelian but too small: cyclic of order 4 inside GL(2,5).
  CHECK_THROWS_AS(dichotomy_classify(diagonal_subgroup(5, {{2, 1}})), std::invalid_argument);
}

TEST_CASE("iso labels: abelian invariant factors and small named types") {
  AbelianGroup A = parse_group("7^[1,1]");
  CHECK(iso_label(trivial_group(A)) == "C1");
  CHECK(iso_label(singer_subgroup(7, 16).group) == "C16");
  CHECK(iso_label(singer_subgroup(7, 48).group) == "C48");
  CHECK(iso_label(diagonal_subgroup(7, {{3, 1}, {1, 3}}).group) == "C6xC6");
  CHECK(iso_label(diagonal_subgroup(13, {{6, 3}, {1, 5}}).group) == "C12xC4");
}

TEST_CASE("conjugation preserves structure") {
  Gl2Subgroup s = singer_subgroup(7, 16);
  AbelianGroup A = parse_group("7^[1,1]");
  AutElem x = make_aut(A, {{1, 1, 0, 1}});
  AutGroup c = conjugate_group(s.group, x);
  CHECK(c.order() == 16);
  CHECK(iso_label(c) == "C16");
  CHECK_FALSE(c.elements == s.group.elements);  // x does not normalize the Singer cycle
}
