#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "sehgalkit/action.hpp"

using namespace sehgalkit;

namespace {

Element el(std::initializer_list<i64> v) { return Element(v); }

// Orbit partition of the 24 nonzero vectors of F5^2 under the order-6 cyclic
// group generated by (x,y) -> (-y, x+y); labels 1-4 are frozen from the
// hand-checked class diagram of that action (the "K_1" class picture).
const std::map<std::pair<int, int>, int> kC6ClassLabels = {
    {{-2, -2}, 4}, {{-1, -2}, 4}, {{0, -2}, 2}, {{1, -2}, 3}, {{2, -2}, 2},
    {{-2, -1}, 4}, {{-1, -1}, 3}, {{0, -1}, 1}, {{1, -1}, 1}, {{2, -1}, 3},
    {{-2, 0}, 2},  {{-1, 0}, 1},  {{1, 0}, 1},  {{2, 0}, 2},
    {{-2, 1}, 3},  {{-1, 1}, 1},  {{0, 1}, 1},  {{1, 1}, 3},  {{2, 1}, 4},
    {{-2, 2}, 2},  {{-1, 2}, 3},  {{0, 2}, 2},  {{1, 2}, 4},  {{2, 2}, 4},
};

}  // namespace

TEST_CASE("automorphism arithmetic") {
  AbelianGroup A = parse_group("7^[1,1]");
  AutElem id = identity_aut(A);
  AutElem s = make_aut(A, {{0, 1, -1, 1}});
  CHECK(apply(A, id, el({3, 5})) == el({3, 5}));
  CHECK(apply(A, s, el({1, 0})) == el({0, 6}));  // (1,0) -> (0,-1)

  // compose(s,t) applies t first, then s
  AutElem t = make_aut(A, {{2, 0, 0, 1}});
  Element a = el({1, 2});
  CHECK(apply(A, compose(A, s, t), a) == apply(A, s, apply(A, t, a)));
  CHECK(compose(A, s, aut_inverse(A, s)) == id);
  CHECK(compose(A, aut_inverse(A, s), s) == id);
  CHECK(aut_power(A, s, aut_order(A, s)) == id);

  // action is by group homomorphisms
  Element b = el({4, 6});
  CHECK(apply(A, s, mul(A, a, b)) == mul(A, apply(A, s, a), apply(A, s, b)));

  CHECK_THROWS(make_aut(A, {{1, 0, 0, 7}}));             // det 0 mod 7
  CHECK_THROWS(make_aut(A, {{1, 0, 0}}));                // bad shape
  CHECK_THROWS(make_aut(parse_group("2^[2,1]"), {{1, 0, 0, 1}}));  // mixed exponents
  CHECK_THROWS(make_aut(parse_group("2^[1,1,1]"), {{1}}));         // rank 3

  // 1x1 blocks on cyclic components
  AbelianGroup C = parse_group("3^[1]x5^[1]");
  AutElem u = make_aut(C, {{2}, {3}});
  CHECK(apply(C, u, el({1, 1})) == el({2, 3}));
  CHECK(aut_order(C, u) == 4);  // lcm(ord 2 mod 3, ord 3 mod 5) = lcm(2,4)
}

TEST_CASE("generated groups and orbits") {
  AbelianGroup A = parse_group("7^[1,1]");
  // Multiplication by a primitive root alpha of X^2 - X + 3 over F7, in basis {1, alpha}.
  AutElem singer = make_aut(A, {{0, -3, 1, 1}});
  AutGroup full = generate(A, {singer}, "singer48");
  CHECK(full.order() == 48);
  CHECK(full.contains(identity_aut(A)));
  CHECK(full.contains(aut_power(A, singer, 17)));

  // Index-16 power: the order-16 subgroup splits the 48 nonzero vectors into 3 orbits.
  AutElem beta = aut_power(A, singer, 3);
  AutGroup K = generate(A, {beta}, "C16");
  CHECK(K.order() == 16);
  std::vector<i64> nonzero;
  for (i64 i = 1; i < A.order; ++i) nonzero.push_back(i);
  auto cls = orbits(K, nonzero);
  REQUIRE(cls.size() == 3);
  for (const auto& c : cls) {
    CHECK(c.members.size() == 16);
    CHECK(c.stabilizer_order == 1);  // semiregular
    CHECK(pack(A, c.rep) == c.members.front());
  }
  // Iterating the generator 16 times returns to the start.
  Element x = el({1, 0});
  Element y = x;
  for (int i = 0; i < 16; ++i) y = apply(A, beta, y);
  CHECK(y == x);

  // Trivial group: singleton orbits.
  auto singletons = orbits(trivial_group(A), nonzero);
  CHECK(singletons.size() == 48);

  // Stabilizers: the full group fixes the identity; semiregular otherwise.
  CHECK(stabilizer(full, identity_of(A)).order() == 48);
  CHECK(stabilizer(full, el({3, 4})).order() == 1);
}

TEST_CASE("order-6 action on F5^2 reproduces the frozen class diagram") {
  AbelianGroup A = parse_group("5^[1,1]");
  // The diagram uses the row-vector convention; our action is on column
  // vectors, so the generator is the transpose of the published matrix.
  AutElem g = make_aut(A, {{0, -1, 1, 1}});
  AutGroup K1 = generate(A, {g}, "K1");
  CHECK(K1.order() == 6);

  std::map<int, std::set<i64>> expected;
  for (const auto& [xy, label] : kC6ClassLabels)
    expected[label].insert(pack(A, el({(xy.first + 5) % 5, (xy.second + 5) % 5})));
  REQUIRE(expected.size() == 4);

  std::vector<i64> nonzero;
  for (i64 i = 1; i < A.order; ++i) nonzero.push_back(i);
  auto cls = orbits(K1, nonzero);
  REQUIRE(cls.size() == 4);
  std::set<std::set<i64>> got, want;
  i64 total = 0;
  for (const auto& c : cls) {
    got.insert(std::set<i64>(c.members.begin(), c.members.end()));
    total += static_cast<i64>(c.members.size());
  }
  CHECK(total == 24);
  for (auto& [label, members] : expected) want.insert(members);
  CHECK(got == want);
}

TEST_CASE("local classes combine per-prime orbits") {
  AbelianGroup A = parse_group("7^[1,1]");
  // Full Aut(C7xC7) = GL(2,7) is transitive on the 48 nonzero vectors.
  AutGroup gl = generate(A, {make_aut(A, {{0, -3, 1, 1}}), make_aut(A, {{1, 1, 0, 1}})}, "GL(2,7)");
  CHECK(gl.order() == 2016);
  CHECK(local_class(gl, el({1, 0})).size() == 48);
  CHECK(local_class(gl, identity_of(A)) == std::vector<i64>{0});

  // Product action on C91xC91: transitive on each primary part separately.
  AbelianGroup N = parse_group("7^[1,1]x13^[1,1]");
  AutElem s7 = make_aut(N, {{0, -3, 1, 1}, {1, 0, 0, 1}});
  AutElem s13 = make_aut(N, {{1, 0, 0, 1}, {0, -2, 1, 1}});  // X^2 - X + 2 irreducible mod 13
  AutGroup GG = generate(N, {s7, s13});
  Element a = el({1, 0, 1, 0});
  CHECK(element_order(N, a) == 91);
  auto lc = local_class(GG, a);
  // all order-91 elements, provided both Singer factors act transitively
  CHECK(orbit_of(GG, part(N, a, {7})).members.size() == 48);
  CHECK(orbit_of(GG, part(N, a, {13})).members.size() == 168);
  CHECK(lc.size() == 48 * 168);
  for (i64 m : lc) CHECK(element_order(N, unpack(N, m)) == 91);

  // Local class under the trivial group is the element alone.
  CHECK(local_class(trivial_group(N), a) == std::vector<i64>{pack(N, a)});

  // The local class is a union of G-classes containing the G-class of a.
  auto cls = orbit_of(GG, a);
  CHECK(std::includes(lc.begin(), lc.end(), cls.members.begin(), cls.members.end()));
}

TEST_CASE("restriction homomorphism and its image") {
  AbelianGroup N = parse_group("7^[1,1]x13^[1,1]");
  AutElem s = make_aut(N, {{0, -3, 1, 1}, {2, 1, 1, 1}});
  AutElem t = make_aut(N, {{1, 1, 0, 1}, {0, -2, 1, 1}});
  CHECK(restrict_aut(N, identity_aut(N), {7}) == identity_aut(restricted_group(N, {7})));
  CHECK(restrict_aut(N, s, {7}).blocks == std::vector<std::vector<i64>>{{0, 4, 1, 1}});
  CHECK(restrict_aut(N, s, {13}).blocks == std::vector<std::vector<i64>>{{2, 1, 1, 1}});

  AbelianGroup N7 = restricted_group(N, {7});
  for (const auto& [x, y] : {std::pair{s, t}, {t, s}, {s, s}}) {
    CHECK(restrict_aut(N, compose(N, x, y), {7}) ==
          compose(N7, restrict_aut(N, x, {7}), restrict_aut(N, y, {7})));
  }

  // Orbits through the restriction image match orbits of the original group on
  // parts. Use small cyclic blocks so the closure stays tiny.
  AutElem u = make_aut(N, {{0, -3, 1, 1}, {1, 0, 0, 1}});
  AutElem v = make_aut(N, {{1, 0, 0, 1}, {0, -2, 1, 1}});
  AutGroup G = generate(N, {aut_power(N, u, 3), aut_power(N, v, 14)});
  CHECK(G.order() == 16 * 12);
  AutGroup G7 = inn_image(G, {7});
  Element a = unpack(N, 1234);
  auto orbit_in_N = orbit_of(G, part(N, a, {7}));
  auto orbit_in_N7 = orbit_of(G7, project(N, a, {7}));
  std::vector<i64> mapped;
  for (i64 m : orbit_in_N7.members) mapped.push_back(pack(N, embed(N, unpack(N7, m), {7})));
  std::sort(mapped.begin(), mapped.end());
  CHECK(mapped == orbit_in_N.members);

  // Kernel sizes multiply out: |G| = |image| * |pointwise stabilizer of N_7|.
  i64 kernel = 0;
  for (const auto& g : G.elements) {
    bool fixes = true;
    for (i64 i = 0; i < N7.order && fixes; ++i)
      fixes = apply(N, g, embed(N, unpack(N7, i), {7})) == embed(N, unpack(N7, i), {7});
    kernel += fixes;
  }
  CHECK(G.order() == G7.order() * kernel);
}
