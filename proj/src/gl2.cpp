#include "sehgalkit/gl2.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sehgalkit {

namespace {

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out;
  for (i64 d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

AbelianGroup square_group(i64 q) { return parse_group(std::to_string(q) + "^[1,1]"); }

std::string pairs_label(const std::vector<std::pair<i64, i64>>& pairs) {
  std::ostringstream out;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (i) out << ",";
    out << "(" << pairs[i].first << "," << pairs[i].second << ")";
  }
  return out.str();
}

}  // namespace

std::string kind_name(Gl2Kind k) {
  switch (k) {
    case Gl2Kind::singer_cyclic: return "singer-cyclic";
    case Gl2Kind::diagonalizable: return "diagonalizable";
    default: return "general";
  }
}

i64 primitive_root(i64 q) {
  if (!is_prime(q)) throw std::invalid_argument("primitive_root: modulus must be prime");
  if (q == 2) return 1;
  std::vector<i64> ps;
  i64 m = q - 1;
  for (i64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      ps.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) ps.push_back(m);
  for (i64 g = 2; g < q; ++g) {
    bool ok = true;
    for (i64 p : ps) {
      // g^((q-1)/p) mod q
      i64 e = (q - 1) / p, base = g, r = 1;
      while (e) {
        if (e & 1) r = r * base % q;
        base = base * base % q;
        e >>= 1;
      }
      if (r == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: no generator found");
}

SingerBasis singer_basis(const AbelianGroup& A) {
  if (A.components.size() != 1 || A.components[0].exponents != std::vector<int>{1, 1})
    throw std::invalid_argument("singer_basis: domain must be C_q x C_q");
  i64 q = A.components[0].prime;
  for (i64 a = 0; a < q; ++a)
    for (i64 b = 1; b < q; ++b) {
      // Companion matrix of X^2 - aX - b: alpha * 1 = alpha, alpha * alpha = b + a*alpha.
      AutElem m = make_aut(A, {{0, b, 1, a}});
      if (aut_order(A, m) == q * q - 1) return SingerBasis{a, b, m};
    }
  throw std::logic_error("singer_basis: no primitive quadratic found");
}

Gl2Subgroup singer_subgroup(i64 q, i64 m) {
  if (!is_prime(q)) throw std::invalid_argument("singer_subgroup: q must be prime");
  i64 n2 = q * q - 1;
  if (m <= 0 || n2 % m != 0) throw std::invalid_argument("singer_subgroup: order must divide q^2-1");
  AbelianGroup A = square_group(q);
  SingerBasis basis = singer_basis(A);
  AutElem gen = aut_power(A, basis.mult_alpha, n2 / m);
  Gl2Subgroup K;
  K.q = q;
  K.generators = {gen.blocks[0]};
  K.kind = Gl2Kind::singer_cyclic;
  K.label = "C" + std::to_string(m);
  K.group = generate(A, {gen}, K.label);
  if (K.order() != m) throw std::logic_error("singer_subgroup: unexpected order");
  return K;
}

Gl2Subgroup diagonal_subgroup(i64 q, const std::vector<std::pair<i64, i64>>& pairs) {
  if (!is_prime(q)) throw std::invalid_argument("diagonal_subgroup: q must be prime");
  AbelianGroup A = square_group(q);
  std::vector<AutElem> gens;
  for (const auto& [a, b] : pairs) {
    if (a % q == 0 || b % q == 0) throw std::invalid_argument("diagonal_subgroup: entries must be units");
    gens.push_back(make_aut(A, {{a, 0, 0, b}}));
  }
  Gl2Subgroup K;
  K.q = q;
  for (const auto& g : gens) K.generators.push_back(g.blocks[0]);
  K.kind = Gl2Kind::diagonalizable;
  K.label = pairs_label(pairs);
  K.group = generate(A, gens, K.label);
  return K;
}

AutGroup conjugate_group(const AutGroup& G, const AutElem& x) {
  const AbelianGroup& A = G.ambient;
  AutElem xi = aut_inverse(A, x);
  AutGroup out;
  out.ambient = A;
  out.label = G.label;
  for (const auto& g : G.generators) out.generators.push_back(compose(A, compose(A, x, g), xi));
  for (const auto& g : G.elements) out.elements.push_back(compose(A, compose(A, x, g), xi));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

bool is_transitive_on_nonzero(const AutGroup& G) {
  Element one = identity_of(G.ambient);
  one[0] = 1;
  return static_cast<i64>(orbit_of(G, one).members.size()) == G.ambient.order - 1;
}

bool contains_center(const Gl2Subgroup& K) {
  AbelianGroup A = square_group(K.q);
  i64 z = primitive_root(K.q);
  return K.group.contains(make_aut(A, {{z, 0, 0, z}}));
}

std::string iso_label(const AutGroup& G) {
  const AbelianGroup& A = G.ambient;
  i64 n = G.order();
  if (n == 1) return "C1";
  bool abelian = true;
  for (size_t i = 0; i < G.generators.size() && abelian; ++i)
    for (size_t j = i + 1; j < G.generators.size() && abelian; ++j)
      abelian = compose(A, G.generators[i], G.generators[j]) == compose(A, G.generators[j], G.generators[i]);

  std::map<i64, i64> cnt;  // element order -> count
  for (const auto& g : G.elements) ++cnt[aut_order(A, g)];

  if (abelian) {
    // Element-order statistics determine the type: for each prime, the counts
    // of solutions of x^(p^j) = 1 give the conjugate of the exponent partition.
    std::vector<i64> primes;
    i64 m = n;
    for (i64 d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        primes.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) primes.push_back(m);
    std::vector<std::vector<int>> lambdas;
    for (i64 p : primes) {
      i64 sylow = 1, t = n;
      while (t % p == 0) {
        sylow *= p;
        t /= p;
      }
      std::vector<int> a;  // a[j-1] = number of components with exponent >= j
      i64 prev = 1, pj = 1;
      while (prev < sylow) {
        pj *= p;
        i64 cj = 0;
        for (const auto& [ord, c] : cnt)
          if (pj % ord == 0) cj += c;
        i64 ratio = cj / prev;
        int e = 0;
        while (ratio > 1) {
          ratio /= p;
          ++e;
        }
        a.push_back(e);
        prev = cj;
      }
      std::vector<int> lambda(static_cast<size_t>(a.empty() ? 0 : a[0]), 0);
      for (size_t i = 0; i < lambda.size(); ++i)
        for (int aj : a)
          if (aj > static_cast<int>(i)) ++lambda[i];
      lambdas.push_back(lambda);
    }
    size_t rank = 0;
    for (const auto& l : lambdas) rank = std::max(rank, l.size());
    std::vector<i64> factors(rank, 1);
    for (size_t pi = 0; pi < primes.size(); ++pi)
      for (size_t k = 0; k < lambdas[pi].size(); ++k) {
        i64 pe = 1;
        for (int e = 0; e < lambdas[pi][k]; ++e) pe *= primes[pi];
        factors[k] *= pe;
      }
    std::ostringstream out;
    for (size_t k = 0; k < factors.size(); ++k) out << (k ? "x" : "") << "C" << factors[k];
    return out.str();
  }

  i64 inv = cnt.count(2) ? cnt[2] : 0;
  static const std::map<std::pair<i64, i64>, std::string> named = {
      {{6, 3}, "D6"},   {{8, 5}, "D8"},   {{8, 1}, "Q8"},    {{10, 5}, "D10"},
      {{12, 7}, "D12"}, {{12, 3}, "A4"},  {{12, 1}, "C3:C4"}, {{14, 7}, "D14"},
  };
  auto it = named.find({n, inv});
  if (it != named.end()) return it->second;
  i64 expo = 1;
  for (const auto& [ord, c] : cnt) expo = std::lcm(expo, ord);
  return "N" + std::to_string(n) + "_i" + std::to_string(inv) + "_e" + std::to_string(expo);
}

namespace {

// Dense machinery for one materialized GL(2,q): indices into the sorted
// element list, a full multiplication table, inverses.
struct SmallGroupTable {
  AbelianGroup A;
  std::vector<AutElem> elems;  // sorted
  int n = 0;
  int id = 0;
  std::vector<uint16_t> mult;
  std::vector<uint16_t> inv;

  uint32_t key_of(const AutElem& e) const {
    const auto& b = e.blocks[0];
    return static_cast<uint32_t>(((b[0] * 32 + b[1]) * 32 + b[2]) * 32 + b[3]);
  }
  int index_of(const AutElem& e, const std::vector<uint32_t>& keys) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key_of(e));
    return static_cast<int>(it - keys.begin());
  }
};

SmallGroupTable make_table(const AutGroup& G) {
  SmallGroupTable T;
  T.A = G.ambient;
  T.elems = G.elements;
  T.n = static_cast<int>(T.elems.size());
  std::vector<uint32_t> keys;
  for (const auto& e : T.elems) keys.push_back(T.key_of(e));
  T.mult.assign(static_cast<size_t>(T.n) * static_cast<size_t>(T.n), 0);
  for (int i = 0; i < T.n; ++i)
    for (int j = 0; j < T.n; ++j)
      T.mult[static_cast<size_t>(i) * static_cast<size_t>(T.n) + static_cast<size_t>(j)] =
          static_cast<uint16_t>(T.index_of(compose(T.A, T.elems[static_cast<size_t>(i)], T.elems[static_cast<size_t>(j)]), keys));
  T.id = T.index_of(identity_aut(T.A), keys);
  T.inv.assign(static_cast<size_t>(T.n), 0);
  for (int i = 0; i < T.n; ++i)
    T.inv[static_cast<size_t>(i)] = static_cast<uint16_t>(T.index_of(aut_inverse(T.A, T.elems[static_cast<size_t>(i)]), keys));
  return T;
}

int mul(const SmallGroupTable& T, int i, int j) {
  return T.mult[static_cast<size_t>(i) * static_cast<size_t>(T.n) + static_cast<size_t>(j)];
}

std::vector<int> close_indices(const SmallGroupTable& T, const std::vector<int>& gens) {
  std::vector<char> in(static_cast<size_t>(T.n), 0);
  std::vector<int> members = {T.id}, stack = {T.id};
  in[static_cast<size_t>(T.id)] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int g : gens) {
      int y = mul(T, x, g);
      if (!in[static_cast<size_t>(y)]) {
        in[static_cast<size_t>(y)] = 1;
        members.push_back(y);
        stack.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<int> conjugate_indices(const SmallGroupTable& T, const std::vector<int>& members, int x) {
  std::vector<int> out;
  out.reserve(members.size());
  int xi = T.inv[static_cast<size_t>(x)];
  for (int s : members) out.push_back(mul(T, mul(T, x, s), xi));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Gl2Subgroup> subgroup_class_reps(i64 q) {
  if (q != 2 && q != 3 && q != 5) throw scope_error("subgroup_class_reps: full enumeration capped at q <= 5");
  AbelianGroup A = square_group(q);
  i64 z = primitive_root(q);
  std::vector<AutElem> gl_gens = {make_aut(A, {{z, 0, 0, 1}}), make_aut(A, {{q - 1, 1, q - 1, 0}}),
                                  make_aut(A, {{1, 1, 0, 1}})};
  AutGroup GL = generate(A, gl_gens, "GL(2," + std::to_string(q) + ")");
  if (GL.order() != (q * q - 1) * (q * q - q)) throw std::logic_error("subgroup_class_reps: GL(2,q) generation failed");
  SmallGroupTable T = make_table(GL);

  // Closure extension over class representatives: every subgroup class is
  // reached by repeatedly adjoining one element to a smaller representative.
  std::map<std::vector<int>, int> raw_to_class;  // every conjugate of every class
  std::vector<std::vector<int>> rep_members, rep_gens;
  auto add_class = [&](const std::vector<int>& members, const std::vector<int>& gens) {
    std::vector<int> best = members;
    int bestx = T.id;
    int ci = static_cast<int>(rep_members.size());
    for (int x = 0; x < T.n; ++x) {
      std::vector<int> conj = conjugate_indices(T, members, x);
      if (conj < best) {
        best = conj;
        bestx = x;
      }
      raw_to_class.emplace(std::move(conj), ci);
    }
    std::vector<int> bgens;
    for (int g : gens) bgens.push_back(mul(T, mul(T, bestx, g), T.inv[static_cast<size_t>(bestx)]));
    rep_members.push_back(best);
    rep_gens.push_back(bgens);
  };
  add_class({T.id}, {});
  for (size_t ci = 0; ci < rep_members.size(); ++ci) {
    std::vector<int> base_gens = rep_gens[ci];
    std::vector<int> base_members = rep_members[ci];
    for (int g = 0; g < T.n; ++g) {
      if (std::binary_search(base_members.begin(), base_members.end(), g)) continue;
      std::vector<int> gens = base_gens;
      gens.push_back(g);
      std::vector<int> S = close_indices(T, gens);
      if (!raw_to_class.count(S)) add_class(S, gens);
    }
  }

  std::vector<size_t> order(rep_members.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (rep_members[a].size() != rep_members[b].size()) return rep_members[a].size() < rep_members[b].size();
    return rep_members[a] < rep_members[b];
  });

  std::vector<Gl2Subgroup> out;
  for (size_t idx : order) {
    Gl2Subgroup K;
    K.q = q;
    K.kind = Gl2Kind::general;
    AutGroup H;
    H.ambient = A;
    for (int g : rep_gens[idx]) H.generators.push_back(T.elems[static_cast<size_t>(g)]);
    for (int s : rep_members[idx]) H.elements.push_back(T.elems[static_cast<size_t>(s)]);
    std::sort(H.elements.begin(), H.elements.end());
    K.label = iso_label(H);
    H.label = K.label;
    for (const auto& g : H.generators) K.generators.push_back(g.blocks[0]);
    K.group = std::move(H);
    out.push_back(std::move(K));
  }
  return out;
}

std::vector<Gl2Subgroup> residual_kernels(i64 q) {
  std::vector<Gl2Subgroup> out;
  for (const Gl2Subgroup& K : subgroup_class_reps(q)) {
    if (K.order() <= q || K.order() % q == 0) continue;
    if (contains_center(K)) continue;
    if (is_transitive_on_nonzero(K.group)) continue;
    out.push_back(K);
  }
  return out;
}

std::vector<Gl2Subgroup> abelian_candidates(i64 q) {
  if (!is_prime(q)) throw std::invalid_argument("abelian_candidates: q must be prime");
  if (q > 19) throw scope_error("abelian_candidates: capped at q <= 19");
  std::vector<Gl2Subgroup> out;

  i64 n2 = q * q - 1;
  for (i64 m : divisors(n2))
    if (m > q && m < n2 && (q == 2 || m % (q - 1) != 0)) out.push_back(singer_subgroup(q, m));

  // Diagonal side: subgroups of Z_{q-1} x Z_{q-1} written additively, elements
  // packed as i*(q-1)+j. Keep |S| > q and (1,1) not in S (the scalar center),
  // deduplicate under the eigenline swap (i,j) -> (j,i).
  i64 m = q - 1;
  if (m >= 2) {
    auto span = [&](i64 v, i64 w) {
      i64 vi = v / m, vj = v % m, wi = w / m, wj = w % m;
      std::vector<char> in(static_cast<size_t>(m * m), 0);
      std::vector<i64> members;
      for (i64 s = 0; s < m; ++s)
        for (i64 t = 0; t < m; ++t) {
          i64 x = ((s * vi + t * wi) % m) * m + (s * vj + t * wj) % m;
          if (!in[static_cast<size_t>(x)]) {
            in[static_cast<size_t>(x)] = 1;
            members.push_back(x);
          }
        }
      std::sort(members.begin(), members.end());
      return members;
    };
    std::set<std::vector<i64>> canon_seen;
    std::vector<std::vector<i64>> subgroups;
    for (i64 v = 0; v < m * m; ++v)
      for (i64 w = v; w < m * m; ++w) {
        std::vector<i64> S = span(v, w);
        if (static_cast<i64>(S.size()) <= q) continue;
        if (std::binary_search(S.begin(), S.end(), m + 1)) continue;  // (1,1) => scalars inside
        std::vector<i64> swapped;
        for (i64 x : S) swapped.push_back((x % m) * m + x / m);
        std::sort(swapped.begin(), swapped.end());
        if (canon_seen.insert(std::min(S, swapped)).second == false) continue;
        subgroups.push_back(std::move(S));
      }
    i64 g = primitive_root(q);
    auto powmod = [&](i64 e) {
      i64 r = 1, base = g;
      e %= (q - 1);
      while (e) {
        if (e & 1) r = r * base % q;
        base = base * base % q;
        e >>= 1;
      }
      return r;
    };
    for (const auto& S : subgroups) {
      // Canonical generators: the least element of maximal additive order,
      // then (if needed) the least second element completing the span.
      auto add_order = [&](i64 x) {
        i64 i = x / m, j = x % m;
        return std::lcm(m / std::gcd(i, m), m / std::gcd(j, m));
      };
      i64 v = 0, vord = 0;
      for (i64 x : S)
        if (add_order(x) > vord) {
          vord = add_order(x);
          v = x;
        }
      std::vector<std::pair<i64, i64>> pairs = {{powmod(v / m), powmod(v % m)}};
      if (vord != static_cast<i64>(S.size())) {
        for (i64 w : S)
          if (span(v, w).size() == S.size()) {
            pairs.push_back({powmod(w / m), powmod(w % m)});
            break;
          }
      }
      Gl2Subgroup K = diagonal_subgroup(q, pairs);
      if (K.order() != static_cast<i64>(S.size())) throw std::logic_error("abelian_candidates: span mismatch");
      out.push_back(std::move(K));
    }
  }

  std::sort(out.begin(), out.end(), [](const Gl2Subgroup& a, const Gl2Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.label < b.label;
  });
  return out;
}

Gl2Kind dichotomy_classify(const Gl2Subgroup& T) {
  const AutGroup& G = T.group;
  const AbelianGroup& A = G.ambient;
  i64 q = T.q;
  i64 o = T.order();
  while (o % q == 0) o /= q;
  if (o <= q) throw std::invalid_argument("dichotomy_classify: needs a subgroup of order > q prime to q");
  for (size_t i = 0; i < G.generators.size(); ++i)
    for (size_t j = i + 1; j < G.generators.size(); ++j)
      if (!(compose(A, G.generators[i], G.generators[j]) == compose(A, G.generators[j], G.generators[i])))
        throw std::invalid_argument("dichotomy_classify: group must be abelian");

  // Common invariant lines through 0: spanned by (1,0) or (c,1), c in F_q.
  int lines = 0;
  std::vector<Element> reps;
  reps.push_back({1, 0});
  for (i64 c = 0; c < q; ++c) reps.push_back({c, 1});
  for (const auto& v : reps) {
    bool inv = true;
    for (const auto& g : G.generators) {
      Element w = apply(A, g, v);
      if ((w[0] * v[1] - w[1] * v[0]) % q != 0) {
        inv = false;
        break;
      }
    }
    if (inv) ++lines;
  }
  if (lines >= 2) return Gl2Kind::diagonalizable;
  if (lines == 0) return Gl2Kind::singer_cyclic;
  throw std::logic_error("dichotomy_classify: single invariant line contradicts the dichotomy");
}

}  // namespace sehgalkit
