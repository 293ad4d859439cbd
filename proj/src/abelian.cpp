#include "sehgalkit/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace sehgalkit {

namespace {

i64 ipow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = static_cast<i64>(checked_mul(r, base));
  return r;
}

void check_element(const AbelianGroup& A, const Element& a) {
  if (static_cast<int>(a.size()) != A.rank()) throw std::invalid_argument("element rank mismatch");
}

}  // namespace

bool AbelianGroup::cyclic() const {
  for (const auto& c : components)
    if (c.exponents.size() > 1) return false;
  return true;
}

AbelianGroup make_group(const std::vector<std::pair<i64, std::vector<int>>>& comps) {
  AbelianGroup A;
  std::vector<std::pair<i64, std::vector<int>>> sorted = comps;
  std::sort(sorted.begin(), sorted.end());
  i64 last_prime = 0;
  for (const auto& [p, exps] : sorted) {
    if (p < 2) throw std::invalid_argument("component prime must be >= 2");
    if (p == last_prime) throw std::invalid_argument("duplicate prime in group spec");
    last_prime = p;
    if (exps.empty()) throw std::invalid_argument("empty exponent list for prime " + std::to_string(p));
    PrimaryComponent pc;
    pc.prime = p;
    pc.exponents = exps;
    std::sort(pc.exponents.begin(), pc.exponents.end(), std::greater<int>());
    for (int e : pc.exponents) {
      if (e < 1) throw std::invalid_argument("non-positive exponent for prime " + std::to_string(p));
      A.moduli.push_back(ipow(p, e));
      A.factor_primes.push_back(p);
      A.order = static_cast<i64>(checked_mul(A.order, A.moduli.back()));
    }
    A.components.push_back(std::move(pc));
  }
  A.suffix.assign(A.moduli.size() + 1, 1);
  for (int i = static_cast<int>(A.moduli.size()) - 1; i >= 0; --i)
    A.suffix[i] = static_cast<i64>(checked_mul(A.suffix[i + 1], A.moduli[i]));
  return A;
}

AbelianGroup parse_group(const std::string& text) {
  // Grammar: component ("x" component)*, component = prime "^[" e ("," e)* "]".
  std::vector<std::pair<i64, std::vector<int>>> comps;
  size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad group spec '" + text + "': " + why);
  };
  while (pos < text.size()) {
    size_t start = pos;
    while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected prime at position " + std::to_string(start));
    i64 p = std::stoll(text.substr(start, pos - start));
    if (pos + 1 >= text.size() || text[pos] != '^' || text[pos + 1] != '[') fail("expected '^[' after prime");
    pos += 2;
    std::vector<int> exps;
    while (true) {
      size_t es = pos;
      while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == es) fail("expected exponent");
      exps.push_back(std::stoi(text.substr(es, pos - es)));
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ']') {
        ++pos;
        break;
      }
      fail("expected ',' or ']' in exponent list");
    }
    comps.emplace_back(p, std::move(exps));
    if (pos < text.size()) {
      if (text[pos] != 'x') fail("expected 'x' between components");
      ++pos;
      if (pos == text.size()) fail("trailing 'x'");
    }
  }
  if (comps.empty()) fail("empty spec");
  return make_group(comps);
}

std::string group_spec(const AbelianGroup& A) {
  std::ostringstream out;
  for (size_t i = 0; i < A.components.size(); ++i) {
    if (i) out << 'x';
    out << A.components[i].prime << "^[";
    for (size_t j = 0; j < A.components[i].exponents.size(); ++j) {
      if (j) out << ',';
      out << A.components[i].exponents[j];
    }
    out << ']';
  }
  return out.str();
}

std::string group_name(const AbelianGroup& A) {
  if (A.trivial()) return "C1";
  std::ostringstream out;
  for (size_t i = 0; i < A.moduli.size(); ++i) {
    if (i) out << 'x';
    out << 'C' << A.moduli[i];
  }
  return out.str();
}

i64 pack(const AbelianGroup& A, const Element& a) {
  check_element(A, a);
  i64 idx = 0;
  for (int i = 0; i < A.rank(); ++i) idx += a[i] * A.suffix[i + 1];
  return idx;
}

Element unpack(const AbelianGroup& A, i64 index) {
  if (index < 0 || index >= A.order) throw std::out_of_range("element index out of range");
  Element a(A.rank());
  for (int i = 0; i < A.rank(); ++i) {
    a[i] = index / A.suffix[i + 1];
    index %= A.suffix[i + 1];
  }
  return a;
}

Element identity_of(const AbelianGroup& A) { return Element(A.rank(), 0); }

bool is_identity(const Element& a) {
  return std::all_of(a.begin(), a.end(), [](i64 c) { return c == 0; });
}

Element mul(const AbelianGroup& A, const Element& a, const Element& b) {
  check_element(A, a);
  check_element(A, b);
  Element c(A.rank());
  for (int i = 0; i < A.rank(); ++i) c[i] = (a[i] + b[i]) % A.moduli[i];
  return c;
}

Element inverse(const AbelianGroup& A, const Element& a) {
  check_element(A, a);
  Element c(A.rank());
  for (int i = 0; i < A.rank(); ++i) c[i] = a[i] == 0 ? 0 : A.moduli[i] - a[i];
  return c;
}

Element power(const AbelianGroup& A, const Element& a, i64 n) {
  check_element(A, a);
  Element c(A.rank());
  for (int i = 0; i < A.rank(); ++i) {
    i64 m = A.moduli[i];
    i64 e = ((n % m) + m) % m;
    c[i] = static_cast<i64>(checked_mul(a[i], e) % m);
  }
  return c;
}

i64 element_order(const AbelianGroup& A, const Element& a) {
  check_element(A, a);
  i64 ord = 1;
  for (int i = 0; i < A.rank(); ++i) {
    i64 coord_order = A.moduli[i] / std::gcd(a[i], A.moduli[i]);
    ord = std::lcm(ord, coord_order);
  }
  return ord;
}

std::vector<Element> enumerate_elements(const AbelianGroup& A) {
  std::vector<Element> out;
  out.reserve(static_cast<size_t>(A.order));
  for (i64 i = 0; i < A.order; ++i) out.push_back(unpack(A, i));
  return out;
}

std::vector<i64> primes_of(const AbelianGroup& A) {
  std::vector<i64> ps;
  for (const auto& c : A.components) ps.push_back(c.prime);
  return ps;
}

Element part(const AbelianGroup& A, const Element& a, const std::vector<i64>& pi) {
  check_element(A, a);
  Element c(A.rank(), 0);
  for (int i = 0; i < A.rank(); ++i)
    if (std::find(pi.begin(), pi.end(), A.factor_primes[i]) != pi.end()) c[i] = a[i];
  return c;
}

Element copart(const AbelianGroup& A, const Element& a, const std::vector<i64>& pi) {
  check_element(A, a);
  Element c(A.rank(), 0);
  for (int i = 0; i < A.rank(); ++i)
    if (std::find(pi.begin(), pi.end(), A.factor_primes[i]) == pi.end()) c[i] = a[i];
  return c;
}

AbelianGroup restricted_group(const AbelianGroup& A, const std::vector<i64>& pi) {
  std::vector<std::pair<i64, std::vector<int>>> comps;
  for (const auto& c : A.components)
    if (std::find(pi.begin(), pi.end(), c.prime) != pi.end()) comps.emplace_back(c.prime, c.exponents);
  AbelianGroup R;
  if (comps.empty()) {
    R.suffix.assign(1, 1);
    return R;  // trivial group
  }
  return make_group(comps);
}

Element project(const AbelianGroup& A, const Element& a, const std::vector<i64>& pi) {
  check_element(A, a);
  Element x;
  for (int i = 0; i < A.rank(); ++i)
    if (std::find(pi.begin(), pi.end(), A.factor_primes[i]) != pi.end()) x.push_back(a[i]);
  return x;
}

Element embed(const AbelianGroup& A, const Element& x, const std::vector<i64>& pi) {
  Element a(A.rank(), 0);
  size_t j = 0;
  for (int i = 0; i < A.rank(); ++i)
    if (std::find(pi.begin(), pi.end(), A.factor_primes[i]) != pi.end()) {
      if (j >= x.size()) throw std::invalid_argument("embed: coordinate count mismatch");
      a[i] = x[j++];
    }
  if (j != x.size()) throw std::invalid_argument("embed: coordinate count mismatch");
  return a;
}

Rational h_invariant(const AbelianGroup& A) {
  if (A.trivial()) throw std::domain_error("h invariant of the trivial group is undefined");
  const int np = static_cast<int>(A.components.size());
  std::vector<i64> p(np), kp(np);
  for (int i = 0; i < np; ++i) {
    p[i] = A.components[i].prime;
    kp[i] = static_cast<i64>(A.components[i].exponents.size());
  }
  i128 numerator = 0;
  for (unsigned mask = 0; mask < (1u << np); ++mask) {
    if (__builtin_popcount(mask) % 2 == 0) continue;  // odd-size subsets only
    i128 term = 1;
    for (int i = 0; i < np; ++i) {
      int delta = (mask >> i) & 1;
      i128 pw = 1;
      for (i64 e = 0; e < kp[i] - delta; ++e) pw = checked_mul(pw, p[i]);
      term = checked_mul(term, pw - 1);
    }
    numerator = checked_add(numerator, term);
  }
  i128 denominator = 1;
  for (int i = 0; i < np; ++i) {
    i128 f = p[i] - 1;
    for (i64 e = 0; e < kp[i] - 1; ++e) f = checked_mul(f, p[i]);
    denominator = checked_mul(denominator, f);
  }
  return Rational(numerator, denominator);
}

bool Subgroup::contains(i64 idx) const {
  return std::binary_search(members.begin(), members.end(), idx);
}

Subgroup closure(const AbelianGroup& A, const std::vector<Element>& gens) {
  std::set<i64> seen{0};
  std::vector<i64> frontier{0};
  while (!frontier.empty()) {
    std::vector<i64> next;
    for (i64 idx : frontier) {
      Element cur = unpack(A, idx);
      for (const auto& g : gens) {
        i64 ni = pack(A, mul(A, cur, g));
        if (seen.insert(ni).second) next.push_back(ni);
      }
    }
    frontier = std::move(next);
  }
  Subgroup K;
  K.gens = gens;
  K.members.assign(seen.begin(), seen.end());
  return K;
}

namespace {

// Subgroups of a single primary component (rank <= 2): the trivial subgroup,
// every cyclic subgroup, and every join of two cyclic subgroups.
std::vector<Subgroup> primary_subgroups(const AbelianGroup& P) {
  std::vector<Subgroup> out;
  std::set<std::vector<i64>> seen;
  auto add = [&](Subgroup k) {
    if (seen.insert(k.members).second) out.push_back(std::move(k));
  };
  add(closure(P, {}));
  std::vector<Subgroup> cyclic;
  for (i64 i = 1; i < P.order; ++i) {
    Element g = unpack(P, i);
    Subgroup k = closure(P, {g});
    if (seen.insert(k.members).second) {
      cyclic.push_back(k);
      out.push_back(k);
    }
  }
  for (size_t i = 0; i < cyclic.size(); ++i)
    for (size_t j = i + 1; j < cyclic.size(); ++j)
      add(closure(P, {cyclic[i].gens[0], cyclic[j].gens[0]}));
  return out;
}

}  // namespace

std::vector<Subgroup> all_subgroups(const AbelianGroup& A) {
  if (A.order > 10000) throw scope_error("subgroup enumeration capped at order 10^4, got " + std::to_string(A.order));
  for (const auto& c : A.components)
    if (c.exponents.size() > 2)
      throw scope_error("subgroup enumeration requires rank <= 2 per prime (prime " + std::to_string(c.prime) + " has rank " + std::to_string(c.exponents.size()) + ")");
  if (A.trivial()) {
    Subgroup k;
    k.members = {0};
    return {k};
  }
  // Per-prime subgroup lists, then all cross products.
  std::vector<std::vector<Subgroup>> per_prime;
  std::vector<std::vector<i64>> prime_sets;
  for (const auto& c : A.components) {
    std::vector<i64> pi{c.prime};
    per_prime.push_back(primary_subgroups(restricted_group(A, pi)));
    prime_sets.push_back(pi);
  }
  std::vector<Subgroup> result;
  std::vector<size_t> choice(per_prime.size(), 0);
  while (true) {
    std::vector<Element> gens;
    for (size_t c = 0; c < per_prime.size(); ++c)
      for (const auto& g : per_prime[c][choice[c]].gens) gens.push_back(embed(A, g, prime_sets[c]));
    // Members combine independently across primes; closure recomputes them in sorted order.
    result.push_back(closure(A, gens));
    size_t c = 0;
    while (c < per_prime.size() && ++choice[c] == per_prime[c].size()) {
      choice[c] = 0;
      ++c;
    }
    if (c == per_prime.size()) break;
  }
  std::sort(result.begin(), result.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return result;
}

bool quotient_is_cyclic(const AbelianGroup& A, const Subgroup& K) {
  // Every subgroup of an abelian group is the product of its primary parts, so
  // A/K is the product of the quotients A_p/K_p and is cyclic iff each one is.
  // A_p/K_p (a p-group) is cyclic iff some a has a^(n/p) outside K_p, n = |A_p/K_p|.
  for (const auto& c : A.components) {
    std::vector<i64> pi{c.prime};
    AbelianGroup P = restricted_group(A, pi);
    std::vector<i64> kp;
    for (i64 m : K.members) {
      Element x = unpack(A, m);
      if (pack(A, part(A, x, pi)) == m) kp.push_back(pack(P, project(A, x, pi)));
    }
    std::sort(kp.begin(), kp.end());
    i64 n = P.order / static_cast<i64>(kp.size());
    if (n == 1) continue;
    bool found = false;
    for (i64 i = 0; i < P.order && !found; ++i) {
      i64 probe = pack(P, power(P, unpack(P, i), n / c.prime));
      found = !std::binary_search(kp.begin(), kp.end(), probe);
    }
    if (!found) return false;
  }
  return true;
}

std::vector<Subgroup> cocyclic_subgroups(const AbelianGroup& A) {
  std::vector<Subgroup> out;
  for (auto& K : all_subgroups(A))
    if (quotient_is_cyclic(A, K)) out.push_back(std::move(K));
  return out;
}

std::vector<Subgroup> minimal_cocyclic_subgroups(const AbelianGroup& A) {
  std::vector<Subgroup> cc = cocyclic_subgroups(A);
  std::vector<Subgroup> out;
  for (const auto& K : cc) {
    bool minimal = true;
    for (const auto& L : cc) {
      if (L.members.size() >= K.members.size() || L.members == K.members) continue;
      if (std::includes(K.members.begin(), K.members.end(), L.members.begin(), L.members.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(K);
  }
  return out;
}

std::vector<CocyclicCoset> cosets_of(const AbelianGroup& A, const Subgroup& K) {
  std::vector<CocyclicCoset> out;
  std::vector<char> assigned(static_cast<size_t>(A.order), 0);
  for (i64 i = 0; i < A.order; ++i) {
    if (assigned[static_cast<size_t>(i)]) continue;
    CocyclicCoset c;
    c.subgroup_gens = K.gens;
    c.subgroup_members = K.members;
    c.rep = unpack(A, i);
    for (i64 k : K.members) {
      i64 m = pack(A, mul(A, c.rep, unpack(A, k)));
      assigned[static_cast<size_t>(m)] = 1;
      c.members.push_back(m);
    }
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CocyclicCoset> minimal_cocyclic_cosets(const AbelianGroup& A) {
  if (A.trivial()) throw std::domain_error("minimal cocyclic cosets of the trivial group are undefined");
  std::vector<CocyclicCoset> out;
  for (const auto& K : minimal_cocyclic_subgroups(A)) {
    auto cs = cosets_of(A, K);
    out.insert(out.end(), std::make_move_iterator(cs.begin()), std::make_move_iterator(cs.end()));
  }
  return out;
}

}  // namespace sehgalkit
