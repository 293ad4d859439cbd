#include "sehgalkit/construct.hpp"

#include "sehgalkit/cache.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "sehgalkit/parallel.hpp"

namespace sehgalkit {

namespace {

const std::vector<i64> kId2 = {1, 0, 0, 1};

bool small_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

i64 mod_nonneg(i64 v, i64 m) { return ((v % m) + m) % m; }

std::vector<i64> rotate_cycle(const std::vector<i64>& v, i64 k) {
  const i64 r = static_cast<i64>(v.size());
  std::vector<i64> out(v.size());
  for (i64 j = 0; j < r; ++j) out[j] = v[mod_nonneg(j + k, r)];
  return out;
}

std::vector<i64> units_mod(i64 r) {
  std::vector<i64> out;
  for (i64 u = 1; u <= r; ++u)
    if (std::gcd(u, r) == 1) out.push_back(u % r == 0 ? r : u % r);
  return out;
}

bool commuting_generators(const AutGroup& g) {
  for (size_t i = 0; i < g.generators.size(); ++i)
    for (size_t j = i + 1; j < g.generators.size(); ++j)
      if (!(compose(g.ambient, g.generators[i], g.generators[j]) ==
            compose(g.ambient, g.generators[j], g.generators[i])))
        return false;
  return true;
}

// Both lists sorted by key.
bool subset_of(const std::vector<AutElem>& inner, const std::vector<AutElem>& outer) {
  for (const AutElem& e : inner)
    if (!std::binary_search(outer.begin(), outer.end(), e)) return false;
  return true;
}

std::string hash_elements(const std::vector<AutElem>& elems) {
  unsigned long long h = 1469598103934665603ull;
  auto mix = [&h](unsigned long long v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<unsigned long long>(elems.size()));
  for (const AutElem& e : elems) {
    for (i64 v : e.key()) mix(static_cast<unsigned long long>(v) + 0x9e3779b97f4a7c15ull);
    mix(0x5b);
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

Element walk_element(const AbelianGroup& A, Element x, const AutElem& c, i64 steps) {
  for (i64 i = 0; i < steps; ++i) x = apply(A, c, x);
  return x;
}

i64 coset_order(const AbelianGroup& A, const std::vector<AutElem>& kelems, const AutElem& e) {
  AutElem cur = e;
  i64 m = 1;
  while (!std::binary_search(kelems.begin(), kelems.end(), cur)) {
    cur = compose(A, cur, e);
    ++m;
    if (m > 1000000) throw std::logic_error("coset order runaway");
  }
  return m;
}

// Least element of T whose K-coset generates T/K, when that quotient is cyclic.
std::optional<AutElem> quotient_generator(const AbelianGroup& A,
                                          const std::vector<AutElem>& kelems,
                                          const std::vector<AutElem>& telems) {
  const i64 index = static_cast<i64>(telems.size() / kelems.size());
  for (const AutElem& e : telems)
    if (coset_order(A, kelems, e) == index) return e;
  return std::nullopt;
}

// Which maximal abelian reference torus literally contains K: 0 = the Singer
// cycle, 1 = the diagonal torus, -1 = neither.
int torus_mode(const Gl2Subgroup& K, Gl2Subgroup* torus) {
  const i64 q = K.q;
  Gl2Subgroup singer = singer_subgroup(q, q * q - 1);
  if (subset_of(K.group.elements, singer.group.elements)) {
    *torus = std::move(singer);
    return 0;
  }
  const i64 g0 = primitive_root(q);
  Gl2Subgroup diag = diagonal_subgroup(q, {{g0, 1}, {1, g0}});
  if (subset_of(K.group.elements, diag.group.elements)) {
    *torus = std::move(diag);
    return 1;
  }
  return -1;
}

// All subgroups of a small group given by its multiplication table (index 0 is
// the identity), each as a sorted member list; lexicographic output order.
std::vector<std::vector<int>> subgroups_of_quotient(int n,
                                                    const std::vector<std::vector<int>>& mul) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> work;
  seen.insert({0});
  work.push_back({0});
  for (size_t w = 0; w < work.size(); ++w) {
    const std::vector<int> base = work[w];
    for (int g = 1; g < n; ++g) {
      if (std::binary_search(base.begin(), base.end(), g)) continue;
      std::set<int> s(base.begin(), base.end());
      s.insert(g);
      bool grew = true;
      while (grew) {
        grew = false;
        const std::vector<int> cur(s.begin(), s.end());
        for (int a : cur)
          for (int b : cur)
            if (s.insert(mul[a][b]).second) grew = true;
      }
      std::vector<int> cl(s.begin(), s.end());
      if (seen.insert(cl).second) work.push_back(std::move(cl));
    }
  }
  return {seen.begin(), seen.end()};
}

struct OvergroupOption {
  Gl2Subgroup T;
  AutElem c;  // least coset representative generating T/K
  i64 r = 1;
};

// All overgroups K <= T inside the reference torus containing K, with cyclic
// quotient T/K of order >= 2. The torus is abelian and self-centralizing, so
// every abelian overgroup of K lies inside it.
std::vector<OvergroupOption> overgroup_options(i64 prime, const Gl2Subgroup& K,
                                               std::vector<std::string>* notes) {
  std::vector<OvergroupOption> out;
  const std::string tag = "p=" + std::to_string(prime) + " kernel " + iso_label(K.group);
  if (!commuting_generators(K.group)) {
    if (notes) notes->push_back(tag + ": skipped (non-abelian)");
    return out;
  }
  Gl2Subgroup torus;
  const int mode = torus_mode(K, &torus);
  if (mode < 0) {
    if (notes) notes->push_back(tag + ": skipped (not inside a reference torus)");
    return out;
  }
  const AbelianGroup& A = K.group.ambient;
  const std::vector<AutElem>& kelems = K.group.elements;
  const i64 index = torus.order() / K.order();
  if (index > 64) {
    if (notes)
      notes->push_back(tag + ": skipped (torus index " + std::to_string(index) + " too large)");
    return out;
  }
  // Cosets of K inside the torus; representative = least member.
  std::map<std::vector<i64>, int> coset_of;
  std::vector<AutElem> reps;
  std::vector<std::vector<AutElem>> members;
  for (const AutElem& e : torus.group.elements) {
    if (coset_of.count(e.key())) continue;
    const int id = static_cast<int>(reps.size());
    reps.push_back(e);
    members.emplace_back();
    for (const AutElem& k : kelems) {
      AutElem m = compose(A, e, k);
      coset_of[m.key()] = id;
      members.back().push_back(std::move(m));
    }
  }
  const int n = static_cast<int>(reps.size());
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul[i][j] = coset_of.at(compose(A, reps[i], reps[j]).key());
  for (const std::vector<int>& sub : subgroups_of_quotient(n, mul)) {
    if (sub.size() < 2) continue;
    std::vector<AutElem> telems;
    for (int id : sub) telems.insert(telems.end(), members[id].begin(), members[id].end());
    std::sort(telems.begin(), telems.end());
    const std::optional<AutElem> c = quotient_generator(A, kelems, telems);
    if (!c) {
      if (notes)
        notes->push_back(tag + ": overgroup of order " + std::to_string(telems.size()) +
                         " skipped (non-cyclic quotient)");
      continue;
    }
    Gl2Subgroup T;
    if (mode == 0) {
      T = singer_subgroup(K.q, static_cast<i64>(telems.size()));
    } else {
      std::vector<std::pair<i64, i64>> pairs;
      for (const auto& g : K.generators) pairs.push_back({g[0], g[3]});
      pairs.push_back({c->blocks[0][0], c->blocks[0][3]});
      T = diagonal_subgroup(K.q, pairs);
    }
    if (!(T.group.elements == telems)) throw std::logic_error("overgroup reconstruction mismatch");
    out.push_back({std::move(T), *c, static_cast<i64>(sub.size())});
  }
  std::sort(out.begin(), out.end(), [](const OvergroupOption& a, const OvergroupOption& b) {
    if (a.T.order() != b.T.order()) return a.T.order() < b.T.order();
    return a.c.key() < b.c.key();
  });
  return out;
}

// One scan solution viewed through one overgroup: base point (least support
// element) and the value cycle along the quotient translation.
struct SideData {
  int entry_index = 0;
  int og_index = 0;
  int sol_index = 0;
  Gl2Subgroup K, T;
  AutElem c;
  i64 r = 1;
  ESolution sol;
  Element n0;
  std::vector<i64> vals;
};

std::vector<SideData> collect_sides(i64 prime, const Alg3Outcome& out,
                                    std::vector<std::string>* notes) {
  const AbelianGroup expect = make_group({{prime, {1, 1}}});
  if (out.core.moduli != expect.moduli)
    throw std::invalid_argument("pair matching: scan core must be C" + std::to_string(prime) +
                                " x C" + std::to_string(prime));
  std::vector<SideData> sides;
  for (size_t ei = 0; ei < out.entries.size(); ++ei) {
    const Alg3Entry& entry = out.entries[ei];
    const std::vector<OvergroupOption> ogs = overgroup_options(prime, entry.K, notes);
    for (size_t oi = 0; oi < ogs.size(); ++oi) {
      const OvergroupOption& og = ogs[oi];
      for (size_t si = 0; si < entry.solutions.size(); ++si) {
        const ESolution& sol = entry.solutions[si];
        const std::vector<i64>& dense = sol.function.dense;
        std::vector<i64> supp;
        for (i64 m = 0; m < static_cast<i64>(dense.size()); ++m)
          if (dense[m] != 0) supp.push_back(m);
        if (supp.empty()) continue;
        const Element n0 = unpack(out.core, supp.front());
        const ActionClass orb = orbit_of(og.T.group, n0);
        bool inside = true;
        for (i64 m : supp)
          if (!std::binary_search(orb.members.begin(), orb.members.end(), m)) {
            inside = false;
            break;
          }
        if (!inside) continue;
        SideData sd;
        sd.entry_index = static_cast<int>(ei);
        sd.og_index = static_cast<int>(oi);
        sd.sol_index = static_cast<int>(si);
        sd.K = entry.K;
        sd.T = og.T;
        sd.c = og.c;
        sd.r = og.r;
        sd.sol = sol;
        sd.n0 = n0;
        Element cur = n0;
        for (i64 j = 0; j < og.r; ++j) {
          sd.vals.push_back(dense[pack(out.core, cur)]);
          cur = apply(out.core, og.c, cur);
        }
        if (dense[pack(out.core, cur)] != sd.vals[0])
          throw std::logic_error("value cycle does not close");
        sides.push_back(std::move(sd));
      }
    }
  }
  return sides;
}

// Canonical identity of a matched pair: the acting data by element-set hash,
// the gluing exponent, and the joint value cycles up to the coupled rotation
// (s, t) -> (rotate(s, k), rotate(t, -k*u)) induced by moving the base point.
std::string pair_key(i64 p, i64 q, const std::vector<AutElem>& kp, const std::vector<AutElem>& kq,
                     const std::vector<AutElem>& tp, const std::vector<AutElem>& tq, i64 r, i64 u,
                     const std::vector<i64>& s, const std::vector<i64>& t) {
  std::vector<i64> best;
  for (i64 k = 0; k < r; ++k) {
    std::vector<i64> cand = rotate_cycle(s, k);
    const std::vector<i64> tr = rotate_cycle(t, mod_nonneg(-k * u, r));
    cand.insert(cand.end(), tr.begin(), tr.end());
    if (best.empty() || cand < best) best = std::move(cand);
  }
  std::ostringstream os;
  os << p << "|" << q << "|" << hash_elements(kp) << "|" << hash_elements(kq) << "|"
     << hash_elements(tp) << "|" << hash_elements(tq) << "|r" << r << "|u" << u << "|";
  for (i64 v : best) os << v << ",";
  return os.str();
}

MatchedPair make_pair_record(i64 p, i64 q, const AbelianGroup& Ap, const AbelianGroup& Aq,
                             const SideData& a, const SideData& b, i64 ka, i64 kb, i64 u) {
  MatchedPair mp;
  mp.p = p;
  mp.q = q;
  mp.Kp = a.K;
  mp.Kq = b.K;
  mp.fp = a.sol;
  mp.fq = b.sol;
  mp.Tp = a.T;
  mp.Tq = b.T;
  mp.cp = a.c.blocks[0];
  mp.cq = b.c.blocks[0];
  mp.r = a.r;
  mp.u = u;
  const Element np = walk_element(Ap, a.n0, a.c, ka);
  const Element nq = walk_element(Aq, b.n0, b.c, kb);
  mp.n = {np[0], np[1], nq[0], nq[1]};
  mp.svals = rotate_cycle(a.vals, ka);
  mp.tvals = rotate_cycle(b.vals, kb);
  mp.key = pair_key(p, q, a.K.group.elements, b.K.group.elements, a.T.group.elements,
                    b.T.group.elements, mp.r, u, mp.svals, mp.tvals);
  return mp;
}

[[noreturn]] void pair_fail(const std::string& msg) {
  throw std::invalid_argument("matched pair: " + msg);
}

// sigma with apply(sigma, x) = base for every x in the gamma-orbit of base,
// keyed by packed x.
std::map<i64, AutElem> movers_to_base(const AbelianGroup& N, const AutGroup& gamma,
                                      const Element& base) {
  std::map<i64, AutElem> reach;  // packed -> sigma with base^sigma = that element
  std::queue<i64> todo;
  const i64 b = pack(N, base);
  reach.emplace(b, identity_aut(N));
  todo.push(b);
  while (!todo.empty()) {
    const i64 cur = todo.front();
    todo.pop();
    const Element e = unpack(N, cur);
    const AutElem sig = reach.at(cur);
    for (const AutElem& g : gamma.generators) {
      const i64 nxt = pack(N, apply(N, g, e));
      if (!reach.count(nxt)) {
        reach.emplace(nxt, compose(N, g, sig));
        todo.push(nxt);
      }
    }
  }
  for (auto& kv : reach) kv.second = aut_inverse(N, kv.second);
  return reach;
}

// eps(x) = f(x_v^g) where g moves the complementary part of x onto the
// complementary part of n; zero off that orbit. v = value_prime.
std::vector<i64> route_dense(const AbelianGroup& N, const AutGroup& gamma, const Element& n,
                             const ClassFunction& fval, i64 value_prime) {
  const std::vector<i64> vp = {value_prime};
  const AbelianGroup Av = restricted_group(N, vp);
  if (fval.domain.moduli != Av.moduli) throw std::logic_error("per-prime function domain mismatch");
  const Element base = copart(N, n, vp);
  const std::map<i64, AutElem> mover = movers_to_base(N, gamma, base);
  std::vector<i64> dense(N.order, 0);
  for (i64 m = 0; m < N.order; ++m) {
    const Element e = unpack(N, m);
    const auto it = mover.find(pack(N, copart(N, e, vp)));
    if (it == mover.end()) continue;
    dense[m] = fval.dense[pack(Av, project(N, apply(N, it->second, e), vp))];
  }
  return dense;
}

ClassFunction gamma_class_function(const AbelianGroup& N, const AutGroup& gamma,
                                   const std::vector<i64>& dense) {
  ClassFunction cf;
  cf.domain = N;
  cf.acting_label = gamma.label;
  cf.dense = dense;
  for (const ActionClass& cls : orbits_all(gamma)) {
    const i64 v = dense[cls.members.front()];
    for (i64 m : cls.members)
      if (dense[m] != v) throw std::logic_error("candidate function is not constant on classes");
    if (v != 0) {
      cf.class_reps.push_back(cls.rep);
      cf.class_values.push_back(v);
    }
  }
  return cf;
}

// The elements of gamma acting trivially on the given primary block.
AutGroup pointwise_block_stabilizer(const AbelianGroup& N, const AutGroup& gamma, size_t block,
                                    const std::string& label) {
  AutGroup out;
  out.ambient = N;
  out.label = label;
  for (const AutElem& e : gamma.elements)
    if (e.blocks[block] == kId2) out.elements.push_back(e);
  out.generators = out.elements;
  return out;
}

}  // namespace

std::vector<TableRow> tables(i64 qmax, int threads, const std::string& cache_dir) {
  static const i64 kPrimes[] = {7, 11, 13, 17, 19};
  std::vector<TableRow> rows;
  for (i64 p : kPrimes) {
    if (p > qmax) continue;
    const Alg3Outcome out =
        cached_algorithm3(make_group({{p, {1, 1}}}), WeightMode::count, threads, cache_dir);
    for (const Alg3Entry& entry : out.entries) {
      TableRow row;
      row.p = p;
      row.K = entry.K;
      Gl2Subgroup torus;
      const int mode = torus_mode(entry.K, &torus);
      if (mode < 0) throw std::logic_error("table kernel does not sit inside a reference torus");
      row.diagonal = mode == 1;
      row.quotient_order = torus.order() / entry.K.order();
      const AbelianGroup& A = out.core;
      const std::optional<AutElem> c =
          quotient_generator(A, entry.K.group.elements, torus.group.elements);
      if (!c) {
        row.quotient_cyclic = false;
        rows.push_back(std::move(row));
        continue;
      }
      Element n0;
      if (row.diagonal) {
        for (i64 m = 1; m < A.order; ++m) {
          const Element e = unpack(A, m);
          if (e[0] != 0 && e[1] != 0) {
            n0 = e;
            break;
          }
        }
      } else {
        n0 = unpack(A, 1);
      }
      std::set<std::vector<i64>> tuples;
      for (const ESolution& sol : entry.solutions) {
        std::vector<i64> vals;
        Element cur = n0;
        for (i64 j = 0; j < row.quotient_order; ++j) {
          vals.push_back(sol.function.dense[pack(A, cur)]);
          cur = apply(A, *c, cur);
        }
        tuples.insert(canonical_cyclic(vals));
        for (size_t vi = 0; vi < entry.system.vars.size(); ++vi) {
          const Element& rep = entry.system.vars[vi].rep;
          if (row.diagonal && (rep[0] == 0 || rep[1] == 0) && sol.tuple[vi] != 0)
            row.off_axis_only = false;
        }
      }
      row.tuples.assign(tuples.begin(), tuples.end());
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

MatchReport match_pairs(i64 p, const Alg3Outcome& out_p, i64 q, const Alg3Outcome& out_q,
                        int threads) {
  if (!small_prime(p) || !small_prime(q) || p >= q)
    throw std::invalid_argument("pair matching: need primes p < q");
  MatchReport report;
  const std::vector<SideData> sp = collect_sides(p, out_p, &report.notes);
  const std::vector<SideData> sq = collect_sides(q, out_q, &report.notes);
  const AbelianGroup Ap = make_group({{p, {1, 1}}});
  const AbelianGroup Aq = make_group({{q, {1, 1}}});
  const int na = static_cast<int>(sp.size());
  const int nb = static_cast<int>(sq.size());
  if (na == 0 || nb == 0) return report;
  std::vector<std::vector<MatchedPair>> cells(static_cast<size_t>(na) * nb);
  parallel_for(na * nb, threads, [&](int idx) {
    const SideData& a = sp[idx / nb];
    const SideData& b = sq[idx % nb];
    if (a.r != b.r) return;
    const i64 r = a.r;
    const std::vector<i64> units = units_mod(r);
    std::set<std::string> seen;
    for (i64 ka = 0; ka < r; ++ka) {
      if (a.vals[ka] == 0) continue;
      for (i64 kb = 0; kb < r; ++kb) {
        if (b.vals[kb] != a.vals[ka]) continue;
        for (i64 u : units) {
          bool ok = true;
          for (i64 j = 0; j < r && ok; ++j)
            ok = a.vals[mod_nonneg(ka + j, r)] == b.vals[mod_nonneg(kb - j * u, r)];
          if (!ok) continue;
          MatchedPair mp = make_pair_record(p, q, Ap, Aq, a, b, ka, kb, u);
          if (seen.insert(mp.key).second) cells[idx].push_back(std::move(mp));
        }
      }
    }
  });
  std::set<std::string> global;
  for (std::vector<MatchedPair>& cell : cells)
    for (MatchedPair& mp : cell)
      if (global.insert(mp.key).second) report.pairs.push_back(std::move(mp));
  return report;
}

void validate_pair(const MatchedPair& mp) {
  if (!small_prime(mp.p) || !small_prime(mp.q) || mp.p >= mp.q) pair_fail("need primes p < q");
  if (mp.Kp.q != mp.p || mp.Tp.q != mp.p || mp.Kq.q != mp.q || mp.Tq.q != mp.q)
    pair_fail("kernel or overgroup prime mismatch");
  if (mp.r < 2) pair_fail("quotient order must be at least 2");
  if (std::gcd(mp.u, mp.r) != 1)
    pair_fail("gluing exponent is not a unit modulo the quotient order");
  if (mp.n.size() != 4) pair_fail("base point must be a 4-coordinate element of C_pq x C_pq");
  const AbelianGroup Ap = make_group({{mp.p, {1, 1}}});
  const AbelianGroup Aq = make_group({{mp.q, {1, 1}}});
  auto side_cycle = [&](const AbelianGroup& A, const Gl2Subgroup& K, const Gl2Subgroup& T,
                        const std::vector<i64>& cmat, const ClassFunction& f,
                        const Element& n0) -> std::vector<i64> {
    if (!subset_of(K.group.elements, T.group.elements))
      pair_fail("kernel is not contained in its overgroup");
    if (!commuting_generators(T.group)) pair_fail("overgroup is not abelian");
    if (T.order() != K.order() * mp.r) pair_fail("quotient order does not match the overgroup index");
    if (f.domain.moduli != A.moduli) pair_fail("solution domain mismatch");
    const AutElem c = make_aut(A, {cmat});
    if (!T.group.contains(c)) pair_fail("quotient generator is not in the overgroup");
    if (coset_order(A, K.group.elements, c) != mp.r)
      pair_fail("quotient generator does not generate the quotient");
    if (is_identity(n0)) pair_fail("base point must have nontrivial parts at both primes");
    const ActionClass orb = orbit_of(T.group, n0);
    for (i64 m = 0; m < static_cast<i64>(f.dense.size()); ++m)
      if (f.dense[m] != 0 && !std::binary_search(orb.members.begin(), orb.members.end(), m))
        pair_fail("support leaves the overgroup orbit of the base point");
    std::vector<i64> vals;
    Element cur = n0;
    for (i64 j = 0; j < mp.r; ++j) {
      vals.push_back(f.dense[pack(A, cur)]);
      cur = apply(A, c, cur);
    }
    return vals;
  };
  const Element np = {mp.n[0], mp.n[1]};
  const Element nq = {mp.n[2], mp.n[3]};
  const std::vector<i64> s = side_cycle(Ap, mp.Kp, mp.Tp, mp.cp, mp.fp.function, np);
  const std::vector<i64> t = side_cycle(Aq, mp.Kq, mp.Tq, mp.cq, mp.fq.function, nq);
  if (s != mp.svals || t != mp.tvals) pair_fail("stored value cycles disagree with the solutions");
  if (s[0] == 0) pair_fail("base point value vanishes");
  if (s[0] != t[0]) pair_fail("base point values disagree");
  for (i64 j = 0; j < mp.r; ++j)
    if (s[j] != t[mod_nonneg(-j * mp.u, mp.r)])
      pair_fail("value condition fails at step " + std::to_string(j) +
                " (the gluing exponent does not align the two value cycles)");
}

CandidateGroup build_candidate(const MatchedPair& mp) {
  validate_pair(mp);
  CandidateGroup c;
  c.pair = mp;
  c.N = make_group({{mp.p, {1, 1}}, {mp.q, {1, 1}}});
  const AbelianGroup Aq = make_group({{mp.q, {1, 1}}});
  const std::vector<i64> cqu = aut_power(Aq, make_aut(Aq, {mp.cq}), mp.u).blocks[0];
  for (const auto& g : mp.Kp.generators) c.gamma_gens.push_back(make_aut(c.N, {g, kId2}));
  for (const auto& g : mp.Kq.generators) c.gamma_gens.push_back(make_aut(c.N, {kId2, g}));
  c.gamma_gens.push_back(make_aut(c.N, {mp.cp, cqu}));
  c.gamma = generate(c.N, c.gamma_gens,
                     "pullback(" + std::to_string(mp.p) + "," + std::to_string(mp.q) +
                         ";u=" + std::to_string(mp.u) + ")");
  if (c.gamma.order() != mp.Kp.order() * mp.Kq.order() * mp.r)
    throw std::logic_error("pullback order mismatch");
  if (!(inn_image(c.gamma, {mp.p}).elements == mp.Tp.group.elements) ||
      !(inn_image(c.gamma, {mp.q}).elements == mp.Tq.group.elements))
    throw std::invalid_argument("pullback restriction is not surjective onto an overgroup");
  c.epsilon = gamma_class_function(c.N, c.gamma, route_dense(c.N, c.gamma, mp.n, mp.fp.function, mp.p));
  c.has_gd_type = mp.Tp.kind == Gl2Kind::singer_cyclic && mp.Tq.kind == Gl2Kind::singer_cyclic &&
                  mp.Tp.order() == mp.p * mp.p - 1 && mp.Tq.order() == mp.q * mp.q - 1;
  if (c.has_gd_type) c.gd_d = mp.r;
  return c;
}

VerifyReport verify_candidate(const CandidateGroup& c, int threads) {
  VerifyReport rep;
  const MatchedPair& mp = c.pair;
  const AbelianGroup& N = c.N;
  const std::vector<i64> pv = {mp.p}, qv = {mp.q};
  const Element np_emb = copart(N, mp.n, qv);
  const Element nq_emb = copart(N, mp.n, pv);
  const AutGroup cnq = pointwise_block_stabilizer(N, c.gamma, 1, "C(N_q)");
  const AutGroup cnp = pointwise_block_stabilizer(N, c.gamma, 0, "C(N_p)");
  rep.centralizer_collapse_p = stabilizer(c.gamma, np_emb).elements == cnp.elements;
  rep.centralizer_collapse_q = stabilizer(c.gamma, nq_emb).elements == cnq.elements;
  rep.inner_is_kp = inn_image(cnq, pv).elements == mp.Kp.group.elements;
  rep.inner_is_kq = inn_image(cnp, qv).elements == mp.Kq.group.elements;
  rep.symmetric_formula = route_dense(N, c.gamma, mp.n, mp.fq.function, mp.q) == c.epsilon.dense;
  auto membership = [&](i64 value_prime, const AutGroup& inner_src, const ClassFunction& f) {
    const std::vector<i64> vp = {value_prime};
    const AutGroup Gv = inn_image(c.gamma, vp);
    const AutGroup Hv = inn_image(inner_src, vp);
    const Element nv = project(N, mp.n, vp);
    EConstraintSystem sys =
        build_system(Gv, Hv, Gv.ambient, local_class(Gv, nv), WeightMode::inner);
    apply_pruning(sys, Hv);
    std::vector<i64> mine;
    for (const ActionClass& var : sys.vars) mine.push_back(f.value_at(var.rep));
    for (const ESolution& s : enumerate_solutions(sys))
      if (s.tuple == mine) return true;
    return false;
  };
  rep.membership_p = membership(mp.p, cnq, mp.fp.function);
  rep.membership_q = membership(mp.q, cnp, mp.fq.function);
  const MetabelianGroup G = make_metabelian(N, c.gamma, group_name(N) + " candidate");
  const AlgOutcome out = algorithm2(G, threads);
  rep.witness_count = static_cast<i64>(out.witnesses.size());
  for (const Witness& w : out.witnesses)
    if (w.epsilon == c.epsilon) {
      rep.epsilon_among_witnesses = true;
      break;
    }
  rep.pass = rep.centralizer_collapse_p && rep.centralizer_collapse_q && rep.inner_is_kp &&
             rep.inner_is_kq && rep.symmetric_formula && rep.membership_p && rep.membership_q &&
             rep.epsilon_among_witnesses;
  return rep;
}

bool witness_decomposes(const CandidateGroup& c, const ClassFunction& epsilon,
                        const MatchReport& report) {
  const AbelianGroup& N = c.N;
  if (epsilon.domain.moduli != N.moduli) return false;
  i64 first = -1;
  for (i64 m = 0; m < N.order; ++m)
    if (epsilon.dense[m] != 0) {
      first = m;
      break;
    }
  if (first < 0) return false;
  const Element n = unpack(N, first);
  const i64 p = c.pair.p, q = c.pair.q;
  const std::vector<i64> pv = {p}, qv = {q};
  const Element np = project(N, n, pv);
  const Element nq = project(N, n, qv);
  if (is_identity(np) || is_identity(nq)) return false;
  const AbelianGroup Ap = restricted_group(N, pv);
  const AbelianGroup Aq = restricted_group(N, qv);
  // Slice the witness through the base point into per-prime functions.
  const Element nq_emb = copart(N, n, pv);
  const Element np_emb = copart(N, n, qv);
  std::vector<i64> fp(Ap.order), fq(Aq.order);
  for (i64 a = 0; a < Ap.order; ++a)
    fp[a] = epsilon.dense[pack(N, mul(N, embed(N, unpack(Ap, a), pv), nq_emb))];
  for (i64 b = 0; b < Aq.order; ++b)
    fq[b] = epsilon.dense[pack(N, mul(N, embed(N, unpack(Aq, b), qv), np_emb))];
  // Acting data recovered from the group itself.
  const AutGroup cnq = pointwise_block_stabilizer(N, c.gamma, 1, "C(N_q)");
  const AutGroup cnp = pointwise_block_stabilizer(N, c.gamma, 0, "C(N_p)");
  const AutGroup Tp = inn_image(c.gamma, pv);
  const AutGroup Tq = inn_image(c.gamma, qv);
  const AutGroup Kp = inn_image(cnq, pv);
  const AutGroup Kq = inn_image(cnp, qv);
  if (Kp.order() == 0 || Tp.order() % Kp.order() != 0) return false;
  const i64 r = Tp.order() / Kp.order();
  if (r < 2 || Kq.order() == 0 || Tq.order() != Kq.order() * r) return false;
  const std::optional<AutElem> cp = quotient_generator(Ap, Kp.elements, Tp.elements);
  const std::optional<AutElem> cq = quotient_generator(Aq, Kq.elements, Tq.elements);
  if (!cp || !cq) return false;
  // Support must stay inside the overgroup orbits of the base point parts.
  const ActionClass orbp = orbit_of(Tp, np);
  for (i64 a = 0; a < Ap.order; ++a)
    if (fp[a] != 0 && !std::binary_search(orbp.members.begin(), orbp.members.end(), a))
      return false;
  const ActionClass orbq = orbit_of(Tq, nq);
  for (i64 b = 0; b < Aq.order; ++b)
    if (fq[b] != 0 && !std::binary_search(orbq.members.begin(), orbq.members.end(), b))
      return false;
  // Value cycles along the two quotient translations.
  std::vector<i64> s, t;
  Element cur = np;
  for (i64 j = 0; j < r; ++j) {
    s.push_back(fp[pack(Ap, cur)]);
    cur = apply(Ap, *cp, cur);
  }
  cur = nq;
  for (i64 j = 0; j < r; ++j) {
    t.push_back(fq[pack(Aq, cur)]);
    cur = apply(Aq, *cq, cur);
  }
  if (s[0] == 0 || s[0] != t[0]) return false;
  std::set<std::string> keys;
  for (const MatchedPair& mp : report.pairs) keys.insert(mp.key);
  for (i64 u : units_mod(r)) {
    bool ok = true;
    for (i64 j = 0; j < r && ok; ++j) ok = s[j] == t[mod_nonneg(-j * u, r)];
    if (ok &&
        keys.count(pair_key(p, q, Kp.elements, Kq.elements, Tp.elements, Tq.elements, r, u, s, t)))
      return true;
  }
  return false;
}

}  // namespace sehgalkit
