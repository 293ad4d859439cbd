#include "sehgalkit/algorithms.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sehgalkit/parallel.hpp"

namespace sehgalkit {

namespace {

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> primes_without(const AbelianGroup& N, i64 p) {
  std::vector<i64> out;
  for (i64 r : primes_of(N))
    if (r != p) out.push_back(r);
  return out;
}

// For each member of the orbit of y, an automorphism carrying y onto it.
std::map<i64, AutElem> orbit_transversal(const AutGroup& H, const Element& y) {
  const AbelianGroup& N = H.ambient;
  std::map<i64, AutElem> reach;
  reach[pack(N, y)] = identity_aut(N);
  std::vector<Element> queue = {y};
  while (!queue.empty()) {
    Element x = queue.back();
    queue.pop_back();
    AutElem sx = reach.at(pack(N, x));
    for (const AutElem& g : H.generators) {
      Element z = apply(N, g, x);
      i64 zi = pack(N, z);
      if (!reach.count(zi)) {
        reach.emplace(zi, compose(N, g, sx));
        queue.push_back(z);
      }
    }
  }
  return reach;
}

}  // namespace

MetabelianGroup make_metabelian(const AbelianGroup& N, const AutGroup& gamma,
                                const std::string& name) {
  if (gamma.ambient.moduli != N.moduli)
    throw std::invalid_argument("the acting group is not defined on the given normal subgroup");
  MetabelianGroup G;
  G.N = N;
  G.gamma = gamma;
  G.name = name.empty() ? group_name(N) + " : " + (gamma.label.empty() ? "G" : gamma.label) : name;
  return G;
}

std::vector<std::vector<i64>> local_class_partition(const AutGroup& G) {
  const AbelianGroup& A = G.ambient;
  std::vector<char> seen(static_cast<size_t>(A.order), 0);
  seen[0] = 1;  // the identity is locally conjugate only to itself
  std::vector<std::vector<i64>> out;
  for (i64 idx = 1; idx < A.order; ++idx) {
    if (seen[static_cast<size_t>(idx)]) continue;
    std::vector<i64> lc = local_class(G, unpack(A, idx));
    for (i64 m : lc) seen[static_cast<size_t>(m)] = 1;
    out.push_back(std::move(lc));
  }
  return out;
}

AbelianGroup reduce_cyclic_factors(const AbelianGroup& A) {
  std::vector<std::pair<i64, std::vector<int>>> comps;
  for (const auto& c : A.components)
    if (c.exponents.size() >= 2) comps.emplace_back(c.prime, c.exponents);
  return make_group(comps);
}

ClassFunction assemble_epsilon(const MetabelianGroup& G, i64 p, const Element& y,
                               const ClassFunction& f) {
  const AbelianGroup& N = G.N;
  std::vector<i64> others = primes_without(N, p);
  AbelianGroup A = restricted_group(N, others);
  if (f.domain.moduli != A.moduli)
    throw std::invalid_argument("the solution is not defined on the p'-part of N");
  if (!is_identity(copart(N, y, {p})))
    throw std::invalid_argument("the class representative must lie in the p-part of N");

  std::map<i64, AutElem> reach = orbit_transversal(G.gamma, y);

  ClassFunction eps;
  eps.domain = N;
  eps.acting_label = G.name;
  eps.dense.assign(static_cast<size_t>(N.order), 0);
  for (const ActionClass& cls : orbits_all(G.gamma)) {
    Element np = part(N, cls.rep, {p});
    auto it = reach.find(pack(N, np));
    i64 val = 0;
    if (it != reach.end()) {
      AutElem to_y = aut_inverse(N, it->second);  // carries n_p onto y
      Element moved = apply(N, to_y, copart(N, cls.rep, {p}));
      val = f.value_at(project(N, moved, others));
    }
    if (val != 0) {
      eps.class_reps.push_back(cls.rep);
      eps.class_values.push_back(val);
    }
    for (i64 m : cls.members) eps.dense[static_cast<size_t>(m)] = val;
  }
  return eps;
}

AlgOutcome algorithm1(const MetabelianGroup& G, i64 p, int threads) {
  if (!is_prime(p)) throw std::invalid_argument("the chosen prime must be prime");
  if (G.gamma.ambient.moduli != G.N.moduli)
    throw std::invalid_argument("the acting group is not defined on the given normal subgroup");

  const AbelianGroup& N = G.N;
  std::vector<i64> others = primes_without(N, p);
  AbelianGroup A = restricted_group(N, others);
  AlgOutcome out;
  if (A.trivial()) {
    // N is a p-group: every torsion unit in question is a p-element, which is
    // conjugate to a group element; no constraint system can produce a witness.
    out.verdict_true = true;
    return out;
  }

  // Representatives y of the G-classes inside N_p (including the identity).
  AbelianGroup Np = restricted_group(N, {p});
  std::vector<i64> np_indices;
  np_indices.reserve(static_cast<size_t>(Np.order));
  for (i64 i = 0; i < Np.order; ++i) np_indices.push_back(pack(N, embed(N, unpack(Np, i), {p})));
  std::sort(np_indices.begin(), np_indices.end());
  std::vector<ActionClass> yclasses = orbits(G.gamma, np_indices);

  AutGroup gammaA = inn_image(G.gamma, others);
  std::vector<std::vector<i64>> locals = local_class_partition(gammaA);
  std::vector<CocyclicCoset> cosets = minimal_cocyclic_cosets(A);

  // One job per (y, local class); per-y inner images are shared across jobs.
  std::vector<AutGroup> inner;
  inner.reserve(yclasses.size());
  for (const ActionClass& yc : yclasses)
    inner.push_back(inn_image(stabilizer(G.gamma, yc.rep), others));

  struct Job {
    size_t yi;
    size_t li;
  };
  std::vector<Job> jobs;
  for (size_t yi = 0; yi < yclasses.size(); ++yi)
    for (size_t li = 0; li < locals.size(); ++li) jobs.push_back({yi, li});

  std::vector<std::vector<Witness>> found(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), threads, [&](int j) {
    const Job& job = jobs[static_cast<size_t>(j)];
    EConstraintSystem sys =
        build_system(gammaA, inner[job.yi], A, locals[job.li], WeightMode::inner, &cosets);
    apply_pruning(sys, inner[job.yi], &cosets);
    for (const ESolution& sol : enumerate_solutions(sys)) {
      Witness w;
      w.epsilon = assemble_epsilon(G, p, yclasses[job.yi].rep, sol.function);
      w.origins.push_back(
          {p, pack(N, yclasses[job.yi].rep), inner[job.yi].label, sol.function});
      found[static_cast<size_t>(j)].push_back(std::move(w));
    }
  });
  for (auto& batch : found)
    for (auto& w : batch) out.witnesses.push_back(std::move(w));
  out.verdict_true = out.witnesses.empty();
  return out;
}

AlgOutcome algorithm2(const MetabelianGroup& G, int threads) {
  std::vector<i64> ps = primes_of(G.N);
  AlgOutcome acc;
  if (ps.empty()) {
    acc.verdict_true = true;
    return acc;
  }
  bool first = true;
  for (i64 p : ps) {
    AlgOutcome step = algorithm1(G, p, threads);
    if (first) {
      acc = std::move(step);
      first = false;
    } else {
      std::vector<Witness> merged;
      for (Witness& w : acc.witnesses) {
        for (Witness& v : step.witnesses) {
          if (w.epsilon == v.epsilon) {
            Witness m = std::move(w);
            m.origins.insert(m.origins.end(), v.origins.begin(), v.origins.end());
            merged.push_back(std::move(m));
            break;
          }
        }
      }
      acc.witnesses = std::move(merged);
    }
    if (acc.witnesses.empty()) break;
  }
  acc.verdict_true = acc.witnesses.empty();
  return acc;
}

Alg3Outcome algorithm3(const AbelianGroup& A, WeightMode mode, int threads,
                       const ESetHooks* hooks) {
  Alg3Outcome out;
  out.core = reduce_cyclic_factors(A);
  if (out.core.trivial()) {
    // All Sylow components cyclic: no solutions exist for any subgroup.
    out.verdict_true = true;
    out.exhaustive = true;
    return out;
  }
  if (out.core.components.size() != 1 || out.core.components[0].exponents != std::vector<int>{1, 1})
    throw scope_error("unsupported input: the non-cyclic part must be C_q x C_q with q <= 19, got " +
                      group_name(out.core));
  i64 q = out.core.components[0].prime;

  std::vector<Gl2Subgroup> Ks;
  if (q <= 5) {
    Ks = subgroup_class_reps(q);
    out.exhaustive = true;
  } else if (q <= 19) {
    Ks = abelian_candidates(q);
    out.exhaustive = false;
  } else {
    throw scope_error("unsupported input: the non-cyclic part must be C_q x C_q with q <= 19, got " +
                      group_name(out.core));
  }

  const AbelianGroup core = out.core;
  i64 z = primitive_root(q);
  AutGroup S = generate(core,
                        {make_aut(core, {{z, 0, 0, 1}}), make_aut(core, {{q - 1, 1, q - 1, 0}}),
                         make_aut(core, {{1, 1, 0, 1}})},
                        "GL(2," + std::to_string(q) + ")");
  if (S.order() != (q * q - 1) * (q * q - q))
    throw std::logic_error("automorphism group of the core came out the wrong size");

  std::vector<i64> nonzero;
  nonzero.reserve(static_cast<size_t>(core.order - 1));
  for (i64 i = 1; i < core.order; ++i) nonzero.push_back(i);
  std::vector<CocyclicCoset> cosets = minimal_cocyclic_cosets(core);

  std::vector<std::vector<Alg3Entry>> found(Ks.size());
  parallel_for(static_cast<int>(Ks.size()), threads, [&](int i) {
    const Gl2Subgroup& K = Ks[static_cast<size_t>(i)];
    EConstraintSystem sys = build_system(S, K.group, core, nonzero, mode, &cosets);
    apply_pruning(sys, K.group, &cosets);
    std::vector<ESolution> sols;
    bool loaded = false;
    if (hooks != nullptr && hooks->load) {
      if (auto hit = hooks->load(K, sys)) {
        sols = std::move(*hit);
        loaded = true;
      }
    }
    if (!loaded) {
      sols = enumerate_solutions(sys);
      if (hooks != nullptr && hooks->store) hooks->store(K, sys, sols);
    }
    if (!sols.empty()) found[static_cast<size_t>(i)].push_back({K, std::move(sys), std::move(sols)});
  });
  for (auto& batch : found)
    for (auto& e : batch) out.entries.push_back(std::move(e));
  out.verdict_true = out.exhaustive && out.entries.empty();
  return out;
}

}  // namespace sehgalkit
