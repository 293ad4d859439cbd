#include "sehgalkit/action.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>

namespace sehgalkit {

namespace {

i64 mod_reduce(i64 v, i64 m) { return ((v % m) + m) % m; }

i64 mod_inverse(i64 a, i64 m) {
  i64 old_r = mod_reduce(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    std::swap(old_r -= q * r, r);
    std::swap(old_s -= q * s, s);
  }
  if (old_r != 1) throw std::domain_error("element not invertible mod " + std::to_string(m));
  return mod_reduce(old_s, m);
}

struct BlockShape {
  int rank;     // 1 or 2
  i64 modulus;  // p^e shared by all factors of the component
  i64 prime;
  int coord_offset;  // first coordinate index of this component
};

std::vector<BlockShape> block_shapes(const AbelianGroup& A) {
  std::vector<BlockShape> shapes;
  int offset = 0;
  for (const auto& c : A.components) {
    int k = static_cast<int>(c.exponents.size());
    if (k > 2)
      throw scope_error("automorphisms supported only for rank <= 2 per prime (prime " +
                        std::to_string(c.prime) + " has rank " + std::to_string(k) + ")");
    if (k == 2 && c.exponents[0] != c.exponents[1])
      throw scope_error("automorphisms of mixed-exponent components are out of scope (prime " +
                        std::to_string(c.prime) + ")");
    BlockShape s;
    s.rank = k;
    s.prime = c.prime;
    s.modulus = A.moduli[static_cast<size_t>(offset)];
    s.coord_offset = offset;
    shapes.push_back(s);
    offset += k;
  }
  return shapes;
}

}  // namespace

AutElem make_aut(const AbelianGroup& A, const std::vector<std::vector<i64>>& blocks) {
  auto shapes = block_shapes(A);
  if (blocks.size() != shapes.size()) throw std::invalid_argument("wrong number of automorphism blocks");
  AutElem s;
  s.blocks.resize(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i) {
    const auto& sh = shapes[i];
    const auto& b = blocks[i];
    if (static_cast<int>(b.size()) != sh.rank * sh.rank)
      throw std::invalid_argument("block " + std::to_string(i) + " has wrong shape");
    std::vector<i64> red(b.size());
    for (size_t j = 0; j < b.size(); ++j) red[j] = mod_reduce(b[j], sh.modulus);
    i64 det = sh.rank == 1 ? red[0] : mod_reduce(red[0] * red[3] - red[1] * red[2], sh.modulus);
    if (std::gcd(det, sh.prime) != 1)
      throw std::invalid_argument("block " + std::to_string(i) + " not invertible mod " +
                                  std::to_string(sh.modulus));
    s.blocks[i] = std::move(red);
  }
  return s;
}

AutElem identity_aut(const AbelianGroup& A) {
  std::vector<std::vector<i64>> blocks;
  for (const auto& sh : block_shapes(A))
    blocks.push_back(sh.rank == 1 ? std::vector<i64>{1} : std::vector<i64>{1, 0, 0, 1});
  return make_aut(A, blocks);
}

Element apply(const AbelianGroup& A, const AutElem& s, const Element& a) {
  auto shapes = block_shapes(A);
  if (s.blocks.size() != shapes.size()) throw std::invalid_argument("automorphism/group mismatch");
  Element out(A.rank());
  for (size_t i = 0; i < shapes.size(); ++i) {
    const auto& sh = shapes[i];
    const auto& b = s.blocks[i];
    if (sh.rank == 1) {
      out[sh.coord_offset] = mod_reduce(b[0] * a[sh.coord_offset], sh.modulus);
    } else {
      i64 x = a[sh.coord_offset], y = a[sh.coord_offset + 1];
      out[sh.coord_offset] = mod_reduce(b[0] * x + b[1] * y, sh.modulus);
      out[sh.coord_offset + 1] = mod_reduce(b[2] * x + b[3] * y, sh.modulus);
    }
  }
  return out;
}

AutElem compose(const AbelianGroup& A, const AutElem& s, const AutElem& t) {
  auto shapes = block_shapes(A);
  std::vector<std::vector<i64>> blocks(shapes.size());
  for (size_t i = 0; i < shapes.size(); ++i) {
    const auto& sh = shapes[i];
    const auto& x = s.blocks[i];
    const auto& y = t.blocks[i];
    if (sh.rank == 1) {
      blocks[i] = {mod_reduce(x[0] * y[0], sh.modulus)};
    } else {
      blocks[i] = {mod_reduce(x[0] * y[0] + x[1] * y[2], sh.modulus),
                   mod_reduce(x[0] * y[1] + x[1] * y[3], sh.modulus),
                   mod_reduce(x[2] * y[0] + x[3] * y[2], sh.modulus),
                   mod_reduce(x[2] * y[1] + x[3] * y[3], sh.modulus)};
    }
  }
  AutElem r;
  r.blocks = std::move(blocks);
  return r;
}

AutElem aut_inverse(const AbelianGroup& A, const AutElem& s) {
  auto shapes = block_shapes(A);
  std::vector<std::vector<i64>> blocks(shapes.size());
  for (size_t i = 0; i < shapes.size(); ++i) {
    const auto& sh = shapes[i];
    const auto& b = s.blocks[i];
    if (sh.rank == 1) {
      blocks[i] = {mod_inverse(b[0], sh.modulus)};
    } else {
      i64 det = mod_reduce(b[0] * b[3] - b[1] * b[2], sh.modulus);
      i64 inv = mod_inverse(det, sh.modulus);
      blocks[i] = {mod_reduce(inv * b[3], sh.modulus), mod_reduce(-inv * b[1], sh.modulus),
                   mod_reduce(-inv * b[2], sh.modulus), mod_reduce(inv * b[0], sh.modulus)};
    }
  }
  AutElem r;
  r.blocks = std::move(blocks);
  return r;
}

AutElem aut_power(const AbelianGroup& A, const AutElem& s, i64 n) {
  AutElem base = n < 0 ? aut_inverse(A, s) : s;
  if (n < 0) n = -n;
  AutElem acc = identity_aut(A);
  while (n > 0) {
    if (n & 1) acc = compose(A, acc, base);
    base = compose(A, base, base);
    n >>= 1;
  }
  return acc;
}

i64 aut_order(const AbelianGroup& A, const AutElem& s) {
  AutElem id = identity_aut(A);
  AutElem cur = s;
  i64 n = 1;
  while (!(cur == id)) {
    cur = compose(A, cur, s);
    ++n;
    if (n > 2000000) throw scope_error("automorphism order exceeds materialization cap");
  }
  return n;
}

bool AutGroup::contains(const AutElem& s) const {
  return std::binary_search(elements.begin(), elements.end(), s);
}

AutGroup generate(const AbelianGroup& A, const std::vector<AutElem>& gens, const std::string& label) {
  constexpr i64 kCap = 1000000;
  std::set<AutElem> seen;
  seen.insert(identity_aut(A));
  std::vector<AutElem> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<AutElem> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        AutElem y = compose(A, x, g);
        if (seen.insert(y).second) {
          next.push_back(y);
          if (static_cast<i64>(seen.size()) > kCap)
            throw scope_error("acting group exceeds the 10^6 materialization cap");
        }
      }
    frontier = std::move(next);
  }
  AutGroup H;
  H.ambient = A;
  H.generators = gens;
  H.elements.assign(seen.begin(), seen.end());
  H.label = label;
  return H;
}

AutGroup trivial_group(const AbelianGroup& A) { return generate(A, {}, "1"); }

ActionClass orbit_of(const AutGroup& H, const Element& a) {
  const AbelianGroup& A = H.ambient;
  std::set<i64> seen{pack(A, a)};
  std::vector<i64> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<i64> next;
    for (i64 idx : frontier) {
      Element x = unpack(A, idx);
      for (const auto& g : H.generators) {
        i64 y = pack(A, apply(A, g, x));
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  ActionClass c;
  c.members.assign(seen.begin(), seen.end());
  c.rep = unpack(A, c.members.front());
  assert(H.order() % static_cast<i64>(c.members.size()) == 0);
  c.stabilizer_order = H.order() / static_cast<i64>(c.members.size());
  return c;
}

std::vector<ActionClass> orbits(const AutGroup& H, const std::vector<i64>& subset) {
  std::vector<i64> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  std::set<i64> remaining(sorted.begin(), sorted.end());
  std::vector<ActionClass> out;
  for (i64 idx : sorted) {
    if (!remaining.count(idx)) continue;
    ActionClass c = orbit_of(H, unpack(H.ambient, idx));
    for (i64 m : c.members) remaining.erase(m);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ActionClass> orbits_all(const AutGroup& H) {
  std::vector<i64> all(static_cast<size_t>(H.ambient.order));
  std::iota(all.begin(), all.end(), 0);
  return orbits(H, all);
}

std::vector<i64> local_class(const AutGroup& G, const Element& a) {
  const AbelianGroup& A = G.ambient;
  // Combine the per-prime orbits of the parts of a: coordinates at distinct
  // primes are independent, so the local class is their direct combination.
  std::vector<Element> partial{identity_of(A)};
  for (i64 p : primes_of(A)) {
    ActionClass po = orbit_of(G, part(A, a, {p}));
    std::vector<Element> next;
    next.reserve(partial.size() * po.members.size());
    for (const auto& base : partial)
      for (i64 m : po.members) next.push_back(mul(A, base, unpack(A, m)));
    partial = std::move(next);
  }
  std::vector<i64> idx;
  idx.reserve(partial.size());
  for (const auto& x : partial) idx.push_back(pack(A, x));
  std::sort(idx.begin(), idx.end());
  return idx;
}

AutGroup stabilizer(const AutGroup& H, const Element& a) {
  AutGroup S;
  S.ambient = H.ambient;
  S.label = H.label.empty() ? "stab" : H.label + ".stab";
  for (const auto& g : H.elements)
    if (apply(H.ambient, g, a) == a) S.elements.push_back(g);
  S.generators = S.elements;
  return S;
}

AutElem restrict_aut(const AbelianGroup& A, const AutElem& s, const std::vector<i64>& pi) {
  auto shapes = block_shapes(A);
  AutElem r;
  for (size_t i = 0; i < shapes.size(); ++i)
    if (std::find(pi.begin(), pi.end(), shapes[i].prime) != pi.end()) r.blocks.push_back(s.blocks[i]);
  return r;
}

AutGroup inn_image(const AutGroup& H, const std::vector<i64>& pi) {
  AbelianGroup R = restricted_group(H.ambient, pi);
  std::vector<AutElem> gens;
  for (const auto& g : H.generators) gens.push_back(restrict_aut(H.ambient, g, pi));
  return generate(R, gens, H.label.empty() ? "" : H.label + "|" + group_name(R));
}

}  // namespace sehgalkit
