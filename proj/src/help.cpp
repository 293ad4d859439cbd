#include "sehgalkit/help.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "sehgalkit/gl2.hpp"
#include "sehgalkit/lp.hpp"
#include "sehgalkit/parallel.hpp"

namespace sehgalkit {

namespace {

i64 mod_nonneg(i64 v, i64 m) { return ((v % m) + m) % m; }

bool is_prime_i64(i64 n) {
  if (n < 2) return false;
  for (i64 f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

// c1-coefficients of alpha^x for x = 0 .. p^2-2, i.e. the coordinate of
// alpha^x along alpha in the basis {1, alpha}. alpha^x - r*alpha lies in F_p
// exactly when this coefficient equals r.
std::vector<i64> generator_coefficients(const QuadField& F) {
  std::vector<i64> c1s;
  c1s.reserve(static_cast<size_t>(F.p * F.p - 1));
  QuadField::Elt u{1, 0};
  for (i64 x = 0; x < F.p * F.p - 1; ++x) {
    c1s.push_back(u.second);
    u = F.mul(u, {0, 1});
  }
  return c1s;
}

// cnt[c][u] = #{x : coefficient(x) = c, x = u (mod d)}.
std::vector<std::vector<i64>> residue_tally(const std::vector<i64>& coeffs, i64 p, i64 d) {
  std::vector<std::vector<i64>> cnt(static_cast<size_t>(p), std::vector<i64>(static_cast<size_t>(d), 0));
  for (size_t x = 0; x < coeffs.size(); ++x)
    ++cnt[static_cast<size_t>(coeffs[x])][x % static_cast<size_t>(d)];
  return cnt;
}

}  // namespace

QuadField::Elt QuadField::mul(const Elt& u, const Elt& v) const {
  // (u0 + u1*alpha)(v0 + v1*alpha) with alpha^2 = a*alpha + b.
  i64 cross = u.second * v.second;
  i64 c0 = mod_nonneg(u.first * v.first + b * cross, p);
  i64 c1 = mod_nonneg(u.first * v.second + u.second * v.first + a * cross, p);
  return {c0, c1};
}

QuadField::Elt QuadField::alpha_power(i64 k) const {
  k = mod_nonneg(k, p * p - 1);
  Elt acc{1, 0};
  Elt base{0, 1};
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

QuadField make_quadfield(i64 p) {
  if (!is_prime_i64(p))
    throw std::invalid_argument("make_quadfield: p must be prime, got " + std::to_string(p));
  SingerBasis sb = singer_basis(make_group({{p, {1, 1}}}));
  return QuadField{p, sb.a, sb.b};
}

GdGroup make_gd_group(i64 p, i64 q, i64 d) {
  if (!is_prime_i64(p) || !is_prime_i64(q) || p == q)
    throw std::invalid_argument("make_gd_group: p and q must be distinct primes, got p=" +
                                std::to_string(p) + " q=" + std::to_string(q));
  if (d < 1 || (p * p - 1) % d != 0 || (q * q - 1) % d != 0)
    throw std::invalid_argument("make_gd_group: d must divide gcd(p^2-1, q^2-1), got d=" +
                                std::to_string(d));
  return GdGroup{p, q, d, make_quadfield(p), make_quadfield(q)};
}

i64 mu(const GdGroup& G, i64 i, i64 r, i64 s) {
  i = mod_nonneg(i, G.d);
  r = mod_nonneg(r, G.p);
  s = mod_nonneg(s, G.q);
  // Tally the beta side per residue of y mod d, then sweep the alpha side.
  std::vector<i64> cntq(static_cast<size_t>(G.d), 0);
  QuadField::Elt v{1, 0};
  for (i64 y = 0; y < G.q * G.q - 1; ++y) {
    if (v.second == s) ++cntq[static_cast<size_t>(y % G.d)];
    v = G.fq.mul(v, {0, 1});
  }
  i64 total = 0;
  QuadField::Elt u{1, 0};
  for (i64 x = 0; x < G.p * G.p - 1; ++x) {
    if (u.second == r) total += cntq[static_cast<size_t>(mod_nonneg(x - i, G.d))];
    u = G.fp.mul(u, {0, 1});
  }
  return total;
}

bool transitivity_check(i64 p, i64 q, i64 d) {
  if (p < 2 || q < 2 || d < 1) throw std::invalid_argument("transitivity_check: invalid parameters");
  return std::gcd(d, std::gcd(p + 1, q + 1)) == 1;
}

HelpSystem help_system(const GdGroup& G, int threads) {
  if (!transitivity_check(G.p, G.q, G.d))
    throw scope_error("unsupported input: the single-character multiplicity system needs gcd(d, gcd(p+1, q+1)) = 1, got d=" +
                      std::to_string(G.d) + " with p=" + std::to_string(G.p) + " q=" +
                      std::to_string(G.q));
  const i64 d = G.d;
  const auto cntp = residue_tally(generator_coefficients(G.fp), G.p, d);
  const auto cntq = residue_tally(generator_coefficients(G.fq), G.q, d);
  HelpSystem sys;
  sys.p = G.p;
  sys.q = G.q;
  sys.d = d;
  sys.rows.assign(static_cast<size_t>(G.p * G.q), {});
  parallel_for(static_cast<int>(G.p * G.q), threads, [&](int idx) {
    const i64 r = idx / G.q;
    const i64 s = idx % G.q;
    std::vector<i64> row(static_cast<size_t>(d), 0);
    for (i64 i = 0; i < d; ++i) {
      i64 total = 0;
      for (i64 u = 0; u < d; ++u)
        total += cntp[static_cast<size_t>(r)][static_cast<size_t>(u)] *
                 cntq[static_cast<size_t>(s)][static_cast<size_t>(mod_nonneg(u - i, d))];
      row[static_cast<size_t>(i)] = total;
    }
    sys.rows[static_cast<size_t>(idx)] = std::move(row);
  });
  return sys;
}

std::vector<std::vector<i64>> help_solutions(const HelpSystem& sys) {
  const int d = static_cast<int>(sys.d);
  if (d < 1 || sys.rows.empty()) throw std::invalid_argument("help_solutions: empty system");
  for (const auto& row : sys.rows)
    if (static_cast<int>(row.size()) != d)
      throw std::invalid_argument("help_solutions: row width does not match d");

  bool has_positive_row = false;
  for (const auto& row : sys.rows) {
    bool all_positive = true;
    for (i64 e : row) all_positive = all_positive && e > 0;
    if (all_positive) {
      has_positive_row = true;
      break;
    }
  }
  if (!has_positive_row)
    throw std::runtime_error("unbounded system: no multiplicity row with all entries positive");

  // Exact rational bounds per variable. The simplex works over nonnegative
  // variables, so each x_j is split as u_j - v_j.
  std::vector<LpRow> lp_rows;
  {
    LpRow sum_row;
    sum_row.a.assign(static_cast<size_t>(2 * d), Rational(0));
    for (int j = 0; j < d; ++j) {
      sum_row.a[static_cast<size_t>(j)] = Rational(1);
      sum_row.a[static_cast<size_t>(d + j)] = Rational(-1);
    }
    sum_row.rel = Rel::eq;
    sum_row.b = Rational(1);
    lp_rows.push_back(std::move(sum_row));
  }
  for (const auto& row : sys.rows) {
    LpRow r;
    r.a.assign(static_cast<size_t>(2 * d), Rational(0));
    for (int j = 0; j < d; ++j) {
      r.a[static_cast<size_t>(j)] = Rational(row[static_cast<size_t>(j)]);
      r.a[static_cast<size_t>(d + j)] = Rational(-row[static_cast<size_t>(j)]);
    }
    r.rel = Rel::ge;
    r.b = Rational(0);
    lp_rows.push_back(std::move(r));
  }

  std::vector<i64> lb(static_cast<size_t>(d), 0), ub(static_cast<size_t>(d), 0);
  for (int j = 0; j < d; ++j) {
    std::vector<Rational> obj(static_cast<size_t>(2 * d), Rational(0));
    obj[static_cast<size_t>(j)] = Rational(1);
    obj[static_cast<size_t>(d + j)] = Rational(-1);
    LpOutcome mn = lp_minimize(2 * d, lp_rows, obj);
    LpOutcome mx = lp_maximize(2 * d, lp_rows, obj);
    if (mn.status == LpStatus::infeasible || mx.status == LpStatus::infeasible) return {};
    if (mn.status != LpStatus::optimal || mx.status != LpStatus::optimal)
      throw std::runtime_error("unbounded system: variable " + std::to_string(j) +
                               " has no finite rational bound");
    lb[static_cast<size_t>(j)] = static_cast<i64>(mn.value.ceil());
    ub[static_cast<size_t>(j)] = static_cast<i64>(mx.value.floor());
    if (lb[static_cast<size_t>(j)] > ub[static_cast<size_t>(j)]) return {};
  }

  const int nrows = static_cast<int>(sys.rows.size());
  // Suffix extremes: the largest achievable contribution of x_k, k >= idx, to
  // each row, and the extreme achievable remaining sums.
  std::vector<std::vector<i64>> row_max_rest(static_cast<size_t>(nrows),
                                             std::vector<i64>(static_cast<size_t>(d + 1), 0));
  for (int t = 0; t < nrows; ++t)
    for (int k = d - 1; k >= 0; --k) {
      i64 c = sys.rows[static_cast<size_t>(t)][static_cast<size_t>(k)];
      i64 best = std::max(c * lb[static_cast<size_t>(k)], c * ub[static_cast<size_t>(k)]);
      row_max_rest[static_cast<size_t>(t)][static_cast<size_t>(k)] =
          row_max_rest[static_cast<size_t>(t)][static_cast<size_t>(k + 1)] + best;
    }
  std::vector<i64> sum_lb_rest(static_cast<size_t>(d + 1), 0), sum_ub_rest(static_cast<size_t>(d + 1), 0);
  for (int k = d - 1; k >= 0; --k) {
    sum_lb_rest[static_cast<size_t>(k)] = sum_lb_rest[static_cast<size_t>(k + 1)] + lb[static_cast<size_t>(k)];
    sum_ub_rest[static_cast<size_t>(k)] = sum_ub_rest[static_cast<size_t>(k + 1)] + ub[static_cast<size_t>(k)];
  }

  std::vector<std::vector<i64>> out;
  std::vector<i64> x(static_cast<size_t>(d), 0);
  std::vector<i64> partial(static_cast<size_t>(nrows), 0);

  auto rec = [&](auto&& self, int idx, i64 psum) -> void {
    if (idx == d) {
      if (psum == 1) out.push_back(x);
      return;
    }
    for (i64 v = lb[static_cast<size_t>(idx)]; v <= ub[static_cast<size_t>(idx)]; ++v) {
      i64 nsum = psum + v;
      if (nsum + sum_lb_rest[static_cast<size_t>(idx + 1)] > 1) break;  // v ascending: sums only grow
      if (nsum + sum_ub_rest[static_cast<size_t>(idx + 1)] < 1) continue;
      bool ok = true;
      for (int t = 0; t < nrows && ok; ++t) {
        i64 np = partial[static_cast<size_t>(t)] +
                 sys.rows[static_cast<size_t>(t)][static_cast<size_t>(idx)] * v;
        if (np + row_max_rest[static_cast<size_t>(t)][static_cast<size_t>(idx + 1)] < 0) ok = false;
      }
      if (!ok) continue;
      for (int t = 0; t < nrows; ++t)
        partial[static_cast<size_t>(t)] += sys.rows[static_cast<size_t>(t)][static_cast<size_t>(idx)] * v;
      x[static_cast<size_t>(idx)] = v;
      self(self, idx + 1, nsum);
      for (int t = 0; t < nrows; ++t)
        partial[static_cast<size_t>(t)] -= sys.rows[static_cast<size_t>(t)][static_cast<size_t>(idx)] * v;
    }
    x[static_cast<size_t>(idx)] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace sehgalkit
