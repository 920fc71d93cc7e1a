#include "latcone/hilbert_series.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace latcone {

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(std::move(r));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return poly_trim(std::move(r));
}

std::optional<Poly> poly_divide_exact(const Poly& a, const Poly& b) {
  Poly rem = poly_trim(a);
  Poly den = poly_trim(b);
  if (den.empty()) throw internal_error("poly division by zero");
  if (rem.empty()) return Poly{};
  if (rem.size() < den.size()) return std::nullopt;
  const mpz_class& lead = den.back();
  Poly q(rem.size() - den.size() + 1, mpz_class(0));
  for (size_t k = q.size(); k-- > 0;) {
    mpz_class& top = rem[k + den.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
    mpz_class f = top / lead;
    q[k] = f;
    for (size_t j = 0; j < den.size(); ++j)
      mpz_submul(rem[k + j].get_mpz_t(), f.get_mpz_t(), den[j].get_mpz_t());
  }
  for (const mpz_class& c : rem)
    if (c != 0) return std::nullopt;
  return poly_trim(std::move(q));
}

namespace {

// Standard cyclotomic polynomial, recursive exact division, memoized.
const Poly& cyclotomic_std(long long n) {
  static std::map<long long, Poly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::function<const Poly&(long long)> get = [&](long long m) -> const Poly& {
    auto found = cache.find(m);
    if (found != cache.end()) return found->second;
    Poly num(m + 1, mpz_class(0));
    num[0] = -1;
    num[m] = 1;  // t^m - 1
    Poly acc{1};
    for (long long d = 1; d < m; ++d)
      if (m % d == 0) acc = poly_mul(acc, get(d));
    std::optional<Poly> phi = poly_divide_exact(num, acc);
    if (!phi) throw internal_error("cyclotomic division failed");
    return cache.emplace(m, std::move(*phi)).first->second;
  };
  return get(n);
}

}  // namespace

const Poly& zeta_poly(long long n) {
  static const Poly one_minus_t{1, -1};
  if (n == 1) return one_minus_t;
  return cyclotomic_std(n);
}

void accumulate(ClassMap& classes, std::vector<long long> degrees, const Poly& numer_term) {
  std::sort(degrees.begin(), degrees.end());
  Poly& numer = classes[degrees];
  numer = poly_add(numer, numer_term);
}

namespace {

Poly multiply_missing(const Poly& numer, const std::map<long long, int>& have,
                      const std::map<long long, int>& want) {
  Poly r = numer;
  for (const auto& [e, mult] : want) {
    auto it = have.find(e);
    int has = it == have.end() ? 0 : it->second;
    for (int k = has; k < mult; ++k) {
      Poly f(e + 1, mpz_class(0));
      f[0] = 1;
      f[e] = -1;  // 1 - t^e
      r = poly_mul(r, f);
    }
  }
  return r;
}

}  // namespace

RawSeries sum_raw(const ClassMap& classes) {
  RawSeries out;
  std::map<long long, int> common;
  for (const auto& [degs, numer] : classes) {
    (void)numer;  // key-only pass
    std::map<long long, int> cls;
    for (long long g : degs) ++cls[g];
    for (const auto& [e, mult] : cls) common[e] = std::max(common[e], mult);
  }
  Poly total;
  for (const auto& [degs, numer] : classes) {
    std::map<long long, int> cls;
    for (long long g : degs) ++cls[g];
    total = poly_add(total, multiply_missing(numer, cls, common));
  }
  out.numer = std::move(total);
  for (const auto& [e, mult] : common)
    for (int k = 0; k < mult; ++k) out.denom.push_back(e);
  std::sort(out.denom.begin(), out.denom.end());
  return out;
}

CycloSeries cyclotomic_reduce(const RawSeries& raw) {
  CycloSeries out;
  std::map<long long, int> mult;
  for (long long g : raw.denom)
    for (long long z = 1; z <= g; ++z)
      if (g % z == 0) ++mult[z];
  out.numer = raw.numer;
  for (auto& [z, m] : mult) {
    while (m > 0) {
      std::optional<Poly> q = poly_divide_exact(out.numer, zeta_poly(z));
      if (!q) break;
      out.numer = std::move(*q);
      --m;
    }
  }
  for (const auto& [z, m] : mult)
    if (m > 0) out.factors.emplace_back(z, m);
  return out;
}

std::optional<StdSeries> standardize(const CycloSeries& cyc, int rank, long long numer_degree_cap) {
  int max_mult = 0;
  for (const auto& [z, m] : cyc.factors) max_mult = std::max(max_mult, m);
  if (max_mult > rank) return std::nullopt;  // out of the pointed graded case
  std::vector<long long> exps(rank, 1);
  // e_{rank-k+1} = lcm of the orders with multiplicity >= k
  for (int k = 1; k <= rank; ++k) {
    mpz_class l = 1;
    bool any = false;
    for (const auto& [z, m] : cyc.factors)
      if (m >= k) {
        mpz_class zz((long)z);
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), zz.get_mpz_t());
        any = true;
      }
    exps[rank - k] = any ? (long long)l.get_si() : 1;
  }
  long long expected_deg = (long long)cyc.numer.size() - 1;
  for (long long e : exps) expected_deg += e;
  for (const auto& [z, m] : cyc.factors)
    expected_deg -= (long long)(zeta_poly(z).size() - 1) * m;
  if (expected_deg > numer_degree_cap) return std::nullopt;

  Poly numer = cyc.numer;
  for (long long e : exps) {
    Poly f(e + 1, mpz_class(0));
    f[0] = 1;
    f[e] = -1;
    numer = poly_mul(numer, f);
  }
  for (const auto& [z, m] : cyc.factors)
    for (int k = 0; k < m; ++k) {
      std::optional<Poly> q = poly_divide_exact(numer, zeta_poly(z));
      if (!q) throw internal_error("standardize: denominator does not divide");
      numer = std::move(*q);
    }
  StdSeries out;
  out.numer = std::move(numer);
  out.denom = std::move(exps);
  return out;
}

std::vector<mpz_class> expand_series(const Poly& numer, const std::vector<long long>& denom,
                                     long long kmax) {
  std::vector<mpz_class> c(kmax + 1, mpz_class(0));
  for (size_t i = 0; i < numer.size() && (long long)i <= kmax; ++i) c[i] = numer[i];
  for (long long g : denom)
    for (long long k = g; k <= kmax; ++k) c[k] += c[k - g];
  return c;
}

std::vector<mpz_class> series_coefficients(const RawSeries& raw, long long kmax) {
  return expand_series(raw.numer, raw.denom, kmax);
}

std::optional<Quasipolynomial> quasipolynomial(const CycloSeries& cyc, const RawSeries& raw,
                                               int rank, long long period_cap) {
  mpz_class period_z = 1;
  for (const auto& [z, m] : cyc.factors) {
    (void)m;
    mpz_class zz((long)z);
    mpz_lcm(period_z.get_mpz_t(), period_z.get_mpz_t(), zz.get_mpz_t());
    if (period_z > mpz_class((long)period_cap)) return std::nullopt;
  }
  const long long period = (long long)period_z.get_si();
  const int d = rank;
  const long long kmax = (long long)(d + 1) * period + d;
  std::vector<mpz_class> h = series_coefficients(raw, kmax);

  Quasipolynomial out;
  out.period = period;
  std::vector<std::vector<mpq_class>> q(period, std::vector<mpq_class>(d));
  for (long long r = 0; r < period; ++r) {
    // Exact Vandermonde solve on the points k = r + j*period, j = 0..d-1.
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1));
    for (int j = 0; j < d; ++j) {
      mpz_class k((long)(r + j * period));
      mpq_class kp = 1;
      for (int c = 0; c < d; ++c) {
        m[j][c] = kp;
        kp *= k;
      }
      m[j][d] = mpq_class(h[(size_t)(r + j * period)]);
    }
    for (int col = 0; col < d; ++col) {
      int piv = -1;
      for (int row = col; row < d; ++row)
        if (m[row][col] != 0) {
          piv = row;
          break;
        }
      if (piv < 0) throw internal_error("quasipolynomial: singular interpolation");
      std::swap(m[piv], m[col]);
      for (int row = 0; row < d; ++row) {
        if (row == col || m[row][col] == 0) continue;
        mpq_class f = m[row][col] / m[col][col];
        for (int c = col; c <= d; ++c) m[row][c] -= f * m[col][c];
      }
    }
    for (int c = 0; c < d; ++c) q[r][c] = m[c][d] / m[c][c];
    // Reproduction check one period beyond the interpolation window.
    mpq_class probe = 0;
    mpz_class k((long)(r + (long long)d * period));
    mpq_class kp = 1;
    for (int c = 0; c < d; ++c) {
      probe += q[r][c] * kp;
      kp *= k;
    }
    if (probe != mpq_class(h[(size_t)(r + (long long)d * period)]))
      throw internal_error("quasipolynomial does not reproduce the series");
  }
  // Leading coefficient must be constant across the residues.
  for (long long r = 1; r < period; ++r)
    if (q[r][d - 1] != q[0][d - 1])
      throw internal_error("quasipolynomial: leading coefficient not constant");

  mpz_class den = 1;
  for (long long r = 0; r < period; ++r)
    for (int c = 0; c < d; ++c)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q[r][c].get_den().get_mpz_t());
  out.common_den = den;
  out.coeff.assign(period, std::vector<mpz_class>(d));
  for (long long r = 0; r < period; ++r)
    for (int c = 0; c < d; ++c) {
      mpq_class scaled = q[r][c] * mpq_class(den);
      if (scaled.get_den() != 1) throw internal_error("quasipolynomial: denominator scaling");
      out.coeff[r][c] = scaled.get_num();
    }
  return out;
}

bool multiplicity_check(const Quasipolynomial& q, const mpq_class& volume, int rank) {
  mpq_class lead(q.coeff[0][rank - 1], q.common_den);
  lead.canonicalize();
  mpz_class fact = 1;
  for (int i = 2; i < rank; ++i) fact *= i;
  return lead * mpq_class(fact) == volume;
}

}  // namespace latcone
