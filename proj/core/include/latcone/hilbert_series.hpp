#pragma once

// Hilbert/Ehrhart series assembly: denominator classes are summed into a raw
// rational function, reduced against cyclotomic polynomials, brought to the
// standardized d-factor form when small enough, and expanded into the Hilbert
// quasipolynomial. Everything here is exact (GMP integers/rationals).

#include <map>
#include <optional>
#include <vector>

#include "latcone/integer.hpp"

namespace latcone {

// Dense integer polynomials, index = exponent, trailing zeros trimmed.
using Poly = std::vector<mpz_class>;

Poly poly_trim(Poly p);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
// Exact division; empty optional if the division leaves a remainder.
std::optional<Poly> poly_divide_exact(const Poly& a, const Poly& b);

// Cyclotomic factor of 1 - t^g: zeta(1) = 1 - t, zeta(n) = standard
// cyclotomic polynomial for n >= 2, so that 1 - t^g = prod_{z | g} zeta(z).
const Poly& zeta_poly(long long n);

// Denominator classes: key is the sorted degree multiset, value the numerator.
using ClassMap = std::map<std::vector<long long>, Poly>;

void accumulate(ClassMap& classes, std::vector<long long> degrees, const Poly& numer_term);

struct RawSeries {
  Poly numer;
  std::vector<long long> denom;  // exponents g of the (1 - t^g) factors, sorted
};

struct CycloSeries {
  Poly numer;
  std::vector<std::pair<long long, int>> factors;  // (order, multiplicity), sorted
};

struct StdSeries {
  Poly numer;
  std::vector<long long> denom;  // e_1 <= ... <= e_d
};

struct Quasipolynomial {
  long long period = 1;
  mpz_class common_den = 1;
  // coeff[r][j]: numerator of q_j on residue class r, over common_den
  std::vector<std::vector<mpz_class>> coeff;
};

// Sum of all class fractions over one common denominator (elementwise max of
// the factor multiplicities, extended as classes are merged in).
RawSeries sum_raw(const ClassMap& classes);

CycloSeries cyclotomic_reduce(const RawSeries& raw);

// d-factor presentation; absent when the numerator degree would exceed the cap.
std::optional<StdSeries> standardize(const CycloSeries& cyc, int rank, long long numer_degree_cap);

// Power series coefficients H(0..kmax) of numer / prod (1 - t^g).
std::vector<mpz_class> expand_series(const Poly& numer, const std::vector<long long>& denom,
                                     long long kmax);

std::vector<mpz_class> series_coefficients(const RawSeries& raw, long long kmax);

// Hilbert quasipolynomial; absent when the period exceeds the cap. Verifies
// the reproduction of rank extra coefficients per residue class.
std::optional<Quasipolynomial> quasipolynomial(const CycloSeries& cyc, const RawSeries& raw,
                                               int rank, long long period_cap);

// Leading coefficient against the multiplicity: q_{d-1} == vol / (d-1)!.
bool multiplicity_check(const Quasipolynomial& q, const mpq_class& volume, int rank);

}  // namespace latcone
