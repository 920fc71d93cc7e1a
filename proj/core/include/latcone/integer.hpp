#pragma once

// Exact integer arithmetic substrate.  Two interchangeable scalar types drive
// the whole kernel: CheckedInt (64-bit with overflow detection, 128-bit
// intermediates in the hot fused ops) and mpz_class.  On overflow the caller
// restarts the computation on the GMP lane, so results are always exact.

#include <cstdint>
#include <climits>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace latcone {

struct overflow_error : std::runtime_error {
  overflow_error() : std::runtime_error("64-bit arithmetic overflow") {}
};

struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct CheckedInt {
  long long v = 0;

  CheckedInt() = default;
  CheckedInt(long long x) : v(x) {}
  CheckedInt(int x) : v(x) {}

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    long long r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw overflow_error();
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    long long r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw overflow_error();
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    long long r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw overflow_error();
    return r;
  }
  friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
    if (b.v == 0) throw internal_error("division by zero");
    if (a.v == LLONG_MIN && b.v == -1) throw overflow_error();
    return a.v / b.v;
  }
  friend CheckedInt operator%(CheckedInt a, CheckedInt b) {
    if (b.v == 0) throw internal_error("division by zero");
    if (a.v == LLONG_MIN && b.v == -1) throw overflow_error();
    return a.v % b.v;
  }
  CheckedInt operator-() const {
    if (v == LLONG_MIN) throw overflow_error();
    return -v;
  }
  CheckedInt& operator+=(CheckedInt b) { return *this = *this + b; }
  CheckedInt& operator-=(CheckedInt b) { return *this = *this - b; }
  CheckedInt& operator*=(CheckedInt b) { return *this = *this * b; }

  friend bool operator==(CheckedInt a, CheckedInt b) { return a.v == b.v; }
  friend bool operator!=(CheckedInt a, CheckedInt b) { return a.v != b.v; }
  friend bool operator<(CheckedInt a, CheckedInt b) { return a.v < b.v; }
  friend bool operator>(CheckedInt a, CheckedInt b) { return a.v > b.v; }
  friend bool operator<=(CheckedInt a, CheckedInt b) { return a.v <= b.v; }
  friend bool operator>=(CheckedInt a, CheckedInt b) { return a.v >= b.v; }
};

template <class Z>
struct num;

template <>
struct num<CheckedInt> {
  static constexpr bool is_machine = true;

  static int sign(CheckedInt a) { return a.v > 0 ? 1 : a.v < 0 ? -1 : 0; }
  static CheckedInt abs(CheckedInt a) {
    if (a.v == LLONG_MIN) throw overflow_error();
    return a.v < 0 ? -a.v : a.v;
  }
  static CheckedInt gcd(CheckedInt a, CheckedInt b) {
    unsigned long long x = a.v < 0 ? 0ull - (unsigned long long)a.v : (unsigned long long)a.v;
    unsigned long long y = b.v < 0 ? 0ull - (unsigned long long)b.v : (unsigned long long)b.v;
    unsigned long long g = std::gcd(x, y);
    if (g > (unsigned long long)LLONG_MAX) throw overflow_error();
    return (long long)g;
  }
  static CheckedInt exact_div(CheckedInt a, CheckedInt b) {
    if (b.v == 0) throw internal_error("exact_div by zero");
    if (a.v == LLONG_MIN && b.v == -1) throw overflow_error();
    if (a.v % b.v != 0) throw internal_error("exact_div: not divisible");
    return a.v / b.v;
  }
  // (a*b - c*d) / prev with the products held in 128 bits
  static CheckedInt fused(CheckedInt a, CheckedInt b, CheckedInt c, CheckedInt d, CheckedInt prev) {
    __int128 t = (__int128)a.v * b.v - (__int128)c.v * d.v;
    if (prev.v != 1) {
      if (t % prev.v != 0) throw internal_error("fused: not divisible");
      t /= prev.v;
    }
    if (t > LLONG_MAX || t < LLONG_MIN) throw overflow_error();
    return (long long)t;
  }
  static CheckedInt dot(const CheckedInt* x, const CheckedInt* y, int n) {
    __int128 acc = 0;
    for (int i = 0; i < n; ++i) acc += (__int128)x[i].v * y[i].v;
    if (acc > LLONG_MAX || acc < LLONG_MIN) throw overflow_error();
    return (long long)acc;
  }
  static std::string str(CheckedInt a) { return std::to_string(a.v); }
  static CheckedInt from_mpz(const mpz_class& m) {
    if (!m.fits_slong_p()) throw overflow_error();
    return (long long)m.get_si();
  }
  static mpz_class to_mpz(CheckedInt a) {
    static_assert(sizeof(long) == sizeof(long long), "LP64 expected");
    return mpz_class((long)a.v);
  }
  static size_t hash(CheckedInt a, size_t seed) {
    return seed * 1099511628211ull ^ (size_t)(unsigned long long)a.v;
  }
  static long long to_ll(CheckedInt a) { return a.v; }
};

template <>
struct num<mpz_class> {
  static constexpr bool is_machine = false;

  static int sign(const mpz_class& a) { return sgn(a); }
  static mpz_class abs(const mpz_class& a) { return ::abs(a); }
  static mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }
  static mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }
  static mpz_class fused(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                         const mpz_class& d, const mpz_class& prev) {
    mpz_class t = a * b;
    mpz_submul(t.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    if (prev != 1) mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
    return t;
  }
  static mpz_class dot(const mpz_class* x, const mpz_class* y, int n) {
    mpz_class acc = 0;
    for (int i = 0; i < n; ++i) mpz_addmul(acc.get_mpz_t(), x[i].get_mpz_t(), y[i].get_mpz_t());
    return acc;
  }
  static std::string str(const mpz_class& a) { return a.get_str(); }
  static mpz_class from_mpz(const mpz_class& m) { return m; }
  static const mpz_class& to_mpz(const mpz_class& a) { return a; }
  static size_t hash(const mpz_class& a, size_t seed) {
    const mpz_srcptr p = a.get_mpz_t();
    size_t h = seed * 1099511628211ull ^ (size_t)(long)p->_mp_size;
    int n = std::abs(p->_mp_size);
    for (int i = 0; i < n; ++i) h = h * 1099511628211ull ^ (size_t)p->_mp_d[i];
    return h;
  }
  static long long to_ll(const mpz_class& a) {
    if (!a.fits_slong_p()) throw overflow_error();
    return a.get_si();
  }
};

inline std::string num_str(CheckedInt a) { return num<CheckedInt>::str(a); }
inline std::string num_str(const mpz_class& a) { return num<mpz_class>::str(a); }

template <class Z>
inline Z z_of(long long v);
template <>
inline CheckedInt z_of<CheckedInt>(long long v) {
  return CheckedInt(v);
}
template <>
inline mpz_class z_of<mpz_class>(long long v) {
  static_assert(sizeof(long) == sizeof(long long), "LP64 expected");
  return mpz_class((long)v);
}

}  // namespace latcone
