#pragma once

#include <cassert>
#include <vector>

#include "latcone/integer.hpp"

namespace latcone {

template <class Z>
using Vec = std::vector<Z>;

// Dense row-major matrix; rows are generators, forms are coefficient vectors.
template <class Z>
struct Mat {
  int nr = 0, nc = 0;
  std::vector<Z> a;

  Mat() = default;
  Mat(int r, int c) : nr(r), nc(c), a((size_t)r * c, Z(0)) {}

  Z* row(int i) { return a.data() + (size_t)i * nc; }
  const Z* row(int i) const { return a.data() + (size_t)i * nc; }
  Z& at(int i, int j) { return a[(size_t)i * nc + j]; }
  const Z& at(int i, int j) const { return a[(size_t)i * nc + j]; }

  Vec<Z> row_vec(int i) const { return Vec<Z>(row(i), row(i) + nc); }
  void set_row(int i, const Vec<Z>& v) {
    assert((int)v.size() == nc);
    for (int j = 0; j < nc; ++j) at(i, j) = v[j];
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Z(1);
    return m;
  }

  static Mat from_rows(const std::vector<Vec<Z>>& rows) {
    Mat m((int)rows.size(), rows.empty() ? 0 : (int)rows[0].size());
    for (int i = 0; i < m.nr; ++i) m.set_row(i, rows[i]);
    return m;
  }

  Mat transposed() const {
    Mat t(nc, nr);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.nr == y.nr && x.nc == y.nc && x.a == y.a;
  }
};

template <class Z>
Z dot(const Vec<Z>& x, const Vec<Z>& y) {
  assert(x.size() == y.size());
  return num<Z>::dot(x.data(), y.data(), (int)x.size());
}

template <class Z>
Mat<Z> mat_mul(const Mat<Z>& x, const Mat<Z>& y) {
  assert(x.nc == y.nr);
  Mat<Z> r(x.nr, y.nc);
  for (int i = 0; i < x.nr; ++i)
    for (int k = 0; k < x.nc; ++k) {
      const Z& f = x.at(i, k);
      if (num<Z>::sign(f) == 0) continue;
      for (int j = 0; j < y.nc; ++j) r.at(i, j) += f * y.at(k, j);
    }
  return r;
}

template <class Z>
bool is_zero_vec(const Vec<Z>& v) {
  for (const Z& x : v)
    if (num<Z>::sign(x) != 0) return false;
  return true;
}

template <class Z>
size_t vec_hash(const Vec<Z>& v) {
  size_t h = 1469598103934665603ull;
  for (const Z& x : v) h = num<Z>::hash(x, h);
  return h;
}

// Lexicographic compare, used everywhere canonical ordering is needed.
template <class Z>
bool vec_lex_less(const Vec<Z>& x, const Vec<Z>& y) {
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] < y[i]) return true;
    if (y[i] < x[i]) return false;
  }
  return x.size() < y.size();
}

}  // namespace latcone
