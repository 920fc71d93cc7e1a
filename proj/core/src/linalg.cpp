#include "latcone/linalg.hpp"

#include <algorithm>
#include <utility>

namespace latcone {

template <class Z>
Z det(const Mat<Z>& m) {
  if (m.nr != m.nc) throw dimension_error("det: matrix not square");
  const int n = m.nr;
  if (n == 0) return Z(1);
  Mat<Z> w = m;
  Z prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (num<Z>::sign(w.at(i, k)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Z(0);
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(w.at(piv, j), w.at(k, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = num<Z>::fused(w.at(k, k), w.at(i, j), w.at(i, k), w.at(k, j), prev);
      w.at(i, k) = Z(0);
    }
    prev = w.at(k, k);
  }
  Z d = w.at(n - 1, n - 1);
  return sign < 0 ? -d : d;
}

namespace {

// Shared gcd-style row elimination producing a staircase form. Works on `w`
// (rows x cols); mirrors every row operation onto `x` when track is true.
template <class Z>
int staircase(Mat<Z>& w, Mat<Z>* x) {
  const int nr = w.nr, nc = w.nc;
  int r = 0;  // next pivot row
  for (int c = 0; c < nc && r < nr; ++c) {
    // Euclid on column c, rows >= r, until at most one nonzero remains.
    for (;;) {
      int best = -1;
      for (int i = r; i < nr; ++i) {
        if (num<Z>::sign(w.at(i, c)) == 0) continue;
        if (best < 0 || num<Z>::abs(w.at(i, c)) < num<Z>::abs(w.at(best, c))) best = i;
      }
      if (best < 0) break;  // column is zero below r
      if (best != r) {
        for (int j = 0; j < nc; ++j) std::swap(w.at(best, j), w.at(r, j));
        if (x)
          for (int j = 0; j < x->nc; ++j) std::swap(x->at(best, j), x->at(r, j));
      }
      bool done = true;
      const Z p = w.at(r, c);
      for (int i = r + 1; i < nr; ++i) {
        if (num<Z>::sign(w.at(i, c)) == 0) continue;
        Z q = w.at(i, c) / p;  // truncated division, gcd-style descent
        if (num<Z>::sign(q) != 0) {
          for (int j = 0; j < nc; ++j) w.at(i, j) -= q * w.at(r, j);
          if (x)
            for (int j = 0; j < x->nc; ++j) x->at(i, j) -= q * x->at(r, j);
        }
        if (num<Z>::sign(w.at(i, c)) != 0) done = false;
      }
      if (done) break;
    }
    if (num<Z>::sign(w.at(r, c)) != 0) {
      if (num<Z>::sign(w.at(r, c)) < 0) {
        for (int j = 0; j < nc; ++j) w.at(r, j) = -w.at(r, j);
        if (x)
          for (int j = 0; j < x->nc; ++j) x->at(r, j) = -x->at(r, j);
      }
      ++r;
    }
  }
  return r;
}

}  // namespace

template <class Z>
TrigResult<Z> trigonalize(const Mat<Z>& m) {
  if (m.nr != m.nc) throw dimension_error("trigonalize: matrix not square");
  TrigResult<Z> res;
  res.D = m;
  res.X = Mat<Z>::identity(m.nr);
  int r = staircase(res.D, &res.X);
  if (r < m.nr) throw singular_error("trigonalize: singular matrix");
  return res;
}

template <class Z>
Vec<Z> trigonal_diagonal(const Mat<Z>& m) {
  if (m.nr != m.nc) throw dimension_error("trigonal_diagonal: matrix not square");
  Mat<Z> w = m;
  int r = staircase<Z>(w, nullptr);
  if (r < m.nr) throw singular_error("trigonal_diagonal: singular matrix");
  Vec<Z> diag(m.nr);
  for (int i = 0; i < m.nr; ++i) diag[i] = w.at(i, i);
  return diag;
}

template <class Z>
SolveResult<Z> solve_multi_rhs(const Mat<Z>& a, const Mat<Z>& b) {
  if (a.nr != a.nc) throw dimension_error("solve: matrix not square");
  if (b.nr != a.nr) throw dimension_error("solve: row count mismatch");
  const int n = a.nr, m = b.nc, w = n + m;
  Mat<Z> t(n, w);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t.at(i, j) = a.at(i, j);
    for (int j = 0; j < m; ++j) t.at(i, n + j) = b.at(i, j);
  }
  // Fraction-free Gauss-Jordan: after step k every row i != k is updated, so
  // the final left block is det(A) * I and the right block det(A) * A^-1 * B.
  Z prev(1);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (num<Z>::sign(t.at(i, k)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw singular_error("solve: singular matrix");
    if (piv != k)
      for (int j = 0; j < w; ++j) std::swap(t.at(piv, j), t.at(k, j));
    const Z pk = t.at(k, k);
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const Z lik = t.at(i, k);
      for (int j = k + 1; j < w; ++j)
        t.at(i, j) = num<Z>::fused(pk, t.at(i, j), lik, t.at(k, j), prev);
      // Columns < k of row i are zero except the diagonal, whose update
      // degenerates to a rescale (row k is zero there).
      if (i < k) t.at(i, i) = num<Z>::exact_div(pk * t.at(i, i), prev);
      t.at(i, k) = Z(0);
    }
    prev = pk;
  }
  SolveResult<Z> res;
  Z d = t.at(n - 1, n - 1);  // equals det(A) up to the row-swap sign
  res.sol = Mat<Z>(n, m);
  bool flip = (num<Z>::sign(d) < 0);
  res.denom = flip ? -d : d;
  for (int i = 0; i < n; ++i) {
    // row i of the left block holds t.at(i,i) = d on the diagonal; scale row
    // so every solution row shares the common denominator |d|.
    Z scale = num<Z>::exact_div(d, t.at(i, i));
    for (int j = 0; j < m; ++j) {
      Z v = scale * t.at(i, n + j);
      res.sol.at(i, j) = flip ? -v : v;
    }
  }
  return res;
}

template <class Z>
SolveResult<Z> invert(const Mat<Z>& m) {
  return solve_multi_rhs(m, Mat<Z>::identity(m.nr));
}

template <class Z>
void primitivize_inplace(Vec<Z>& v) {
  Z g(0);
  for (const Z& x : v) g = num<Z>::gcd(g, x);
  if (num<Z>::sign(g) == 0) throw zero_vector_error("primitivize: zero vector");
  if (g == Z(1)) return;
  for (Z& x : v) x = num<Z>::exact_div(x, g);
}

template <class Z>
Vec<Z> primitivize(const Vec<Z>& v) {
  Vec<Z> r = v;
  primitivize_inplace(r);
  return r;
}

template <class Z>
int rank(const Mat<Z>& m) {
  Mat<Z> w = m;
  return staircase<Z>(w, nullptr);
}

template <class Z>
int rank_of_subset(const std::vector<Vec<Z>>& rows, const std::vector<int>& idx) {
  if (idx.empty()) return 0;
  Mat<Z> w((int)idx.size(), (int)rows[idx[0]].size());
  for (int i = 0; i < w.nr; ++i) w.set_row(i, rows[idx[i]]);
  return staircase<Z>(w, nullptr);
}

template <class Z>
bool RankAccum<Z>::add(const Vec<Z>& v) {
  Vec<Z> w = v;
  for (size_t r = 0; r < ech.size(); ++r) {
    const int c = pivcol[r];
    if (num<Z>::sign(w[c]) == 0) continue;
    const Z p = ech[r][c];
    const Z g = num<Z>::gcd(p, w[c]);
    const Z fp = num<Z>::exact_div(p, g);
    const Z fw = num<Z>::exact_div(w[c], g);
    for (size_t j = 0; j < w.size(); ++j) w[j] = fp * w[j] - fw * ech[r][j];
  }
  int piv = -1;
  for (size_t j = 0; j < w.size(); ++j)
    if (num<Z>::sign(w[j]) != 0) {
      piv = (int)j;
      break;
    }
  if (piv < 0) return false;
  primitivize_inplace(w);
  // keep rows sorted by pivot column so elimination stays triangular
  size_t pos = 0;
  while (pos < ech.size() && pivcol[pos] < piv) ++pos;
  ech.insert(ech.begin() + pos, std::move(w));
  pivcol.insert(pivcol.begin() + pos, piv);
  return true;
}

template <class Z>
EchelonResult<Z> echelon_transform(const Mat<Z>& m) {
  EchelonResult<Z> res;
  res.E = m;
  res.U = Mat<Z>::identity(m.nr);
  res.rank = staircase(res.E, &res.U);
  return res;
}

template <class Z>
Mat<Z> lattice_basis_of_span(const Mat<Z>& gens) {
  const int d = gens.nc;
  // Kernel of the generator matrix: rows of U beyond the rank of gens^tr.
  EchelonResult<Z> e1 = echelon_transform(gens.transposed());
  const int r = e1.rank;
  if (r == d) return Mat<Z>::identity(d);
  Mat<Z> kernel(d - r, d);
  for (int i = 0; i < d - r; ++i)
    for (int j = 0; j < d; ++j) kernel.at(i, j) = e1.U.at(r + i, j);
  // The saturation is the integer kernel of `kernel`, again via a transform.
  EchelonResult<Z> e2 = echelon_transform(kernel.transposed());
  if (e2.rank != d - r) throw internal_error("lattice_basis_of_span: rank drop");
  Mat<Z> w(r, d);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < d; ++j) w.at(i, j) = e2.U.at(d - r + i, j);
  return w;
}

template <class Z>
Mat<Z> express_in_basis(const Mat<Z>& w, const Mat<Z>& points) {
  const int r = w.nr, d = w.nc, n = points.nr;
  // Greedily pick r independent columns of w.
  std::vector<int> cols;
  {
    std::vector<Vec<Z>> rows;
    std::vector<int> idx;
    Mat<Z> wt = w.transposed();  // d rows of length r
    for (int c = 0; c < d && (int)cols.size() < r; ++c) {
      rows.push_back(wt.row_vec(c));
      idx.push_back((int)rows.size() - 1);
      if (rank_of_subset(rows, idx) == (int)rows.size()) {
        cols.push_back(c);
      } else {
        rows.pop_back();
        idx.pop_back();
      }
    }
    if ((int)cols.size() != r) throw internal_error("express_in_basis: basis not independent");
  }
  Mat<Z> a(r, r), b(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) a.at(i, j) = w.at(j, cols[i]);
  for (int i = 0; i < r; ++i)
    for (int p = 0; p < n; ++p) b.at(i, p) = points.at(p, cols[i]);
  SolveResult<Z> s = solve_multi_rhs(a, b);
  Mat<Z> coords(n, r);
  for (int p = 0; p < n; ++p)
    for (int j = 0; j < r; ++j) coords.at(p, j) = num<Z>::exact_div(s.sol.at(j, p), s.denom);
  // Verify on all coordinates, not only the chosen columns.
  for (int p = 0; p < n; ++p)
    for (int c = 0; c < d; ++c) {
      Z acc(0);
      for (int j = 0; j < r; ++j) acc += coords.at(p, j) * w.at(j, c);
      if (!(acc == points.at(p, c)))
        throw internal_error("express_in_basis: point outside lattice");
    }
  return coords;
}

#define LATCONE_INSTANTIATE(Z)                                                        \
  template Z det<Z>(const Mat<Z>&);                                                  \
  template TrigResult<Z> trigonalize<Z>(const Mat<Z>&);                              \
  template Vec<Z> trigonal_diagonal<Z>(const Mat<Z>&);                               \
  template SolveResult<Z> solve_multi_rhs<Z>(const Mat<Z>&, const Mat<Z>&);          \
  template SolveResult<Z> invert<Z>(const Mat<Z>&);                                  \
  template void primitivize_inplace<Z>(Vec<Z>&);                                     \
  template Vec<Z> primitivize<Z>(const Vec<Z>&);                                     \
  template int rank<Z>(const Mat<Z>&);                                               \
  template int rank_of_subset<Z>(const std::vector<Vec<Z>>&, const std::vector<int>&); \
  template struct RankAccum<Z>;                                                      \
  template EchelonResult<Z> echelon_transform<Z>(const Mat<Z>&);                     \
  template Mat<Z> lattice_basis_of_span<Z>(const Mat<Z>&);                           \
  template Mat<Z> express_in_basis<Z>(const Mat<Z>&, const Mat<Z>&);

LATCONE_INSTANTIATE(CheckedInt)
LATCONE_INSTANTIATE(mpz_class)

#undef LATCONE_INSTANTIATE

}  // namespace latcone
