#pragma once

// Arbitrary-precision integer linear algebra: exact determinants, unimodular
// trigonalization, multi-RHS rational solving, primitivization and lattice
// (saturation) utilities.  All routines are pure and reentrant.

#include <stdexcept>

#include "latcone/vecmat.hpp"

namespace latcone {

struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct singular_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct zero_vector_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <class Z>
struct TrigResult {
  Mat<Z> X;  // unimodular, X*M = D
  Mat<Z> D;  // upper triangular, positive diagonal
};

template <class Z>
struct SolveResult {
  Mat<Z> sol;  // integral numerators
  Z denom;     // positive; A*sol == denom*B
};

template <class Z>
struct EchelonResult {
  Mat<Z> U;  // unimodular, U*M = E
  Mat<Z> E;  // row staircase, first `rank` rows nonzero
  int rank = 0;
};

// Exact determinant (fraction-free Bareiss).
template <class Z>
Z det(const Mat<Z>& m);

// X*M = D with |det X| = 1, D upper triangular, diagonal a_i >= 1.
template <class Z>
TrigResult<Z> trigonalize(const Mat<Z>& m);

// Diagonal of a unimodular trigonalization only (no transform kept).
template <class Z>
Vec<Z> trigonal_diagonal(const Mat<Z>& m);

// A*sol == denom*B, denom = |det A| (fraction-free Gauss-Jordan).
template <class Z>
SolveResult<Z> solve_multi_rhs(const Mat<Z>& a, const Mat<Z>& b);

template <class Z>
SolveResult<Z> invert(const Mat<Z>& m);

// v / gcd(entries); direction preserved; throws zero_vector_error on 0.
template <class Z>
Vec<Z> primitivize(const Vec<Z>& v);

template <class Z>
void primitivize_inplace(Vec<Z>& v);

// Rank over the rationals.
template <class Z>
int rank(const Mat<Z>& m);

// Rank of a row subset given by indices into `rows`.
template <class Z>
int rank_of_subset(const std::vector<Vec<Z>>& rows, const std::vector<int>& idx);

template <class Z>
EchelonResult<Z> echelon_transform(const Mat<Z>& m);

// Incremental rank tracker: feed rows one by one, entries kept primitive so
// coefficient growth stays tame. Exact over the rationals.
template <class Z>
struct RankAccum {
  std::vector<Vec<Z>> ech;   // staircase rows
  std::vector<int> pivcol;   // pivot column per staircase row

  // Returns true iff v is independent of the rows seen so far (rank grew).
  bool add(const Vec<Z>& v);
  int rank() const { return (int)ech.size(); }
};

// Basis W (r x d) of span_Q(rows of gens) intersected with Z^d (saturated).
template <class Z>
Mat<Z> lattice_basis_of_span(const Mat<Z>& gens);

// Coordinates c with c*W = x for each row x of `points`; throws internal_error
// if some point is not in the lattice spanned by W.
template <class Z>
Mat<Z> express_in_basis(const Mat<Z>& w, const Mat<Z>& points);

}  // namespace latcone
