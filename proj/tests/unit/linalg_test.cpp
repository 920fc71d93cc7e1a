#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "latcone/linalg.hpp"
#include "oracle.hpp"

using namespace latcone;

namespace {

template <class Z>
Mat<Z> rows(std::vector<std::vector<long long>> r) {
  Mat<Z> m((int)r.size(), r.empty() ? 0 : (int)r[0].size());
  for (int i = 0; i < m.nr; ++i)
    for (int j = 0; j < m.nc; ++j) m.at(i, j) = z_of<Z>(r[i][j]);
  return m;
}

template <class Z>
Mat<Z> random_square(std::mt19937& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> e(lo, hi);
  Mat<Z> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Z(e(rng));
  return m;
}

template <class Z>
mpz_class to_big(const Z& x) {
  return num<Z>::to_mpz(x);
}

}  // namespace

TEST_CASE_TEMPLATE("det: pinned examples", Z, CheckedInt, mpz_class) {
  CHECK(det(Mat<Z>::identity(3)) == Z(1));
  CHECK(det(rows<Z>({{2, 0}, {0, 3}})) == Z(6));
  CHECK(det(rows<Z>({{1, 0}, {1, 5}})) == Z(5));
  CHECK_THROWS_AS(det(rows<Z>({{1, 0, 0}, {0, 1, 0}})), dimension_error);
}

TEST_CASE_TEMPLATE("det agrees with expansion by minors", Z, CheckedInt, mpz_class) {
  std::mt19937 rng(7);
  for (int n = 1; n <= 5; ++n)
    for (int it = 0; it < 40; ++it) {
      Mat<Z> m = random_square<Z>(rng, n, -9, 9);
      oracle::ZMat big(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) big.at(i, j) = to_big(m.at(i, j));
      CHECK(to_big(det(m)) == oracle::det_minors(big));
    }
}

TEST_CASE_TEMPLATE("trigonalize: pinned examples", Z, CheckedInt, mpz_class) {
  auto tr = trigonalize(Mat<Z>::identity(2));
  CHECK(tr.D == Mat<Z>::identity(2));
  CHECK(tr.X == Mat<Z>::identity(2));

  auto tr2 = trigonalize(rows<Z>({{1, 0}, {1, 2}}));
  CHECK(tr2.D.at(0, 0) == Z(1));
  CHECK(tr2.D.at(1, 1) == Z(2));
  CHECK(tr2.D.at(1, 0) == Z(0));
  CHECK(mat_mul(tr2.X, rows<Z>({{1, 0}, {1, 2}})) == tr2.D);

  auto tr3 = trigonalize(rows<Z>({{0, 1}, {1, 0}}));
  CHECK(tr3.D == Mat<Z>::identity(2));
  CHECK(num<Z>::abs(det(tr3.X)) == Z(1));

  CHECK_THROWS_AS(trigonalize(rows<Z>({{1, 2}, {2, 4}})), singular_error);
}

TEST_CASE_TEMPLATE("trigonalize properties on random matrices", Z, CheckedInt, mpz_class) {
  std::mt19937 rng(11);
  int done = 0;
  while (done < 60) {
    int n = 1 + (int)(rng() % 5);
    Mat<Z> m = random_square<Z>(rng, n, -9, 9);
    Z dv = det(m);
    if (num<Z>::sign(dv) == 0) continue;
    ++done;
    auto tr = trigonalize(m);
    CHECK(mat_mul(tr.X, m) == tr.D);
    CHECK(num<Z>::abs(det(tr.X)) == Z(1));
    Z prod(1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) CHECK(num<Z>::sign(tr.D.at(i, j)) == 0);
      CHECK(tr.D.at(i, i) > Z(0));
      prod *= tr.D.at(i, i);
    }
    CHECK(prod == num<Z>::abs(dv));
  }
}

TEST_CASE_TEMPLATE("solve_multi_rhs: pinned examples", Z, CheckedInt, mpz_class) {
  auto s1 = solve_multi_rhs(Mat<Z>::identity(2), Mat<Z>::identity(2));
  CHECK(s1.sol == Mat<Z>::identity(2));
  CHECK(s1.denom == Z(1));

  auto s2 = solve_multi_rhs(rows<Z>({{2, 0}, {0, 3}}), rows<Z>({{1}, {1}}));
  CHECK(s2.denom == Z(6));
  CHECK(s2.sol.at(0, 0) == Z(3));
  CHECK(s2.sol.at(1, 0) == Z(2));

  // the transposed system G^tr x = e_2 of the worked pair (1,0),(1,2)
  auto s3 = solve_multi_rhs(rows<Z>({{1, 0}, {1, 2}}).transposed(), rows<Z>({{0}, {1}}));
  CHECK(s3.denom == Z(2));
  CHECK(s3.sol.at(0, 0) == Z(-1));
  CHECK(s3.sol.at(1, 0) == Z(1));

  CHECK_THROWS_AS(solve_multi_rhs(rows<Z>({{1, 2}, {2, 4}}), Mat<Z>::identity(2)),
                  singular_error);
}

TEST_CASE_TEMPLATE("invert: pinned examples", Z, CheckedInt, mpz_class) {
  auto i1 = invert(Mat<Z>::identity(4));
  CHECK(i1.sol == Mat<Z>::identity(4));
  CHECK(i1.denom == Z(1));

  auto i2 = invert(rows<Z>({{2, 0}, {0, 3}}));
  CHECK(i2.denom == Z(6));
  CHECK(i2.sol == rows<Z>({{3, 0}, {0, 2}}));

  auto i3 = invert(rows<Z>({{1, 0}, {1, 2}}));
  CHECK(i3.denom == Z(2));
  CHECK(i3.sol == rows<Z>({{2, 0}, {-1, 1}}));
}

TEST_CASE_TEMPLATE("solve properties: A*sol = denom*B", Z, CheckedInt, mpz_class) {
  std::mt19937 rng(13);
  int done = 0;
  while (done < 50) {
    int n = 1 + (int)(rng() % 8);
    Mat<Z> a = random_square<Z>(rng, n, -9, 9);
    if (num<Z>::sign(det(a)) == 0) continue;
    ++done;
    int m = 1 + (int)(rng() % 3);
    Mat<Z> b(n, m);
    std::uniform_int_distribution<int> e(-9, 9);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) b.at(i, j) = Z(e(rng));
    auto s = solve_multi_rhs(a, b);
    CHECK(s.denom > Z(0));
    CHECK(s.denom == num<Z>::abs(det(a)));
    Mat<Z> lhs = mat_mul(a, s.sol);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) CHECK(lhs.at(i, j) == s.denom * b.at(i, j));
  }
}

TEST_CASE_TEMPLATE("primitivize", Z, CheckedInt, mpz_class) {
  CHECK(primitivize(Vec<Z>{Z(2), Z(4), Z(6)}) == Vec<Z>{Z(1), Z(2), Z(3)});
  CHECK(primitivize(Vec<Z>{Z(1), Z(0), Z(0)}) == Vec<Z>{Z(1), Z(0), Z(0)});
  CHECK(primitivize(Vec<Z>{Z(-3), Z(-6)}) == Vec<Z>{Z(-1), Z(-2)});
  CHECK_THROWS_AS(primitivize(Vec<Z>{Z(0), Z(0)}), zero_vector_error);
}

TEST_CASE_TEMPLATE("rank", Z, CheckedInt, mpz_class) {
  CHECK(rank(Mat<Z>::identity(4)) == 4);
  CHECK(rank(rows<Z>({{1, 1}, {1, 1}})) == 1);
  CHECK(rank(rows<Z>({{1, 0}, {0, 1}, {1, 1}})) == 2);
  CHECK(rank(Mat<Z>(3, 3)) == 0);
}

TEST_CASE_TEMPLATE("rank accumulator matches batch rank", Z, CheckedInt, mpz_class) {
  std::mt19937 rng(17);
  for (int it = 0; it < 60; ++it) {
    int n = 1 + (int)(rng() % 6), d = 1 + (int)(rng() % 5);
    Mat<Z> m(n, d);
    std::uniform_int_distribution<int> e(-4, 4);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) m.at(i, j) = Z(e(rng));
    RankAccum<Z> acc;
    for (int i = 0; i < n; ++i) acc.add(m.row_vec(i));
    CHECK(acc.rank() == rank(m));
  }
}

TEST_CASE("lattice basis of span: saturation") {
  using Z = mpz_class;
  // span of (2,0,2),(0,4,4) contains (1,0,1) and (0,1,1) integrally
  Mat<Z> gens = rows<Z>({{2, 0, 2}, {0, 4, 4}});
  Mat<Z> w = lattice_basis_of_span(gens);
  CHECK(w.nr == 2);
  Mat<Z> coords = express_in_basis(w, gens);
  CHECK(coords.nr == 2);
  // the saturated lattice must contain (1,0,1): integral coordinates
  Mat<Z> probe(1, 3);
  probe.at(0, 0) = 1;
  probe.at(0, 2) = 1;
  Mat<Z> c2 = express_in_basis(w, probe);
  CHECK(c2.nr == 1);
}

TEST_CASE("overflow escalation: checked int64 throws, gmp succeeds") {
  Mat<CheckedInt> m(2, 2);
  m.at(0, 0) = CheckedInt(3037000500ll);
  m.at(0, 1) = CheckedInt(1);
  m.at(1, 0) = CheckedInt(-1);
  m.at(1, 1) = CheckedInt(3037000500ll);
  CHECK_THROWS_AS(det(m), overflow_error);
  Mat<mpz_class> mb(2, 2);
  mb.at(0, 0) = z_of<mpz_class>(3037000500ll);
  mb.at(0, 1) = 1;
  mb.at(1, 0) = -1;
  mb.at(1, 1) = z_of<mpz_class>(3037000500ll);
  CHECK(det(mb) == mpz_class("9223372037000250001"));
}
