#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "latcone/linalg.hpp"

namespace oracle {

Z det_minors(const ZMat& m) {
  const int n = m.nr;
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  Z acc = 0;
  for (int c = 0; c < n; ++c) {
    if (m.at(0, c) == 0) continue;
    ZMat sub(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int j = 0; j < n; ++j) {
        if (j == c) continue;
        sub.at(i - 1, cc++) = m.at(i, j);
      }
    }
    Z term = m.at(0, c) * det_minors(sub);
    if (c % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

namespace {

// Primitive normal of the span of rows (rank must be dim-1): solve for the
// one-dimensional kernel with rational elimination on mpq.
bool hyperplane_normal(const std::vector<ZVec>& rows, int dim, ZVec& normal) {
  std::vector<std::vector<mpq_class>> m;
  for (const ZVec& r : rows) {
    std::vector<mpq_class> q(dim);
    for (int j = 0; j < dim; ++j) q[j] = mpq_class(r[j]);
    m.push_back(std::move(q));
  }
  // row-reduce
  std::vector<int> pivot_cols;
  int prow = 0;
  for (int c = 0; c < dim && prow < (int)m.size(); ++c) {
    int piv = -1;
    for (int i = prow; i < (int)m.size(); ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[prow]);
    for (int i = 0; i < (int)m.size(); ++i) {
      if (i == prow || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[prow][c];
      for (int j = 0; j < dim; ++j) m[i][j] -= f * m[prow][j];
    }
    pivot_cols.push_back(c);
    ++prow;
  }
  if (prow != dim - 1) return false;
  // free column = the one not among pivots
  std::vector<char> used(dim, 0);
  for (int c : pivot_cols) used[c] = 1;
  int free_col = -1;
  for (int c = 0; c < dim; ++c)
    if (!used[c]) {
      free_col = c;
      break;
    }
  std::vector<mpq_class> sol(dim, mpq_class(0));
  sol[free_col] = 1;
  for (int r = 0; r < prow; ++r) {
    // pivot at column pivot_cols[r]
    sol[pivot_cols[r]] = -m[r][free_col] / m[r][pivot_cols[r]];
  }
  // scale to integers
  mpz_class lcm = 1;
  for (int j = 0; j < dim; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), sol[j].get_den().get_mpz_t());
  normal.assign(dim, Z(0));
  for (int j = 0; j < dim; ++j) {
    mpq_class v = sol[j] * mpq_class(lcm);
    normal[j] = v.get_num();
  }
  Z g = 0;
  for (const Z& x : normal) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return false;
  for (Z& x : normal) x /= g;
  return true;
}

Z dotz(const ZVec& a, const ZVec& b) {
  Z s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<ZVec> brute_facets(const std::vector<ZVec>& gens, int dim) {
  std::set<ZVec> out;
  const int n = (int)gens.size();
  std::vector<int> idx(dim - 1);
  std::function<void(int, int)> rec = [&](int start, int got) {
    if (got == dim - 1) {
      std::vector<ZVec> rows;
      for (int i = 0; i < dim - 1; ++i) rows.push_back(gens[idx[i]]);
      ZVec normal;
      if (!hyperplane_normal(rows, dim, normal)) return;
      int pos = 0, neg = 0;
      for (const ZVec& g : gens) {
        int s = sgn(dotz(normal, g));
        if (s > 0) ++pos;
        if (s < 0) ++neg;
      }
      if (pos && neg) return;  // not supporting
      if (neg)
        for (Z& x : normal) x = -x;
      // contact set must span the hyperplane: rank dim-1
      std::vector<ZVec> contact;
      for (const ZVec& g : gens)
        if (dotz(normal, g) == 0) contact.push_back(g);
      latcone::Mat<Z> cm = latcone::Mat<Z>::from_rows(contact);
      if (contact.empty() || latcone::rank(cm) != dim - 1) return;
      out.insert(normal);
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[got] = i;
      rec(i + 1, got + 1);
    }
  };
  if (dim == 1) {
    // facets of a 1-d pointed cone: the single form
    bool pos = false, neg = false;
    for (const ZVec& g : gens) {
      if (g[0] > 0) pos = true;
      if (g[0] < 0) neg = true;
    }
    if (pos && !neg) out.insert(ZVec{Z(1)});
    if (neg && !pos) out.insert(ZVec{Z(-1)});
  } else {
    rec(0, 0);
  }
  return std::vector<ZVec>(out.begin(), out.end());
}

std::vector<std::vector<int>> brute_triangulation(const std::vector<ZVec>& gens, int dim) {
  std::vector<std::vector<int>> tri;
  std::vector<int> have;  // processed generator indices
  // first dim independent generators, by index
  latcone::RankAccum<Z> acc;
  std::vector<int> rest;
  for (int i = 0; i < (int)gens.size(); ++i) {
    if ((int)have.size() < dim && acc.add(gens[i]))
      have.push_back(i);
    else
      rest.push_back(i);
  }
  if ((int)have.size() != dim) throw std::runtime_error("brute_triangulation: not full rank");
  tri.push_back(have);
  std::sort(tri[0].begin(), tri[0].end());
  std::vector<int> order = have;
  order.insert(order.end(), rest.begin(), rest.end());
  for (size_t step = dim; step < order.size(); ++step) {
    int xi = order[step];
    std::vector<ZVec> prefix;
    for (size_t t = 0; t < step; ++t) prefix.push_back(gens[order[t]]);
    std::vector<ZVec> facets = brute_facets(prefix, dim);
    std::vector<std::vector<int>> fresh;
    for (const ZVec& f : facets) {
      if (sgn(dotz(f, gens[xi])) >= 0) continue;  // not visible
      for (const std::vector<int>& simplex : tri) {
        std::vector<int> on;
        for (int s : simplex)
          if (dotz(f, gens[s]) == 0) on.push_back(s);
        if ((int)on.size() != dim - 1) continue;
        on.push_back(xi);
        std::sort(on.begin(), on.end());
        fresh.push_back(on);
      }
    }
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    for (auto& s : fresh) tri.push_back(std::move(s));
  }
  std::sort(tri.begin(), tri.end());
  return tri;
}

Z brute_det_sum(const std::vector<ZVec>& gens, int dim) {
  Z sum = 0;
  for (const std::vector<int>& s : brute_triangulation(gens, dim)) {
    ZMat m(dim, dim);
    for (int i = 0; i < dim; ++i) m.set_row(i, gens[s[i]]);
    Z d = det_minors(m);
    sum += d < 0 ? Z(-d) : d;
  }
  return sum;
}

std::vector<ZVec> brute_parallelotope(const ZMat& g) {
  const int d = g.nr;
  // bounding box of the parallelotope corners
  ZVec lo(d, Z(0)), hi(d, Z(0));
  for (int mask = 0; mask < (1 << d); ++mask) {
    ZVec corner(d, Z(0));
    for (int i = 0; i < d; ++i)
      if (mask & (1 << i))
        for (int j = 0; j < d; ++j) corner[j] += g.at(i, j);
    for (int j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], corner[j]);
      hi[j] = std::max(hi[j], corner[j]);
    }
  }
  latcone::SolveResult<Z> inv = latcone::invert(g.transposed());
  std::vector<ZVec> out;
  ZVec x(d);
  std::function<void(int)> walk = [&](int coord) {
    if (coord == d) {
      // coordinates of x w.r.t. rows of g: x * g^-1 = (g^tr)^-1 x
      bool inside = true;
      for (int i = 0; i < d && inside; ++i) {
        Z q = 0;
        for (int j = 0; j < d; ++j) q += inv.sol.at(i, j) * x[j];
        if (inv.denom > 0 ? (q < 0 || q >= inv.denom) : (q > 0 || q <= inv.denom)) inside = false;
      }
      if (inside) out.push_back(x);
      return;
    }
    for (Z v = lo[coord]; v <= hi[coord]; ++v) {
      x[coord] = v;
      walk(coord + 1);
    }
  };
  walk(0);
  return out;
}

std::vector<ZVec> lattice_points_of_degree(const std::vector<ZVec>& facets, const ZVec& grading,
                                           int dim, long long k) {
  // grading is the all-ones form here; enumerate compositions of k
  std::vector<ZVec> out;
  ZVec x(dim, Z(0));
  std::function<void(int, long long)> walk = [&](int coord, long long rest) {
    if (coord == dim - 1) {
      x[coord] = mpz_class((long)rest);
      for (const ZVec& f : facets)
        if (dotz(f, x) < 0) return;
      out.push_back(x);
      return;
    }
    for (long long v = 0; v <= rest; ++v) {
      x[coord] = mpz_class((long)v);
      walk(coord + 1, rest - v);
    }
  };
  (void)grading;
  if (dim == 0) return out;
  walk(0, k);
  return out;
}

long long count_points_of_degree(const std::vector<ZVec>& facets, const ZVec& grading, int dim,
                                 long long k) {
  return (long long)lattice_points_of_degree(facets, grading, dim, k).size();
}

std::vector<ZVec> naive_hilbert_basis(const std::vector<ZVec>& gens, int dim) {
  std::vector<ZVec> facets = brute_facets(gens, dim);
  // degree bound: max generator-degree sum over the reference triangulation
  long long bound = 0;
  for (const std::vector<int>& s : brute_triangulation(gens, dim)) {
    Z acc = 0;
    for (int i : s)
      for (const Z& c : gens[i]) acc += c;
    bound = std::max(bound, (long long)acc.get_si());
  }
  ZVec ones(dim, Z(1));
  std::vector<ZVec> basis;
  for (long long k = 1; k <= bound; ++k) {
    for (const ZVec& x : lattice_points_of_degree(facets, ones, dim, k)) {
      bool reducible = false;
      for (const ZVec& b : basis) {
        ZVec rest(dim);
        for (int j = 0; j < dim; ++j) rest[j] = x[j] - b[j];
        bool in_cone = true;
        for (const ZVec& f : facets)
          if (dotz(f, rest) < 0) {
            in_cone = false;
            break;
          }
        if (in_cone) {
          reducible = true;
          break;
        }
      }
      if (!reducible) basis.push_back(x);
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

bool monoid_member(const ZVec& x, const std::vector<ZVec>& basis,
                   const std::vector<ZVec>& facets) {
  std::map<ZVec, bool> memo;
  std::function<bool(const ZVec&)> rec = [&](const ZVec& v) -> bool {
    if (latcone::is_zero_vec(v)) return true;
    for (const ZVec& f : facets)
      if (dotz(f, v) < 0) return false;
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    bool ok = false;
    for (const ZVec& b : basis) {
      ZVec rest(v.size());
      for (size_t j = 0; j < v.size(); ++j) rest[j] = v[j] - b[j];
      if (rec(rest)) {
        ok = true;
        break;
      }
    }
    memo[v] = ok;
    return ok;
  };
  return rec(x);
}

std::vector<ZVec> random_cone(std::mt19937& rng, int dim, int ngens, int hi) {
  for (;;) {
    std::uniform_int_distribution<int> entry(0, hi);
    std::set<ZVec> seen;
    std::vector<ZVec> gens;
    int attempts = 0;
    while ((int)gens.size() < ngens && attempts++ < 1000) {
      ZVec v(dim);
      bool zero = true;
      for (int j = 0; j < dim; ++j) {
        v[j] = entry(rng);
        if (v[j] != 0) zero = false;
      }
      if (zero || !seen.insert(v).second) continue;
      gens.push_back(std::move(v));
    }
    if ((int)gens.size() == ngens &&
        latcone::rank(latcone::Mat<Z>::from_rows(gens)) == dim)
      return gens;
  }
}

}  // namespace oracle
