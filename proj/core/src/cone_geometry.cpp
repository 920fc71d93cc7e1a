#include "latcone/cone_geometry.hpp"

#include <omp.h>

#include <algorithm>

namespace latcone {

template <class Z>
std::vector<Vec<Z>> initial_simplex_hyperplanes(const Mat<Z>& g) {
  SolveResult<Z> inv = invert(g);  // throws singular_error on dependent rows
  std::vector<Vec<Z>> forms((size_t)g.nr);
  for (int i = 0; i < g.nr; ++i) {
    Vec<Z> col(g.nr);
    for (int k = 0; k < g.nr; ++k) col[k] = inv.sol.at(k, i);
    primitivize_inplace(col);
    forms[i] = std::move(col);
  }
  return forms;
}

template <class Z>
Partition<Z> partition(const std::vector<Vec<Z>>& forms, const Vec<Z>& x) {
  Partition<Z> p;
  for (int i = 0; i < (int)forms.size(); ++i) {
    int s = num<Z>::sign(dot(forms[i], x));
    (s < 0 ? p.neg : s > 0 ? p.pos : p.zero).push_back(i);
  }
  return p;
}

template <class Z>
void SupportBuilder<Z>::init_simplex() {
  Mat<Z> g(dim, dim);
  for (int i = 0; i < dim; ++i) g.set_row(i, gen(i));
  std::vector<Vec<Z>> forms = initial_simplex_hyperplanes(g);
  facets.clear();
  facets.reserve(forms.size());
  const int nbits = (int)key.size();
  for (int i = 0; i < dim; ++i) {
    Facet<Z> f;
    f.coeffs = std::move(forms[i]);
    f.zeros = DynBits(nbits);
    for (int k = 0; k < dim; ++k)
      if (k != i) f.zeros.set(k);
    f.val = Z(0);
    facets.push_back(std::move(f));
  }
  processed = dim;
  if (track_known) {
    known.clear();
    for (const Facet<Z>& f : facets) known.insert(f.coeffs);
  }
}

template <class Z>
bool SupportBuilder<Z>::partition_values(int i) {
  const Vec<Z>& x = gen(i);
  const int nf = (int)facets.size();
  if (parallel_ok && !omp_in_parallel() && nf > 256) {
#pragma omp parallel for schedule(static)
    for (int f = 0; f < nf; ++f) facets[f].val = dot(facets[f].coeffs, x);
  } else {
    for (int f = 0; f < nf; ++f) facets[f].val = dot(facets[f].coeffs, x);
  }
  neg.clear();
  zero.clear();
  pos.clear();
  for (int f = 0; f < nf; ++f) {
    int s = num<Z>::sign(facets[f].val);
    (s < 0 ? neg : s > 0 ? pos : zero).push_back(f);
  }
  return neg.empty();
}

template <class Z>
void SupportBuilder<Z>::mark_inside(int i) {
  for (int f : zero) facets[f].zeros.set(i);
  processed = i + 1;
}

template <class Z>
bool SupportBuilder<Z>::ridge_is_facet(const Facet<Z>& fn, const Facet<Z>& fp) const {
  if (dim == 2) return true;  // the apex alone is the ridge
  int common = and_count(fn.zeros, fp.zeros);
  if (common < dim - 2) return false;
  // Exact test. Either scan the list for a third facet containing the common
  // zero set, or check that the common generators have rank d-2; both are
  // exact for an irredundant facet list, so pick the cheaper one.
  const size_t words = fn.zeros.w.size();
  const size_t subset_cost = facets.size() * words;
  const size_t rank_cost = (size_t)dim * dim * (dim - 2) / 2 + 1;
  if (subset_cost <= rank_cost) {
    for (const Facet<Z>& h : facets) {
      if (&h == &fn || &h == &fp) continue;
      if (and_subset(fn.zeros, fp.zeros, h.zeros)) return false;
    }
    return true;
  }
  DynBits common_bits = and_of(fn.zeros, fp.zeros);
  Mat<Z> rows(common, dim);
  int r = 0;
  common_bits.for_each([&](int p) { rows.set_row(r++, gen(p)); });
  return rank(rows) == dim - 2;
}

template <class Z>
void SupportBuilder<Z>::commit_step(int i, std::vector<Facet<Z>>&& fresh) {
  std::vector<Facet<Z>> next;
  next.reserve(pos.size() + zero.size() + fresh.size());
  if (track_known)
    for (int f : neg) known.erase(facets[f].coeffs);
  for (int f : pos) next.push_back(std::move(facets[f]));
  for (int f : zero) {
    facets[f].zeros.set(i);
    next.push_back(std::move(facets[f]));
  }
  for (Facet<Z>& f : fresh) next.push_back(std::move(f));
  facets = std::move(next);
  processed = i + 1;
}

template <class Z>
void SupportBuilder<Z>::fm_step(int i) {
  const int nn = (int)neg.size(), np = (int)pos.size();
  std::vector<std::vector<Facet<Z>>> fresh_parts;
  bool par = parallel_ok && !omp_in_parallel() && (long long)nn * np > 512;
  int nthreads = par ? omp_get_max_threads() : 1;
  fresh_parts.resize(nthreads);

#pragma omp parallel for schedule(dynamic, 1) if (par)
  for (int a = 0; a < nn; ++a) {
    std::vector<Facet<Z>>& sink = fresh_parts[par ? omp_get_thread_num() : 0];
    const Facet<Z>& fn = facets[neg[a]];
    for (int b = 0; b < np; ++b) {
      const Facet<Z>& fp = facets[pos[b]];
      if (!ridge_is_facet(fn, fp)) continue;
      Facet<Z> nf;
      nf.coeffs.resize(dim);
      for (int j = 0; j < dim; ++j)
        nf.coeffs[j] = fp.val * fn.coeffs[j] - fn.val * fp.coeffs[j];
      primitivize_inplace(nf.coeffs);
      nf.zeros = and_of(fn.zeros, fp.zeros);
      nf.zeros.set(i);
      nf.val = Z(0);
      sink.push_back(std::move(nf));
    }
  }
  std::vector<Facet<Z>> fresh;
  for (auto& part : fresh_parts)
    for (Facet<Z>& f : part) {
      if (track_known) known.insert(f.coeffs);
      fresh.push_back(std::move(f));
    }
  commit_step(i, std::move(fresh));
}

template <class Z>
std::vector<Facet<Z>> SupportBuilder<Z>::filter_pyramid_hyperplanes(
    int i, const DynBits& members, const std::vector<Facet<Z>>& sub_facets) {
  std::vector<Facet<Z>> accepted;
  for (const Facet<Z>& sf : sub_facets) {
    if (known.count(sf.coeffs)) continue;
    Facet<Z> nf;
    nf.coeffs = sf.coeffs;
    nf.zeros = DynBits((int)key.size());
    bool ok = true;
    for (int j = 0; j < i && ok; ++j) {
      int s = num<Z>::sign(dot(nf.coeffs, gen(j)));
      if (s < 0) ok = false;
      else if (s == 0) {
        if (!members.test(j)) ok = false;
        else nf.zeros.set(j);
      }
    }
    if (!ok) continue;
    // A new facet of C_i passes through x_i.
    nf.zeros.set(i);
    nf.val = Z(0);
    known.insert(nf.coeffs);
    accepted.push_back(std::move(nf));
  }
  return accepted;
}

template <class Z>
std::vector<char> extreme_ray_flags(int npositions, const std::vector<Facet<Z>>& facets, int dim,
                                    bool parallel_ok) {
  std::vector<char> flags(npositions, 0);
  bool par = parallel_ok && !omp_in_parallel() && npositions > 32;
#pragma omp parallel for schedule(dynamic, 8) if (par)
  for (int p = 0; p < npositions; ++p) {
    RankAccum<Z> acc;
    for (const Facet<Z>& f : facets) {
      if (!f.zeros.test(p)) continue;
      acc.add(f.coeffs);
      if (acc.rank() >= dim - 1) break;
    }
    flags[p] = (acc.rank() == dim - 1) ? 1 : 0;
  }
  return flags;
}

template <class Z>
bool detect_pointed(const std::vector<Facet<Z>>& facets, int dim) {
  RankAccum<Z> acc;
  for (const Facet<Z>& f : facets) {
    acc.add(f.coeffs);
    if (acc.rank() == dim) return true;
  }
  return false;
}

template <class Z>
std::optional<Vec<Z>> implicit_grading(const std::vector<Vec<Z>>& rays, int dim) {
  if (rays.empty()) return std::nullopt;
  // Greedy independent subset of the rays (they span the space for pointed
  // full-dimensional cones).
  std::vector<Vec<Z>> chosen;
  RankAccum<Z> acc;
  for (const Vec<Z>& r : rays) {
    if (acc.add(r)) chosen.push_back(r);
    if ((int)chosen.size() == dim) break;
  }
  if ((int)chosen.size() != dim) return std::nullopt;
  Mat<Z> a = Mat<Z>::from_rows(chosen);
  Mat<Z> b(dim, 1);
  for (int i = 0; i < dim; ++i) b.at(i, 0) = Z(1);
  SolveResult<Z> s;
  try {
    s = solve_multi_rhs(a, b);
  } catch (const singular_error&) {
    return std::nullopt;
  }
  Vec<Z> form(dim);
  for (int j = 0; j < dim; ++j) form[j] = s.sol.at(j, 0);
  // All rays must take the same (positive) value denom.
  for (const Vec<Z>& r : rays)
    if (!(dot(form, r) == s.denom)) return std::nullopt;
  primitivize_inplace(form);
  return form;
}

#define LATCONE_INSTANTIATE(Z)                                                       \
  template struct VecHasher<Z>;                                                      \
  template std::vector<Vec<Z>> initial_simplex_hyperplanes<Z>(const Mat<Z>&);        \
  template Partition<Z> partition<Z>(const std::vector<Vec<Z>>&, const Vec<Z>&);     \
  template struct SupportBuilder<Z>;                                                 \
  template std::vector<char> extreme_ray_flags<Z>(int, const std::vector<Facet<Z>>&, \
                                                  int, bool);                        \
  template bool detect_pointed<Z>(const std::vector<Facet<Z>>&, int);                \
  template std::optional<Vec<Z>> implicit_grading<Z>(const std::vector<Vec<Z>>&, int);

LATCONE_INSTANTIATE(CheckedInt)
LATCONE_INSTANTIATE(mpz_class)

#undef LATCONE_INSTANTIATE

}  // namespace latcone
