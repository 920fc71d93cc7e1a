#include "latcone/hilbert_basis.hpp"

#include <omp.h>

#include <algorithm>

namespace latcone {

template <class Z>
void CandidatePool<Z>::build(std::vector<Vec<Z>>&& candidates, bool parallel) {
  std::sort(candidates.begin(), candidates.end(), vec_lex_less<Z>);
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::erase_if(candidates, [](const Vec<Z>& v) { return is_zero_vec(v); });

  entries.resize(candidates.size());
  const long long n = (long long)candidates.size();
#pragma omp parallel for schedule(static) if (parallel && !omp_in_parallel() && n > 64)
  for (long long i = 0; i < n; ++i) {
    Entry& e = entries[i];
    e.vec = std::move(candidates[i]);
    e.sup.resize(forms.size());
    Z total(0);
    for (size_t f = 0; f < forms.size(); ++f) {
      e.sup[f] = dot(forms[f], e.vec);
      total += e.sup[f];
    }
    e.deg = grading_form ? dot(*grading_form, e.vec) : total;
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.deg < b.deg) return true;
    if (b.deg < a.deg) return false;
    return vec_lex_less(a.vec, b.vec);
  });
}

namespace {

template <class Z>
bool dominates(const Vec<Z>& small, const Vec<Z>& big) {
  for (size_t i = 0; i < small.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

}  // namespace

template <class Z>
bool is_reducible(const Vec<Z>& x, const CandidatePool<Z>& pool) {
  Vec<Z> sup(pool.forms.size());
  Z total(0);
  for (size_t f = 0; f < pool.forms.size(); ++f) {
    sup[f] = dot(pool.forms[f], x);
    total += sup[f];
  }
  Z deg = pool.grading_form ? dot(*pool.grading_form, x) : total;
  for (const auto& e : pool.entries) {
    if (e.deg > deg) break;  // entries sorted by degree
    if (e.vec == x) continue;
    if (dominates(e.sup, sup)) return true;
  }
  return false;
}

template <class Z>
std::vector<Vec<Z>> global_reduce(CandidatePool<Z>& pool, bool parallel) {
  std::vector<Vec<Z>> basis;
  std::vector<const typename CandidatePool<Z>::Entry*> irreducible;
  size_t i = 0;
  const size_t n = pool.entries.size();
  while (i < n) {
    size_t j = i;
    while (j < n && pool.entries[j].deg == pool.entries[i].deg) ++j;
    // Degree buckets are antichains: a reducer is strictly smaller in degree,
    // so the whole bucket tests against the frozen irreducible list.
    std::vector<char> keep(j - i, 1);
    const long long bn = (long long)(j - i);
#pragma omp parallel for schedule(dynamic, 8) if (parallel && !omp_in_parallel() && bn > 16)
    for (long long t = 0; t < bn; ++t) {
      const auto& cand = pool.entries[i + t];
      for (const auto* irr : irreducible) {
        if (dominates(irr->sup, cand.sup)) {
          keep[t] = 0;
          break;
        }
      }
    }
    for (size_t t = i; t < j; ++t)
      if (keep[t - i]) irreducible.push_back(&pool.entries[t]);
    i = j;
  }
  basis.reserve(irreducible.size());
  for (const auto* e : irreducible) basis.push_back(e->vec);
  return basis;
}

#define LATCONE_INSTANTIATE(Z)                                              \
  template struct CandidatePool<Z>;                                         \
  template bool is_reducible<Z>(const Vec<Z>&, const CandidatePool<Z>&);    \
  template std::vector<Vec<Z>> global_reduce<Z>(CandidatePool<Z>&, bool);

LATCONE_INSTANTIATE(CheckedInt)
LATCONE_INSTANTIATE(mpz_class)

#undef LATCONE_INSTANTIATE

}  // namespace latcone
