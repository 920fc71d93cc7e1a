#pragma once

// Global reduction of candidate vectors to the unique minimal Hilbert basis.
// Candidates carry their support-hyperplane value vectors; x is reducible by y
// iff y is dominated on every support form (equivalently x - y stays in the
// cone). Processing ascends by degree, so buckets are antichains.

#include "latcone/cone_geometry.hpp"

namespace latcone {

template <class Z>
struct CandidatePool {
  // support forms of the cone (primitive) and optional grading
  std::vector<Vec<Z>> forms;
  const Vec<Z>* grading_form = nullptr;  // degree = grading, else sum of support values

  struct Entry {
    Vec<Z> vec;
    Vec<Z> sup;  // cached support values
    Z deg;
  };
  std::vector<Entry> entries;  // deduplicated, sorted by (deg, lex)

  // Deduplicates, drops zero vectors, computes caches, sorts.
  void build(std::vector<Vec<Z>>&& candidates, bool parallel);
};

// Reducibility of x against every other pool member.
template <class Z>
bool is_reducible(const Vec<Z>& x, const CandidatePool<Z>& pool);

// Unique minimal generating set of the monoid (pool must generate it).
template <class Z>
std::vector<Vec<Z>> global_reduce(CandidatePool<Z>& pool, bool parallel);

}  // namespace latcone
