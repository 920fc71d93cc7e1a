#pragma once

// Per-simplex evaluation: determinants with unimodularity exploitation,
// lattice points of the semi-open parallelotope, order-vector indicators and
// excluded facets, semi-open Hilbert-series numerators, degree-1 points and
// local Hilbert-basis candidates. The linear systems are scheduled so the
// cheap ones decide whether the expensive ones are needed at all.

#include <map>
#include <optional>

#include "latcone/cone_geometry.hpp"

namespace latcone {

enum TaskBits : unsigned {
  TASK_SUPP = 1u,
  TASK_TRI = 2u,
  TASK_VOLUME = 4u,
  TASK_SERIES = 8u,
  TASK_BASIS = 16u,
  TASK_DEG1 = 32u,
};

inline bool tasks_need_triangulation(unsigned t) {
  return t & (TASK_TRI | TASK_VOLUME | TASK_SERIES | TASK_BASIS | TASK_DEG1);
}
inline bool tasks_need_grading(unsigned t) {
  return t & (TASK_VOLUME | TASK_SERIES | TASK_DEG1);
}

template <class Z>
struct SimplexRecord {
  std::vector<int32_t> key;  // master generator indices, sorted
  Z det{0};                  // |det|, 0 = not yet computed
  Z height{0};               // insertion height, 0 = first simplex of a builder
  bool det_inherited = false;
};

// |det G_sigma| = 1 on the shared facet makes the new determinant the height.
template <class Z>
std::optional<Z> inherit_det(const Z& partner_det, const Z& height) {
  if (partner_det == Z(1)) return height;
  return std::nullopt;
}

// PU1 (insertion height <= 1) and PU2 (gcd of degrees = 1) screens.
template <class Z>
bool pu_tests(const Z& height, const Vec<Z>* degrees);

// Mixed-radix residue representatives b_1e_1+...+b_de_d, 0 <= b_i < a_i.
template <class Z>
std::vector<Vec<Z>> residue_reps(const Vec<Z>& diag);

// Lattice points of the semi-open parallelotope of the rows of g, with their
// coordinate numerators (common denominator |det g|).
template <class Z>
struct ParallelotopePoints {
  std::vector<Vec<Z>> points;
  std::vector<Vec<Z>> qnum;  // coordinates w.r.t. the generators, times denom
  Z denom{1};
};
template <class Z>
ParallelotopePoints<Z> reduce_mod_parallelotope(const Mat<Z>& g);

// Indicator of the simplex: exact solution of g^tr I = order_vector.
template <class Z>
SolveResult<Z> indicator(const Mat<Z>& g, const Vec<Z>& order_vector);

// Lexicographic perturbation for indicator zeros: for each listed generator
// index the support form opposite to it is computed and the facet is excluded
// iff the first nonzero coefficient is negative. Never returns "on".
template <class Z>
std::vector<char> resolve_nongeneric(const Mat<Z>& g, const std::vector<int>& zero_indices);

// Numerator of the semi-open Hilbert series: counts per exponent
// deg x + deg eps(x) over the parallelotope points.
template <class Z>
std::vector<long long> semi_open_numerator(const ParallelotopePoints<Z>& pts,
                                           const std::vector<char>& excluded,
                                           const Vec<Z>& grading_form, const Vec<Z>& gen_degrees);

template <class Z>
std::vector<Vec<Z>> degree1_points(const ParallelotopePoints<Z>& pts, const Vec<Z>& grading_form);

// E union {v_i} minus everything reducible inside the simplex; reducibility is
// coordinatewise domination of the q-vectors.
template <class Z>
std::vector<Vec<Z>> local_hilbert_candidates(const ParallelotopePoints<Z>& pts, const Mat<Z>& g,
                                             bool include_generators = true);

// Exact normalized volume contribution |det| / prod(degrees), reduced.
template <class Z>
std::pair<Z, Z> simplex_volume(const Z& detv, const Vec<Z>& degrees);

template <class Z>
struct ClassData {
  std::vector<long long> numer;  // point counts per degree (series runs)
  Z det_sum{0};
  long long simplices = 0;
};

template <class Z>
struct VecLexLess {
  bool operator()(const Vec<Z>& a, const Vec<Z>& b) const { return vec_lex_less(a, b); }
};

template <class Z>
struct EvalOutput {
  std::map<Vec<Z>, ClassData<Z>, VecLexLess<Z>> classes;  // key: sorted degree multiset
  std::vector<Vec<Z>> hb;
  std::vector<Vec<Z>> deg1;
  Z det_sum{0};
  long long simplices = 0;
  long long unimodular = 0, pu1_passed = 0, potentially_unimodular = 0, nongeneric = 0;
  long long det_computed = 0, det_inherited = 0;
  std::vector<std::pair<std::vector<int32_t>, Z>> kept_tri;

  void merge_into(EvalOutput& g);
};

template <class Z>
struct EvalContext {
  const std::vector<Vec<Z>>* gens = nullptr;
  int dim = 0;
  const std::vector<Z>* degrees = nullptr;  // aligned with gens; null = ungraded
  const Vec<Z>* grading_form = nullptr;
  Vec<Z> order_vector;  // set for series runs
  unsigned tasks = 0;
  bool verify = false;
  bool keep_tri = false;
};

template <class Z>
void evaluate_simplex(const EvalContext<Z>& cx, const SimplexRecord<Z>& s, EvalOutput<Z>& out);

}  // namespace latcone
