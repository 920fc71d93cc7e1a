#pragma once

// Cone bookkeeping: incremental support hyperplanes (Fourier-Motzkin with the
// exact ridge test), hyperplane partitioning against a new generator, lattice
// heights, extreme rays, pointedness and gradings.

#include <optional>
#include <unordered_set>
#include <vector>

#include "latcone/bits.hpp"
#include "latcone/linalg.hpp"

namespace latcone {

struct not_pointed_error : std::domain_error {
  using std::domain_error::domain_error;
};

template <class Z>
struct Facet {
  Vec<Z> coeffs;  // primitive; nonnegative on all processed generators
  DynBits zeros;  // processed generators lying on the hyperplane
  Z val;          // value on the generator currently being inserted
};

template <class Z>
struct Grading {
  Vec<Z> form;             // primitive
  std::vector<Z> degrees;  // per master generator, all > 0
};

// Support hyperplanes of a simplicial cone spanned by the rows of g:
// lambda_i vanishes on every row but the i-th, positive there, primitive.
template <class Z>
std::vector<Vec<Z>> initial_simplex_hyperplanes(const Mat<Z>& g);

// Sign partition of forms against x (indices into `forms`).
template <class Z>
struct Partition {
  std::vector<int> neg, zero, pos;
};
template <class Z>
Partition<Z> partition(const std::vector<Vec<Z>>& forms, const Vec<Z>& x);

template <class Z>
Z height(const Vec<Z>& form, const Vec<Z>& x) {
  return num<Z>::abs(dot(form, x));
}

template <class Z>
struct VecHasher {
  size_t operator()(const Vec<Z>& v) const { return vec_hash(v); }
};

// Incremental support-hyperplane state for one cone (a prefix of `key`).
// Used standalone for support-only runs and embedded in triangulation
// builders. Facet zero-bitsets are indexed by local position in `key`.
template <class Z>
struct SupportBuilder {
  const std::vector<Vec<Z>>* gens = nullptr;  // master generator array
  std::vector<int32_t> key;                   // local position -> master index
  int dim = 0;
  int processed = 0;  // prefix length with valid facets
  std::vector<Facet<Z>> facets;
  bool parallel_ok = false;   // enable inner omp loops
  bool track_known = false;   // maintain the dedup set (recursion only)
  std::unordered_set<Vec<Z>, VecHasher<Z>> known;

  // partition scratch for the current step
  std::vector<int> neg, zero, pos;

  const Vec<Z>& gen(int local) const { return (*gens)[key[local]]; }

  // Facets of the initial simplex key[0..dim); throws singular_error if the
  // caller picked dependent generators.
  void init_simplex();

  // Computes facet values on gen(i) and the sign partition. Returns true if
  // the generator lies inside the current cone (no negative facet).
  bool partition_values(int i);

  // x_i inside: facet list unchanged, contact bits updated.
  void mark_inside(int i);

  // Fourier-Motzkin step: facets become H(C_i). partition_values(i) must have
  // run. Irredundancy is kept exact via the ridge test.
  void fm_step(int i);

  // Pass-back filter for recursively computed pyramid hyperplanes: returns
  // exactly the candidates that are new facets of C_i (conditions: nonneg on
  // the prefix, strictly positive outside the pyramid, not already known).
  std::vector<Facet<Z>> filter_pyramid_hyperplanes(int i, const DynBits& members,
                                                   const std::vector<Facet<Z>>& sub_facets);

  // Drops negative facets, keeps pos/zero, appends `fresh`; finishes step i.
  void commit_step(int i, std::vector<Facet<Z>>&& fresh);

 private:
  bool ridge_is_facet(const Facet<Z>& fn, const Facet<Z>& fp) const;
};

// Extreme generator flags: position p is extreme iff the facets through it
// have rank d-1. Indexed like the facet zero-bitsets.
template <class Z>
std::vector<char> extreme_ray_flags(int npositions, const std::vector<Facet<Z>>& facets, int dim,
                                    bool parallel_ok);

template <class Z>
bool detect_pointed(const std::vector<Facet<Z>>& facets, int dim);

// Primitive integral form taking the same positive value on every vector of
// `rays` (primitivized extreme rays); empty optional if none exists.
template <class Z>
std::optional<Vec<Z>> implicit_grading(const std::vector<Vec<Z>>& rays, int dim);

}  // namespace latcone
