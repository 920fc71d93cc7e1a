#include "latcone/simplex_eval.hpp"

#include <algorithm>

namespace latcone {

template <class Z>
bool pu_tests(const Z& height, const Vec<Z>* degrees) {
  if (height > Z(1)) return false;  // PU1; height 0 marks a first simplex
  if (degrees) {
    Z g(0);
    for (const Z& x : *degrees) g = num<Z>::gcd(g, x);
    if (g > Z(1)) return false;  // PU2
  }
  return true;
}

template <class Z>
std::vector<Vec<Z>> residue_reps(const Vec<Z>& diag) {
  const int d = (int)diag.size();
  std::vector<Vec<Z>> reps;
  Vec<Z> b(d, Z(0));
  for (;;) {
    reps.push_back(b);
    int k = 0;
    while (k < d) {
      b[k] += Z(1);
      if (b[k] < diag[k]) break;
      b[k] = Z(0);
      ++k;
    }
    if (k == d) break;
  }
  return reps;
}

namespace {

// Shared generation core: walks the mixed-radix odometer over the indices with
// a_i > 1 and hands every parallelotope point to the consumer as (point,
// q-numerators in [0, denom)).
template <class Z, class F>
void generate_parallelotope(const Mat<Z>& g, const Vec<Z>& diag,
                            const std::vector<int>& big, const std::vector<Vec<Z>>& rows,
                            const Z& denom, F&& consume) {
  const int d = g.nr;
  Vec<Z> q(d, Z(0));  // running numerator of the coordinates
  Vec<Z> digit(big.size(), Z(0));
  Vec<Z> qmod(d), y(d);
  for (;;) {
    for (int j = 0; j < d; ++j) {
      Z r = q[j] % denom;
      if (num<Z>::sign(r) < 0) r += denom;
      qmod[j] = r;
    }
    for (int c = 0; c < d; ++c) {
      Z acc(0);
      for (int j = 0; j < d; ++j) {
        if (num<Z>::sign(qmod[j]) == 0) continue;
        acc += qmod[j] * g.at(j, c);
      }
      y[c] = num<Z>::exact_div(acc, denom);
    }
    consume(y, qmod);
    size_t k = 0;
    while (k < big.size()) {
      const int p = big[k];
      digit[k] += Z(1);
      for (int j = 0; j < d; ++j) q[j] += rows[k][j];
      if (digit[k] < diag[p]) break;
      for (int j = 0; j < d; ++j) q[j] -= diag[p] * rows[k][j];
      digit[k] = Z(0);
      ++k;
    }
    if (k == big.size()) break;
  }
}

// Solves g^tr x = e_p for every p with diag[p] > 1; optionally appends the
// order vector as one more right-hand side (the indicator, Eq-sharing).
template <class Z>
struct ResidueSystems {
  std::vector<int> big;
  std::vector<Vec<Z>> rows;  // solution row per big index
  Vec<Z> indicator;          // nonempty iff requested
  Z denom{1};
};

template <class Z>
ResidueSystems<Z> solve_residue_systems(const Mat<Z>& g, const Vec<Z>& diag,
                                        const Vec<Z>* order_vector) {
  ResidueSystems<Z> rs;
  const int d = g.nr;
  for (int p = 0; p < d; ++p)
    if (diag[p] > Z(1)) rs.big.push_back(p);
  const int m = (int)rs.big.size() + (order_vector ? 1 : 0);
  if (m == 0) {
    rs.denom = Z(1);
    return rs;
  }
  Mat<Z> b(d, m);
  for (int c = 0; c < (int)rs.big.size(); ++c) b.at(rs.big[c], c) = Z(1);
  if (order_vector)
    for (int j = 0; j < d; ++j) b.at(j, m - 1) = (*order_vector)[j];
  SolveResult<Z> s = solve_multi_rhs(g.transposed(), b);
  rs.denom = s.denom;
  rs.rows.resize(rs.big.size());
  for (int c = 0; c < (int)rs.big.size(); ++c) {
    rs.rows[c].resize(d);
    for (int j = 0; j < d; ++j) rs.rows[c][j] = s.sol.at(j, c);
  }
  if (order_vector) {
    rs.indicator.resize(d);
    for (int j = 0; j < d; ++j) rs.indicator[j] = s.sol.at(j, m - 1);
  }
  return rs;
}

}  // namespace

template <class Z>
ParallelotopePoints<Z> reduce_mod_parallelotope(const Mat<Z>& g) {
  ParallelotopePoints<Z> out;
  Vec<Z> diag = trigonal_diagonal(g);
  Z detv(1);
  for (const Z& a : diag) detv *= a;
  out.denom = detv;
  if (detv == Z(1)) {
    out.points.push_back(Vec<Z>(g.nr, Z(0)));
    out.qnum.push_back(Vec<Z>(g.nr, Z(0)));
    return out;
  }
  ResidueSystems<Z> rs = solve_residue_systems<Z>(g, diag, nullptr);
  if (!(rs.denom == detv)) throw internal_error("residue solve: unexpected denominator");
  generate_parallelotope<Z>(g, diag, rs.big, rs.rows, detv,
                            [&](const Vec<Z>& y, const Vec<Z>& qm) {
                              out.points.push_back(y);
                              out.qnum.push_back(qm);
                            });
  return out;
}

template <class Z>
SolveResult<Z> indicator(const Mat<Z>& g, const Vec<Z>& order_vector) {
  Mat<Z> b(g.nr, 1);
  for (int j = 0; j < g.nr; ++j) b.at(j, 0) = order_vector[j];
  return solve_multi_rhs(g.transposed(), b);
}

template <class Z>
std::vector<char> resolve_nongeneric(const Mat<Z>& g, const std::vector<int>& zero_indices) {
  std::vector<char> excluded(zero_indices.size(), 0);
  if (zero_indices.empty()) return excluded;
  Mat<Z> b(g.nr, (int)zero_indices.size());
  for (int c = 0; c < (int)zero_indices.size(); ++c) b.at(zero_indices[c], c) = Z(1);
  SolveResult<Z> s = solve_multi_rhs(g, b);  // support form coefficients, column-wise
  for (int c = 0; c < (int)zero_indices.size(); ++c) {
    int sign = 0;
    for (int j = 0; j < g.nr && sign == 0; ++j) sign = num<Z>::sign(s.sol.at(j, c));
    if (sign == 0) throw internal_error("resolve_nongeneric: zero support form");
    excluded[c] = (sign < 0) ? 1 : 0;
  }
  return excluded;
}

template <class Z>
std::vector<long long> semi_open_numerator(const ParallelotopePoints<Z>& pts,
                                           const std::vector<char>& excluded,
                                           const Vec<Z>& grading_form, const Vec<Z>& gen_degrees) {
  std::vector<long long> numer;
  const int d = (int)gen_degrees.size();
  for (size_t t = 0; t < pts.points.size(); ++t) {
    Z e = dot(grading_form, pts.points[t]);
    for (int j = 0; j < d; ++j)
      if ((size_t)j < excluded.size() && excluded[j] && num<Z>::sign(pts.qnum[t][j]) == 0)
        e += gen_degrees[j];
    long long k = num<Z>::to_ll(e);
    if (k < 0) throw internal_error("semi_open_numerator: negative exponent");
    if ((size_t)k >= numer.size()) numer.resize(k + 1, 0);
    ++numer[k];
  }
  return numer;
}

template <class Z>
std::vector<Vec<Z>> degree1_points(const ParallelotopePoints<Z>& pts, const Vec<Z>& grading_form) {
  std::vector<Vec<Z>> out;
  for (const Vec<Z>& y : pts.points)
    if (dot(grading_form, y) == Z(1)) out.push_back(y);
  return out;
}

template <class Z>
std::vector<Vec<Z>> local_hilbert_candidates(const ParallelotopePoints<Z>& pts, const Mat<Z>& g,
                                             bool include_generators) {
  const int d = g.nr;
  struct Cand {
    Vec<Z> point;
    Vec<Z> q;
    Z qsum;
  };
  std::vector<Cand> cands;
  for (size_t t = 0; t < pts.points.size(); ++t) {
    if (is_zero_vec(pts.qnum[t])) continue;  // the origin
    Z s(0);
    for (const Z& x : pts.qnum[t]) s += x;
    cands.push_back({pts.points[t], pts.qnum[t], s});
  }
  if (include_generators)
    for (int i = 0; i < d; ++i) {
      Vec<Z> q(d, Z(0));
      q[i] = pts.denom;
      cands.push_back({g.row_vec(i), q, pts.denom});
    }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.qsum < b.qsum; });
  std::vector<Vec<Z>> out;
  for (size_t i = 0; i < cands.size(); ++i) {
    bool reducible = false;
    for (size_t j = 0; j < i && !reducible; ++j) {
      if (!(cands[j].qsum < cands[i].qsum)) continue;
      bool dom = true;
      for (int c = 0; c < d && dom; ++c)
        if (cands[j].q[c] > cands[i].q[c]) dom = false;
      reducible = dom;
    }
    if (!reducible) out.push_back(cands[i].point);
  }
  return out;
}

template <class Z>
std::pair<Z, Z> simplex_volume(const Z& detv, const Vec<Z>& degrees) {
  Z den(1);
  for (const Z& g : degrees) den *= g;
  Z g = num<Z>::gcd(detv, den);
  return {num<Z>::exact_div(detv, g), num<Z>::exact_div(den, g)};
}

template <class Z>
void EvalOutput<Z>::merge_into(EvalOutput<Z>& g) {
  for (auto& [key, cd] : classes) {
    ClassData<Z>& gc = g.classes[key];
    if (gc.numer.size() < cd.numer.size()) gc.numer.resize(cd.numer.size(), 0);
    for (size_t i = 0; i < cd.numer.size(); ++i) gc.numer[i] += cd.numer[i];
    gc.det_sum += cd.det_sum;
    gc.simplices += cd.simplices;
  }
  classes.clear();
  auto move_all = [](std::vector<Vec<Z>>& from, std::vector<Vec<Z>>& to) {
    to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
    from.clear();
  };
  move_all(hb, g.hb);
  move_all(deg1, g.deg1);
  g.det_sum += det_sum;
  g.simplices += simplices;
  g.unimodular += unimodular;
  g.pu1_passed += pu1_passed;
  g.potentially_unimodular += potentially_unimodular;
  g.nongeneric += nongeneric;
  g.det_computed += det_computed;
  g.det_inherited += det_inherited;
  g.kept_tri.insert(g.kept_tri.end(), std::make_move_iterator(kept_tri.begin()),
                    std::make_move_iterator(kept_tri.end()));
  kept_tri.clear();
}

template <class Z>
void evaluate_simplex(const EvalContext<Z>& cx, const SimplexRecord<Z>& s, EvalOutput<Z>& out) {
  const int d = cx.dim;
  const bool graded = cx.degrees != nullptr;
  const bool ht1 = (s.height == Z(1));
  const bool want_series = cx.tasks & TASK_SERIES;
  const bool want_hb = (cx.tasks & TASK_BASIS) && !ht1;
  const bool want_deg1 = (cx.tasks & TASK_DEG1) && !ht1;

  ++out.simplices;

  Vec<Z> degs;
  if (graded) {
    degs.resize(d);
    for (int j = 0; j < d; ++j) degs[j] = (*cx.degrees)[s.key[j]];
  }

  Mat<Z> g(d, d);
  for (int j = 0; j < d; ++j) g.set_row(j, (*cx.gens)[s.key[j]]);

  Z detv = s.det;
  bool det_known = num<Z>::sign(detv) != 0;
  if (s.det_inherited) {
    ++out.det_inherited;
    if (cx.verify) {
      Z direct = num<Z>::abs(det(g));
      if (!(direct == detv)) throw internal_error("inherited determinant mismatch");
    }
  }

  bool pu = false;
  if (!det_known) {
    const bool p1 = !(s.height > Z(1));
    if (p1) ++out.pu1_passed;
    pu = pu_tests(s.height, graded ? &degs : nullptr);
    if (pu) ++out.potentially_unimodular;
  }

  Vec<Z> ind;       // indicator numerators (denominator = detv > 0)
  Vec<Z> diag;      // trigonal diagonal, when computed
  if (!det_known && pu && want_series) {
    SolveResult<Z> so = indicator(g, cx.order_vector);
    ind.resize(d);
    for (int j = 0; j < d; ++j) ind[j] = so.sol.at(j, 0);
    detv = so.denom;
    det_known = true;
    ++out.det_computed;
  }
  if (!det_known) {
    diag = trigonal_diagonal(g);
    detv = Z(1);
    for (const Z& a : diag) detv *= a;
    det_known = true;
    ++out.det_computed;
  }
  if (detv == Z(1)) ++out.unimodular;

  const bool need_e = (want_series || want_hb || want_deg1) && detv > Z(1);
  if (need_e && diag.empty()) {
    diag = trigonal_diagonal(g);
    ++out.det_computed;
    Z check(1);
    for (const Z& a : diag) check *= a;
    if (!(check == detv)) throw internal_error("trigonal diagonal contradicts determinant");
  }

  // Residue systems, sharing the right-hand side with the indicator.
  ResidueSystems<Z> rs;
  if (need_e || (want_series && ind.empty())) {
    rs = solve_residue_systems<Z>(g, need_e ? diag : Vec<Z>(d, Z(1)),
                                  (want_series && ind.empty()) ? &cx.order_vector : nullptr);
    if (need_e && !(rs.denom == detv))
      throw internal_error("residue systems: denominator is not the determinant");
    if (!rs.indicator.empty()) ind = std::move(rs.indicator);
  }

  // Excluded facets from the indicator signs; zeros fall back to the
  // lexicographic perturbation of the support forms.
  std::vector<char> excluded(d, 0);
  if (want_series) {
    std::vector<int> zeros;
    for (int j = 0; j < d; ++j) {
      int sg = num<Z>::sign(ind[j]);
      if (sg < 0)
        excluded[j] = 1;
      else if (sg == 0)
        zeros.push_back(j);
    }
    if (!zeros.empty()) {
      ++out.nongeneric;
      std::vector<char> ex = resolve_nongeneric(g, zeros);
      for (size_t t = 0; t < zeros.size(); ++t) excluded[zeros[t]] = ex[t];
    }
  }

  // Class bookkeeping (series numerators and volume data share the map).
  ClassData<Z>* cd = nullptr;
  if (want_series && !graded) throw internal_error("series evaluation without grading");
  if (graded && (want_series || (cx.tasks & TASK_VOLUME))) {
    Vec<Z> key = degs;
    std::sort(key.begin(), key.end());
    cd = &out.classes[key];
    cd->det_sum += detv;
    cd->simplices += 1;
  }
  auto bump = [&](const Z& expo) {
    long long k = num<Z>::to_ll(expo);
    if (k < 0) throw internal_error("series exponent negative");
    if ((size_t)k >= cd->numer.size()) cd->numer.resize(k + 1, 0);
    ++cd->numer[k];
  };

  struct HBC {
    Vec<Z> point;
    Vec<Z> q;
    Z qsum;
  };
  std::vector<HBC> hbc;

  if (detv == Z(1)) {
    if (want_series) {
      Z e(0);
      for (int j = 0; j < d; ++j)
        if (excluded[j]) e += degs[j];
      bump(e);
    }
  } else if (need_e) {
    generate_parallelotope<Z>(g, diag, rs.big, rs.rows, detv, [&](const Vec<Z>& y, const Vec<Z>& qm) {
      Z deg(0);
      if (graded) deg = dot(*cx.grading_form, y);
      if (want_series) {
        Z e = deg;
        for (int j = 0; j < d; ++j)
          if (excluded[j] && num<Z>::sign(qm[j]) == 0) e += degs[j];
        bump(e);
      }
      if (want_deg1 && deg == Z(1)) out.deg1.push_back(y);
      if (want_hb && !is_zero_vec(qm)) {
        Z qs(0);
        for (const Z& x : qm) qs += x;
        hbc.push_back({y, qm, qs});
      }
    });
    if (cx.verify && want_hb) {
      // |E| must equal the determinant; the odometer guarantees the count, so
      // check distinctness of the reduced points instead.
      std::vector<Vec<Z>> pts;
      pts.reserve(hbc.size());
      for (const HBC& h : hbc) pts.push_back(h.point);
      std::sort(pts.begin(), pts.end(), vec_lex_less<Z>);
      for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i] == pts[i - 1]) throw internal_error("parallelotope points not distinct");
    }
  }

  if (want_hb && !hbc.empty()) {
    std::sort(hbc.begin(), hbc.end(), [](const HBC& a, const HBC& b) { return a.qsum < b.qsum; });
    for (size_t i = 0; i < hbc.size(); ++i) {
      bool reducible = false;
      for (size_t j = 0; j < i && !reducible; ++j) {
        if (!(hbc[j].qsum < hbc[i].qsum)) continue;
        bool dom = true;
        for (int c = 0; c < d && dom; ++c)
          if (hbc[j].q[c] > hbc[i].q[c]) dom = false;
        reducible = dom;
      }
      if (!reducible) out.hb.push_back(std::move(hbc[i].point));
    }
  }

  out.det_sum += detv;
  if (cx.keep_tri) out.kept_tri.emplace_back(s.key, detv);
}

#define LATCONE_INSTANTIATE(Z)                                                                   \
  template bool pu_tests<Z>(const Z&, const Vec<Z>*);                                            \
  template std::vector<Vec<Z>> residue_reps<Z>(const Vec<Z>&);                                   \
  template ParallelotopePoints<Z> reduce_mod_parallelotope<Z>(const Mat<Z>&);                    \
  template SolveResult<Z> indicator<Z>(const Mat<Z>&, const Vec<Z>&);                            \
  template std::vector<char> resolve_nongeneric<Z>(const Mat<Z>&, const std::vector<int>&);     \
  template std::vector<long long> semi_open_numerator<Z>(const ParallelotopePoints<Z>&,          \
                                                         const std::vector<char>&, const Vec<Z>&, \
                                                         const Vec<Z>&);                         \
  template std::vector<Vec<Z>> degree1_points<Z>(const ParallelotopePoints<Z>&, const Vec<Z>&);  \
  template std::vector<Vec<Z>> local_hilbert_candidates<Z>(const ParallelotopePoints<Z>&,        \
                                                           const Mat<Z>&, bool);                 \
  template std::pair<Z, Z> simplex_volume<Z>(const Z&, const Vec<Z>&);                           \
  template struct EvalOutput<Z>;                                                                 \
  template void evaluate_simplex<Z>(const EvalContext<Z>&, const SimplexRecord<Z>&, EvalOutput<Z>&);

LATCONE_INSTANTIATE(CheckedInt)
LATCONE_INSTANTIATE(mpz_class)

#undef LATCONE_INSTANTIATE

}  // namespace latcone
