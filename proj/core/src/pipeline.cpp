#include "latcone/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <set>

#include "latcone/hilbert_basis.hpp"
#include "latcone/hilbert_series.hpp"

namespace latcone {

namespace {

template <class Z>
Vec<Z> convert_vec(const Vec<mpz_class>& v) {
  Vec<Z> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = num<Z>::from_mpz(v[i]);
  return r;
}

template <class Z>
std::vector<std::string> vec_strings(const Vec<Z>& v) {
  std::vector<std::string> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = num<Z>::str(v[i]);
  return r;
}

template <class Z>
std::vector<Vec<Z>> dedup_keep_first(const std::vector<Vec<Z>>& rows) {
  std::vector<Vec<Z>> out;
  std::set<std::vector<std::string>> seen;
  for (const Vec<Z>& v : rows) {
    if (is_zero_vec(v)) continue;
    auto key = vec_strings(v);
    if (seen.insert(std::move(key)).second) out.push_back(v);
  }
  return out;
}

template <class Z>
Vec<Z> map_back(const Vec<Z>& c, const Mat<Z>* w) {
  if (!w) return c;
  Vec<Z> r(w->nc, Z(0));
  for (int i = 0; i < w->nr; ++i) {
    if (num<Z>::sign(c[i]) == 0) continue;
    for (int j = 0; j < w->nc; ++j) r[j] += c[i] * w->at(i, j);
  }
  return r;
}

std::vector<std::vector<std::string>> sorted_string_rows(std::vector<std::vector<std::string>> rows) {
  // numeric-aware lexicographic sort on the decimal strings
  auto val_less = [](const std::string& a, const std::string& b) {
    bool na = a[0] == '-', nb = b[0] == '-';
    if (na != nb) return na;
    const std::string &ma = na ? a.substr(1) : a, &mb = nb ? b.substr(1) : b;
    bool less = ma.size() != mb.size() ? ma.size() < mb.size() : ma < mb;
    return na ? !less && ma != mb : less;
  };
  std::sort(rows.begin(), rows.end(),
            [&](const std::vector<std::string>& x, const std::vector<std::string>& y) {
              for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
                if (x[i] == y[i]) continue;
                return val_less(x[i], y[i]);
              }
              return x.size() < y.size();
            });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

template <class Z>
struct PreparedCone {
  std::vector<Vec<Z>> all_gens;    // deduplicated, reduced coordinates, input order
  std::vector<Vec<Z>> build_gens;  // generators fed to the engine (sorted by degree)
  int dim = 0;
  std::optional<Mat<Z>> embedding;  // rows: lattice basis of the span
  std::optional<Grading<Z>> grading;
  bool grading_implicit = false;
};

template <class Z>
void degree_sort(std::vector<Vec<Z>>& gens, Grading<Z>& grading) {
  std::vector<size_t> order(gens.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return grading.degrees[a] < grading.degrees[b]; });
  std::vector<Vec<Z>> g2(gens.size());
  std::vector<Z> d2(gens.size());
  for (size_t i = 0; i < order.size(); ++i) {
    g2[i] = std::move(gens[order[i]]);
    d2[i] = grading.degrees[order[i]];
  }
  gens = std::move(g2);
  grading.degrees = std::move(d2);
}

template <class Z>
EngineCfg engine_cfg(const RunConfig& cfg, unsigned tasks, bool keep_tri_sink) {
  EngineCfg ec;
  ec.tasks = tasks;
  ec.partial = cfg.partial;
  ec.verify = cfg.verify;
  ec.parallel = true;
  ec.th = cfg.th;
  if (keep_tri_sink) {
    ec.keep_tri = cfg.keep_tri;
    ec.tri_sink = cfg.tri_sink;
  }
  return ec;
}

template <class Z>
std::vector<Z> grading_degrees(const Vec<Z>& form, const std::vector<Vec<Z>>& gens,
                               const char* what) {
  std::vector<Z> degs(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    degs[i] = dot(form, gens[i]);
    if (!(degs[i] > Z(0)))
      throw config_error(std::string(what) + " is not positive on generator " +
                         std::to_string(i + 1));
  }
  return degs;
}

template <class Z>
PreparedCone<Z> prepare(const ParsedInput& in, const RunConfig& cfg) {
  PreparedCone<Z> pc;
  std::vector<Vec<Z>> rows(in.rows.size());
  for (size_t i = 0; i < in.rows.size(); ++i) rows[i] = convert_vec<Z>(in.rows[i]);

  std::vector<Vec<Z>> gens;
  if (in.inequalities) {
    std::vector<Vec<Z>> duals = dedup_keep_first(rows);
    if (duals.empty()) throw config_error("no nonzero inequalities");
    if (rank(Mat<Z>::from_rows(duals)) < in.dim)
      throw not_pointed_error("inequalities do not span the dual space: cone is not pointed");
    Engine<Z> dual(duals, in.dim, nullptr, engine_cfg<Z>(cfg, TASK_SUPP, false));
    dual.run();
    for (const Facet<Z>& f : dual.top_facets) gens.push_back(f.coeffs);
    std::sort(gens.begin(), gens.end(), vec_lex_less<Z>);
    if (gens.empty()) throw config_error("inequality system has no nonzero solutions");
  } else {
    gens = dedup_keep_first(rows);
    if (gens.empty()) throw config_error("no nonzero generators");
  }

  Mat<Z> gmat = Mat<Z>::from_rows(gens);
  int r = rank(gmat);
  if (r < in.dim) {
    Mat<Z> w = lattice_basis_of_span(gmat);
    Mat<Z> coords = express_in_basis(w, gmat);
    pc.all_gens.resize(gens.size());
    for (int i = 0; i < coords.nr; ++i) pc.all_gens[i] = coords.row_vec(i);
    pc.embedding = std::move(w);
  } else {
    pc.all_gens = std::move(gens);
  }
  pc.dim = r;

  if (in.grading) {
    Vec<Z> g0 = convert_vec<Z>(*in.grading);
    Vec<Z> g;
    if (pc.embedding) {
      g.resize(pc.dim);
      for (int i = 0; i < pc.dim; ++i) g[i] = dot(pc.embedding->row_vec(i), g0);
    } else {
      g = std::move(g0);
    }
    try {
      primitivize_inplace(g);
    } catch (const zero_vector_error&) {
      throw config_error("grading vanishes on the cone");
    }
    Grading<Z> gr;
    gr.degrees = grading_degrees(g, pc.all_gens, "grading");
    gr.form = std::move(g);
    pc.grading = std::move(gr);
  }

  pc.build_gens = pc.all_gens;

  const bool need_grading = tasks_need_grading(cfg.tasks);
  if (!pc.grading && need_grading) {
    // Support-only pre-pass: extreme rays first, then the implicit grading.
    Engine<Z> pre(pc.all_gens, pc.dim, nullptr, engine_cfg<Z>(cfg, TASK_SUPP, false));
    pre.run();
    if (!pre.pointed) throw not_pointed_error("cone is not pointed");
    std::vector<Vec<Z>> rays;
    for (size_t i = 0; i < pc.all_gens.size(); ++i)
      if (pre.extreme[i]) rays.push_back(primitivize(pc.all_gens[i]));
    std::sort(rays.begin(), rays.end(), vec_lex_less<Z>);
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    std::optional<Vec<Z>> form = implicit_grading(rays, pc.dim);
    if (!form)
      throw config_error(
          "volume/series/deg1 need a grading and no implicit one exists "
          "(extreme rays have unequal degrees)");
    // Only the extreme rays enter the triangulation.
    std::vector<Vec<Z>> ext;
    for (size_t i = 0; i < pc.all_gens.size(); ++i)
      if (pre.extreme[i]) ext.push_back(pc.all_gens[i]);
    pc.build_gens = std::move(ext);
    Grading<Z> gr;
    gr.degrees = grading_degrees(*form, pc.build_gens, "implicit grading");
    gr.form = std::move(*form);
    pc.grading = std::move(gr);
    pc.grading_implicit = true;
  }

  if (pc.grading) {
    degree_sort(pc.build_gens, *pc.grading);
  }
  return pc;
}

template <class Z>
RunReport run_lane(const ParsedInput& in, const RunConfig& cfg, const char* lane) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.input_rows = in.n;
  rep.input_dim = in.dim;
  rep.input_kind = in.inequalities ? "ineqs" : "gens";
  rep.tasks = cfg.tasks;
  rep.partial = cfg.partial;

  if (cfg.tasks == 0) throw config_error("empty task set");
  if (cfg.partial && (cfg.tasks & (TASK_TRI | TASK_VOLUME | TASK_SERIES)))
    throw config_error("partial triangulation mode cannot serve tri/volume/series tasks");

  PreparedCone<Z> pc = prepare<Z>(in, cfg);
  rep.rank = pc.dim;
  rep.coordinates_reduced = (bool)pc.embedding;
  if (pc.embedding)
    for (int i = 0; i < pc.embedding->nr; ++i)
      rep.embedding.push_back(vec_strings(pc.embedding->row_vec(i)));
  rep.generators_used = (long long)pc.build_gens.size();

  Engine<Z> eng(pc.build_gens, pc.dim, pc.grading ? &*pc.grading : nullptr,
                engine_cfg<Z>(cfg, cfg.tasks, true));
  eng.run();
  if (!eng.pointed) throw not_pointed_error("cone is not pointed");

  const Mat<Z>* w = pc.embedding ? &*pc.embedding : nullptr;

  {
    std::vector<std::vector<std::string>> forms;
    forms.reserve(eng.top_facets.size());
    for (const Facet<Z>& f : eng.top_facets) forms.push_back(vec_strings(f.coeffs));
    rep.support_forms = sorted_string_rows(std::move(forms));
    rep.supp_count = (long long)rep.support_forms.size();
  }
  {
    std::vector<std::vector<std::string>> rays;
    for (size_t i = 0; i < eng.gens().size(); ++i)
      if (eng.extreme[i]) rays.push_back(vec_strings(map_back(primitivize(eng.gens()[i]), w)));
    rep.extreme_rays = sorted_string_rows(std::move(rays));
    rep.ext_count = (long long)rep.extreme_rays.size();
  }

  if (pc.grading) {
    rep.graded = true;
    rep.grading_implicit = pc.grading_implicit;
    rep.grading_form = vec_strings(pc.grading->form);
  }

  const bool needs_tri = tasks_need_triangulation(cfg.tasks);
  rep.full_triangulation = needs_tri && !cfg.partial;
  if (rep.full_triangulation) {
    rep.triangulation_size = std::to_string(eng.total.simplices);
    rep.stanley_components = num_str(eng.total.det_sum);
  }

  // Volume and series from the denominator classes.
  mpq_class volume;
  bool have_volume = false;
  if (pc.grading && (cfg.tasks & (TASK_VOLUME | TASK_SERIES))) {
    ClassMap cm;
    volume = 0;
    for (const auto& [key, cd] : eng.total.classes) {
      std::vector<long long> degs(key.size());
      mpz_class prod = 1;
      for (size_t i = 0; i < key.size(); ++i) {
        mpz_class dz = num<Z>::to_mpz(key[i]);
        degs[i] = (long long)dz.get_si();
        prod *= dz;
      }
      volume += mpq_class(num<Z>::to_mpz(cd.det_sum)) / mpq_class(prod);
      if (cfg.tasks & TASK_SERIES) {
        Poly numer(cd.numer.size());
        for (size_t i = 0; i < cd.numer.size(); ++i) numer[i] = mpz_class((long)cd.numer[i]);
        accumulate(cm, degs, numer);
      }
    }
    volume.canonicalize();
    have_volume = true;
    rep.has_volume = true;
    rep.volume_num = volume.get_num().get_str();
    rep.volume_den = volume.get_den().get_str();

    if (cfg.tasks & TASK_SERIES) {
      RawSeries raw = sum_raw(cm);
      CycloSeries cyc = cyclotomic_reduce(raw);
      SeriesReport sr;
      for (const mpz_class& c : raw.numer) sr.raw_numer.push_back(c.get_str());
      sr.raw_denom = raw.denom;
      for (const mpz_class& c : cyc.numer) sr.cyc_numer.push_back(c.get_str());
      sr.cyc_factors = cyc.factors;
      if (std::optional<StdSeries> st = standardize(cyc, pc.dim, cfg.numerator_cap)) {
        sr.has_standard = true;
        for (const mpz_class& c : st->numer) sr.std_numer.push_back(c.get_str());
        sr.std_denom = st->denom;
      }
      std::optional<Quasipolynomial> q = quasipolynomial(cyc, raw, pc.dim, cfg.period_cap);
      if (q) {
        sr.has_quasi = true;
        sr.quasi_period = q->period;
        sr.quasi_den = q->common_den.get_str();
        for (const auto& row : q->coeff) {
          std::vector<std::string> rrow;
          for (const mpz_class& c : row) rrow.push_back(c.get_str());
          sr.quasi_coeff.push_back(std::move(rrow));
        }
        if (have_volume) {
          rep.eq13_checked = true;
          rep.eq13_passed = multiplicity_check(*q, volume, pc.dim);
          if (!rep.eq13_passed)
            throw consistency_error(
                "internal consistency failure: quasipolynomial leading coefficient "
                "does not match the volume");
        }
      }
      if (cfg.verify) {
        // All presentations must expand to the same coefficient stream.
        const long long kmax = 50;
        std::vector<mpz_class> a = series_coefficients(raw, kmax);
        if (sr.has_standard) {
          StdSeries st2;
          for (const std::string& s : sr.std_numer) st2.numer.emplace_back(s);
          st2.denom = sr.std_denom;
          std::vector<mpz_class> b = expand_series(st2.numer, st2.denom, kmax);
          if (a != b) throw consistency_error("series presentations disagree");
        }
      }
      rep.series = std::move(sr);
    }
  }

  if (cfg.tasks & TASK_BASIS) {
    CandidatePool<Z> pool;
    for (const Facet<Z>& f : eng.top_facets) pool.forms.push_back(f.coeffs);
    if (pc.grading) pool.grading_form = &pc.grading->form;
    std::vector<Vec<Z>> cands = std::move(eng.total.hb);
    for (const Vec<Z>& g : pc.all_gens) cands.push_back(g);
    pool.build(std::move(cands), true);
    std::vector<Vec<Z>> basis = global_reduce(pool, true);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(basis.size());
    for (const Vec<Z>& b : basis) rows.push_back(vec_strings(map_back(b, w)));
    rep.hilbert_basis = sorted_string_rows(std::move(rows));
    rep.hilb_count = (long long)rep.hilbert_basis.size();
    rep.has_basis = true;
  }

  if (cfg.tasks & TASK_DEG1) {
    std::vector<std::vector<std::string>> rows;
    for (const Vec<Z>& p : eng.total.deg1) rows.push_back(vec_strings(map_back(p, w)));
    for (size_t i = 0; i < pc.all_gens.size(); ++i)
      if (dot(pc.grading->form, pc.all_gens[i]) == Z(1))
        rows.push_back(vec_strings(map_back(pc.all_gens[i], w)));
    rep.deg1_points = sorted_string_rows(std::move(rows));
    rep.has_deg1 = true;
  }

  if (cfg.keep_tri)
    for (auto& [key, dv] : eng.total.kept_tri)
      rep.kept_triangulation.emplace_back(key, num<Z>::str(dv));

  rep.info.arithmetic = lane;
  rep.info.threads = omp_get_max_threads();
  rep.info.pyramids_per_level = eng.stats.pyramids_per_level;
  rep.info.recursive_pyramids = eng.stats.recursive_pyramids.load();
  rep.info.evaluated_simplices = eng.total.simplices;
  rep.info.evaluated_det_sum = num_str(eng.total.det_sum);
  rep.info.unimodular = eng.total.unimodular;
  rep.info.pu1_passed = eng.total.pu1_passed;
  rep.info.potentially_unimodular = eng.total.potentially_unimodular;
  rep.info.nongeneric = eng.total.nongeneric;
  rep.info.det_computed = eng.total.det_computed;
  rep.info.det_inherited = eng.total.det_inherited;
  rep.info.ht1_pyramids_skipped = eng.stats.ht1_pyramids_skipped.load();
  rep.info.ht1_simplices_skipped = eng.stats.ht1_simplices_skipped.load();
  rep.info.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

RunReport run(const ParsedInput& in, const RunConfig& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  omp_set_max_active_levels(1);
  try {
    return run_lane<CheckedInt>(in, cfg, "int64");
  } catch (const overflow_error&) {
    return run_lane<mpz_class>(in, cfg, "gmp");
  }
}

}  // namespace latcone
