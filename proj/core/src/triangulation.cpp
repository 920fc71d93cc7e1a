#include "latcone/triangulation.hpp"

#include <omp.h>

#include <algorithm>
#include <string>
#include <utility>

namespace latcone {

template <class Z>
std::pair<long long, Z> triangulation_checksum(const std::vector<SimplexRecord<Z>>& simplices) {
  Z sum(0);
  for (const SimplexRecord<Z>& s : simplices) sum += s.det;
  return {(long long)simplices.size(), sum};
}

// ---------------------------------------------------------------- ConeBuilder

template <class Z>
ConeBuilder<Z>::ConeBuilder(Engine<Z>& eng, std::vector<int32_t> key, bool recursion, int level,
                            bool is_top, bool suppress_tri)
    : eng_(eng), recursion_(recursion), level_(level), is_top_(is_top),
      suppress_tri_(suppress_tri || !eng.needs_tri()) {
  sup_.gens = &eng.gens_;
  sup_.key = std::move(key);
  sup_.dim = eng.dim_;
  sup_.parallel_ok = eng.cfg_.parallel;
  sup_.track_known = recursion_;
}

template <class Z>
void ConeBuilder<Z>::reorder_key() {
  const int d = sup_.dim;
  RankAccum<Z> acc;
  std::vector<int32_t> front, back;
  front.reserve(d);
  for (int32_t g : sup_.key) {
    if ((int)front.size() < d && acc.add(eng_.gens_[g]))
      front.push_back(g);
    else
      back.push_back(g);
  }
  if ((int)front.size() != d) throw internal_error("builder: cone not full-dimensional");
  front.insert(front.end(), back.begin(), back.end());
  sup_.key = std::move(front);
}

template <class Z>
void ConeBuilder<Z>::add_first_simplex() {
  const int d = sup_.dim;
  std::vector<int32_t> pos(d);
  for (int i = 0; i < d; ++i) pos[i] = i;
  Mat<Z> g(d, d);
  for (int i = 0; i < d; ++i) g.set_row(i, sup_.gen(i));
  Z dv = num<Z>::abs(det(g));
  if (is_top_ && (eng_.cfg_.tasks & TASK_SERIES)) {
    eng_.order_vector.assign(d, Z(0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) eng_.order_vector[j] += g.at(i, j);
    eng_.ectx_.order_vector = eng_.order_vector;
  }
  add_simplex(std::move(pos), dv, Z(0), -1, false, nullptr);
}

template <class Z>
void ConeBuilder<Z>::add_simplex(std::vector<int32_t>&& pos, Z det, Z height, int added_with,
                                 bool inherited, std::vector<LocalSimplex>* sink) {
  LocalSimplex s{std::move(pos), std::move(det), std::move(height), added_with, inherited};
  if (sink) {
    sink->push_back(std::move(s));
  } else if (!switched_) {
    tri_.push_back(std::move(s));
  } else {
    if (eng_.cfg_.partial && s.height == Z(1)) {
      eng_.stats.ht1_simplices_skipped.fetch_add(1, std::memory_order_relaxed);
      return;
    }
    std::vector<SimplexRecord<Z>> one;
    one.push_back(to_record(s));
    eng_.push_simplices(std::move(one));
  }
}

template <class Z>
SimplexRecord<Z> ConeBuilder<Z>::to_record(const LocalSimplex& s) const {
  SimplexRecord<Z> r;
  r.key.reserve(s.pos.size());
  for (int32_t p : s.pos) r.key.push_back(sup_.key[p]);
  std::sort(r.key.begin(), r.key.end());
  r.det = s.det;
  r.height = s.height;
  r.det_inherited = s.det_inherited;
  return r;
}

template <class Z>
void ConeBuilder<Z>::ship_local_tri() {
  if (tri_.empty()) return;
  std::vector<SimplexRecord<Z>> batch;
  batch.reserve(tri_.size());
  for (const LocalSimplex& s : tri_) {
    if (eng_.cfg_.partial && s.height == Z(1)) {
      eng_.stats.ht1_simplices_skipped.fetch_add(1, std::memory_order_relaxed);
      continue;
    }
    batch.push_back(to_record(s));
  }
  tri_.clear();
  eng_.push_simplices(std::move(batch));
}

template <class Z>
std::vector<int32_t> ConeBuilder<Z>::pyramid_key(const Facet<Z>& f, int i) const {
  std::vector<int32_t> key;
  key.reserve(f.zeros.count() + 1);
  f.zeros.for_each([&](int p) { key.push_back(sup_.key[p]); });
  key.push_back(sup_.key[i]);  // apex last
  return key;
}

template <class Z>
void ConeBuilder<Z>::extend_tri(int i) {
  const int d = sup_.dim;
  const int nn = (int)sup_.neg.size();
  std::vector<std::vector<LocalSimplex>> parts;
  bool par = eng_.cfg_.parallel && !omp_in_parallel() && nn > 1 && tri_.size() > 64;
  parts.resize(par ? omp_get_max_threads() : 1);

#pragma omp parallel for schedule(dynamic, 1) if (par)
  for (int a = 0; a < nn; ++a) {
    std::vector<LocalSimplex>& sink = parts[par ? omp_get_thread_num() : 0];
    const Facet<Z>& f = sup_.facets[sup_.neg[a]];
    Z ht = -f.val;
    const int on_facet = f.zeros.count();
    if (on_facet == d - 1) {
      // simplicial facet: exactly one new cone, no list scan
      std::vector<int32_t> pos;
      pos.reserve(d);
      f.zeros.for_each([&](int p) { pos.push_back(p); });
      pos.push_back(i);
      sink.push_back(LocalSimplex{std::move(pos), Z(0), ht, i, false});
      continue;
    }
    for (const LocalSimplex& s : tri_) {
      if (s.added_with >= 0 && !f.zeros.test(s.added_with)) continue;
      int cnt = 0;
      for (int32_t p : s.pos) cnt += f.zeros.test(p) ? 1 : 0;
      if (cnt != d - 1) continue;
      std::vector<int32_t> pos;
      pos.reserve(d);
      for (int32_t p : s.pos)
        if (f.zeros.test(p)) pos.push_back(p);
      pos.push_back(i);
      Z dv(0);
      bool inh = false;
      if (s.det == Z(1)) {  // unimodular partner: the height is the determinant
        dv = ht;
        inh = true;
      }
      sink.push_back(LocalSimplex{std::move(pos), std::move(dv), ht, i, inh});
    }
  }
  for (std::vector<LocalSimplex>& part : parts)
    for (LocalSimplex& s : part)
      add_simplex(std::move(s.pos), std::move(s.det), std::move(s.height), s.added_with,
                  s.det_inherited, nullptr);
}

template <class Z>
void ConeBuilder<Z>::process_pyrs(int i) {
  const int d = sup_.dim;
  for (int fi : sup_.neg) {
    const Facet<Z>& f = sup_.facets[fi];
    Z ht = -f.val;
    if (eng_.cfg_.partial && ht == Z(1)) {
      eng_.stats.ht1_pyramids_skipped.fetch_add(1, std::memory_order_relaxed);
      continue;
    }
    if (f.zeros.count() == d - 1) {
      std::vector<int32_t> pos;
      pos.reserve(d);
      f.zeros.for_each([&](int p) { pos.push_back(p); });
      pos.push_back(i);
      add_simplex(std::move(pos), Z(0), std::move(ht), i, false, nullptr);
      continue;
    }
    eng_.store_pyramid(pyramid_key(f, i), level_ + 1);
  }
}

template <class Z>
void ConeBuilder<Z>::process_pyrs_rec(int i) {
  // Serial loop: the recursive builders parallelize internally instead.
  DynBits members((int)sup_.key.size());
  std::vector<Facet<Z>> accepted;
  const size_t nneg = sup_.neg.size();
  std::vector<int> neg_snapshot = sup_.neg;
  for (size_t a = 0; a < nneg; ++a) {
    const Facet<Z>& f = sup_.facets[neg_snapshot[a]];
    Z ht = -f.val;
    bool suppress = suppress_tri_ || (eng_.cfg_.partial && ht == Z(1));
    if (eng_.cfg_.partial && ht == Z(1))
      eng_.stats.ht1_pyramids_skipped.fetch_add(1, std::memory_order_relaxed);
    for (auto& word : members.w) word = 0;
    f.zeros.for_each([&](int p) { members.set(p); });
    members.set(i);
    eng_.stats.recursive_pyramids.fetch_add(1, std::memory_order_relaxed);
    ConeBuilder<Z> sub(eng_, pyramid_key(f, i), true, level_, false, suppress);
    sub.run();
    std::vector<Facet<Z>> fresh =
        sup_.filter_pyramid_hyperplanes(i, members, sub.support().facets);
    for (Facet<Z>& nf : fresh) accepted.push_back(std::move(nf));
  }
  sup_.commit_step(i, std::move(accepted));
}

template <class Z>
void ConeBuilder<Z>::run() {
  reorder_key();
  sup_.init_simplex();
  if (!suppress_tri_) add_first_simplex();
  else if (is_top_ && (eng_.cfg_.tasks & TASK_SERIES))
    throw internal_error("series run with suppressed triangulation");

  const int m = (int)sup_.key.size();
  const int d = sup_.dim;
  for (int i = d; i < m; ++i) {
    if (!omp_in_parallel()) eng_.maybe_flush();
    if (sup_.partition_values(i)) {
      sup_.mark_inside(i);
      continue;
    }
    const long long nn = (long long)sup_.neg.size();
    const long long np = (long long)sup_.pos.size();
    if (nn * np > eng_.cfg_.th.supp_complexity) pyramids_supp_ = true;

    if (pyramids_supp_ && recursion_) {
      if (!switched_) {
        ship_local_tri();
        switched_ = true;
      }
      process_pyrs_rec(i);
      continue;
    }

    if (!suppress_tri_) {
      if (nn * (long long)tri_.size() > eng_.cfg_.th.tri_complexity ||
          eng_.buffer_size_.load(std::memory_order_relaxed) > eng_.cfg_.th.simplex_buffer)
        pyramids_tri_ = true;
      if (pyramids_tri_) {
        if (!switched_) {
          ship_local_tri();
          switched_ = true;
        }
        process_pyrs(i);
      } else {
        extend_tri(i);
      }
    }
    // Nonrecursive pyramids do not report hyperplanes back, so the last
    // generator's Fourier-Motzkin step is skipped.
    const bool skip_last_fm = (i == m - 1) && !is_top_ && !recursion_;
    if (!skip_last_fm)
      sup_.fm_step(i);
    else
      sup_.processed = i + 1;
  }
  if (!switched_ && !suppress_tri_ && !is_top_) ship_local_tri();
}

// --------------------------------------------------------------------- Engine

template <class Z>
Engine<Z>::Engine(std::vector<Vec<Z>> gens, int dim, const Grading<Z>* grading, EngineCfg cfg)
    : gens_(std::move(gens)), dim_(dim), grading_(grading), cfg_(std::move(cfg)) {
  needs_tri_ = tasks_need_triangulation(cfg_.tasks);
  ectx_.gens = &gens_;
  ectx_.dim = dim_;
  ectx_.tasks = cfg_.tasks;
  ectx_.verify = cfg_.verify;
  ectx_.keep_tri = cfg_.keep_tri || (bool)cfg_.tri_sink;
  if (grading_) {
    ectx_.degrees = &grading_->degrees;
    ectx_.grading_form = &grading_->form;
  }
}

template <class Z>
void Engine<Z>::push_simplices(std::vector<SimplexRecord<Z>>&& batch) {
  if (batch.empty()) return;
  std::lock_guard<std::mutex> lk(buf_mu_);
  buffer_size_.fetch_add((long long)batch.size(), std::memory_order_relaxed);
  if (buffer_.empty())
    buffer_ = std::move(batch);
  else
    buffer_.insert(buffer_.end(), std::make_move_iterator(batch.begin()),
                   std::make_move_iterator(batch.end()));
}

template <class Z>
void Engine<Z>::store_pyramid(std::vector<int32_t>&& key, int level) {
  std::lock_guard<std::mutex> lk(pyr_mu_);
  if ((int)pyr_levels_.size() <= level) {
    pyr_levels_.resize(level + 1);
    pyr_counts_.resize(level + 1, 0);
  }
  pyr_levels_[level].push_back(std::move(key));
  ++pyr_counts_[level];
}

template <class Z>
long long Engine<Z>::pyramid_level_size(int level) {
  std::lock_guard<std::mutex> lk(pyr_mu_);
  if ((int)pyr_levels_.size() <= level) return 0;
  return (long long)pyr_levels_[level].size();
}

template <class Z>
std::vector<std::vector<int32_t>> Engine<Z>::take_pyramids(int level) {
  std::lock_guard<std::mutex> lk(pyr_mu_);
  if ((int)pyr_levels_.size() <= level) return {};
  return std::exchange(pyr_levels_[level], {});
}

template <class Z>
void Engine<Z>::maybe_flush() {
  if (omp_in_parallel()) return;
  if (buffer_size_.load(std::memory_order_relaxed) > cfg_.th.simplex_buffer) flush_buffer();
}

template <class Z>
void Engine<Z>::flush_buffer() {
  std::vector<SimplexRecord<Z>> items;
  {
    std::lock_guard<std::mutex> lk(buf_mu_);
    items = std::exchange(buffer_, {});
    buffer_size_.store(0, std::memory_order_relaxed);
  }
  if (items.empty()) return;
  const int nthreads = cfg_.parallel ? omp_get_max_threads() : 1;
  std::vector<EvalOutput<Z>> parts(nthreads);
  const long long n = (long long)items.size();
#pragma omp parallel for schedule(dynamic, 16) if (cfg_.parallel && n > 4)
  for (long long k = 0; k < n; ++k) {
    int tid = omp_in_parallel() ? omp_get_thread_num() : 0;
    evaluate_simplex(ectx_, items[k], parts[tid]);
  }
  if (cfg_.tri_sink) {
    std::vector<std::pair<std::vector<int32_t>, std::string>> batch;
    for (EvalOutput<Z>& p : parts)
      for (auto& [key, dv] : p.kept_tri) batch.emplace_back(key, num<Z>::str(dv));
    cfg_.tri_sink(batch);
    if (!cfg_.keep_tri)
      for (EvalOutput<Z>& p : parts) p.kept_tri.clear();
  }
  for (EvalOutput<Z>& p : parts) p.merge_into(total);
}

template <class Z>
void Engine<Z>::evaluate_pyrs(int level) {
  const long long chunk = 1024;
  for (;;) {
    std::vector<std::vector<int32_t>> batch = take_pyramids(level);
    if (batch.empty()) break;
    const long long n = (long long)batch.size();
    for (long long off = 0; off < n; off += chunk) {
      const long long end = std::min(n, off + chunk);
#pragma omp parallel for schedule(dynamic, 1) if (cfg_.parallel && end - off > 1)
      for (long long k = off; k < end; ++k) {
        ConeBuilder<Z> b(*this, std::move(batch[k]), false, level, false, false);
        b.run();
      }
      maybe_flush();
      if (pyramid_level_size(level + 1) > cfg_.th.pyramid_buffer) evaluate_pyrs(level + 1);
    }
  }
  if (pyramid_level_size(level + 1) > 0) evaluate_pyrs(level + 1);
}

template <class Z>
void Engine<Z>::run() {
  std::vector<int32_t> key(gens_.size());
  for (size_t i = 0; i < gens_.size(); ++i) key[i] = (int32_t)i;
  ConeBuilder<Z> top(*this, std::move(key), true, -1, true, false);
  top.run();
  if (needs_tri_) {
    top.ship_local_tri();
    evaluate_pyrs(0);
    flush_buffer();
  }
  top_facets = std::move(top.support().facets);
  const std::vector<int32_t>& topkey = top.support().key;
  std::vector<char> flags_local =
      extreme_ray_flags<Z>((int)topkey.size(), top_facets, dim_, cfg_.parallel);
  extreme.assign(gens_.size(), 0);
  for (size_t p = 0; p < topkey.size(); ++p) extreme[topkey[p]] = flags_local[p];
  pointed = detect_pointed(top_facets, dim_);
  {
    std::lock_guard<std::mutex> lk(pyr_mu_);
    stats.pyramids_per_level = pyr_counts_;
  }
}

#define LATCONE_INSTANTIATE(Z)                                                           \
  template std::pair<long long, Z> triangulation_checksum<Z>(                            \
      const std::vector<SimplexRecord<Z>>&);                                             \
  template class ConeBuilder<Z>;                                                         \
  template class Engine<Z>;

LATCONE_INSTANTIATE(CheckedInt)
LATCONE_INSTANTIATE(mpz_class)

#undef LATCONE_INSTANTIATE

}  // namespace latcone
