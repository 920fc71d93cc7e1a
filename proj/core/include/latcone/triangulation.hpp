#pragma once

// Lexicographic triangulation through the mixed strategy: direct extension,
// recursive pyramids for support hyperplanes, and buffered nonrecursive
// pyramids evaluated level by level. Simplicial cones flow through a bounded
// buffer into the parallel evaluator; pyramids through per-level lists.

#include <atomic>
#include <functional>
#include <mutex>

#include "latcone/simplex_eval.hpp"

namespace latcone {

struct Thresholds {
  long long supp_complexity = 1'000'000;  // |H^<| * |H^>| before recursive pyramids
  long long tri_complexity = 100'000;     // |H^<| * |local triangulation| before stored pyramids
  long long simplex_buffer = 500'000;     // evaluation buffer flush size
  long long pyramid_buffer = 200'000;     // per-level early-evaluation size
};

struct EngineCfg {
  unsigned tasks = TASK_SUPP;
  bool partial = false;  // discard height-1 pyramids/simplices (basis/deg1 only)
  bool verify = false;
  bool parallel = true;
  bool keep_tri = false;
  Thresholds th;
  // Optional triangulation stream (called under a lock with batches).
  std::function<void(const std::vector<std::pair<std::vector<int32_t>, std::string>>&)> tri_sink;
};

struct EngineStats {
  std::atomic<long long> ht1_pyramids_skipped{0};
  std::atomic<long long> ht1_simplices_skipped{0};
  std::atomic<long long> recursive_pyramids{0};
  std::vector<long long> pyramids_per_level;  // finalized after the run
};

// Count and determinant sum of a simplex stream (order-independent checksum).
template <class Z>
std::pair<long long, Z> triangulation_checksum(const std::vector<SimplexRecord<Z>>& simplices);

template <class Z>
class Engine;

// One BuildCone instance: a cone over `key` (master indices), its own support
// hyperplanes and, while extension is still direct, its local triangulation.
template <class Z>
class ConeBuilder {
 public:
  ConeBuilder(Engine<Z>& eng, std::vector<int32_t> key, bool recursion, int level, bool is_top,
              bool suppress_tri);
  void run();

  SupportBuilder<Z>& support() { return sup_; }

 private:
  friend class Engine<Z>;

  struct LocalSimplex {
    std::vector<int32_t> pos;  // local positions, ascending
    Z det;                     // 0 = unknown
    Z height;                  // 0 = first simplex
    int added_with;            // local position, -1 for the first simplex
    bool det_inherited;
  };

  Engine<Z>& eng_;
  SupportBuilder<Z> sup_;
  bool recursion_;
  int level_;
  bool is_top_;
  bool suppress_tri_;
  bool pyramids_supp_ = false;  // sticky
  bool pyramids_tri_ = false;   // sticky
  bool switched_ = false;       // local triangulation shipped
  std::vector<LocalSimplex> tri_;

  void reorder_key();
  void add_first_simplex();
  void add_simplex(std::vector<int32_t>&& pos, Z det, Z height, int added_with, bool inherited,
                   std::vector<LocalSimplex>* sink);
  void ship_local_tri();
  SimplexRecord<Z> to_record(const LocalSimplex& s) const;
  void extend_tri(int i);
  void process_pyrs(int i);
  void process_pyrs_rec(int i);
  std::vector<int32_t> pyramid_key(const Facet<Z>& f, int i) const;
};

template <class Z>
class Engine {
 public:
  Engine(std::vector<Vec<Z>> gens, int dim, const Grading<Z>* grading, EngineCfg cfg);

  void run();

  // Results.
  std::vector<Facet<Z>> top_facets;
  std::vector<char> extreme;  // per master generator
  bool pointed = false;
  EvalOutput<Z> total;
  EngineStats stats;
  Vec<Z> order_vector;

  const std::vector<Vec<Z>>& gens() const { return gens_; }
  int dim() const { return dim_; }
  const EngineCfg& cfg() const { return cfg_; }
  bool needs_tri() const { return needs_tri_; }

 private:
  friend class ConeBuilder<Z>;

  std::vector<Vec<Z>> gens_;
  int dim_;
  const Grading<Z>* grading_;
  EngineCfg cfg_;
  bool needs_tri_;
  EvalContext<Z> ectx_;

  // Evaluation buffer.
  std::mutex buf_mu_;
  std::vector<SimplexRecord<Z>> buffer_;
  std::atomic<long long> buffer_size_{0};

  // Per-level pyramid lists.
  std::mutex pyr_mu_;
  std::vector<std::vector<std::vector<int32_t>>> pyr_levels_;
  std::vector<long long> pyr_counts_;

  void push_simplices(std::vector<SimplexRecord<Z>>&& batch);
  void store_pyramid(std::vector<int32_t>&& key, int level);
  long long pyramid_level_size(int level);
  std::vector<std::vector<int32_t>> take_pyramids(int level);
  void maybe_flush();
  void flush_buffer();
  void evaluate_pyrs(int level);
};

}  // namespace latcone
