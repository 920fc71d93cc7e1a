#pragma once

// End-to-end runs: inequality dualization, deduplication, coordinate
// reduction, grading resolution, the triangulation engine, series assembly,
// global Hilbert-basis reduction and the run report. Runs on checked 64-bit
// arithmetic first and restarts on GMP integers on overflow.

#include <optional>
#include <string>

#include "latcone/input.hpp"
#include "latcone/triangulation.hpp"

namespace latcone {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  unsigned tasks = 0;
  bool partial = false;
  bool verify = false;
  int threads = 0;  // 0 = library default
  Thresholds th;
  long long period_cap = 1'000'000;
  long long numerator_cap = 10'000;
  bool keep_tri = false;  // retain triangulation keys in the report structure
  std::function<void(const std::vector<std::pair<std::vector<int32_t>, std::string>>&)> tri_sink;
};

struct SeriesReport {
  std::vector<std::string> raw_numer;
  std::vector<long long> raw_denom;
  std::vector<std::string> cyc_numer;
  std::vector<std::pair<long long, int>> cyc_factors;
  bool has_standard = false;
  std::vector<std::string> std_numer;
  std::vector<long long> std_denom;
  bool has_quasi = false;
  long long quasi_period = 0;
  std::string quasi_den;
  std::vector<std::vector<std::string>> quasi_coeff;  // per residue class
};

struct RunReport {
  // input echo
  long long input_rows = 0;
  int input_dim = 0;
  std::string input_kind;  // "gens" | "ineqs"
  unsigned tasks = 0;
  bool partial = false;

  // geometry
  int rank = 0;
  bool coordinates_reduced = false;
  std::vector<std::vector<std::string>> embedding;  // rows: lattice basis of the span
  long long generators_used = 0;
  long long ext_count = 0;
  long long supp_count = 0;
  std::vector<std::vector<std::string>> support_forms;  // sorted, reduced coordinates
  std::vector<std::vector<std::string>> extreme_rays;   // sorted, original coordinates

  // grading
  bool graded = false;
  bool grading_implicit = false;
  std::vector<std::string> grading_form;  // reduced coordinates

  // triangulation (full runs only; deterministic)
  bool full_triangulation = false;
  std::string triangulation_size;
  std::string stanley_components;  // sum of |det|

  // volume
  bool has_volume = false;
  std::string volume_num, volume_den;

  std::optional<SeriesReport> series;
  bool eq13_checked = false;
  bool eq13_passed = false;

  bool has_basis = false;
  std::vector<std::vector<std::string>> hilbert_basis;  // sorted, original coordinates
  long long hilb_count = 0;
  bool has_deg1 = false;
  std::vector<std::vector<std::string>> deg1_points;  // sorted, original coordinates

  std::vector<std::pair<std::vector<int32_t>, std::string>> kept_triangulation;

  // thread- and timing-dependent fields (excluded from determinism checks)
  struct Info {
    double seconds = 0;
    int threads = 1;
    std::string arithmetic;  // "int64" | "gmp"
    std::vector<long long> pyramids_per_level;
    long long recursive_pyramids = 0;
    long long evaluated_simplices = 0;
    std::string evaluated_det_sum;
    long long unimodular = 0, pu1_passed = 0, potentially_unimodular = 0, nongeneric = 0;
    long long det_computed = 0, det_inherited = 0;
    long long ht1_pyramids_skipped = 0, ht1_simplices_skipped = 0;
  } info;
};

RunReport run(const ParsedInput& input, const RunConfig& cfg);

// Report emission. The machine format is JSON with every integer rendered as
// a decimal string; parse_machine_report round-trips it.
std::string emit_text(const RunReport& r);
std::string emit_machine(const RunReport& r);
RunReport parse_machine_report(const std::string& json_text);

// Machine report with the "informational" subobject stripped (the
// thread-dependent fields); used for determinism comparisons.
std::string machine_core(const std::string& machine_json);

}  // namespace latcone
