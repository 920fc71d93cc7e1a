#include <sstream>

#include "json.hpp"
#include "latcone/pipeline.hpp"

namespace latcone {

using nlohmann::json;

namespace {

std::vector<std::string> task_names(unsigned tasks) {
  std::vector<std::string> t;
  if (tasks & TASK_SUPP) t.push_back("supp");
  if (tasks & TASK_TRI) t.push_back("tri");
  if (tasks & TASK_VOLUME) t.push_back("volume");
  if (tasks & TASK_SERIES) t.push_back("series");
  if (tasks & TASK_BASIS) t.push_back("basis");
  if (tasks & TASK_DEG1) t.push_back("deg1");
  return t;
}

unsigned tasks_from_names(const std::vector<std::string>& names) {
  unsigned t = 0;
  for (const std::string& n : names) {
    if (n == "supp") t |= TASK_SUPP;
    else if (n == "tri") t |= TASK_TRI;
    else if (n == "volume") t |= TASK_VOLUME;
    else if (n == "series") t |= TASK_SERIES;
    else if (n == "basis") t |= TASK_BASIS;
    else if (n == "deg1") t |= TASK_DEG1;
  }
  return t;
}

void emit_rows(std::ostringstream& os, const std::vector<std::vector<std::string>>& rows) {
  for (const auto& r : rows) {
    os << " ";
    for (size_t i = 0; i < r.size(); ++i) os << " " << r[i];
    os << "\n";
  }
}

}  // namespace

std::string emit_text(const RunReport& r) {
  std::ostringstream os;
  os << "latcone report\n";
  os << "input: rows=" << r.input_rows << " dim=" << r.input_dim << " kind=" << r.input_kind;
  os << " tasks=";
  auto tn = task_names(r.tasks);
  for (size_t i = 0; i < tn.size(); ++i) os << (i ? "," : "") << tn[i];
  if (r.partial) os << " partial";
  os << "\n";
  os << "rank: " << r.rank << "\n";
  if (r.coordinates_reduced) {
    os << "coordinates reduced to rank " << r.rank << "; lattice basis of the span:\n";
    emit_rows(os, r.embedding);
  }
  os << "generators used: " << r.generators_used << "\n";
  os << "extreme rays: " << r.ext_count << "\n";
  emit_rows(os, r.extreme_rays);
  os << "support hyperplanes: " << r.supp_count << "\n";
  emit_rows(os, r.support_forms);
  if (r.graded) {
    os << "grading (" << (r.grading_implicit ? "implicit" : "explicit") << "):";
    for (const std::string& c : r.grading_form) os << " " << c;
    os << "\n";
  }
  if (r.full_triangulation) {
    os << "triangulation size: " << r.triangulation_size << "\n";
    os << "stanley components (sum of |det|): " << r.stanley_components << "\n";
  }
  if (r.has_volume)
    os << "normalized volume (multiplicity): " << r.volume_num << "/" << r.volume_den << "\n";
  if (r.series) {
    const SeriesReport& s = *r.series;
    os << "hilbert series, raw: numerator";
    for (const std::string& c : s.raw_numer) os << " " << c;
    os << " ; denominator exponents";
    for (long long e : s.raw_denom) os << " " << e;
    os << "\n";
    os << "hilbert series, cyclotomic: numerator";
    for (const std::string& c : s.cyc_numer) os << " " << c;
    os << " ; factors";
    for (const auto& [z, m] : s.cyc_factors) os << " zeta" << z << "^" << m;
    os << "\n";
    if (s.has_standard) {
      os << "hilbert series, standard: numerator";
      for (const std::string& c : s.std_numer) os << " " << c;
      os << " ; denominator exponents";
      for (long long e : s.std_denom) os << " " << e;
      os << "\n";
    }
    if (s.has_quasi) {
      os << "hilbert quasipolynomial: period " << s.quasi_period << ", common denominator "
         << s.quasi_den << "\n";
      for (size_t rr = 0; rr < s.quasi_coeff.size(); ++rr) {
        os << "  k=" << rr << " (mod " << s.quasi_period << "):";
        for (const std::string& c : s.quasi_coeff[rr]) os << " " << c;
        os << "\n";
      }
    }
  }
  if (r.eq13_checked)
    os << "volume/leading-coefficient check: " << (r.eq13_passed ? "passed" : "FAILED") << "\n";
  if (r.has_basis) {
    os << "hilbert basis: " << r.hilb_count << "\n";
    emit_rows(os, r.hilbert_basis);
  }
  if (r.has_deg1) {
    os << "degree-1 points: " << r.deg1_points.size() << "\n";
    emit_rows(os, r.deg1_points);
  }
  const auto& i = r.info;
  os << "informational: seconds=" << i.seconds << " threads=" << i.threads
     << " arithmetic=" << i.arithmetic << "\n";
  os << "  evaluated simplices=" << i.evaluated_simplices << " det-sum=" << i.evaluated_det_sum
     << "\n";
  os << "  unimodular=" << i.unimodular << " pu1=" << i.pu1_passed
     << " potentially-unimodular=" << i.potentially_unimodular << " nongeneric=" << i.nongeneric
     << "\n";
  os << "  det computed=" << i.det_computed << " inherited=" << i.det_inherited << "\n";
  os << "  pyramids per level:";
  for (long long p : i.pyramids_per_level) os << " " << p;
  os << " (recursive " << i.recursive_pyramids << ")\n";
  os << "  height-1 skipped: pyramids=" << i.ht1_pyramids_skipped
     << " simplices=" << i.ht1_simplices_skipped << "\n";
  return os.str();
}

std::string emit_machine(const RunReport& r) {
  json j;
  j["format"] = "latcone-report-v1";
  j["input"] = {{"rows", std::to_string(r.input_rows)},
                {"dim", std::to_string(r.input_dim)},
                {"kind", r.input_kind},
                {"tasks", task_names(r.tasks)},
                {"partial", r.partial}};
  j["geometry"] = {{"rank", std::to_string(r.rank)},
                   {"reduced", r.coordinates_reduced},
                   {"embedding", r.embedding},
                   {"generators_used", std::to_string(r.generators_used)},
                   {"ext_count", std::to_string(r.ext_count)},
                   {"supp_count", std::to_string(r.supp_count)},
                   {"support_hyperplanes", r.support_forms},
                   {"extreme_rays", r.extreme_rays}};
  j["grading"] = {{"present", r.graded},
                  {"implicit", r.grading_implicit},
                  {"form", r.grading_form}};
  j["triangulation"] = {{"full", r.full_triangulation},
                        {"size", r.triangulation_size},
                        {"stanley_components", r.stanley_components}};
  j["volume"] = {{"present", r.has_volume}, {"num", r.volume_num}, {"den", r.volume_den}};
  if (r.series) {
    const SeriesReport& s = *r.series;
    json fac = json::array();
    for (const auto& [z, m] : s.cyc_factors)
      fac.push_back({{"order", std::to_string(z)}, {"mult", std::to_string(m)}});
    json denom_raw = json::array();
    for (long long e : s.raw_denom) denom_raw.push_back(std::to_string(e));
    json denom_std = json::array();
    for (long long e : s.std_denom) denom_std.push_back(std::to_string(e));
    j["series"] = {{"raw_numer", s.raw_numer},
                   {"raw_denom", denom_raw},
                   {"cyc_numer", s.cyc_numer},
                   {"cyc_factors", fac},
                   {"has_standard", s.has_standard},
                   {"std_numer", s.std_numer},
                   {"std_denom", denom_std},
                   {"has_quasi", s.has_quasi},
                   {"quasi_period", std::to_string(s.quasi_period)},
                   {"quasi_den", s.quasi_den},
                   {"quasi_coeff", s.quasi_coeff}};
  } else {
    j["series"] = nullptr;
  }
  j["eq13"] = {{"checked", r.eq13_checked}, {"passed", r.eq13_passed}};
  j["hilbert_basis"] = {{"present", r.has_basis},
                        {"count", std::to_string(r.hilb_count)},
                        {"vectors", r.hilbert_basis}};
  j["deg1"] = {{"present", r.has_deg1}, {"vectors", r.deg1_points}};
  json pl = json::array();
  for (long long p : r.info.pyramids_per_level) pl.push_back(std::to_string(p));
  j["informational"] = {{"seconds", r.info.seconds},
                        {"threads", r.info.threads},
                        {"arithmetic", r.info.arithmetic},
                        {"pyramids_per_level", pl},
                        {"recursive_pyramids", std::to_string(r.info.recursive_pyramids)},
                        {"evaluated_simplices", std::to_string(r.info.evaluated_simplices)},
                        {"evaluated_det_sum", r.info.evaluated_det_sum},
                        {"unimodular", std::to_string(r.info.unimodular)},
                        {"pu1_passed", std::to_string(r.info.pu1_passed)},
                        {"potentially_unimodular", std::to_string(r.info.potentially_unimodular)},
                        {"nongeneric", std::to_string(r.info.nongeneric)},
                        {"det_computed", std::to_string(r.info.det_computed)},
                        {"det_inherited", std::to_string(r.info.det_inherited)},
                        {"ht1_pyramids_skipped", std::to_string(r.info.ht1_pyramids_skipped)},
                        {"ht1_simplices_skipped", std::to_string(r.info.ht1_simplices_skipped)}};
  return j.dump(1);
}

RunReport parse_machine_report(const std::string& text) {
  json j = json::parse(text);
  RunReport r;
  auto ll = [](const json& v) { return std::stoll(v.get<std::string>()); };
  auto rows = [](const json& v) { return v.get<std::vector<std::vector<std::string>>>(); };
  const json& in = j.at("input");
  r.input_rows = ll(in.at("rows"));
  r.input_dim = (int)ll(in.at("dim"));
  r.input_kind = in.at("kind").get<std::string>();
  r.tasks = tasks_from_names(in.at("tasks").get<std::vector<std::string>>());
  r.partial = in.at("partial").get<bool>();
  const json& ge = j.at("geometry");
  r.rank = (int)ll(ge.at("rank"));
  r.coordinates_reduced = ge.at("reduced").get<bool>();
  r.embedding = rows(ge.at("embedding"));
  r.generators_used = ll(ge.at("generators_used"));
  r.ext_count = ll(ge.at("ext_count"));
  r.supp_count = ll(ge.at("supp_count"));
  r.support_forms = rows(ge.at("support_hyperplanes"));
  r.extreme_rays = rows(ge.at("extreme_rays"));
  const json& gr = j.at("grading");
  r.graded = gr.at("present").get<bool>();
  r.grading_implicit = gr.at("implicit").get<bool>();
  r.grading_form = gr.at("form").get<std::vector<std::string>>();
  const json& tr = j.at("triangulation");
  r.full_triangulation = tr.at("full").get<bool>();
  r.triangulation_size = tr.at("size").get<std::string>();
  r.stanley_components = tr.at("stanley_components").get<std::string>();
  const json& vo = j.at("volume");
  r.has_volume = vo.at("present").get<bool>();
  r.volume_num = vo.at("num").get<std::string>();
  r.volume_den = vo.at("den").get<std::string>();
  if (!j.at("series").is_null()) {
    const json& se = j.at("series");
    SeriesReport s;
    s.raw_numer = se.at("raw_numer").get<std::vector<std::string>>();
    for (const json& e : se.at("raw_denom")) s.raw_denom.push_back(std::stoll(e.get<std::string>()));
    s.cyc_numer = se.at("cyc_numer").get<std::vector<std::string>>();
    for (const json& f : se.at("cyc_factors"))
      s.cyc_factors.emplace_back(std::stoll(f.at("order").get<std::string>()),
                                 (int)std::stoll(f.at("mult").get<std::string>()));
    s.has_standard = se.at("has_standard").get<bool>();
    s.std_numer = se.at("std_numer").get<std::vector<std::string>>();
    for (const json& e : se.at("std_denom")) s.std_denom.push_back(std::stoll(e.get<std::string>()));
    s.has_quasi = se.at("has_quasi").get<bool>();
    s.quasi_period = std::stoll(se.at("quasi_period").get<std::string>());
    s.quasi_den = se.at("quasi_den").get<std::string>();
    s.quasi_coeff = rows(se.at("quasi_coeff"));
    r.series = std::move(s);
  }
  r.eq13_checked = j.at("eq13").at("checked").get<bool>();
  r.eq13_passed = j.at("eq13").at("passed").get<bool>();
  const json& hb = j.at("hilbert_basis");
  r.has_basis = hb.at("present").get<bool>();
  r.hilb_count = ll(hb.at("count"));
  r.hilbert_basis = rows(hb.at("vectors"));
  r.has_deg1 = j.at("deg1").at("present").get<bool>();
  r.deg1_points = rows(j.at("deg1").at("vectors"));
  const json& info = j.at("informational");
  r.info.seconds = info.at("seconds").get<double>();
  r.info.threads = info.at("threads").get<int>();
  r.info.arithmetic = info.at("arithmetic").get<std::string>();
  for (const json& p : info.at("pyramids_per_level"))
    r.info.pyramids_per_level.push_back(std::stoll(p.get<std::string>()));
  r.info.recursive_pyramids = ll(info.at("recursive_pyramids"));
  r.info.evaluated_simplices = ll(info.at("evaluated_simplices"));
  r.info.evaluated_det_sum = info.at("evaluated_det_sum").get<std::string>();
  r.info.unimodular = ll(info.at("unimodular"));
  r.info.pu1_passed = ll(info.at("pu1_passed"));
  r.info.potentially_unimodular = ll(info.at("potentially_unimodular"));
  r.info.nongeneric = ll(info.at("nongeneric"));
  r.info.det_computed = ll(info.at("det_computed"));
  r.info.det_inherited = ll(info.at("det_inherited"));
  r.info.ht1_pyramids_skipped = ll(info.at("ht1_pyramids_skipped"));
  r.info.ht1_simplices_skipped = ll(info.at("ht1_simplices_skipped"));
  return r;
}

std::string machine_core(const std::string& machine_json) {
  json j = json::parse(machine_json);
  j.erase("informational");
  return j.dump(1);
}

}  // namespace latcone
