// latcone: Hilbert bases, multiplicities and Hilbert/Ehrhart series of
// pointed rational cones, with a pyramid-decomposition triangulation engine.

#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "CLI11.hpp"
#include "latcone/families.hpp"
#include "latcone/pipeline.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitConsistency = 4;

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream f(path);
  if (!f) throw latcone::parse_error("cannot open input file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Hilbert bases, volumes and Hilbert series of rational cones"};
  app.require_subcommand(1);

  // ---- run ----
  auto* runc = app.add_subcommand("run", "run the pipeline on an input file");
  std::string input_path;
  runc->add_option("input", input_path, "input file (- for stdin)")->required();
  bool t_supp = false, t_tri = false, t_volume = false, t_series = false, t_basis = false,
       t_deg1 = false;
  runc->add_flag("--supp", t_supp, "support hyperplanes and extreme rays");
  runc->add_flag("--tri", t_tri, "triangulation (size and determinant sum)");
  runc->add_flag("--volume", t_volume, "normalized volume (multiplicity)");
  runc->add_flag("--series", t_series, "Hilbert/Ehrhart series and quasipolynomial");
  runc->add_flag("--basis", t_basis, "Hilbert basis");
  runc->add_flag("--deg1", t_deg1, "degree-1 lattice points");
  latcone::RunConfig cfg;
  runc->add_option("--threads", cfg.threads, "thread cap (0 = library default)");
  runc->add_flag("--partial", cfg.partial, "partial triangulation (basis/deg1 only)");
  runc->add_option("--threshold-supp", cfg.th.supp_complexity,
                   "recursive-pyramid complexity threshold");
  runc->add_option("--threshold-tri", cfg.th.tri_complexity,
                   "stored-pyramid complexity threshold");
  runc->add_option("--buffer-size", cfg.th.simplex_buffer, "evaluation buffer size");
  runc->add_option("--pyr-buffer", cfg.th.pyramid_buffer, "per-level pyramid buffer size");
  runc->add_option("--period-cap", cfg.period_cap, "quasipolynomial period cap");
  runc->add_option("--numerator-cap", cfg.numerator_cap, "standard-form numerator degree cap");
  bool verify = false;
  runc->add_flag("--verify", verify,
                 "recompute inherited determinants, cross-expand series forms");
  std::string tri_file;
  runc->add_option("--keep-triangulation", tri_file, "stream the triangulation to a file");
  std::string format = "text";
  runc->add_option("--format", format, "output format: text | machine")
      ->check(CLI::IsMember({"text", "machine"}));
  std::string out_path;
  runc->add_option("-o,--output", out_path, "output file (default stdout)");

  // ---- gen ----
  auto* genc = app.add_subcommand("gen", "emit a bundled example input");
  std::string family;
  genc->add_option("family", family, "4x4 | 5x5 | magicN | crossN | cycloN")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (genc->parsed()) {
      if (family == "4x4" || family == "5x5" || family == "6x6")
        std::cout << latcone::magic_square_input(family[0] - '0');
      else if (family.rfind("magic", 0) == 0)
        std::cout << latcone::magic_square_input(std::stoi(family.substr(5)));
      else if (family.rfind("cross", 0) == 0)
        std::cout << latcone::cross_polytope_input(std::stoi(family.substr(5)));
      else if (family.rfind("cyclo", 0) == 0)
        std::cout << latcone::cyclotomic_input(std::stoi(family.substr(5)));
      else {
        std::cerr << "unknown family: " << family << "\n";
        return kExitConfig;
      }
      return 0;
    }

    cfg.tasks = 0;
    if (t_supp) cfg.tasks |= latcone::TASK_SUPP;
    if (t_tri) cfg.tasks |= latcone::TASK_TRI;
    if (t_volume) cfg.tasks |= latcone::TASK_VOLUME;
    if (t_series) cfg.tasks |= latcone::TASK_SERIES;
    if (t_basis) cfg.tasks |= latcone::TASK_BASIS;
    if (t_deg1) cfg.tasks |= latcone::TASK_DEG1;
    if (cfg.tasks == 0) {
      std::cerr << "error: no tasks selected (pass at least one of --supp --tri --volume "
                   "--series --basis --deg1)\n";
      return kExitConfig;
    }
    cfg.verify = verify;

    std::ofstream tri_out;
    std::mutex tri_mu;
    if (!tri_file.empty()) {
      tri_out.open(tri_file);
      if (!tri_out) {
        std::cerr << "error: cannot open " << tri_file << "\n";
        return kExitConfig;
      }
      cfg.tri_sink = [&](const std::vector<std::pair<std::vector<int32_t>, std::string>>& batch) {
        std::lock_guard<std::mutex> lk(tri_mu);
        for (const auto& [key, det] : batch) {
          for (size_t i = 0; i < key.size(); ++i) tri_out << key[i] << " ";
          tri_out << det << "\n";
        }
      };
    }

    latcone::ParsedInput in = latcone::parse_input(read_all(input_path));
    latcone::RunReport rep = latcone::run(in, cfg);
    std::string text = format == "machine" ? latcone::emit_machine(rep) : latcone::emit_text(rep);
    if (out_path.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
      std::ofstream out(out_path);
      out << text;
    }
    return 0;
  } catch (const latcone::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const latcone::config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const latcone::not_pointed_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const latcone::consistency_error& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const latcone::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
