#include "latcone/families.hpp"

#include <sstream>
#include <vector>

#include "latcone/hilbert_series.hpp"

namespace latcone {

namespace {

void emit_rows(std::ostringstream& os, const std::vector<std::vector<long long>>& rows) {
  for (const auto& r : rows) {
    for (size_t j = 0; j < r.size(); ++j) os << (j ? " " : "") << r[j];
    os << "\n";
  }
}

}  // namespace

std::string magic_square_input(int s) {
  const int d = s * s;
  auto cell = [&](int r, int c) { return r * s + c; };
  std::vector<std::vector<long long>> sums;
  for (int r = 0; r < s; ++r) {
    std::vector<long long> v(d, 0);
    for (int c = 0; c < s; ++c) v[cell(r, c)] = 1;
    sums.push_back(std::move(v));
  }
  for (int c = 0; c < s; ++c) {
    std::vector<long long> v(d, 0);
    for (int r = 0; r < s; ++r) v[cell(r, c)] = 1;
    sums.push_back(std::move(v));
  }
  {
    std::vector<long long> v(d, 0);
    for (int r = 0; r < s; ++r) v[cell(r, r)] = 1;
    sums.push_back(std::move(v));
    std::vector<long long> w(d, 0);
    for (int r = 0; r < s; ++r) w[cell(r, s - 1 - r)] = 1;
    sums.push_back(std::move(w));
  }
  std::vector<std::vector<long long>> rows;
  // nonnegativity
  for (int i = 0; i < d; ++i) {
    std::vector<long long> v(d, 0);
    v[i] = 1;
    rows.push_back(std::move(v));
  }
  // every line sum equals the first row sum (pairs of inequalities)
  for (size_t k = 1; k < sums.size(); ++k) {
    std::vector<long long> diff(d, 0);
    for (int j = 0; j < d; ++j) diff[j] = sums[k][j] - sums[0][j];
    rows.push_back(diff);
    for (long long& x : diff) x = -x;
    rows.push_back(diff);
  }
  std::ostringstream os;
  os << rows.size() << " " << d << "\n";
  emit_rows(os, rows);
  os << "ineqs\n";
  return os.str();
}

std::string cross_polytope_input(int n) {
  const int d = n + 1;
  std::vector<std::vector<long long>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<long long> v(d, 0);
    v[i] = 1;
    v[d - 1] = 1;
    rows.push_back(v);
    v[i] = -1;
    rows.push_back(v);
  }
  std::ostringstream os;
  os << rows.size() << " " << d << "\n";
  emit_rows(os, rows);
  os << "gens\n";
  return os.str();
}

std::string cyclotomic_input(int n) {
  const Poly& phi = zeta_poly(n >= 2 ? n : 2);
  const int deg = n >= 2 ? (int)phi.size() - 1 : 1;
  const int d = deg + 1;
  // zeta^k reduced modulo the cyclotomic polynomial of order n
  std::vector<std::vector<mpz_class>> pow(n);
  std::vector<mpz_class> cur(deg, mpz_class(0));
  cur[0] = 1;
  for (int k = 0; k < n; ++k) {
    pow[k] = cur;
    // multiply by zeta
    std::vector<mpz_class> nxt(deg + 1, mpz_class(0));
    for (int j = 0; j < deg; ++j) nxt[j + 1] = cur[j];
    if (nxt[deg] != 0) {
      // subtract nxt[deg] * phi (monic of degree deg)
      mpz_class f = nxt[deg];
      for (int j = 0; j <= deg; ++j) mpz_submul(nxt[j].get_mpz_t(), f.get_mpz_t(), phi[j].get_mpz_t());
    }
    cur.assign(nxt.begin(), nxt.begin() + deg);
  }
  std::ostringstream os;
  os << n << " " << d << "\n";
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < deg; ++j) os << pow[k][j].get_str() << " ";
    os << 1 << "\n";
  }
  os << "gens\n";
  return os.str();
}

ParsedInput make_family(const std::string& name) {
  if (name == "4x4") return parse_input(magic_square_input(4));
  if (name == "5x5") return parse_input(magic_square_input(5));
  if (name == "6x6") return parse_input(magic_square_input(6));
  if (name.rfind("cross", 0) == 0) return parse_input(cross_polytope_input(std::stoi(name.substr(5))));
  if (name.rfind("cyclo", 0) == 0) return parse_input(cyclotomic_input(std::stoi(name.substr(5))));
  if (name.rfind("magic", 0) == 0) return parse_input(magic_square_input(std::stoi(name.substr(5))));
  throw parse_error("unknown example family: " + name);
}

}  // namespace latcone
