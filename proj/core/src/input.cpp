#include "latcone/input.hpp"

#include <cctype>
#include <sstream>

namespace latcone {

namespace {

struct Tokenizer {
  const std::string& text;
  size_t pos = 0;
  int line = 1;

  explicit Tokenizer(const std::string& t) : text(t) {}

  std::optional<std::string> next() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (std::isspace((unsigned char)c)) {
        ++pos;
      } else if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
    if (pos >= text.size()) return std::nullopt;
    size_t start = pos;
    while (pos < text.size() && !std::isspace((unsigned char)text[pos])) ++pos;
    return text.substr(start, pos - start);
  }
};

bool looks_like_integer(const std::string& s) {
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit((unsigned char)s[i])) return false;
  return true;
}

mpz_class parse_int(const std::string& tok, int line, const std::string& what) {
  if (!looks_like_integer(tok))
    throw parse_error("line " + std::to_string(line) + ": expected integer for " + what +
                      ", got '" + tok + "'");
  return mpz_class(tok);
}

}  // namespace

ParsedInput parse_input(const std::string& text) {
  Tokenizer tz(text);
  ParsedInput in;

  auto need = [&](const std::string& what) -> std::string {
    int at = tz.line;
    std::optional<std::string> t = tz.next();
    if (!t) throw parse_error("line " + std::to_string(at) + ": unexpected end of input (" +
                              what + ")");
    return *t;
  };

  mpz_class n = parse_int(need("row count"), tz.line, "row count");
  mpz_class d = parse_int(need("dimension"), tz.line, "dimension");
  if (n <= 0) throw parse_error("line 1: row count must be positive");
  if (d <= 0 || d > 4096) throw parse_error("line 1: dimension out of range");
  in.n = n.get_si();
  in.dim = (int)d.get_si();

  in.rows.resize(in.n);
  for (long long i = 0; i < in.n; ++i) {
    in.rows[i].resize(in.dim);
    for (int j = 0; j < in.dim; ++j) {
      int at = tz.line;
      std::string tok = need("row " + std::to_string(i + 1));
      if (!looks_like_integer(tok))
        throw parse_error("line " + std::to_string(at) + ": row " + std::to_string(i + 1) +
                          " has a non-integer entry '" + tok + "' (expected " +
                          std::to_string(in.dim) + " integers per row)");
      in.rows[i][j] = mpz_class(tok);
    }
  }

  std::string kind = need("input kind (gens | ineqs)");
  if (kind == "gens")
    in.inequalities = false;
  else if (kind == "ineqs")
    in.inequalities = true;
  else
    throw parse_error("line " + std::to_string(tz.line) + ": unknown input kind '" + kind +
                      "' (expected gens or ineqs)");

  std::optional<std::string> tok = tz.next();
  if (tok) {
    if (*tok != "grading")
      throw parse_error("line " + std::to_string(tz.line) + ": unexpected token '" + *tok + "'");
    Vec<mpz_class> g(in.dim);
    for (int j = 0; j < in.dim; ++j) g[j] = parse_int(need("grading"), tz.line, "grading");
    in.grading = std::move(g);
    std::optional<std::string> rest = tz.next();
    if (rest)
      throw parse_error("line " + std::to_string(tz.line) + ": trailing token '" + *rest + "'");
  }
  return in;
}

}  // namespace latcone
