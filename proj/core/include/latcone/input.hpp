#pragma once

// Input grammar: header "n d", n rows of d integers, an input-kind keyword
// (gens | ineqs), then optionally "grading" followed by d integers.

#include <optional>
#include <string>

#include "latcone/vecmat.hpp"

namespace latcone {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedInput {
  long long n = 0;
  int dim = 0;
  std::vector<Vec<mpz_class>> rows;
  bool inequalities = false;
  std::optional<Vec<mpz_class>> grading;
};

ParsedInput parse_input(const std::string& text);

}  // namespace latcone
