#pragma once

// Bundled input families: magic-square cones (as inequality systems), cross
// polytopes lifted to height 1, and cyclotomic monoids.

#include <string>

#include "latcone/input.hpp"

namespace latcone {

// s x s squares, all rows/columns/both diagonals with equal sum; equalities
// are encoded as inequality pairs. Dimension s*s.
std::string magic_square_input(int s);

// Generators (+-e_i, 1), i = 1..n, in dimension n+1.
std::string cross_polytope_input(int n);

// Generators (zeta^k, 1) for the order-n roots of unity, written in the
// integral basis 1, zeta, ..., zeta^(phi(n)-1) of Z[zeta]; dimension phi(n)+1.
std::string cyclotomic_input(int n);

// Convenience: build and parse in one step.
ParsedInput make_family(const std::string& name);

}  // namespace latcone
