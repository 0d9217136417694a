#pragma once

#include "shq/cartan.hpp"

#include <optional>
#include <vector>

namespace shq {

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithForm {
    IntMatrix U, D, V;
};

SmithForm smith_normal_form(const IntMatrix& A);

// Solves A x = b (mod m) for square A; returns one solution or nothing.
std::optional<std::vector<long long>> solve_mod(const IntMatrix& A, const std::vector<long long>& b, long long m);

// All x in (Z/m)^n with A x = 0 (mod m), sorted, zero vector first.
std::vector<std::vector<long long>> kernel_mod(const IntMatrix& A, long long m);

IntMatrix transpose(const IntMatrix& A);

// Unique rational solution of A x = b for square nonsingular A.
std::vector<mpq_class> solve_rational(const IntMatrix& A, const std::vector<mpq_class>& b);

}  // namespace shq
