#pragma once

#include "shq/scalar.hpp"

#include <string>
#include <vector>

namespace shq {

using IntMatrix = std::vector<std::vector<long long>>;
using ScalarMatrix = std::vector<std::vector<ExactScalar>>;

// Finite-type Cartan data in Bourbaki numbering. Matrices and vectors are
// 0-based internally; node labels exposed through the API are 1-based.
struct CartanData {
    char family = 'A';
    int n = 0;
    IntMatrix C;               // C[i][j] = alpha_j(alpha_i^vee)
    std::vector<int> r;        // symmetrizing integers, q_i = q^{r_i}
    int lacing = 1;            // max r_i
    IntMatrix B;               // diag(r) * C, symmetric
    int dual_coxeter = 0;
    std::vector<int> bar;      // node involution from -w_0 (0-based)

    std::string label() const { return std::string(1, family) + std::to_string(n); }
    // 1-based accessors used throughout the combinatorial modules.
    long long c(int i, int j) const { return C[i - 1][j - 1]; }
    long long b(int i, int j) const { return B[i - 1][j - 1]; }
    int ri(int i) const { return r[i - 1]; }
    int bar_of(int i) const { return bar[i - 1] + 1; }
    long long max_abs_b() const;
};

// Throws std::invalid_argument for unsupported (family, rank).
CartanData build_cartan(char family, int rank);
// Parses labels such as "A1", "B2", "E6" or "B_2".
CartanData build_cartan(const std::string& label);

ExactScalar quantum_cartan(const CartanData& cd, int i, int j);  // 1-based
ScalarMatrix quantum_cartan_matrix(const CartanData& cd);
ScalarMatrix invert_quantum_cartan(const CartanData& cd);

// Exact inverse of a square matrix over Q(v); throws if singular.
ScalarMatrix invert_matrix(ScalarMatrix m);
ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b);

}  // namespace shq
