#include "shq/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

namespace shq {

namespace {

IntMatrix identity(size_t n) {
    IntMatrix I(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

long long mod(long long a, long long m) {
    a %= m;
    return a < 0 ? a + m : a;
}

// row_t <- row_t - f * row_s on both D and U.
void row_op(IntMatrix& D, IntMatrix& U, size_t t, size_t s, long long f) {
    for (size_t k = 0; k < D[t].size(); ++k) D[t][k] -= f * D[s][k];
    for (size_t k = 0; k < U[t].size(); ++k) U[t][k] -= f * U[s][k];
}

void col_op(IntMatrix& D, IntMatrix& V, size_t t, size_t s, long long f) {
    for (auto& row : D) row[t] -= f * row[s];
    for (auto& row : V) row[t] -= f * row[s];
}

void swap_rows(IntMatrix& D, IntMatrix& U, size_t a, size_t b) {
    std::swap(D[a], D[b]);
    std::swap(U[a], U[b]);
}

void swap_cols(IntMatrix& D, IntMatrix& V, size_t a, size_t b) {
    for (auto& row : D) std::swap(row[a], row[b]);
    for (auto& row : V) std::swap(row[a], row[b]);
}

}  // namespace

IntMatrix transpose(const IntMatrix& A) {
    if (A.empty()) return {};
    IntMatrix T(A[0].size(), std::vector<long long>(A.size()));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
    return T;
}

std::vector<mpq_class> solve_rational(const IntMatrix& A, const std::vector<mpq_class>& b) {
    const size_t n = A.size();
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m[i][j] = static_cast<long>(A[i][j]);
        m[i][n] = b[i];
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("singular integer matrix");
        std::swap(m[piv], m[col]);
        const mpq_class inv = 1 / m[col][col];
        for (auto& x : m[col]) x *= inv;
        for (size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            const mpq_class f = m[row][col];
            for (size_t k = col; k <= n; ++k) m[row][k] -= f * m[col][k];
        }
    }
    std::vector<mpq_class> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

SmithForm smith_normal_form(const IntMatrix& A) {
    const size_t n = A.size();
    const size_t m = n ? A[0].size() : 0;
    SmithForm s{identity(n), A, identity(m)};
    IntMatrix& D = s.D;
    for (size_t t = 0; t < std::min(n, m); ++t) {
        // Find the smallest nonzero entry in the remaining block.
        while (true) {
            size_t pi = n, pj = m;
            for (size_t i = t; i < n; ++i)
                for (size_t j = t; j < m; ++j)
                    if (D[i][j] != 0 && (pi == n || std::llabs(D[i][j]) < std::llabs(D[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == n) return s;
            swap_rows(D, s.U, t, pi);
            swap_cols(D, s.V, t, pj);
            bool clean = true;
            for (size_t i = t + 1; i < n; ++i) {
                if (D[i][t] == 0) continue;
                row_op(D, s.U, i, t, D[i][t] / D[t][t]);
                if (D[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < m; ++j) {
                if (D[t][j] == 0) continue;
                col_op(D, s.V, j, t, D[t][j] / D[t][t]);
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Enforce divisibility of the rest of the block by the pivot.
            bool divides = true;
            for (size_t i = t + 1; i < n && divides; ++i)
                for (size_t j = t + 1; j < m; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        for (size_t k = 0; k < m; ++k) D[t][k] += D[i][k];
                        for (size_t k = 0; k < n; ++k) s.U[t][k] += s.U[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t]) x = -x;
            for (auto& x : s.U[t]) x = -x;
        }
    }
    return s;
}

std::optional<std::vector<long long>> solve_mod(const IntMatrix& A, const std::vector<long long>& b, long long m) {
    const SmithForm s = smith_normal_form(A);
    const size_t n = A.size();
    // D y = U b (mod m), x = V y.
    std::vector<long long> ub(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) ub[i] = mod(ub[i] + s.U[i][k] * b[k], m);
    std::vector<long long> y(n, 0);
    for (size_t i = 0; i < n; ++i) {
        const long long d = mod(s.D[i][i], m);
        const long long g = std::gcd(d, m);
        if (ub[i] % g != 0) return std::nullopt;
        // Solve d y = ub (mod m) by search; m is tiny.
        bool found = false;
        for (long long c = 0; c < m; ++c)
            if (mod(d * c - ub[i], m) == 0) {
                y[i] = c;
                found = true;
                break;
            }
        if (!found) return std::nullopt;
    }
    std::vector<long long> x(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) x[i] = mod(x[i] + s.V[i][k] * y[k], m);
    return x;
}

std::vector<std::vector<long long>> kernel_mod(const IntMatrix& A, long long m) {
    const SmithForm s = smith_normal_form(A);
    const size_t n = A.size();
    // Kernel generators: V e_i * (m / gcd(d_i, m)).
    std::vector<std::vector<long long>> gens;
    for (size_t i = 0; i < n; ++i) {
        const long long g = std::gcd(mod(s.D[i][i], m), m);
        const long long step = m / g;
        if (step == m) continue;
        std::vector<long long> v(n);
        for (size_t k = 0; k < n; ++k) v[k] = mod(s.V[k][i] * step, m);
        gens.push_back(v);
    }
    std::set<std::vector<long long>> group{std::vector<long long>(n, 0)};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<long long>> current(group.begin(), group.end());
        for (const auto& x : current)
            for (const auto& g : gens) {
                std::vector<long long> y(n);
                for (size_t k = 0; k < n; ++k) y[k] = mod(x[k] + g[k], m);
                if (group.insert(y).second) grew = true;
            }
    }
    return {group.begin(), group.end()};
}

}  // namespace shq
