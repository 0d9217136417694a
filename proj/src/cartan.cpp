#include "shq/cartan.hpp"

#include <cctype>
#include <stdexcept>

namespace shq {

namespace {

void link(IntMatrix& C, int i, int j) {
    C[i][j] = -1;
    C[j][i] = -1;
}

}  // namespace

long long CartanData::max_abs_b() const {
    long long m = 0;
    for (const auto& row : B)
        for (long long x : row) m = std::max(m, x < 0 ? -x : x);
    return m;
}

CartanData build_cartan(char family, int rank) {
    family = static_cast<char>(std::toupper(static_cast<unsigned char>(family)));
    const int n = rank;
    auto reject = [&]() {
        throw std::invalid_argument("unsupported Cartan type " + std::string(1, family) + std::to_string(rank));
    };
    if (n < 1) reject();
    switch (family) {
        case 'A': break;
        case 'B':
        case 'C': if (n < 2) reject(); break;
        case 'D': if (n < 4) reject(); break;
        case 'E': if (n < 6 || n > 8) reject(); break;
        case 'F': if (n != 4) reject(); break;
        case 'G': if (n != 2) reject(); break;
        default: reject();
    }

    CartanData cd;
    cd.family = family;
    cd.n = n;
    cd.C.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) cd.C[i][i] = 2;
    cd.r.assign(n, 1);
    cd.bar.resize(n);
    for (int i = 0; i < n; ++i) cd.bar[i] = i;

    switch (family) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) link(cd.C, i, i + 1);
            for (int i = 0; i < n; ++i) cd.bar[i] = n - 1 - i;
            cd.dual_coxeter = n + 1;
            break;
        case 'B':
            for (int i = 0; i + 1 < n; ++i) link(cd.C, i, i + 1);
            cd.C[n - 1][n - 2] = -2;
            for (int i = 0; i + 1 < n; ++i) cd.r[i] = 2;
            cd.dual_coxeter = 2 * n - 1;
            break;
        case 'C':
            for (int i = 0; i + 1 < n; ++i) link(cd.C, i, i + 1);
            cd.C[n - 2][n - 1] = -2;
            cd.r[n - 1] = 2;
            cd.dual_coxeter = n + 1;
            break;
        case 'D':
            for (int i = 0; i + 2 < n; ++i) link(cd.C, i, i + 1);
            link(cd.C, n - 3, n - 1);
            if (n % 2 == 1) std::swap(cd.bar[n - 2], cd.bar[n - 1]);
            cd.dual_coxeter = 2 * n - 2;
            break;
        case 'E':
            link(cd.C, 0, 2);
            link(cd.C, 1, 3);
            for (int i = 2; i + 1 < n; ++i) link(cd.C, i, i + 1);
            if (n == 6) {
                std::swap(cd.bar[0], cd.bar[5]);
                std::swap(cd.bar[2], cd.bar[4]);
            }
            cd.dual_coxeter = n == 6 ? 12 : (n == 7 ? 18 : 30);
            break;
        case 'F':
            link(cd.C, 0, 1);
            link(cd.C, 2, 3);
            cd.C[1][2] = -1;
            cd.C[2][1] = -2;
            cd.r = {2, 2, 1, 1};
            cd.dual_coxeter = 9;
            break;
        case 'G':
            cd.C[0][1] = -3;
            cd.C[1][0] = -1;
            cd.r = {1, 3};
            cd.dual_coxeter = 4;
            break;
    }

    cd.lacing = 1;
    for (int x : cd.r) cd.lacing = std::max(cd.lacing, x);
    cd.B.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cd.B[i][j] = cd.r[i] * cd.C[i][j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cd.B[i][j] != cd.B[j][i]) throw std::logic_error("internal error: B not symmetric");
    return cd;
}

CartanData build_cartan(const std::string& label) {
    std::string s;
    for (char ch : label)
        if (ch != '_' && !std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.size() < 2 || !std::isalpha(static_cast<unsigned char>(s[0])))
        throw std::invalid_argument("malformed Cartan type label '" + label + "'");
    int rank = 0;
    try {
        size_t pos = 0;
        rank = std::stoi(s.substr(1), &pos);
        if (pos != s.size() - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed Cartan type label '" + label + "'");
    }
    return build_cartan(s[0], rank);
}

ExactScalar quantum_cartan(const CartanData& cd, int i, int j) {
    if (i < 1 || j < 1 || i > cd.n || j > cd.n) throw std::out_of_range("node out of range");
    if (i == j) return ExactScalar::qnum(2, cd.ri(i));
    return ExactScalar::qnum(static_cast<int>(cd.c(i, j)), 1);
}

ScalarMatrix quantum_cartan_matrix(const CartanData& cd) {
    ScalarMatrix m(cd.n, std::vector<ExactScalar>(cd.n));
    for (int i = 1; i <= cd.n; ++i)
        for (int j = 1; j <= cd.n; ++j) m[i - 1][j - 1] = quantum_cartan(cd, i, j);
    return m;
}

ScalarMatrix invert_matrix(ScalarMatrix m) {
    const size_t n = m.size();
    ScalarMatrix inv(n, std::vector<ExactScalar>(n));
    for (size_t i = 0; i < n; ++i) inv[i][i] = ExactScalar(1L);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        const ExactScalar p = m[col][col].inverse();
        for (size_t k = 0; k < n; ++k) {
            m[col][k] *= p;
            inv[col][k] *= p;
        }
        for (size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            const ExactScalar f = m[row][col];
            for (size_t k = 0; k < n; ++k) {
                if (!m[col][k].is_zero()) m[row][k] -= f * m[col][k];
                if (!inv[col][k].is_zero()) inv[row][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b) {
    const size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    ScalarMatrix c(n, std::vector<ExactScalar>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

ScalarMatrix invert_quantum_cartan(const CartanData& cd) {
    return invert_matrix(quantum_cartan_matrix(cd));
}

}  // namespace shq
