#include "shq/lweight.hpp"

#include "shq/smith.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace shq {

// ---------------------------------------------------------------- monomials

void LWeightMonomial::add(const SpectralIndex& s, long long e) {
    if (e == 0) return;
    auto [it, inserted] = exps_.emplace(s, e);
    if (!inserted) {
        it->second += e;
        if (it->second == 0) exps_.erase(it);
    }
}

LWeightMonomial LWeightMonomial::psi(int node, int shift, long long e) {
    LWeightMonomial m;
    m.add({node, shift}, e);
    return m;
}

LWeightMonomial LWeightMonomial::constant(const ConstantFactor& c) {
    LWeightMonomial m;
    m.cst_ = c;
    return m;
}

LWeightMonomial LWeightMonomial::from_exps(const ExponentMap& exps, const ConstantFactor& c) {
    LWeightMonomial m;
    for (const auto& [s, e] : exps) m.add(s, e);
    m.cst_ = c;
    return m;
}

long long LWeightMonomial::exponent(int node, int shift) const {
    auto it = exps_.find({node, shift});
    return it == exps_.end() ? 0 : it->second;
}

LWeightMonomial LWeightMonomial::operator*(const LWeightMonomial& o) const {
    LWeightMonomial r = *this;
    for (const auto& [s, e] : o.exps_) r.add(s, e);
    r.cst_ = cst_ * o.cst_;
    return r;
}

LWeightMonomial LWeightMonomial::operator/(const LWeightMonomial& o) const {
    return *this * o.inverse();
}

LWeightMonomial LWeightMonomial::inverse() const {
    LWeightMonomial r;
    for (const auto& [s, e] : exps_) r.exps_[s] = -e;
    r.cst_ = cst_.inverse();
    return r;
}

LWeightMonomial LWeightMonomial::pow(long long e) const {
    LWeightMonomial r;
    if (e == 0) return r;
    for (const auto& [s, x] : exps_) r.exps_[s] = x * e;
    r.cst_ = cst_.pow(e);
    return r;
}

LWeightMonomial LWeightMonomial::with_constant(const ConstantFactor& c) const {
    LWeightMonomial r = *this;
    r.cst_ = c;
    return r;
}

LWeightMonomial LWeightMonomial::shifted(int k) const {
    LWeightMonomial r;
    for (const auto& [s, e] : exps_) r.exps_[{s.node, s.shift + k}] = e;
    r.cst_ = cst_;
    return r;
}

std::map<int, long long> LWeightMonomial::node_exps(int node) const {
    std::map<int, long long> out;
    for (auto it = exps_.lower_bound({node, std::numeric_limits<int>::min()}); it != exps_.end() && it->first.node == node;
         ++it)
        out[it->first.shift] = it->second;
    return out;
}

bool LWeightMonomial::operator<(const LWeightMonomial& o) const {
    if (exps_ != o.exps_) return exps_ < o.exps_;
    return cst_ < o.cst_;
}

std::string LWeightMonomial::to_string() const {
    std::ostringstream os;
    bool any = false;
    if (!cst_.trivial()) {
        os << cst_.to_string();
        any = true;
    }
    for (const auto& [s, e] : exps_) {
        if (any) os << " ";
        any = true;
        os << "Psi(" << s.node << "," << s.shift << ")";
        if (e != 1) os << "^" << e;
    }
    return any ? os.str() : "1";
}

// ---------------------------------------------------------------- generators

GenKind parse_gen_kind(const std::string& s) {
    static const std::map<std::string, GenKind> names = {
        {"Psi", GenKind::Psi},       {"Y", GenKind::Y},         {"Ytilde", GenKind::Ytilde},
        {"A", GenKind::A},           {"Lambda", GenKind::Lambda}, {"Z", GenKind::Z},
        {"PsiTilde", GenKind::PsiTilde}, {"PsiStar", GenKind::PsiStar}};
    auto it = names.find(s);
    if (it == names.end()) throw std::invalid_argument("unknown generator kind '" + s + "'");
    return it->second;
}

namespace {

void check_node(const CartanData& cd, int node) {
    if (node < 1 || node > cd.n) throw std::out_of_range("node " + std::to_string(node) + " out of range");
}

LWeightMonomial omega_bar(int node, int ri) {
    return LWeightMonomial::constant(ConstantFactor::at(node, NodeConst::q(ri)));
}

LWeightMonomial alpha_bar(const CartanData& cd, int node, long long power) {
    ConstantFactor c;
    for (int j = 1; j <= cd.n; ++j) c.set(j, NodeConst::q(cd.b(j, node) * power));
    return LWeightMonomial::constant(c);
}

LWeightMonomial y_monomial(const CartanData& cd, int i, int r) {
    const int ri = cd.ri(i);
    return omega_bar(i, ri) * LWeightMonomial::psi(i, r - ri) * LWeightMonomial::psi(i, r + ri, -1);
}

}  // namespace

LWeightMonomial generator(const CartanData& cd, GenKind kind, int i, int r) {
    check_node(cd, i);
    const int ri = cd.ri(i);
    using M = LWeightMonomial;
    switch (kind) {
        case GenKind::Psi:
            return M::psi(i, r);
        case GenKind::Y:
            return y_monomial(cd, i, r);
        case GenKind::Ytilde:
            return M::psi(i, r - ri) * M::psi(i, r + ri, -1);
        case GenKind::A: {
            M m = alpha_bar(cd, i, 1);
            for (int j = 1; j <= cd.n; ++j) {
                const long long b = cd.b(i, j);
                if (b == 0) continue;
                m *= M::psi(j, static_cast<int>(r - b)) * M::psi(j, static_cast<int>(r + b), -1);
            }
            return m;
        }
        case GenKind::Lambda: {
            M m = M::psi(i, r - ri) * M::psi(i, r + ri);
            for (int j = 1; j <= cd.n; ++j) {
                if (j == i) continue;
                switch (cd.c(i, j)) {
                    case -1: m *= M::psi(j, r, -1); break;
                    case -2: m *= M::psi(j, r - 1, -1) * M::psi(j, r + 1, -1); break;
                    case -3: m *= M::psi(j, r - 2, -1) * M::psi(j, r, -1) * M::psi(j, r + 2, -1); break;
                    default: break;
                }
            }
            return m;
        }
        case GenKind::Z: {
            const int L = cd.lacing;
            if (ri == L) return y_monomial(cd, i, r);
            if (ri == L - 1) return y_monomial(cd, i, r - 1) * y_monomial(cd, i, r + 1);
            if (ri == L - 2) return y_monomial(cd, i, r - 2) * y_monomial(cd, i, r) * y_monomial(cd, i, r + 2);
            throw std::logic_error("unexpected lacing configuration");
        }
        case GenKind::PsiTilde: {
            M m = M::psi(i, r, -1);
            for (int j = 1; j <= cd.n; ++j) {
                if (j == i) continue;
                switch (cd.c(i, j)) {
                    case -1: m *= M::psi(j, r + ri); break;
                    case -2: m *= M::psi(j, r) * M::psi(j, r + 2); break;
                    case -3: m *= M::psi(j, r - 1) * M::psi(j, r + 1) * M::psi(j, r + 3); break;
                    default: break;
                }
            }
            return m;
        }
        case GenKind::PsiStar: {
            M m = M::psi(i, r, -1);
            for (int j = 1; j <= cd.n; ++j)
                if (cd.c(i, j) != 0) m *= M::psi(j, static_cast<int>(r - cd.b(i, j)));
            return m;
        }
    }
    throw std::logic_error("unreachable");
}

LWeightMonomial combine(const LWeightMonomial& m1, const LWeightMonomial& m2, int sign) {
    if (sign == 1) return m1 * m2;
    if (sign == -1) return m1 / m2;
    throw std::invalid_argument("combine sign must be +1 or -1");
}

std::vector<long long> coweight_of(const CartanData& cd, const LWeightMonomial& m) {
    std::vector<long long> w(cd.n, 0);
    for (const auto& [s, e] : m.exps()) {
        check_node(cd, s.node);
        w[s.node - 1] += e;
    }
    return w;
}

// ---------------------------------------------------------------- factoring

LWeightMonomial expand_in_basis(const CartanData& cd, const ExponentMap& v, Basis basis) {
    LWeightMonomial m;
    const GenKind kind = basis == Basis::A ? GenKind::A : GenKind::Lambda;
    for (const auto& [s, e] : v) m *= generator(cd, kind, s.node, s.shift).pow(e);
    return m;
}

namespace {

struct SparseRow {
    std::map<int, mpq_class> coef;
    mpq_class rhs;
};

// Gaussian elimination; returns nothing when inconsistent. Free unknowns are
// set to zero (the callers verify the result by re-expansion).
std::optional<std::vector<mpq_class>> solve_sparse(std::vector<SparseRow> rows, int ncols) {
    std::map<int, SparseRow> pivots;
    for (auto& row : rows) {
        // Eliminate existing pivot columns in ascending order.
        auto it = row.coef.begin();
        while (it != row.coef.end()) {
            auto p = pivots.find(it->first);
            if (p == pivots.end()) {
                ++it;
                continue;
            }
            const mpq_class f = it->second;
            const int col = it->first;
            for (const auto& [c, x] : p->second.coef) {
                mpq_class& slot = row.coef[c];
                slot -= f * x;
            }
            row.rhs -= f * p->second.rhs;
            for (auto jt = row.coef.begin(); jt != row.coef.end();) {
                if (jt->second == 0) jt = row.coef.erase(jt);
                else ++jt;
            }
            it = row.coef.upper_bound(col);
        }
        if (row.coef.empty()) {
            if (row.rhs != 0) return std::nullopt;
            continue;
        }
        const int lead = row.coef.begin()->first;
        const mpq_class inv = 1 / row.coef.begin()->second;
        for (auto& [c, x] : row.coef) x *= inv;
        row.rhs *= inv;
        pivots.emplace(lead, std::move(row));
    }
    std::vector<mpq_class> x(ncols, 0);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        mpq_class val = it->second.rhs;
        for (const auto& [c, a] : it->second.coef)
            if (c != it->first) val -= a * x[c];
        x[it->first] = val;
    }
    return x;
}

}  // namespace

std::optional<ExponentMap> factor_in_basis(const CartanData& cd, const LWeightMonomial& m, Basis basis) {
    const LWeightMonomial target = m.monomial_part();
    if (target.exps().empty()) return ExponentMap{};
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (const auto& [s, e] : target.exps()) {
        check_node(cd, s.node);
        lo = std::min(lo, s.shift);
        hi = std::max(hi, s.shift);
    }
    const int pad = static_cast<int>(cd.max_abs_b());
    const int wlo = lo - pad, whi = hi + pad;
    const int width = whi - wlo + 1;
    const GenKind kind = basis == Basis::A ? GenKind::A : GenKind::Lambda;

    // Column index of the unknown v_{i,u}; rows are keyed by Psi variables.
    std::map<SpectralIndex, SparseRow> eq;
    for (int i = 1; i <= cd.n; ++i)
        for (int u = wlo; u <= whi; ++u) {
            const int col = (i - 1) * width + (u - wlo);
            const LWeightMonomial g = generator(cd, kind, i, u);
            for (const auto& [s, e] : g.exps()) eq[s].coef[col] += static_cast<long>(e);
        }
    for (const auto& [s, e] : target.exps()) eq[s].rhs += static_cast<long>(e);
    std::vector<SparseRow> rows;
    rows.reserve(eq.size());
    for (auto& [s, row] : eq) {
        if (target.exps().count(s) == 0 && row.coef.empty()) continue;
        rows.push_back(std::move(row));
    }
    auto sol = solve_sparse(std::move(rows), cd.n * width);
    if (!sol) return std::nullopt;
    ExponentMap v;
    for (int col = 0; col < cd.n * width; ++col) {
        const mpq_class& x = (*sol)[col];
        if (x == 0) continue;
        if (x.get_den() != 1) return std::nullopt;
        v[{col / width + 1, wlo + col % width}] = x.get_num().get_si();
    }
    if (expand_in_basis(cd, v, basis).monomial_part() != target) return std::nullopt;
    return v;
}

// ---------------------------------------------------------------- dominance, orders

bool is_dominant(const CartanData& cd, const LWeightMonomial& m) {
    for (int i = 1; i <= cd.n; ++i) {
        const int step = 2 * cd.ri(i);
        // Per residue class, prefix sums in increasing shift must stay >= 0.
        std::map<int, long long> running;
        for (const auto& [shift, e] : m.node_exps(i)) {
            const int cls = ((shift % step) + step) % step;
            running[cls] += e;
            if (running[cls] < 0) return false;
        }
    }
    for (const auto& [s, e] : m.exps()) check_node(cd, s.node);
    return true;
}

bool leq(const CartanData& cd, const LWeightMonomial& lower, const LWeightMonomial& upper, Order order) {
    const auto v = factor_in_basis(cd, upper / lower, order == Order::Nakajima ? Basis::A : Basis::Lambda);
    if (!v) return false;
    return std::all_of(v->begin(), v->end(), [](const auto& kv) { return kv.second >= 0; });
}

std::vector<std::vector<long long>> sign_twist_group(const CartanData& cd) {
    return kernel_mod(transpose(cd.C), kZetaOrder);
}

bool is_sign_twist(const CartanData& cd, const ConstantFactor& c) {
    for (const auto& [j, x] : c.nodes()) {
        check_node(cd, j);
        if (x.q_exp.numerator() != 0) return false;
    }
    for (int i = 1; i <= cd.n; ++i) {
        long long s = 0;
        for (int j = 1; j <= cd.n; ++j) s += cd.c(j, i) * c.get(j).zeta_pow;
        if (s % kZetaOrder != 0) return false;
    }
    return true;
}

bool equal_mod_signtwist(const CartanData& cd, const LWeightMonomial& m1, const LWeightMonomial& m2) {
    if (m1.exps() != m2.exps()) return false;
    return is_sign_twist(cd, m1.cst() / m2.cst());
}

}  // namespace shq
