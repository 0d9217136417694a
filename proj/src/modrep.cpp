#include "shq/modrep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace shq {

// ---------------------------------------------------------------------------
// Sparse linear algebra

void SparseMatrix::set(int row, int col, const ExactScalar& x) {
    if (x.is_zero()) {
        auto it = cols_.find(col);
        if (it != cols_.end()) {
            it->second.erase(row);
            if (it->second.empty()) cols_.erase(it);
        }
        return;
    }
    cols_[col][row] = x;
}

void SparseMatrix::add(int row, int col, const ExactScalar& x) { set(row, col, get(row, col) + x); }

ExactScalar SparseMatrix::get(int row, int col) const {
    auto it = cols_.find(col);
    if (it == cols_.end()) return ExactScalar(0L);
    auto jt = it->second.find(row);
    return jt == it->second.end() ? ExactScalar(0L) : jt->second;
}

SparseVector SparseMatrix::apply(const SparseVector& v) const {
    SparseVector out;
    for (const auto& [col, x] : v) {
        auto it = cols_.find(col);
        if (it == cols_.end()) continue;
        for (const auto& [row, a] : it->second) {
            ExactScalar y = out[row] + a * x;
            if (y.is_zero()) out.erase(row);
            else out[row] = y;
        }
    }
    return out;
}

bool SparseMatrix::is_diagonal() const {
    for (const auto& [col, entries] : cols_)
        for (const auto& [row, x] : entries)
            if (row != col) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Series expansions

namespace {

using Series = std::vector<ExactScalar>;

Series series_mul(const Series& a, const Series& b, int order) {
    Series out(order + 1, ExactScalar(0L));
    for (int i = 0; i <= order; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= order; ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

// (1 - w b)^e truncated at w^order.
Series binomial_series(const ExactScalar& b, long long e, int order) {
    Series s(order + 1, ExactScalar(0L));
    mpz_class coef = 1;
    ExactScalar bk(1L);
    for (int k = 0; k <= order; ++k) {
        if (e >= 0) {
            if (k > e) break;
            // C(e, k) (-b)^k
            s[k] = ExactScalar(mpq_class(coef)) * bk * ExactScalar(k % 2 ? -1L : 1L);
            coef = coef * static_cast<long>(e - k) / (k + 1);
        } else {
            // C(n + k - 1, k) b^k with n = -e
            s[k] = ExactScalar(mpq_class(coef)) * bk;
            coef = coef * static_cast<long>(-e + k) / (k + 1);
        }
        bk *= b;
    }
    return s;
}

Series expand(const ExactScalar& c, const std::map<int, long long>& factors, int order, int sign) {
    Series s(order + 1, ExactScalar(0L));
    s[0] = c;
    for (const auto& [shift, e] : factors) {
        if (e == 0) continue;
        s = series_mul(s, binomial_series(ExactScalar::q_power(sign * shift), e, order), order);
    }
    return s;
}

}  // namespace

std::vector<ExactScalar> expand_at_zero(const ExactScalar& c, const std::map<int, long long>& factors, int order) {
    return expand(c, factors, order, 1);
}

std::vector<ExactScalar> expand_at_infinity(const ExactScalar& c, const std::map<int, long long>& factors, int order) {
    // c prod (1 - z q^s)^e = c prod (-q^s)^e z^{deg} prod (1 - z^{-1} q^{-s})^e
    ExactScalar lead = c;
    for (const auto& [shift, e] : factors) lead *= (-ExactScalar::q_power(shift)).pow(static_cast<int>(e));
    return expand(lead, factors, order, -1);
}

// ---------------------------------------------------------------------------
// Module construction

ModuleKind parse_module_kind(const std::string& s) {
    static const std::map<std::string, ModuleKind> names = {
        {"osc_verma_plus", ModuleKind::OscVermaPlus}, {"osc_verma_minus", ModuleKind::OscVermaMinus},
        {"coproduct_plus", ModuleKind::CoproductPlus}, {"coproduct_minus", ModuleKind::CoproductMinus},
        {"eval_sl2", ModuleKind::EvalSl2},           {"psitilde", ModuleKind::PsiTilde},
        {"psistar", ModuleKind::PsiStar}};
    auto it = names.find(s);
    if (it == names.end()) throw std::invalid_argument("unknown module kind '" + s + "'");
    return it->second;
}

std::string module_kind_name(ModuleKind k) {
    switch (k) {
        case ModuleKind::OscVermaPlus: return "osc_verma_plus";
        case ModuleKind::OscVermaMinus: return "osc_verma_minus";
        case ModuleKind::CoproductPlus: return "coproduct_plus";
        case ModuleKind::CoproductMinus: return "coproduct_minus";
        case ModuleKind::EvalSl2: return "eval_sl2";
        case ModuleKind::PsiTilde: return "psitilde";
        case ModuleKind::PsiStar: return "psistar";
    }
    return "?";
}

std::string xname(int sign, int node, int mode) {
    return std::string("x") + (sign > 0 ? "+" : "-") + "[" + std::to_string(node) + "," + std::to_string(mode) + "]";
}

std::string phiname(int sign, int node, int mode) {
    return std::string("phi") + (sign > 0 ? "+" : "-") + "[" + std::to_string(node) + "," + std::to_string(mode) + "]";
}

namespace {

ExactScalar qdiff(int k = 1) { return ExactScalar::q_power(k) - ExactScalar::q_power(-k); }

ExactScalar unit() { return ExactScalar(1L); }

ConstantFactor qconst(int node, long long e) { return ConstantFactor::at(node, NodeConst::q(e)); }

// Rational eigenvalue c * prod_s (1 - z q^s)^{e_s} of a Cartan current.
struct Eigen {
    ExactScalar c;
    std::map<int, long long> factors;
    long long degree() const {
        long long d = 0;
        for (const auto& [s, e] : factors) d += e;
        return d;
    }
};

Eigen eigen_of(const LWeightMonomial& m, int node) {
    Eigen ev;
    ev.c = m.cst().get(node).to_scalar();
    ev.factors = m.node_exps(node);
    return ev;
}

class RelationBuilder {
public:
    explicit RelationBuilder(std::vector<Relation>& out) : out_(out) {}
    void add(const std::string& family, const std::string& label, std::vector<RelationTerm> terms) {
        std::erase_if(terms, [](const RelationTerm& t) { return t.coef.is_zero(); });
        out_.push_back({family, label, std::move(terms)});
    }

private:
    std::vector<Relation>& out_;
};

std::string lbl(std::initializer_list<long long> xs) {
    std::ostringstream os;
    bool first = true;
    for (long long x : xs) {
        os << (first ? "" : ",") << x;
        first = false;
    }
    return os.str();
}

// ---- oscillator algebras ----------------------------------------------------

// Verma module of the q-oscillator algebra. plus: [e,f] = k/(q-q^-1);
// minus: [e,f] = -k^{-1}/(q-q^-1).
void osc_matrices(bool plus, const ExactScalar& gamma, int N, SparseMatrix& e, SparseMatrix& f, SparseMatrix& k,
                  SparseMatrix& kinv) {
    e = f = k = kinv = SparseMatrix(N + 1);
    for (int r = 0; r <= N; ++r) {
        if (r > 0) e.set(r - 1, r, unit());
        if (r < N) {
            ExactScalar c = ExactScalar::qnum(r + 1) / qdiff();
            if (plus) c *= gamma * ExactScalar::q_power(-r);
            else c *= -gamma.inverse() * ExactScalar::q_power(r);
            f.set(r + 1, r, c);
        }
        k.set(r, r, gamma * ExactScalar::q_power(-2 * r));
        kinv.set(r, r, gamma.inverse() * ExactScalar::q_power(2 * r));
    }
}

void build_oscillator(ExplicitModule& m, bool plus, const ModuleParams& p, int N) {
    SparseMatrix e, f, k, kinv;
    osc_matrices(plus, p.gamma, N, e, f, k, kinv);
    for (int r = 0; r <= N; ++r) {
        m.basis.push_back("v" + std::to_string(r));
        m.weight.push_back(qconst(1, -2 * r));
    }
    m.gens["e"] = {e, {}, qconst(1, 2)};
    m.gens["f"] = {f, {N}, qconst(1, -2)};
    m.gens["k"] = {k, {}, {}};
    m.gens["kinv"] = {kinv, {}, {}};
    m.cutoff_note = "f is truncated at v" + std::to_string(N);

    RelationBuilder rb(m.relations);
    const ExactScalar d = qdiff();
    if (plus) rb.add("ef", "", {{unit(), {"e", "f"}}, {-unit(), {"f", "e"}}, {-d.inverse(), {"k"}}});
    else rb.add("ef", "", {{unit(), {"e", "f"}}, {-unit(), {"f", "e"}}, {d.inverse(), {"kinv"}}});
    rb.add("ke", "", {{unit(), {"k", "e"}}, {-ExactScalar::q_power(2), {"e", "k"}}});
    rb.add("kf", "", {{unit(), {"k", "f"}}, {-ExactScalar::q_power(-2), {"f", "k"}}});
    rb.add("kkinv", "", {{unit(), {"k", "kinv"}}, {-unit(), {}}});
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b, int nb) {
    SparseMatrix out(a.dim() * nb);
    for (const auto& [ca, ea] : a.columns())
        for (const auto& [ra, xa] : ea)
            for (const auto& [cb, eb] : b.columns())
                for (const auto& [rb, xb] : eb) out.add(ra * nb + rb, ca * nb + cb, xa * xb);
    return out;
}

SparseMatrix identity_matrix(int n) {
    SparseMatrix I(n);
    for (int i = 0; i < n; ++i) I.set(i, i, unit());
    return I;
}

SparseMatrix sum(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out = a;
    for (const auto& [c, entries] : b.columns())
        for (const auto& [r, x] : entries) out.add(r, c, x);
    return out;
}

// Tensor product of the two oscillator Vermas through the coproduct of
// U_q(sl2). plus: V(gamma) (x) W(beta) with E = e(x)1 + k^-1(x)e,
// F = f(x)k + 1(x)f. minus: W(beta) (x) V(gamma) with E = e(x)1 + k(x)e,
// F = f(x)k^-1 + 1(x)f. In both cases K = k(x)k.
void build_coproduct(ExplicitModule& m, bool plus, const ModuleParams& p, int N) {
    SparseMatrix e1, f1, k1, ki1, e2, f2, k2, ki2;
    if (plus) {
        osc_matrices(true, p.gamma, N, e1, f1, k1, ki1);
        osc_matrices(false, p.beta, N, e2, f2, k2, ki2);
    } else {
        osc_matrices(false, p.beta, N, e1, f1, k1, ki1);
        osc_matrices(true, p.gamma, N, e2, f2, k2, ki2);
    }
    const int n = N + 1;
    const SparseMatrix I = identity_matrix(n);
    GenMatrix E, F, K, Kinv;
    if (plus) {
        E.mat = sum(kron(e1, I, n), kron(ki1, e2, n));
        F.mat = sum(kron(f1, k2, n), kron(I, f2, n));
    } else {
        E.mat = sum(kron(e1, I, n), kron(k1, e2, n));
        F.mat = sum(kron(f1, ki2, n), kron(I, f2, n));
    }
    K.mat = kron(k1, k2, n);
    Kinv.mat = kron(ki1, ki2, n);
    E.weight_shift = qconst(1, 2);
    F.weight_shift = qconst(1, -2);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            m.basis.push_back("v" + std::to_string(r) + "(x)v" + std::to_string(s));
            m.weight.push_back(qconst(1, -2 * (r + s)));
            if (r == N || s == N) F.polluted.insert(r * n + s);
        }
    m.gens["E"] = E;
    m.gens["F"] = F;
    m.gens["K"] = K;
    m.gens["Kinv"] = Kinv;
    m.cutoff_note = "F is truncated where either factor reaches v" + std::to_string(N);

    RelationBuilder rb(m.relations);
    const ExactScalar dinv = qdiff().inverse();
    rb.add("EF", "", {{unit(), {"E", "F"}}, {-unit(), {"F", "E"}}, {-dinv, {"K"}}, {dinv, {"Kinv"}}});
    rb.add("KE", "", {{unit(), {"K", "E"}}, {-ExactScalar::q_power(2), {"E", "K"}}});
    rb.add("KF", "", {{unit(), {"K", "F"}}, {-ExactScalar::q_power(-2), {"F", "K"}}});
    rb.add("KKinv", "", {{unit(), {"K", "Kinv"}}, {-unit(), {}}});
}

// ---- Drinfeld-type modules --------------------------------------------------

struct DrinfeldData {
    CartanData cd;
    int dim = 0;
    // eigen[node - 1][basis index]
    std::vector<std::vector<Eigen>> eigen;
    std::vector<long long> alpha_mu;  // degree of each current, 0-based nodes
};

// Range of Cartan modes that are materialized.
int phi_range(int M) { return 2 * M + 2; }

void add_cartan_currents(ExplicitModule& m, DrinfeldData& dd, int M) {
    const int R = phi_range(M);
    dd.alpha_mu.assign(dd.cd.n, 0);
    for (int j = 1; j <= dd.cd.n; ++j) {
        const auto& ev = dd.eigen[j - 1];
        const long long deg = ev.front().degree();
        for (const auto& e : ev)
            if (e.degree() != deg) throw std::logic_error("Cartan current degrees differ across the module");
        dd.alpha_mu[j - 1] = deg;
        std::vector<SparseMatrix> plus(2 * R + 1, SparseMatrix(dd.dim)), minus(2 * R + 1, SparseMatrix(dd.dim));
        const int order = R + static_cast<int>(std::abs(deg)) + 1;
        for (int b = 0; b < dd.dim; ++b) {
            const Series s0 = expand_at_zero(ev[b].c, ev[b].factors, order);
            const Series si = expand_at_infinity(ev[b].c, ev[b].factors, order);
            for (int S = -R; S <= R; ++S) {
                if (S >= 0 && S <= order) plus[S + R].set(b, b, s0[S]);
                const long long k = deg - S;
                if (k >= 0 && k <= order) minus[S + R].set(b, b, si[k]);
            }
        }
        for (int S = -R; S <= R; ++S) {
            m.gens[phiname(1, j, S)] = {plus[S + R], {}, {}};
            m.gens[phiname(-1, j, S)] = {minus[S + R], {}, {}};
        }
    }
}

// Full relation suite for a module of the shifted quantum affine algebra with
// mu_+ = 0 and mu_- = mu.
void add_drinfeld_relations(ExplicitModule& m, const DrinfeldData& dd, int M) {
    const CartanData& cd = dd.cd;
    RelationBuilder rb(m.relations);
    const int n = cd.n;
    auto qB = [&](int i, int j, int sign) { return ExactScalar::q_power(sign * static_cast<int>(cd.b(i, j))); };

    // Cartan currents commute.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int e1 : {1, -1})
                for (int e2 : {1, -1})
                    for (int S = -2; S <= 2; ++S)
                        for (int T = -2; T <= 2; ++T) {
                            const int s1 = e1 > 0 ? S : static_cast<int>(dd.alpha_mu[i - 1]) - S;
                            const int s2 = e2 > 0 ? T : static_cast<int>(dd.alpha_mu[j - 1]) - T;
                            rb.add("cartan_commute", lbl({i, j, e1, e2, s1, s2}),
                                   {{unit(), {phiname(e1, i, s1), phiname(e2, j, s2)}},
                                    {-unit(), {phiname(e2, j, s2), phiname(e1, i, s1)}}});
                        }

    // Leading Cartan modes against x^{+-}.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int sg : {1, -1})
                for (int r = -M; r <= M; ++r) {
                    const std::string x = xname(sg, j, r);
                    const std::string p0 = phiname(1, i, 0);
                    const std::string pm = phiname(-1, i, static_cast<int>(dd.alpha_mu[i - 1]));
                    rb.add("cartan_conjugation", lbl({i, j, sg, r, 1}), {{unit(), {p0, x}}, {-qB(i, j, sg), {x, p0}}});
                    rb.add("cartan_conjugation", lbl({i, j, sg, r, -1}), {{unit(), {pm, x}}, {-qB(i, j, -sg), {x, pm}}});
                }

    // [x+_{i,r}, x-_{j,s}] = delta_ij (phi+_{i,r+s} - phi-_{i,r+s}) / (q_i - q_i^-1).
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int r = -M; r <= M; ++r)
                for (int s = -M; s <= M; ++s) {
                    std::vector<RelationTerm> t = {{unit(), {xname(1, i, r), xname(-1, j, s)}},
                                                   {-unit(), {xname(-1, j, s), xname(1, i, r)}}};
                    if (i == j) {
                        const ExactScalar c = qdiff(cd.ri(i)).inverse();
                        t.push_back({-c, {phiname(1, i, r + s)}});
                        t.push_back({c, {phiname(-1, i, r + s)}});
                    }
                    rb.add("xplus_xminus", lbl({i, j, r, s}), t);
                }

    // x_{i,r+1} x_{j,s} - q^{+-B} x_{j,s} x_{i,r+1} = q^{+-B} x_{i,r} x_{j,s+1} - x_{j,s+1} x_{i,r}.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int sg : {1, -1})
                for (int r = -M; r < M; ++r)
                    for (int s = -M; s < M; ++s) {
                        const ExactScalar c = qB(i, j, sg);
                        rb.add("x_exchange", lbl({i, j, sg, r, s}),
                               {{unit(), {xname(sg, i, r + 1), xname(sg, j, s)}},
                                {-c, {xname(sg, j, s), xname(sg, i, r + 1)}},
                                {-c, {xname(sg, i, r), xname(sg, j, s + 1)}},
                                {unit(), {xname(sg, j, s + 1), xname(sg, i, r)}}});
                    }

    // Current form of the Cartan / x^{+-} relation, coefficient of z^S w^T in
    // (w - q^{+-B} z) phi_i(z) x_j(w) = (q^{+-B} w - z) x_j(w) phi_i(z).
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int eps : {1, -1})
                for (int sg : {1, -1})
                    for (int S = -M; S <= M + 1; ++S)
                        for (int T = -M + 1; T <= M; ++T) {
                            const ExactScalar c = qB(i, j, sg);
                            const std::string pS = phiname(eps, i, S), pS1 = phiname(eps, i, S - 1);
                            const std::string xT = xname(sg, j, T), xT1 = xname(sg, j, T - 1);
                            rb.add("cartan_current", lbl({i, j, eps, sg, S, T}),
                                   {{unit(), {pS, xT1}},
                                    {-c, {pS1, xT}},
                                    {-c, {xT1, pS}},
                                    {unit(), {xT, pS1}}});
                        }

    // Serre relations, symmetrized over a small set of modes.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j || cd.c(i, j) == 0) continue;
            const int s = static_cast<int>(1 - cd.c(i, j));
            for (int sg : {1, -1}) {
                std::vector<int> modes(s, 0);
                // mode tuples with entries in {0, 1}, up to symmetry (non-decreasing)
                for (int ones = 0; ones <= s; ++ones)
                    for (int rj : {0, 1}) {
                        for (int t = 0; t < s; ++t) modes[t] = t < s - ones ? 0 : 1;
                        std::vector<RelationTerm> terms;
                        std::vector<int> perm = modes;
                        do {
                            for (int k = 0; k <= s; ++k) {
                                std::vector<std::string> word;
                                for (int t = 0; t < k; ++t) word.push_back(xname(sg, i, perm[t]));
                                word.push_back(xname(sg, j, rj));
                                for (int t = k; t < s; ++t) word.push_back(xname(sg, i, perm[t]));
                                ExactScalar c = ExactScalar::qbinom(s, k, cd.ri(i));
                                if (k % 2) c = -c;
                                terms.push_back({c, word});
                            }
                        } while (std::next_permutation(perm.begin(), perm.end()));
                        rb.add("serre", lbl({i, j, sg, ones, rj}), terms);
                    }
            }
        }
}

void register_x(ExplicitModule& m, const CartanData& cd, int node, int sign, int r, SparseMatrix mat,
                std::set<int> polluted = {}) {
    GenMatrix g{std::move(mat), std::move(polluted), {}};
    for (int j = 1; j <= cd.n; ++j)
        if (cd.b(node, j) != 0) g.weight_shift.set(j, NodeConst::q(sign * cd.b(node, j)));
    m.gens[xname(sign, node, r)] = g;
}

void finish_drinfeld(ExplicitModule& m, DrinfeldData& dd, int M) {
    // Nodes without explicit action act by zero.
    for (int j = 1; j <= dd.cd.n; ++j)
        for (int sg : {1, -1})
            for (int r = -M; r <= M; ++r)
                if (!m.gens.count(xname(sg, j, r))) register_x(m, dd.cd, j, sg, r, SparseMatrix(dd.dim));
    add_cartan_currents(m, dd, M);
    add_drinfeld_relations(m, dd, M);
}

// Evaluation module of U^{-omega}(sl2-hat) on the oscillator Verma V(gamma):
// x+_m = a'^m e k^m, x-_m = a'^m k^m f with a' = a q^2 / gamma.
void build_eval_sl2(ExplicitModule& m, const ModuleParams& p, int N, int M) {
    DrinfeldData dd{build_cartan('A', 1), N + 1, {}, {}};
    dd.eigen.assign(1, {});
    const ExactScalar a = ExactScalar::q_power(p.shift);
    for (int j = 0; j <= N; ++j) {
        m.basis.push_back("v" + std::to_string(j));
        m.weight.push_back(qconst(1, -2 * j));
        Eigen ev;
        ev.c = p.gamma * ExactScalar::q_power(-2 * j);
        ev.factors[p.shift + 2] += 1;
        ev.factors[p.shift + 2 - 2 * j] -= 1;
        ev.factors[p.shift - 2 * j] -= 1;
        std::erase_if(ev.factors, [](const auto& kv) { return kv.second == 0; });
        dd.eigen[0].push_back(ev);
    }
    for (int r = -M; r <= M; ++r) {
        SparseMatrix xp(N + 1), xm(N + 1);
        for (int j = 0; j <= N; ++j) {
            // e k^r v_j = (gamma q^{-2j})^r v_{j-1}; k^r f v_j = (gamma q^{-2j-2})^r c_j v_{j+1}
            if (j > 0) xp.set(j - 1, j, (a * ExactScalar::q_power(2 - 2 * j)).pow(r));
            if (j < N) {
                const ExactScalar cj = p.gamma * ExactScalar::q_power(-j) * ExactScalar::qnum(j + 1) / qdiff();
                xm.set(j + 1, j, (a * ExactScalar::q_power(-2 * j)).pow(r) * cj);
            }
        }
        register_x(m, dd.cd, 1, 1, r, xp);
        register_x(m, dd.cd, 1, -1, r, xm, {N});
    }
    m.cutoff_note = "x- is truncated at v" + std::to_string(N);
    finish_drinfeld(m, dd, M);
}

// Module with basis v_0, v_1, ... and l-weights Psitilde * prod_{t<m} A^{-1}_{i, r - 2 r_i t}.
void build_psitilde(ExplicitModule& m, const ModuleParams& p, int N, int M) {
    DrinfeldData dd{build_cartan(p.type), N + 1, {}, {}};
    const CartanData& cd = dd.cd;
    const int i = p.node, ri = cd.ri(i);
    dd.eigen.assign(cd.n, {});
    LWeightMonomial w = generator(cd, GenKind::PsiTilde, i, p.shift);
    for (int k = 0; k <= N; ++k) {
        m.basis.push_back("v" + std::to_string(k));
        m.weight.push_back(w.cst());
        m.lweights.push_back(w);
        for (int j = 1; j <= cd.n; ++j) dd.eigen[j - 1].push_back(eigen_of(w, j));
        w = w / generator(cd, GenKind::A, i, p.shift - 2 * ri * k);
    }
    const ExactScalar a = ExactScalar::q_power(p.shift);
    const ExactScalar qi = ExactScalar::q_power(ri);
    for (int s = -M; s <= M; ++s) {
        SparseMatrix xp(N + 1), xm(N + 1);
        for (int k = 0; k <= N; ++k) {
            if (k > 0) xp.set(k - 1, k, a.pow(s) * qi.pow(2 * s * (1 - k)));
            if (k < N)
                xm.set(k + 1, k, a.pow(s) * qi.pow(-(2 * s + 1) * k) * ExactScalar::qnum(k + 1, ri) / qdiff(ri));
        }
        register_x(m, cd, i, 1, s, xp);
        register_x(m, cd, i, -1, s, xm, {N});
    }
    m.cutoff_note = "x- is truncated at v" + std::to_string(N);
    finish_drinfeld(m, dd, M);
}

// Two-dimensional module with l-weights Psistar and Psistar * A^{-1}_{i,r}.
void build_psistar(ExplicitModule& m, const ModuleParams& p, int M) {
    DrinfeldData dd{build_cartan(p.type), 2, {}, {}};
    const CartanData& cd = dd.cd;
    const int i = p.node;
    dd.eigen.assign(cd.n, {});
    const LWeightMonomial w0 = generator(cd, GenKind::PsiStar, i, p.shift);
    const LWeightMonomial w1 = w0 / generator(cd, GenKind::A, i, p.shift);
    for (const auto& w : {w0, w1}) {
        m.basis.push_back(m.basis.empty() ? "v0" : "v1");
        m.weight.push_back(w.cst());
        m.lweights.push_back(w);
        for (int j = 1; j <= cd.n; ++j) dd.eigen[j - 1].push_back(eigen_of(w, j));
    }
    const ExactScalar a = ExactScalar::q_power(p.shift);
    for (int s = -M; s <= M; ++s) {
        SparseMatrix xp(2), xm(2);
        xp.set(0, 1, a.pow(s) * ExactScalar::q_power(-cd.ri(i)));
        xm.set(1, 0, a.pow(s));
        register_x(m, cd, i, 1, s, xp);
        register_x(m, cd, i, -1, s, xm);
    }
    m.cutoff_note = "finite-dimensional, no truncation";
    finish_drinfeld(m, dd, M);
}

}  // namespace

ExplicitModule build_module(ModuleKind kind, const ModuleParams& params, int cutoff, int mode_window) {
    if (cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
    if (mode_window < 1) throw std::invalid_argument("mode window must be at least 1");
    if (params.gamma.is_zero() || params.beta.is_zero()) throw std::invalid_argument("oscillator parameter must be nonzero");
    ExplicitModule m;
    m.kind = kind;
    m.cutoff = cutoff;
    m.mode_window = mode_window;
    switch (kind) {
        case ModuleKind::OscVermaPlus: build_oscillator(m, true, params, cutoff); break;
        case ModuleKind::OscVermaMinus: build_oscillator(m, false, params, cutoff); break;
        case ModuleKind::CoproductPlus: build_coproduct(m, true, params, cutoff); break;
        case ModuleKind::CoproductMinus: build_coproduct(m, false, params, cutoff); break;
        case ModuleKind::EvalSl2: build_eval_sl2(m, params, cutoff, mode_window); break;
        case ModuleKind::PsiTilde:
        case ModuleKind::PsiStar: {
            const CartanData cd = build_cartan(params.type);
            if (params.node < 1 || params.node > cd.n) throw std::invalid_argument("node out of range");
            if (kind == ModuleKind::PsiTilde) build_psitilde(m, params, cutoff, mode_window);
            else build_psistar(m, params, mode_window);
            break;
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Relation checking

namespace {

// Applies the word right to left to e_col; nothing if a truncated image is met.
std::optional<SparseVector> apply_word(const ExplicitModule& m, const std::vector<std::string>& word, int col) {
    SparseVector v{{col, unit()}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        auto g = m.gens.find(*it);
        if (g == m.gens.end()) throw std::logic_error("relation uses unknown generator " + *it);
        for (int p : g->second.polluted)
            if (v.count(p)) return std::nullopt;
        v = g->second.mat.apply(v);
        if (v.empty()) break;
    }
    return v;
}

}  // namespace

RelationReport check_relations(const ExplicitModule& m, const std::set<std::string>& families) {
    RelationReport rep;
    const int dim = static_cast<int>(m.basis.size());

    for (const auto& [name, g] : m.gens) {
        for (const auto& [col, entries] : g.mat.columns())
            for (const auto& [row, x] : entries)
                if (m.weight[row] != m.weight[col] * g.weight_shift && rep.grading_ok) {
                    rep.grading_ok = false;
                    rep.grading_detail = name + " maps " + m.basis[col] + " to " + m.basis[row];
                }
    }
    if (!rep.grading_ok) rep.ok = false;

    std::set<std::string> failed_families;
    for (const auto& rel : m.relations) {
        if (!families.empty() && !families.count(rel.family)) continue;
        ++rep.relations_checked;
        ++rep.per_family[rel.family];
        bool reported = failed_families.count(rel.family) > 0;
        for (int col = 0; col < dim; ++col) {
            SparseVector total;
            bool skip = false;
            for (const auto& term : rel.terms) {
                auto v = apply_word(m, term.word, col);
                if (!v) {
                    skip = true;
                    break;
                }
                for (const auto& [row, x] : *v) {
                    ExactScalar y = total[row] + term.coef * x;
                    if (y.is_zero()) total.erase(row);
                    else total[row] = y;
                }
            }
            if (skip) {
                ++rep.columns_skipped;
                continue;
            }
            ++rep.columns_checked;
            if (!total.empty()) {
                rep.ok = false;
                if (!reported) {
                    const auto& [row, x] = *total.begin();
                    rep.failures.push_back({rel.family, rel.label, col, row, x.to_string()});
                    failed_families.insert(rel.family);
                    reported = true;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// T-series ratios

ZFactorProduct ZFactorProduct::operator*(const ZFactorProduct& o) const {
    ZFactorProduct r = *this;
    for (const auto& [k, e] : o.factors) {
        r.factors[k] += e;
        if (r.factors[k] == 0) r.factors.erase(k);
    }
    return r;
}

std::string ZFactorProduct::to_string() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, e] : factors) {
        const auto& [zp, sh] = k;
        if (!first) os << " ";
        first = false;
        os << "(1 - q^" << sh << " z" << (zp == 1 ? "" : "^" + std::to_string(zp)) << ")";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

TSeriesRatio t_series_ratio(const CartanData& cd, const LWeightMonomial& target, const LWeightMonomial& head, int node) {
    if (node < 1 || node > cd.n) throw std::invalid_argument("node out of range");
    const auto v = factor_in_basis(cd, head / target, Basis::A);
    if (!v) throw std::invalid_argument("target is not an A-monomial multiple of the head");
    TSeriesRatio out;
    for (const auto& [idx, e] : *v) {
        if (e < 0) throw std::invalid_argument("target is not below the head in the Nakajima order");
        if (idx.node != node) continue;
        // Each A^{-1}_{i,a} contributes (1 - a z^{-1})^{-1} to T+ and (1 - a^{-1} z) to T-.
        out.plus.factors[{-1, idx.shift}] -= e;
        out.minus.factors[{1, -idx.shift}] += e;
    }
    return out;
}

}  // namespace shq
