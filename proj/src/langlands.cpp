#include "shq/langlands.hpp"

#include "shq/qchar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace shq {

namespace {

// Y_{node, q^{qpow} t^{tpow}}^{exp}
struct TableFactor {
    int node, qpow, tpow;
    long long exp;
};

struct TableTerm {
    bool alpha;
    std::vector<TableFactor> factors;
};

// Interpolating (q,t)-character of the B2 Kirillov-Reshetikhin module of
// highest monomial Y_{2,q^-1} Y_{2,q}, nodes numbered with r = (2, 1).
const std::vector<TableTerm>& b2_node2_table() {
    static const std::vector<TableTerm> table = {
        {false, {{2, -1, 0, 1}, {2, 1, 0, 1}}},
        {true, {{2, -1, 0, 1}, {2, 3, 2, -1}, {1, 2, 1, 1}}},
        {false, {{2, 1, 2, -1}, {2, 3, 2, -1}, {1, 0, 1, 1}, {1, 2, 1, 1}}},
        {true, {{2, -1, 0, 1}, {2, 5, 2, 1}, {1, 6, 3, -1}}},
        {false, {{1, 2, 1, 1}, {1, 4, 3, -1}}},
        {false, {{2, 1, 2, -1}, {2, 5, 2, 1}, {1, 6, 3, -1}, {1, 0, 1, 1}}},
        {true, {{2, -1, 0, 1}, {2, 7, 4, -1}}},
        {false, {{1, 4, 3, -1}, {1, 6, 3, -1}, {2, 3, 2, 1}, {2, 5, 2, 1}}},
        {true, {{2, 1, 2, -1}, {2, 7, 4, -1}, {1, 0, 1, 1}}},
        {true, {{1, 4, 3, -1}, {2, 3, 2, 1}, {2, 7, 4, -1}}},
        {false, {{2, 5, 4, -1}, {2, 7, 4, -1}}},
    };
    return table;
}

// Langlands dual q-character of the B2 fundamental at node 1, already in the
// Z variables.
const std::vector<ZMonomial>& b2_node1_table() {
    static const std::vector<ZMonomial> table = {
        {{{1, 0}, 1}},
        {{{1, 4}, -1}, {{2, 2}, 1}},
        {{{2, 4}, -1}, {{1, 2}, 1}},
        {{{1, 6}, -1}},
    };
    return table;
}

ZMonomial shift_monomial(const ZMonomial& m, int shift) {
    ZMonomial out;
    for (const auto& [idx, e] : m) out[SpectralIndex{idx.node, idx.shift + shift}] = e;
    return out;
}

ZMonomial multiply(const ZMonomial& a, const ZMonomial& b) {
    ZMonomial out = a;
    for (const auto& [idx, e] : b) {
        out[idx] += e;
        if (out[idx] == 0) out.erase(idx);
    }
    return out;
}

bool simply_laced(const CartanData& cd) { return cd.lacing == 1; }

}  // namespace

std::string zmonomial_to_string(const ZMonomial& m) {
    if (m.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, e] : m) {
        if (!first) os << " ";
        first = false;
        os << "Z(" << idx.node << "," << idx.shift << ")";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

std::vector<YMonomial> b2_node2_specialized_y() {
    std::vector<YMonomial> out;
    for (const TableTerm& t : b2_node2_table()) {
        if (t.alpha) continue;
        YMonomial y;
        for (const TableFactor& f : t.factors) {
            // t = 1 keeps only the power of q.
            y[SpectralIndex{f.node, f.qpow}] += f.exp;
            if (y[SpectralIndex{f.node, f.qpow}] == 0) y.erase(SpectralIndex{f.node, f.qpow});
        }
        out.push_back(y);
    }
    return out;
}

std::optional<ZMonomial> y_to_z(const CartanData& cd, const YMonomial& y) {
    // Z_{i,a} is the product of the Y_{i,b} over the string of length
    // r - r_i + 1 centred at a, with step 2.
    ZMonomial z;
    for (int i = 1; i <= cd.n; ++i) {
        const int len = cd.lacing - cd.ri(i) + 1;
        std::map<int, long long> rest;
        for (const auto& [idx, e] : y)
            if (idx.node == i) rest[idx.shift] = e;
        if (rest.empty()) continue;
        const int top = rest.rbegin()->first;
        // Peel strings off from the bottom; a string starting above the
        // highest Y leaves a remainder that never closes.
        while (!rest.empty()) {
            const auto [low, e] = *rest.begin();
            if (low > top) return std::nullopt;
            z[SpectralIndex{i, low + (len - 1)}] += e;
            for (int k = 0; k < len; ++k) {
                const int s = low + 2 * k;
                rest[s] -= e;
                if (rest[s] == 0) rest.erase(s);
            }
        }
    }
    return z;
}

LanglandsChar chi_L_fundamental(const CartanData& cd, int node, int shift) {
    if (node < 1 || node > cd.n) throw std::out_of_range("node " + std::to_string(node) + " out of range");
    LanglandsChar out;
    out.provenance = {{node, shift}};
    if (simply_laced(cd)) {
        const YMonomial head{{SpectralIndex{node, shift}, 1}};
        FMResult fm;
        for (int depth = 8;; depth *= 2) {
            fm = frenkel_mukhin_y(cd, head, depth);
            if (fm.complete) break;
            if (depth > 4096) throw std::runtime_error("fundamental character did not close");
        }
        for (const auto& [y, k] : fm.terms) out.terms[y] += k;
        out.head = head;
        out.raw_terms = static_cast<long long>(out.terms.size());
        return out;
    }
    if (cd.label() == "B2") {
        if (node == 2) {
            for (const YMonomial& y : b2_node2_specialized_y()) {
                const auto z = y_to_z(cd, y);
                if (!z) throw std::logic_error("B2 table term is not a Z-monomial");
                out.terms[shift_monomial(*z, shift)] += 1;
            }
        } else {
            for (const ZMonomial& z : b2_node1_table()) out.terms[shift_monomial(z, shift)] += 1;
        }
        out.head = ZMonomial{{SpectralIndex{node, shift}, 1}};
        out.raw_terms = static_cast<long long>(out.terms.size());
        return out;
    }
    throw std::invalid_argument("out of scope: general interpolating (q,t)-characters (type " + cd.label() + ")");
}

LanglandsChar chi_L_standard(const TruncationData& td) {
    LanglandsChar out;
    out.terms[ZMonomial{}] = 1;
    for (const auto& [i, roots] : td.zroots)
        for (int s : roots) {
            const LanglandsChar f = chi_L_fundamental(td.cd, i, -s);
            std::map<ZMonomial, long long> next;
            for (const auto& [m1, k1] : out.terms)
                for (const auto& [m2, k2] : f.terms) next[multiply(m1, m2)] += k1 * k2;
            out.terms = std::move(next);
            out.head = multiply(out.head, f.head);
            out.provenance.emplace_back(i, -s);
            out.raw_terms *= f.raw_terms;
        }
    return out;
}

MonomialLWeight psi_of_monomial(const TruncationData& td, const ZMonomial& m) {
    MonomialLWeight out;
    out.mu.assign(td.cd.n, 0);
    ExponentMap exps;
    for (const auto& [idx, u] : m) {
        exps[SpectralIndex{idx.node, -idx.shift}] += u;
        out.mu[idx.node - 1] += u;
    }
    out.psi = LWeightMonomial::from_exps(exps);
    if (truncation_shifts(td.cd, td.lambda(), out.mu)) {
        out.psi = with_canonical_constant(td, out.mu, out.psi);
        out.normalized = true;
    }
    return out;
}

ZMonomial monomial_of_psi(const LWeightMonomial& psi) {
    ZMonomial out;
    for (const auto& [idx, e] : psi.exps()) out[SpectralIndex{idx.node, -idx.shift}] = e;
    return out;
}

ConjectureReport conjecture_report(const TruncationData& td, int refine_depth) {
    ConjectureReport rep;
    rep.chi = chi_L_standard(td);
    const LWeightMonomial z = td.z_monomial();
    std::map<Coweight, ConjectureStratum> strata;
    for (const auto& [m, k] : rep.chi.terms) {
        const MonomialLWeight ml = psi_of_monomial(td, m);
        auto& st = strata[ml.mu];
        st.mu = ml.mu;
        ConjectureEntry e;
        e.monomial = m;
        e.multiplicity = k;
        e.psi = ml.psi;
        e.below_z = ml.normalized && leq(td.cd, ml.psi, z, Order::ZOrder);
        if (!e.below_z) rep.below_z = false;
        st.monomials.push_back(e);
    }
    for (auto& [mu, st] : strata) {
        if (!truncation_shifts(td.cd, td.lambda(), mu)) {
            st.discrepancies.push_back("weight is not below lambda");
            rep.agreement = false;
            continue;
        }
        const std::vector<Candidate> found =
            td.cd.n == 1 ? sl2_classify(td, mu) : enumerate_candidates(td, mu);
        for (const Candidate& c : found) {
            const Candidate r = c.status == CandidateStatus::Classified ? c : descent_refine(td, c, refine_depth);
            (r.status == CandidateStatus::Refuted ? st.refuted : st.candidates).push_back(r);
        }
        std::vector<bool> used(st.candidates.size(), false);
        for (auto& e : st.monomials) {
            for (size_t c = 0; c < st.candidates.size(); ++c)
                if (!used[c] && equal_mod_signtwist(td.cd, e.psi, st.candidates[c].psi)) {
                    used[c] = true;
                    e.matched_candidate = static_cast<int>(c);
                    ++st.matched;
                    break;
                }
            if (e.matched_candidate < 0)
                st.discrepancies.push_back("monomial " + zmonomial_to_string(e.monomial) + " has no simple module");
        }
        for (size_t c = 0; c < st.candidates.size(); ++c)
            if (!used[c])
                st.discrepancies.push_back("simple module " + st.candidates[c].psi.to_string() + " (" +
                                           status_name(st.candidates[c].status) + ") has no monomial");
        if (!st.discrepancies.empty()) rep.agreement = false;
        rep.matched_pairs += st.matched;
    }
    for (auto& [mu, st] : strata) rep.strata.push_back(std::move(st));
    return rep;
}

std::optional<std::pair<ExponentMap, ExponentMap>> dominant_decomposition(const CartanData& cd,
                                                                          const LWeightMonomial& psi) {
    // With Ytilde_{i,c} = Psi_{i,c-r_i} / Psi_{i,c+r_i}, the exponent at shift x
    // is u_{x+r_i} - u_{x-r_i} + p_x. Scanning downwards, every pole fixes the
    // Ytilde below it; finiteness forces the minimal choice of p.
    ExponentMap u, p;
    for (int i = 1; i <= cd.n; ++i) {
        const int ri = cd.ri(i);
        const auto exps = psi.node_exps(i);
        if (exps.empty()) continue;
        const int lo = exps.begin()->first, hi = exps.rbegin()->first;
        std::map<int, long long> uu;  // centre -> multiplicity
        for (int x = hi; x >= lo - 2 * ri; --x) {
            auto it = exps.find(x);
            const long long e = it == exps.end() ? 0 : it->second;
            const long long above = uu.count(x + ri) ? uu[x + ri] : 0;
            const long long pos = std::max<long long>(0, e - above);
            const long long below = above + pos - e;
            if (pos > 0) p[SpectralIndex{i, x}] = pos;
            if (below > 0) uu[x - ri] = below;
        }
        for (const auto& [c, m] : uu) {
            if (c < lo + ri) return std::nullopt;  // the poles never close
            u[SpectralIndex{i, c}] = m;
        }
    }
    return std::make_pair(u, p);
}

FdTruncation fd_truncation_for(const CartanData& cd, const LWeightMonomial& psi) {
    const auto dec = dominant_decomposition(cd, psi);
    if (!dec) throw std::invalid_argument("l-weight is not dominant");
    const auto& [u, p] = *dec;
    const int r = cd.lacing;
    const int rh = r * cd.dual_coxeter;
    FdTruncation out;
    out.y_multiplicities = u;
    std::map<int, std::vector<int>> roots;
    auto add = [&](int node, int shift, long long m) {
        for (long long k = 0; k < m; ++k) roots[node].push_back(shift);
    };
    LWeightMonomial lowest = psi.monomial_part();
    for (const auto& [idx, m] : u) {
        const int i = idx.node, a = idx.shift, ri = cd.ri(i), ib = cd.bar_of(i);
        add(i, a - ri, m);
        add(ib, a + ri + rh, m);
        if (ri == 1 && r != 1) {
            add(i, a + ri + 1 - r, m);
            add(ib, a + ri - r + 1 + rh, m);
            add(i, a + ri + r - 1, m);
            add(ib, a + ri + r - 1 + rh, m);
        }
        if (ri == r && r != 1) {
            add(i, a + ri - 2, m);
            add(ib, a + ri - 2 + rh, m);
        }
        if (ri == 3 && r == 3) {
            add(i, a + ri - 4, m);
            add(ib, a + ri - 4 + rh, m);
        }
        const LWeightMonomial yi = generator(cd, GenKind::Ytilde, i, a);
        const LWeightMonomial yb = generator(cd, GenKind::Ytilde, ib, a + rh);
        lowest = lowest / (yi * yb).pow(m);
    }
    // Positive prefundamental factors are one-dimensional and carry their own
    // truncation with lambda = mu.
    for (const auto& [idx, m] : p) add(idx.node, idx.shift, m);
    out.td = make_truncation(cd, roots);
    out.z = out.td.z_monomial();
    out.lowest = lowest;

    const auto nu = factor_in_basis(cd, out.z / psi.monomial_part(), Basis::Lambda);
    const auto v = factor_in_basis(cd, psi.monomial_part() / lowest, Basis::A);
    if (!nu || !v) throw std::logic_error("factorization of the finite-dimensional truncation failed");
    out.nu = *nu;
    out.v = *v;
    out.nu_nonnegative = std::all_of(nu->begin(), nu->end(), [](const auto& kv) { return kv.second >= 0; });
    out.certificate = out.nu_nonnegative;
    for (const auto& [idx, m] : out.v) {
        const SpectralIndex target{idx.node, idx.shift + cd.ri(idx.node)};
        auto it = out.nu.find(target);
        const long long have = it == out.nu.end() ? 0 : it->second;
        const bool ok = have >= m;
        if (!ok) out.certificate = false;
        std::ostringstream os;
        os << "nu(" << target.node << "," << target.shift << ") = " << have << (ok ? " >= " : " < ") << "v(" << idx.node
           << "," << idx.shift << ") = " << m;
        out.certificate_lines.push_back(os.str());
    }
    try {
        const LanglandsChar chi = chi_L_standard(out.td);
        out.monomial_in_chi_L = chi.terms.count(monomial_of_psi(psi.monomial_part())) > 0;
    } catch (const std::invalid_argument&) {
        out.monomial_in_chi_L = std::nullopt;
    }
    return out;
}

}  // namespace shq
