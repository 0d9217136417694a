#include "shq/truncation.hpp"

#include "shq/smith.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace shq {

Coweight TruncationData::lambda() const {
    Coweight l(cd.n, 0);
    for (const auto& [i, roots] : zroots) l[i - 1] = static_cast<long long>(roots.size());
    return l;
}

LWeightMonomial TruncationData::z_monomial() const {
    LWeightMonomial z;
    for (const auto& [i, roots] : zroots)
        for (int s : roots) z *= LWeightMonomial::psi(i, s);
    return z;
}

TruncationData make_truncation(const CartanData& cd, std::map<int, std::vector<int>> zroots) {
    TruncationData td{cd, {}};
    for (auto& [i, roots] : zroots) {
        if (i < 1 || i > cd.n) throw std::invalid_argument("zroots: node " + std::to_string(i) + " out of range");
        if (roots.empty()) continue;
        std::sort(roots.begin(), roots.end());
        td.zroots[i] = roots;
    }
    return td;
}

std::map<int, std::vector<int>> parse_zroots(const std::string& s) {
    std::map<int, std::vector<int>> out;
    std::stringstream groups(s);
    std::string group;
    while (std::getline(groups, group, ';')) {
        if (group.empty()) continue;
        const auto colon = group.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("zroots: expected 'node:shift,...' in '" + group + "'");
        try {
            const int node = std::stoi(group.substr(0, colon));
            auto& roots = out[node];
            std::stringstream items(group.substr(colon + 1));
            std::string item;
            while (std::getline(items, item, ','))
                if (!item.empty()) roots.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("zroots: malformed integer in '" + group + "'");
        }
    }
    return out;
}

std::optional<std::vector<long long>> truncation_shifts(const CartanData& cd, const Coweight& lambda, const Coweight& mu) {
    if (static_cast<int>(lambda.size()) != cd.n || static_cast<int>(mu.size()) != cd.n)
        throw std::invalid_argument("coweight has the wrong rank");
    std::vector<mpq_class> d(cd.n);
    for (int i = 0; i < cd.n; ++i) d[i] = static_cast<long>(lambda[i] - mu[i]);
    const auto x = solve_rational(transpose(cd.C), d);
    std::vector<long long> a(cd.n);
    for (int i = 0; i < cd.n; ++i) {
        if (x[i].get_den() != 1 || x[i] < 0) return std::nullopt;
        a[i] = x[i].get_num().get_si();
    }
    return a;
}

ConstantFactor phi_z(const TruncationData& td, const Coweight& mu, const std::vector<long long>& a) {
    const CartanData& cd = td.cd;
    const Coweight lambda = td.lambda();
    ConstantFactor out;
    for (int i = 1; i <= cd.n; ++i) {
        long long sign = lambda[i - 1];
        for (int j = 1; j <= cd.n; ++j) sign += cd.c(j, i) * a[j - 1];
        long long qexp = cd.ri(i) * mu[i - 1];
        auto it = td.zroots.find(i);
        if (it != td.zroots.end())
            for (int s : it->second) qexp += s - cd.ri(i);
        out.set(i, NodeConst::make(Rational(qexp), (sign % 2 != 0) ? kZetaOrder / 2 : 0));
    }
    return out;
}

namespace {

// Leading coefficient at infinity of prod_r (1 - z q^r)^{e_r}.
NodeConst leading_at_infinity(const std::map<int, long long>& exps) {
    long long qexp = 0, deg = 0;
    for (const auto& [r, e] : exps) {
        qexp += r * e;
        deg += e;
    }
    return NodeConst::make(Rational(qexp), (deg % 2 != 0) ? kZetaOrder / 2 : 0);
}

std::vector<long long> require_shifts(const TruncationData& td, const Coweight& mu) {
    auto a = truncation_shifts(td.cd, td.lambda(), mu);
    if (!a) throw std::invalid_argument("mu is not of the form lambda - sum a_i alpha_i with a_i >= 0");
    return *a;
}

}  // namespace

LWeightMonomial with_canonical_constant(const TruncationData& td, const Coweight& mu, const LWeightMonomial& psi) {
    const auto a = require_shifts(td, mu);
    const ConstantFactor phi = phi_z(td, mu, a);
    ConstantFactor c;
    for (int i = 1; i <= td.cd.n; ++i) c.set(i, (phi.get(i) * leading_at_infinity(psi.node_exps(i)).inverse()).sqrt());
    return psi.monomial_part().with_constant(c);
}

long long NodePolynomial::degree() const {
    long long d = 0;
    for (const auto& [s, m] : factors) d += m;
    return d;
}

std::string NodePolynomial::to_string() const {
    std::ostringstream os;
    os << constant.to_string();
    for (const auto& [s, m] : factors) {
        os << " (1 - z q^" << s << ")";
        if (m != 1) os << "^" << m;
    }
    return os.str();
}

std::optional<std::map<int, NodePolynomial>> abar_eigenvalue(const TruncationData& td, const LWeightMonomial& psi) {
    const auto v = factor_in_basis(td.cd, td.z_monomial() / psi, Basis::Lambda);
    if (!v) return std::nullopt;
    std::map<int, NodePolynomial> out;
    for (int i = 1; i <= td.cd.n; ++i) out[i] = NodePolynomial{};
    for (const auto& [idx, m] : *v) {
        const int b = idx.shift - td.cd.ri(idx.node);
        auto& p = out[idx.node];
        p.constant = p.constant * NodeConst::make(Rational(-b * m, 2), 0);
        p.factors[b] += m;
        if (p.factors[b] == 0) p.factors.erase(b);
    }
    return out;
}

AdmissibilityVerdict admissibility_check(const TruncationData& td, const Coweight& mu, const LWeightMonomial& psi) {
    const CartanData& cd = td.cd;
    AdmissibilityVerdict out;
    const auto a = truncation_shifts(cd, td.lambda(), mu);
    if (!a) {
        out.failed_clause = 'a';
        out.reason = "mu is not below lambda";
        return out;
    }
    const auto v = factor_in_basis(cd, td.z_monomial() / psi, Basis::Lambda);
    if (!v) {
        out.failed_clause = 'a';
        out.reason = "Z Psi^-1 is not a Lambda-monomial";
        return out;
    }
    out.lambda_exps = *v;
    std::vector<long long> sums(cd.n, 0);
    for (const auto& [idx, m] : *v) {
        if (m < 0) {
            out.failed_clause = 'a';
            out.reason = "negative Lambda exponent at node " + std::to_string(idx.node) + ", shift " +
                         std::to_string(idx.shift);
            return out;
        }
        sums[idx.node - 1] += m;
    }
    for (int i = 0; i < cd.n; ++i)
        if (sums[i] != (*a)[i]) {
            out.failed_clause = 'a';
            out.reason = "Lambda exponents at node " + std::to_string(i + 1) + " sum to " + std::to_string(sums[i]) +
                         ", expected " + std::to_string((*a)[i]);
            return out;
        }
    // (b) each pole (1 - z q^r)^{-m} of Psi_i needs a root of multiplicity >= m
    // of the truncation eigenvalue, i.e. v_{i, r + r_i} >= m.
    for (int i = 1; i <= cd.n; ++i)
        for (const auto& [r, e] : psi.node_exps(i)) {
            if (e >= 0) continue;
            auto it = v->find(SpectralIndex{i, r + cd.ri(i)});
            const long long have = it == v->end() ? 0 : it->second;
            if (have < -e) {
                out.failed_clause = 'b';
                out.reason = "pole of Psi_" + std::to_string(i) + " at shift " + std::to_string(r) +
                             " is not cancelled by the truncation eigenvalue";
                return out;
            }
        }
    // (c) constants: c_i^2 L_i / phi_i must be the square of a sign-twist.
    if (!psi.cst().trivial()) {
        const ConstantFactor phi = phi_z(td, mu, *a);
        ConstantFactor ratio;
        for (int i = 1; i <= cd.n; ++i)
            ratio.set(i, psi.cst().get(i).pow(2) * leading_at_infinity(psi.node_exps(i)) * phi.get(i).inverse());
        bool found = false;
        for (const auto& k : sign_twist_group(cd)) {
            ConstantFactor k2;
            for (int i = 1; i <= cd.n; ++i) k2.set(i, NodeConst::make(Rational(0), 2 * k[i - 1]));
            if (k2 == ratio) {
                found = true;
                break;
            }
        }
        if (!found) {
            out.failed_clause = 'c';
            out.reason = "constant normalization fails: ratio " + ratio.to_string();
            return out;
        }
    }
    out.pass = true;
    return out;
}

std::string status_name(CandidateStatus s) {
    switch (s) {
        case CandidateStatus::NecessaryOnly: return "NecessaryOnly";
        case CandidateStatus::StrongCandidate: return "StrongCandidate";
        case CandidateStatus::Refuted: return "Refuted";
        case CandidateStatus::Classified: return "Classified";
    }
    return "?";
}

std::pair<int, int> enumeration_window(const TruncationData& td, const std::vector<long long>& a) {
    long long total = 0;
    for (long long x : a) total += x;
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& [i, roots] : td.zroots)
        for (int s : roots) {
            lo = first ? s : std::min(lo, s);
            hi = first ? s : std::max(hi, s);
            first = false;
        }
    const int pad = static_cast<int>(6 * total + 6);
    return {lo - pad, hi + pad};
}

namespace {

// Non-decreasing sequences of length k with entries in [lo, hi].
void multisets(int lo, int hi, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int u = start; u <= hi; ++u) {
            cur.push_back(u);
            rec(u);
            cur.pop_back();
        }
    };
    rec(lo);
}

}  // namespace

std::vector<Candidate> enumerate_candidates(const TruncationData& td, const Coweight& mu, int threads) {
    const CartanData& cd = td.cd;
    const auto a = require_shifts(td, mu);
    const auto [lo, hi] = enumeration_window(td, a);
    std::vector<std::vector<std::vector<int>>> per_node(cd.n);
    double combos = 1;
    for (int i = 0; i < cd.n; ++i) {
        multisets(lo, hi, static_cast<int>(a[i]), per_node[i]);
        combos *= static_cast<double>(per_node[i].size());
    }
    if (combos > 2e7) throw std::runtime_error("enumeration too large for the exhaustive search");

    // Psi-exponents of every Lambda_{i,u} in the window, laid out densely so
    // the pole test of clause (b) runs on integers.
    struct Term {
        int node, shift;
        long long e;
    };
    std::map<std::pair<int, int>, std::vector<Term>> lambda_terms;
    int smin = lo, smax = hi;
    for (int i = 1; i <= cd.n; ++i)
        for (int u = lo; u <= hi; ++u) {
            const LWeightMonomial g = generator(cd, GenKind::Lambda, i, u);
            auto& terms = lambda_terms[{i, u}];
            for (const auto& [sidx, e] : g.exps()) {
                terms.push_back({sidx.node, sidx.shift, e});
                smin = std::min(smin, sidx.shift);
                smax = std::max(smax, sidx.shift);
            }
        }
    const LWeightMonomial z = td.z_monomial();
    for (const auto& [sidx, e] : z.exps()) {
        smin = std::min(smin, sidx.shift);
        smax = std::max(smax, sidx.shift);
    }
    const int width = smax - smin + 1;
    auto slot = [&](int node, int shift) { return (node - 1) * width + (shift - smin); };
    std::vector<long long> zdense(static_cast<size_t>(cd.n) * width, 0);
    for (const auto& [sidx, e] : z.exps()) zdense[slot(sidx.node, sidx.shift)] = e;

    size_t total = 1;
    for (const auto& choices : per_node) total *= choices.size();
    // Worker t scans the combinations with flat index = t mod threads.
    auto scan = [&](size_t first, size_t stride, std::map<LWeightMonomial, Candidate>& found) {
        std::vector<long long> psi_dense(zdense.size());
        std::vector<long long> vdense(zdense.size());
        for (size_t flat = first; flat < total; flat += stride) {
            psi_dense = zdense;
            std::fill(vdense.begin(), vdense.end(), 0);
            size_t rem = flat;
            for (int i = 0; i < cd.n; ++i) {
                const auto& choice = per_node[i][rem % per_node[i].size()];
                rem /= per_node[i].size();
                for (int u : choice) {
                    vdense[slot(i + 1, u)] += 1;
                    for (const Term& t : lambda_terms.at({i + 1, u})) psi_dense[slot(t.node, t.shift)] -= t.e;
                }
            }
            bool covered = true;
            for (int node = 1; node <= cd.n && covered; ++node)
                for (int s = smin; s <= smax; ++s) {
                    const long long e = psi_dense[slot(node, s)];
                    if (e >= 0) continue;
                    const int r = s + cd.ri(node);
                    if (r > smax || vdense[slot(node, r)] < -e) {
                        covered = false;
                        break;
                    }
                }
            if (!covered) continue;
            ExponentMap exps;
            for (int node = 1; node <= cd.n; ++node)
                for (int s = smin; s <= smax; ++s)
                    if (const long long e = psi_dense[slot(node, s)]; e != 0) exps[SpectralIndex{node, s}] = e;
            const LWeightMonomial psi = LWeightMonomial::from_exps(exps);
            if (found.count(psi)) continue;
            const AdmissibilityVerdict verdict = admissibility_check(td, mu, psi);
            if (!verdict.pass) continue;
            Candidate c;
            c.psi = with_canonical_constant(td, mu, psi);
            c.lambda_exps = verdict.lambda_exps;
            c.mu = mu;
            found.emplace(psi, c);
        }
    };
    const size_t workers = std::max(1, std::min<int>(threads, static_cast<int>(std::min<size_t>(total, 64))));
    std::vector<std::map<LWeightMonomial, Candidate>> partial(workers);
    if (workers == 1) {
        scan(0, 1, partial[0]);
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < workers; ++t) pool.emplace_back(scan, t, workers, std::ref(partial[t]));
        for (auto& th : pool) th.join();
    }
    std::map<LWeightMonomial, Candidate> found;
    for (auto& part : partial) found.merge(part);
    std::vector<Candidate> out;
    for (auto& [m, c] : found) out.push_back(std::move(c));
    return out;
}

std::vector<Candidate> sl2_classify(const TruncationData& td, const Coweight& mu) {
    if (td.cd.n != 1) throw std::invalid_argument("sl2_classify requires rank 1");
    const auto a = require_shifts(td, mu);
    std::vector<int> roots;
    if (td.zroots.count(1)) roots = td.zroots.at(1);
    const int k = static_cast<int>(a[0]);
    std::set<std::vector<int>> subsets;
    if (k <= static_cast<int>(roots.size())) {
        std::vector<bool> pick(roots.size(), false);
        std::fill(pick.begin(), pick.begin() + k, true);
        do {
            std::vector<int> sub;
            for (size_t t = 0; t < roots.size(); ++t)
                if (pick[t]) sub.push_back(roots[t]);
            subsets.insert(sub);
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::vector<Candidate> out;
    for (const auto& sub : subsets) {
        // A root q^{s} of Z cancels against the pair of poles (1 - z q^s)(1 - z q^{s-2}).
        ExponentMap v;
        for (int s : sub) v[SpectralIndex{1, s - 1}] += 1;
        Candidate c;
        c.psi = with_canonical_constant(td, mu, td.z_monomial() / expand_in_basis(td.cd, v, Basis::Lambda).monomial_part());
        c.lambda_exps = v;
        c.mu = mu;
        c.status = CandidateStatus::Classified;
        out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) { return x.psi < y.psi; });
    return out;
}

std::optional<QCharacter> simple_character(const CartanData& cd, const LWeightMonomial& psi, int depth) {
    bool all_neg = true, all_pos = true;
    for (const auto& [idx, e] : psi.exps()) {
        if (e > 0) all_neg = false;
        if (e < 0) all_pos = false;
    }
    if (all_pos) return qc_monomial(psi);
    if (all_neg) {
        QCharacter x = qc_monomial(LWeightMonomial::constant(psi.cst()));
        for (const auto& [idx, e] : psi.exps())
            for (long long t = 0; t < -e; ++t) x = qc_mul(cd, x, qc_neg_prefund_limit(cd, idx.node, idx.shift, depth));
        return x;
    }
    if (cd.n == 1 && is_dominant(cd, psi)) return qc_restrict(cd, qc_simple_sl2(cd, psi), depth);
    return std::nullopt;
}

QCharacter node_string_slice(const CartanData& cd, const LWeightMonomial& psi, int depth) {
    QCharacter x = qc_monomial(psi);
    x.depth = depth;
    x.complete = false;
    // A vector of weight mu - beta, where beta has no alpha_j component, is
    // killed by every x^+_{j,m}; the node-j submodule it generates is of
    // highest l-weight and so carries every l-weight of the node-j string.
    std::function<void(const LWeightMonomial&, unsigned, int)> walk = [&](const LWeightMonomial& t, unsigned used,
                                                                           int budget) {
        if (budget <= 0) return;
        for (int j = 1; j <= cd.n; ++j) {
            if (used & (1u << j)) continue;
            const QCharacter str = qc_node_string(cd, t, j, budget);
            for (const auto& [u, k] : str.terms) {
                if (u == t) continue;
                x.terms.emplace(u, 1);
                walk(u, used | (1u << j), budget - static_cast<int>(height_of(cd, u, t)));
            }
        }
    };
    walk(psi, 0u, depth);
    return x;
}

Candidate descent_refine(const TruncationData& td, const Candidate& c, int depth) {
    Candidate out = c;
    out.witnesses.clear();
    const auto a = require_shifts(td, c.mu);
    const auto full = simple_character(td.cd, c.psi, depth);
    const QCharacter chi = full ? *full : node_string_slice(td.cd, c.psi, depth);
    const LWeightMonomial z = td.z_monomial();
    std::vector<std::pair<long long, LWeightMonomial>> bad;
    for (const auto& [t, mult] : chi.terms) {
        bool ok = leq(td.cd, t, z, Order::ZOrder);
        if (ok) {
            const auto v = factor_in_basis(td.cd, z / t, Basis::Lambda);
            std::vector<long long> sums(td.cd.n, 0);
            for (const auto& [idx, m] : *v) sums[idx.node - 1] += m;
            for (int i = 0; i < td.cd.n; ++i)
                if (sums[i] > a[i]) ok = false;
        }
        if (!ok) bad.emplace_back(height_of(td.cd, t, chi.head), t);
    }
    std::sort(bad.begin(), bad.end());
    for (const auto& [h, t] : bad) out.witnesses.push_back(t);
    if (!bad.empty())
        out.status = CandidateStatus::Refuted;
    else
        out.status = full ? CandidateStatus::StrongCandidate : CandidateStatus::NecessaryOnly;
    out.note = "checked " + std::to_string(chi.terms.size()) + " l-weights " +
               (full ? "up to depth " + std::to_string(depth) : "of the node strings up to depth " + std::to_string(depth));
    return out;
}

TruncationData fuse_truncations(const TruncationData& a, const TruncationData& b) {
    if (a.cd.label() != b.cd.label()) throw std::invalid_argument("fusion requires the same Cartan type");
    std::map<int, std::vector<int>> roots = a.zroots;
    for (const auto& [i, rs] : b.zroots) roots[i].insert(roots[i].end(), rs.begin(), rs.end());
    return make_truncation(a.cd, roots);
}

}  // namespace shq
