// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "shq/json_io.hpp"
#include "shq/langlands.hpp"
#include "shq/modrep.hpp"
#include "shq/qchar.hpp"
#include "shq/truncation.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

using namespace shq;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures with a short reason each.
class Checker {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            if (failures_++ < 5) msg_ << (msg_.tellp() > 0 ? "; " : "") << what;
        }
    }
    Outcome done(const std::string& summary) const {
        if (pass_) return {true, summary};
        return {false, msg_.str()};
    }

private:
    bool pass_ = true;
    int failures_ = 0;
    std::ostringstream msg_;
};

LWeightMonomial psi(int i, int s, long long e = 1) { return LWeightMonomial::psi(i, s, e); }

ZMonomial zm(std::initializer_list<std::tuple<int, int, int>> fs) {
    ZMonomial m;
    for (const auto& [i, t, e] : fs) m[SpectralIndex{i, t}] = e;
    return m;
}

LWeightMonomial with_consts(const LWeightMonomial& m, std::initializer_list<std::pair<int, Rational>> cs) {
    ConstantFactor c;
    for (const auto& [i, e] : cs) c.set(i, NodeConst::make(e, 0));
    return m.with_constant(c);
}

std::vector<Candidate> surviving(const TruncationData& td, const Coweight& mu, int depth) {
    std::vector<Candidate> out;
    for (const Candidate& c : enumerate_candidates(td, mu)) {
        Candidate r = descent_refine(td, c, depth);
        if (r.status != CandidateStatus::Refuted) out.push_back(r);
    }
    return out;
}

bool same_monomials(const std::vector<Candidate>& cs, const std::vector<LWeightMonomial>& expected) {
    if (cs.size() != expected.size()) return false;
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& c : cs) found = found || c.psi.monomial_part() == e;
        if (!found) return false;
    }
    return true;
}

// Every q-character produced by the suite, for the triangularity check.
std::vector<std::pair<CartanData, QCharacter>> produced;

const QCharacter& keep(const CartanData& cd, QCharacter x) {
    produced.emplace_back(cd, std::move(x));
    return produced.back().second;
}

Json load_fixture(const std::string& name) {
    std::ifstream in(std::string(SHQ_FIXTURE_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    return Json::parse(in);
}

Outcome sl2_counts() {
    Checker ck;
    const CartanData a1 = build_cartan("A1");
    const TruncationData distinct = make_truncation(a1, {{1, {3, -1}}});
    const TruncationData equal = make_truncation(a1, {{1, {2, 2}}});
    const auto two = sl2_classify(distinct, {0});
    ck.expect(two.size() == 2, "distinct roots, mu = 0: " + std::to_string(two.size()) + " simples");
    ck.expect(enumerate_candidates(distinct, {0}).size() == 2, "enumeration disagrees at mu = 0");
    const auto one = sl2_classify(equal, {0});
    ck.expect(one.size() == 1, "equal roots, mu = 0: " + std::to_string(one.size()) + " simples");
    ck.expect(enumerate_candidates(equal, {0}).size() == 1, "enumeration disagrees for equal roots");
    const auto low = sl2_classify(distinct, {-2});
    ck.expect(low.size() == 1, "mu = -2: " + std::to_string(low.size()) + " simples");
    // q^{-2} z1 z2 / ((1 - z q^{-1} z1)(1 - z q^{-1} z2)) with z_k q = q^{s_k}.
    const LWeightMonomial shown = with_consts(psi(1, 1, -1) * psi(1, -3, -1), {{1, Rational(-2 + 2 - 2)}});
    if (low.size() == 1)
        ck.expect(equal_mod_signtwist(a1, low[0].psi, shown), "mu = -2 weight " + low[0].psi.to_string());
    for (const auto& c : two)
        if (is_dominant(a1, c.psi)) keep(a1, qc_simple_sl2(a1, c.psi));
    return ck.done("2 simples at mu = 0, 1 for equal roots, 1 at mu = -2 with the expected weight");
}

Outcome a2_report() {
    Checker ck;
    const CartanData a2 = build_cartan("A2");
    const TruncationData td = make_truncation(a2, {{1, {3}}});
    const ConjectureReport r = conjecture_report(td);
    ck.expect(r.below_z, "order invariant violated");
    ck.expect(r.matched_pairs == 3, std::to_string(r.matched_pairs) + " matched pairs");
    const std::map<Coweight, LWeightMonomial> shown{
        {{1, 0}, psi(1, 3)},
        {{-1, 1}, with_consts(psi(1, 1, -1) * psi(2, 2), {{1, Rational(1)}, {2, Rational(-1, 2)}})},
        {{0, -1}, with_consts(psi(2, 0, -1), {{1, Rational(1)}, {2, Rational(-1, 2)}})},
    };
    ck.expect(r.strata.size() == 3, std::to_string(r.strata.size()) + " weights");
    for (const auto& st : r.strata) {
        auto it = shown.find(st.mu);
        if (it == shown.end()) {
            ck.expect(false, "unexpected weight");
            continue;
        }
        ck.expect(st.matched == 1 && st.candidates.size() == 1, "weight without a unique match");
        for (const auto& c : st.candidates)
            ck.expect(equal_mod_signtwist(a2, c.psi, it->second), "simple " + c.psi.to_string());
        for (const auto& e : st.monomials)
            ck.expect(equal_mod_signtwist(a2, e.psi, it->second), "monomial weight " + e.psi.to_string());
    }
    return ck.done("3 matched pairs at (1,0), (-1,1), (0,-1); l-weights equal up to sign-twist");
}

Outcome b2_omega2() {
    Checker ck;
    const CartanData b2 = build_cartan("B2");
    const std::map<ZMonomial, long long> shown{
        {zm({{2, 0, 1}}), 1},
        {zm({{2, 2, -1}, {1, 0, 1}, {1, 2, 1}}), 1},
        {zm({{1, 0, 1}, {1, 6, -1}, {2, 2, -1}, {2, 4, 1}}), 1},
        {zm({{1, 2, 1}, {1, 4, -1}}), 1},
        {zm({{1, 6, -1}, {1, 4, -1}, {2, 4, 1}}), 1},
        {zm({{2, 6, -1}}), 1},
    };
    const LanglandsChar x = chi_L_fundamental(b2, 2, 0);
    ck.expect(x.terms == shown, std::to_string(x.terms.size()) + "-term dual character differs from the table");

    const TruncationData td = make_truncation(b2, {{2, {0}}});
    const auto zero = surviving(td, {0, 0}, 3);
    ck.expect(same_monomials(zero, {psi(1, 0) * psi(1, -6, -1) * psi(2, -4) * psi(2, -2, -1),
                                    psi(1, -2) * psi(1, -4, -1)}),
              "mu = 0 gives " + std::to_string(zero.size()) + " simples");
    const std::map<Coweight, LWeightMonomial> single{
        {{0, 1}, psi(2, 0)},
        {{2, -1}, psi(1, -2) * psi(1, 0) * psi(2, -2, -1)},
        {{-2, 1}, psi(1, -6, -1) * psi(1, -4, -1) * psi(2, -4)},
        {{0, -1}, psi(2, -6, -1)},
    };
    for (const auto& [mu, w] : single) {
        const auto cs = surviving(td, mu, 3);
        ck.expect(same_monomials(cs, {w}), "mu = (" + std::to_string(mu[0]) + "," + std::to_string(mu[1]) +
                                               ") gives " + std::to_string(cs.size()) + " simples");
        for (const auto& c : cs) ck.expect(admissibility_check(td, mu, c.psi).pass, "normalization fails");
    }
    // The reference normalizing constants are not all consistent with the
    // limit condition, so the comparison is on the rational parts.
    return ck.done("6-term dual character; mu = 0 gives the 2 listed weights; 4 single weights each give 1 "
                   "(rational parts compared, constants canonical)");
}

Outcome b2_omega1() {
    Checker ck;
    const std::map<ZMonomial, long long> shown{
        {zm({{1, 0, 1}}), 1},
        {zm({{1, 4, -1}, {2, 2, 1}}), 1},
        {zm({{2, 4, -1}, {1, 2, 1}}), 1},
        {zm({{1, 6, -1}}), 1},
    };
    const LanglandsChar x = chi_L_fundamental(build_cartan("B2"), 1, 0);
    ck.expect(x.terms == shown, std::to_string(x.terms.size()) + "-term dual character differs from the table");
    return ck.done("4 terms, exact");
}

Outcome sl3_counterexample() {
    Checker ck;
    const CartanData a2 = build_cartan("A2");
    const TruncationData td = make_truncation(a2, {{1, {0}}});
    const Coweight mu{-2, 0};
    const LWeightMonomial target = with_canonical_constant(td, mu, psi(1, -4, -1) * psi(1, -2, -1));
    const AdmissibilityVerdict v = admissibility_check(td, mu, target);
    ck.expect(v.pass, "necessary conditions fail: " + v.reason);
    bool seen = false;
    for (const Candidate& c : enumerate_candidates(td, mu)) {
        if (!equal_mod_signtwist(a2, c.psi, target)) continue;
        seen = true;
        const Candidate r = descent_refine(td, c, 2);
        ck.expect(r.status == CandidateStatus::Refuted, "status " + status_name(r.status));
        const LWeightMonomial witness = c.psi / generator(a2, GenKind::A, 1, -2) / generator(a2, GenKind::A, 2, -1);
        bool found = false;
        for (const auto& w : r.witnesses) found = found || w == witness;
        ck.expect(found, "witness " + witness.to_string() + " not reported");
        ck.expect(witness.monomial_part() == psi(1, -4, -2) * psi(2, 1) * psi(2, -1, -1), "witness shape");
    }
    ck.expect(seen, "candidate not enumerated");
    return ck.done("necessary conditions pass; refuted with witness Psi A(1,-2)^-1 A(2,-1)^-1");
}

Outcome relations() {
    struct Case {
        ModuleKind kind;
        std::string type;
        int node;
        int shift;
    };
    const std::vector<Case> cases{
        {ModuleKind::OscVermaPlus, "A1", 1, 0},  {ModuleKind::OscVermaMinus, "A1", 1, 0},
        {ModuleKind::CoproductPlus, "A1", 1, 0}, {ModuleKind::CoproductMinus, "A1", 1, 0},
        {ModuleKind::EvalSl2, "A1", 1, 3},       {ModuleKind::PsiTilde, "A1", 1, 0},
        {ModuleKind::PsiTilde, "A2", 1, 1},      {ModuleKind::PsiTilde, "B2", 1, 0},
        {ModuleKind::PsiTilde, "B2", 2, 0},      {ModuleKind::PsiStar, "A1", 1, 0},
        {ModuleKind::PsiStar, "A2", 2, 0},       {ModuleKind::PsiStar, "B2", 1, 0},
        {ModuleKind::PsiStar, "B2", 2, 1},       {ModuleKind::PsiStar, "G2", 1, 0}};
    std::vector<std::future<RelationReport>> jobs;
    for (const auto& c : cases)
        jobs.push_back(std::async(std::launch::async, [c] {
            ModuleParams p;
            p.type = c.type;
            p.node = c.node;
            p.shift = c.shift;
            p.gamma = ExactScalar::q_power(3);
            p.beta = ExactScalar::q_power(-1);
            return check_relations(build_module(c.kind, p, 12, 6));
        }));
    Checker ck;
    long long rels = 0;
    for (size_t k = 0; k < cases.size(); ++k) {
        const RelationReport r = jobs[k].get();
        rels += r.relations_checked;
        std::string where = module_kind_name(cases[k].kind) + " " + cases[k].type;
        if (!r.failures.empty()) where += " (" + r.failures.front().family + ")";
        ck.expect(r.ok && r.grading_ok && r.relations_checked > 0, where);
    }
    return ck.done(std::to_string(cases.size()) + " modules, " + std::to_string(rels) +
                   " relation instances, cutoff 12, modes up to 6");
}

Outcome identities() {
    Checker ck;
    int n = 0;
    for (const char* label : {"A1", "B2"}) {
        const CartanData cd = build_cartan(label);
        for (int i = 1; i <= cd.n; ++i)
            for (IdentityKind k : {IdentityKind::QQtilde, IdentityKind::QQstar}) {
                const IdentityReport r = check_identity(cd, k, i, 0, 5);
                ck.expect(r.ok && r.compared_depth >= 1, std::string(label) + " node " + std::to_string(i) + ": " + r.detail);
                ++n;
            }
    }
    const CartanData a1 = build_cartan("A1");
    for (int s : {-4, -1, 0, 1, 3, 6}) {
        const IdentityReport r = check_identity(a1, IdentityKind::PrefundFactorSl2, 1, s, 5);
        ck.expect(r.ok, "character formula at s = " + std::to_string(s) + ": " + r.detail);
        ++n;
    }
    return ck.done(std::to_string(n) + " identity instances at depth 5");
}

Outcome properties() {
    Checker ck;
    std::mt19937 rng(20240611);
    const std::vector<std::string> types{"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"};
    int trips = 0;
    for (int t = 0; t < 200; ++t) {
        const CartanData cd = build_cartan(types[t % types.size()]);
        const Basis basis = t % 2 ? Basis::A : Basis::Lambda;
        std::uniform_int_distribution<int> node(1, cd.n), shift(-8, 8), e(1, 3), size(1, 8);
        ExponentMap v;
        for (int k = size(rng); k > 0; --k) v[SpectralIndex{node(rng), shift(rng)}] += e(rng);
        const auto back = factor_in_basis(cd, expand_in_basis(cd, v, basis), basis);
        ck.expect(back && *back == v, "round trip in " + cd.label());
        ++trips;
    }

    int a_lambda_checks = 0;
    for (const char* label : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"}) {
        const CartanData cd = build_cartan(label);
        std::uniform_int_distribution<int> node(1, cd.n), shift(-50, 50);
        for (int t = 0; t < 20; ++t) {
            const int i = node(rng), r = shift(rng);
            const LWeightMonomial lhs = generator(cd, GenKind::A, i, r);
            const LWeightMonomial rhs = generator(cd, GenKind::Lambda, i, r - cd.ri(i)) /
                                        generator(cd, GenKind::Lambda, i, r + cd.ri(i));
            ck.expect(lhs.monomial_part() == rhs && lhs.cst() == generator(cd, GenKind::A, i, r + 7).cst(),
                      std::string("A/Lambda identity in ") + label);
            ++a_lambda_checks;
        }
    }

    int inverses = 0;
    for (const char* label : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"}) {
        const CartanData cd = build_cartan(label);
        const ScalarMatrix p = multiply(quantum_cartan_matrix(cd), invert_quantum_cartan(cd));
        for (int i = 0; i < cd.n; ++i)
            for (int j = 0; j < cd.n; ++j) ck.expect(p[i][j] == ExactScalar(i == j ? 1L : 0L), std::string("C Ct in ") + label);
        ++inverses;
    }

    size_t tri = 0;
    for (const auto& [cd, x] : produced) {
        if (x.terms.empty()) continue;
        const TriangularityReport r = check_triangularity(cd, x);
        ck.expect(r.ok, "triangularity in " + cd.label());
        ++tri;
    }
    return ck.done(std::to_string(trips) + " round trips, " + std::to_string(a_lambda_checks) + " A/Lambda checks, " +
                   std::to_string(inverses) + " inverse matrices, " + std::to_string(tri) + " characters triangular");
}

Outcome fd_truncation_fixture() {
    Checker ck;
    const CartanData b2 = build_cartan("B2");
    const LWeightMonomial w = generator(b2, GenKind::Ytilde, 1, 0);
    const FdTruncation r = fd_truncation_for(b2, w);
    ck.expect(r.z.monomial_part() == psi(1, -2) * psi(1, 8) * psi(1, 0) * psi(1, 6), "Z = " + r.z.to_string());
    ck.expect(r.certificate, "certificate fails");
    // Recompute both factorizations and the inequalities directly.
    const auto nu = factor_in_basis(b2, r.z / w, Basis::Lambda);
    const auto v = factor_in_basis(b2, w / r.lowest, Basis::A);
    ck.expect(nu && v, "factorizations missing");
    if (nu && v) {
        for (const auto& [idx, x] : *nu) ck.expect(x >= 0, "negative Lambda exponent");
        for (const auto& [idx, x] : *v) {
            auto it = nu->find(SpectralIndex{idx.node, idx.shift + b2.ri(idx.node)});
            ck.expect(it != nu->end() && it->second >= x, "inequality at (" + std::to_string(idx.node) + "," +
                                                               std::to_string(idx.shift) + ")");
        }
    }
    keep(b2, qc_frenkel_mukhin(b2, YMonomial{{{1, 0}, 1}}, 20));
    return ck.done("Z = " + r.z.monomial_part().to_string() + ", " + std::to_string(r.certificate_lines.size()) +
                   " inequalities hold");
}

Outcome order_invariant() {
    Checker ck;
    const Json fx = load_fixture("truncations.json");
    long long monomials = 0;
    for (const auto& f : fx["fixtures"]) {
        const CartanData cd = build_cartan(f["type"].get<std::string>());
        const TruncationData td = make_truncation(cd, parse_zroots(f["zroots"].get<std::string>()));
        const LanglandsChar x = chi_L_standard(td);
        for (const auto& [m, k] : x.terms) {
            const MonomialLWeight p = psi_of_monomial(td, m);
            ck.expect(leq(cd, p.psi, td.z_monomial(), Order::ZOrder),
                      cd.label() + " " + f["zroots"].get<std::string>() + ": " + zmonomial_to_string(m));
            ++monomials;
        }
    }
    int reports = 0;
    for (const auto& f : fx["reports"]) {
        const CartanData cd = build_cartan(f["type"].get<std::string>());
        const ConjectureReport r = conjecture_report(make_truncation(cd, parse_zroots(f["zroots"].get<std::string>())));
        ck.expect(r.below_z, "report " + cd.label() + " " + f["zroots"].get<std::string>());
        ++reports;
    }
    return ck.done(std::to_string(monomials) + " monomials over " + std::to_string(fx["fixtures"].size()) +
                   " fixtures and " + std::to_string(reports) + " reports below Z");
}

void collect_characters() {
    for (const char* label : {"A1", "A2", "B2", "G2"}) {
        const CartanData cd = build_cartan(label);
        for (int i = 1; i <= cd.n; ++i) {
            keep(cd, qc_frenkel_mukhin(cd, YMonomial{{{i, 0}, 1}}, 20));
            keep(cd, qc_neg_prefund_limit(cd, i, 0, 3));
            keep(cd, qc_closed_form(cd, ClosedForm::PsiTilde, i, 0, 4));
            keep(cd, qc_closed_form(cd, ClosedForm::PsiStar, i, 0, 4));
            keep(cd, qc_closed_form(cd, ClosedForm::PosPrefund, i, 0, 4));
        }
    }
    const CartanData a1 = build_cartan("A1");
    keep(a1, qc_closed_form(a1, ClosedForm::NegPrefundSl2, 1, 0, 5));
    keep(a1, qc_simple_sl2(a1, y_to_psi(a1, YMonomial{{{1, 0}, 1}, {{1, 2}, 1}, {{1, 8}, 1}})));
    const CartanData b2 = build_cartan("B2");
    keep(b2, node_string_slice(b2, psi(1, 0) * psi(1, -6, -1) * psi(2, -4) * psi(2, -2, -1), 3));
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"sl2 truncation counts", sl2_counts},
        {"A2 conjecture report", a2_report},
        {"B2 lambda = omega_2 dual character and simples", b2_omega2},
        {"B2 node-1 dual fundamental character", b2_omega1},
        {"sl3 counterexample refuted", sl3_counterexample},
        {"relation verification of explicit modules", relations},
        {"identity suite", identities},
        {"property suite", properties},
        {"finite-dimensional truncation certificate", fd_truncation_fixture},
        {"order invariant for dual characters", order_invariant},
    };
    collect_characters();
    int failed = 0;
    // The property suite checks triangularity of everything produced, so it runs last.
    std::vector<size_t> order{0, 1, 2, 3, 4, 5, 6, 8, 9, 7};
    std::vector<std::string> lines(criteria.size());
    for (size_t k : order) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << " (" << criteria[k].first << "): " << o.detail
             << " [" << secs << "s]";
        lines[k] = line.str();
    }
    for (const auto& l : lines) std::cout << l << "\n";
    return failed == 0 ? 0 : 1;
}
