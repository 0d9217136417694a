#include "shq/json_io.hpp"

#include <stdexcept>

namespace shq {

namespace {

Json coweight_json(const std::vector<long long>& v) {
    Json out = Json::array();
    for (long long x : v) out.push_back(x);
    return out;
}

std::string node_key(int node) { return std::to_string(node); }

}  // namespace

Json to_json(const Rational& r) {
    if (r.denominator() == 1) return r.numerator();
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw std::invalid_argument("expected an integer or a \"p/q\" string");
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
}

Json to_json(const NodeConst& c) { return Json{{"q", to_json(c.q_exp)}, {"zeta", c.zeta_pow}}; }

NodeConst node_const_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("constant entry must be an object");
    const Rational e = j.contains("q") ? rational_from_json(j.at("q")) : Rational(0);
    const long long k = j.contains("zeta") ? j.at("zeta").get<long long>() : 0;
    return NodeConst::make(e, k);
}

Json to_json(const ConstantFactor& c) {
    Json out = Json::object();
    for (const auto& [node, v] : c.nodes()) out[node_key(node)] = to_json(v);
    return out;
}

ConstantFactor constant_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("\"const\" must be an object keyed by node");
    ConstantFactor c;
    for (const auto& [key, v] : j.items()) {
        int node = 0;
        try {
            node = std::stoi(key);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("constant key '" + key + "' is not a node");
        }
        c.set(node, node_const_from_json(v));
    }
    return c;
}

Json to_json(const ExponentMap& m) {
    Json out = Json::array();
    for (const auto& [idx, e] : m) out.push_back(Json::array({idx.node, idx.shift, e}));
    return out;
}

ExponentMap exponents_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("exponents must be an array of [node, shift, exponent]");
    ExponentMap m;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3) throw std::invalid_argument("exponent entries are [node, shift, exponent]");
        const SpectralIndex idx{t[0].get<int>(), t[1].get<int>()};
        m[idx] += t[2].get<long long>();
        if (m[idx] == 0) m.erase(idx);
    }
    return m;
}

Json to_json(const LWeightMonomial& m) {
    return Json{{"exps", to_json(m.exps())}, {"const", to_json(m.cst())}, {"text", m.to_string()}};
}

LWeightMonomial monomial_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("exps")) throw std::invalid_argument("monomial must be an object with \"exps\"");
    const ConstantFactor c = j.contains("const") ? constant_from_json(j.at("const")) : ConstantFactor{};
    return LWeightMonomial::from_exps(exponents_from_json(j.at("exps")), c);
}

Json to_json(const CartanData& cd, const QCharacter& x) {
    Json terms = Json::array();
    for (const auto& [m, k] : x.terms) {
        Json t = to_json(m);
        t["multiplicity"] = k;
        t["height"] = height_of(cd, m, x.head);
        terms.push_back(t);
    }
    return Json{{"head", to_json(x.head)},
                {"depth", x.depth >= kInfiniteDepth ? Json("inf") : Json(x.depth)},
                {"complete", x.complete},
                {"heuristic", x.heuristic},
                {"term_count", x.terms.size()},
                {"terms", terms}};
}

Json to_json(const Candidate& c) {
    Json w = Json::array();
    for (const auto& m : c.witnesses) w.push_back(to_json(m));
    return Json{{"psi", to_json(c.psi)},       {"mu", coweight_json(c.mu)},
                {"lambda_exps", to_json(c.lambda_exps)}, {"status", status_name(c.status)},
                {"witnesses", w},              {"note", c.note}};
}

Json to_json(const AdmissibilityVerdict& v) {
    return Json{{"pass", v.pass},
                {"failed_clause", v.failed_clause ? std::string(1, v.failed_clause) : std::string()},
                {"reason", v.reason},
                {"lambda_exps", to_json(v.lambda_exps)}};
}

Json to_json(const RelationReport& r) {
    Json fails = Json::array();
    for (const auto& f : r.failures)
        fails.push_back(Json{{"family", f.family}, {"label", f.label}, {"column", f.column}, {"row", f.row},
                             {"residual", f.residual}});
    Json fam = Json::object();
    for (const auto& [name, n] : r.per_family) fam[name] = n;
    return Json{{"ok", r.ok},
                {"relations_checked", r.relations_checked},
                {"columns_checked", r.columns_checked},
                {"columns_skipped", r.columns_skipped},
                {"per_family", fam},
                {"failures", fails},
                {"grading_ok", r.grading_ok},
                {"grading_detail", r.grading_detail}};
}

Json to_json(const TruncationData& td) {
    Json roots = Json::object();
    for (const auto& [i, rs] : td.zroots) roots[node_key(i)] = rs;
    return Json{{"type", td.cd.label()}, {"lambda", coweight_json(td.lambda())}, {"zroots", roots},
                {"Z", to_json(td.z_monomial())}};
}

Json to_json(const LanglandsChar& x) {
    Json terms = Json::array();
    for (const auto& [m, k] : x.terms)
        terms.push_back(Json{{"monomial", to_json(m)}, {"text", zmonomial_to_string(m)}, {"multiplicity", k}});
    Json prov = Json::array();
    for (const auto& [i, s] : x.provenance) prov.push_back(Json::array({i, s}));
    return Json{{"head", zmonomial_to_string(x.head)},
                {"provenance", prov},
                {"raw_terms", x.raw_terms},
                {"term_count", x.terms.size()},
                {"terms", terms}};
}

Json to_json(const ConjectureReport& r) {
    Json strata = Json::array();
    for (const auto& st : r.strata) {
        Json mons = Json::array();
        for (const auto& e : st.monomials)
            mons.push_back(Json{{"monomial", zmonomial_to_string(e.monomial)},
                                {"multiplicity", e.multiplicity},
                                {"psi", to_json(e.psi)},
                                {"below_z", e.below_z},
                                {"match_status", e.matched_candidate >= 0 ? "matched" : "unmatched"},
                                {"matched_candidate", e.matched_candidate}});
        Json cands = Json::array();
        for (const auto& c : st.candidates) cands.push_back(to_json(c));
        Json refuted = Json::array();
        for (const auto& c : st.refuted) refuted.push_back(to_json(c));
        strata.push_back(Json{{"mu", coweight_json(st.mu)},
                              {"monomials", mons},
                              {"candidates", cands},
                              {"refuted", refuted},
                              {"matched", st.matched},
                              {"discrepancies", st.discrepancies}});
    }
    return Json{{"chi_L", to_json(r.chi)},
                {"strata", strata},
                {"below_z", r.below_z},
                {"matched_pairs", r.matched_pairs},
                {"agreement", r.agreement}};
}

Json to_json(const FdTruncation& r) {
    Json out{{"truncation", to_json(r.td)},
             {"Z", to_json(r.z)},
             {"y_multiplicities", to_json(ExponentMap(r.y_multiplicities.begin(), r.y_multiplicities.end()))},
             {"lowest", to_json(r.lowest)},
             {"nu", to_json(r.nu)},
             {"v", to_json(r.v)},
             {"nu_nonnegative", r.nu_nonnegative},
             {"certificate", r.certificate},
             {"certificate_lines", r.certificate_lines}};
    out["monomial_in_chi_L"] = r.monomial_in_chi_L ? Json(*r.monomial_in_chi_L) : Json(nullptr);
    return out;
}

}  // namespace shq
