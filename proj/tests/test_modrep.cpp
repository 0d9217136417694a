#include "shq/json_io.hpp"
#include "shq/modrep.hpp"
#include "shq/qchar.hpp"

#include <doctest.h>

#include <fstream>

using namespace shq;

namespace {

ZFactorProduct factors_from_json(const Json& j) {
    ZFactorProduct p;
    for (const auto& f : j) p.factors[{f[0].get<int>(), f[1].get<int>()}] = f[2].get<long long>();
    return p;
}

ModuleParams params(const std::string& type, int node, int shift) {
    ModuleParams p;
    p.type = type;
    p.node = node;
    p.shift = shift;
    p.gamma = ExactScalar::q_power(3);
    p.beta = ExactScalar::q_power(-1);
    return p;
}

}  // namespace

TEST_CASE("every built-in module satisfies its relations at a small cutoff") {
    struct Case {
        ModuleKind kind;
        const char* type;
        int node;
    };
    const std::vector<Case> cases{{ModuleKind::OscVermaPlus, "A1", 1},   {ModuleKind::OscVermaMinus, "A1", 1},
                                  {ModuleKind::CoproductPlus, "A1", 1},  {ModuleKind::CoproductMinus, "A1", 1},
                                  {ModuleKind::EvalSl2, "A1", 1},        {ModuleKind::PsiTilde, "B2", 2},
                                  {ModuleKind::PsiStar, "G2", 2},        {ModuleKind::PsiStar, "A2", 1}};
    for (const auto& c : cases) {
        CAPTURE(module_kind_name(c.kind));
        CAPTURE(c.type);
        const ExplicitModule m = build_module(c.kind, params(c.type, c.node, 1), 5, 3);
        const RelationReport r = check_relations(m);
        CHECK(r.ok);
        CHECK(r.grading_ok);
        CHECK(r.relations_checked > 0);
        CHECK(r.failures.empty());
    }
}

TEST_CASE("oscillator action matches its closed formulas") {
    const ExplicitModule m = build_module(ModuleKind::OscVermaPlus, params("A1", 1, 0), 6, 2);
    const ExactScalar q = ExactScalar::q_power(1), gamma = ExactScalar::q_power(3);
    for (int r = 0; r + 1 < 6; ++r) {
        const ExactScalar expected = gamma * q.pow(-r) * ExactScalar::qnum(r + 1) / (q - q.inverse());
        CHECK(m.gens.at("f").mat.get(r + 1, r) == expected);
        CHECK(m.gens.at("e").mat.get(r, r + 1) == ExactScalar(1L));
    }
}

TEST_CASE("the relation checker detects a perturbed matrix") {
    ExplicitModule m = build_module(ModuleKind::PsiStar, params("B2", 1, 0), 4, 2);
    REQUIRE(check_relations(m).ok);
    GenMatrix& g = m.gens.at(xname(1, 1, 1));
    g.mat.set(0, 1, g.mat.get(0, 1) * ExactScalar(2L));
    const RelationReport r = check_relations(m);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.failures.empty());

    ExplicitModule e = build_module(ModuleKind::EvalSl2, params("A1", 1, 0), 5, 2);
    REQUIRE(check_relations(e).ok);
    GenMatrix& h = e.gens.at(phiname(1, 1, 1));
    h.mat.set(2, 2, h.mat.get(2, 2) + ExactScalar(1L));
    CHECK_FALSE(check_relations(e).ok);
}

TEST_CASE("series expansions of a factored rational function") {
    // (1 - z q^2)^{-1} = sum q^{2m} z^m.
    const auto at0 = expand_at_zero(ExactScalar(1L), {{2, -1}}, 4);
    REQUIRE(at0.size() == 5);
    for (int m = 0; m <= 4; ++m) CHECK(at0[m] == ExactScalar::q_power(2 * m));
}

TEST_CASE("T-series ratios on L(Y^2) match the fixture matrices") {
    std::ifstream in(SHQ_FIXTURE_DIR "/tseries_y_squared.json");
    REQUIRE(in.good());
    const Json fx = Json::parse(in);
    const CartanData cd = build_cartan(fx["type"].get<std::string>());
    const LWeightMonomial head = y_to_psi(cd, exponents_from_json(fx["head_y"]));
    const int node = fx["node"].get<int>();
    for (const auto& e : fx["entries"]) {
        LWeightMonomial target = head;
        for (const auto& [idx, k] : exponents_from_json(e["a_inverse"]))
            target = target / generator(cd, GenKind::A, idx.node, idx.shift).pow(k);
        const TSeriesRatio r = t_series_ratio(cd, target, head, node);
        CHECK(r.minus == factors_from_json(e["minus"]));
        CHECK(r.plus == factors_from_json(e["plus"]));
    }
    CHECK_THROWS_AS(t_series_ratio(cd, head * generator(cd, GenKind::A, 1, 1), head, node), std::invalid_argument);
}

TEST_CASE("T-series ratios are multiplicative along the negative prefundamental string") {
    const CartanData a1 = build_cartan("A1");
    const QCharacter x = qc_closed_form(a1, ClosedForm::NegPrefundSl2, 1, 0, 5);
    // Terms ordered by height: the string v_0, v_1, ...
    std::vector<LWeightMonomial> string;
    for (int h = 0; h <= 5; ++h)
        for (const auto& [m, k] : x.terms)
            if (height_of(a1, m, x.head) == h) string.push_back(m);
    REQUIRE(string.size() == 6);
    for (size_t j = 1; j < string.size(); ++j) {
        const TSeriesRatio whole = t_series_ratio(a1, string[j], x.head, 1);
        const TSeriesRatio prev = t_series_ratio(a1, string[j - 1], x.head, 1);
        const TSeriesRatio step = t_series_ratio(a1, string[j], string[j - 1], 1);
        CHECK(whole.plus == prev.plus * step.plus);
        CHECK(whole.minus == prev.minus * step.minus);
        // One new factor per step, (1 - z^{-1} a)^{-1} on the plus side.
        CHECK(step.plus.factors.size() == 1);
        CHECK(step.plus.factors.begin()->first.first == -1);
        CHECK(step.plus.factors.begin()->second == -1);
    }
}
