#include "shq/langlands.hpp"
#include "shq/qchar.hpp"

#include <doctest.h>

using namespace shq;

namespace {

LWeightMonomial psi(int i, int s, long long e = 1) { return LWeightMonomial::psi(i, s, e); }

std::map<ZMonomial, long long> fm_as_z(const CartanData& cd, const YMonomial& head) {
    const FMResult r = frenkel_mukhin_y(cd, head, 50);
    REQUIRE(r.complete);
    return r.terms;
}

std::map<ZMonomial, long long> product(const std::map<ZMonomial, long long>& a, const std::map<ZMonomial, long long>& b) {
    std::map<ZMonomial, long long> out;
    for (const auto& [m1, k1] : a)
        for (const auto& [m2, k2] : b) {
            ZMonomial m = m1;
            for (const auto& [idx, e] : m2)
                if ((m[idx] += e) == 0) m.erase(idx);
            out[m] += k1 * k2;
        }
    return out;
}

// Z-monomial from (node, q-power, exponent) triples.
ZMonomial zm(std::initializer_list<std::tuple<int, int, int>> fs) {
    ZMonomial m;
    for (const auto& [i, t, e] : fs) m[SpectralIndex{i, t}] = e;
    return m;
}

}  // namespace

TEST_CASE("simply-laced dual characters are Frenkel-Mukhin characters") {
    const CartanData a2 = build_cartan("A2");
    const LanglandsChar x = chi_L_fundamental(a2, 1, -3);
    CHECK(x.terms.size() == 3);
    CHECK(x.terms == fm_as_z(a2, YMonomial{{{1, -3}, 1}}));
    const TruncationData td = make_truncation(a2, {{1, {3}}, {2, {0}}});
    const LanglandsChar s = chi_L_standard(td);
    CHECK(s.terms == product(fm_as_z(a2, YMonomial{{{1, -3}, 1}}), fm_as_z(a2, YMonomial{{{2, 0}, 1}})));
    CHECK(s.head == zm({{1, -3, 1}, {2, 0, 1}}));
}

TEST_CASE("B2 dual fundamental characters") {
    const CartanData b2 = build_cartan("B2");
    const std::map<ZMonomial, long long> node2{
        {zm({{2, 0, 1}}), 1},
        {zm({{2, 2, -1}, {1, 0, 1}, {1, 2, 1}}), 1},
        {zm({{1, 0, 1}, {1, 6, -1}, {2, 2, -1}, {2, 4, 1}}), 1},
        {zm({{1, 2, 1}, {1, 4, -1}}), 1},
        {zm({{1, 6, -1}, {1, 4, -1}, {2, 4, 1}}), 1},
        {zm({{2, 6, -1}}), 1},
    };
    CHECK(chi_L_fundamental(b2, 2, 0).terms == node2);
    const std::map<ZMonomial, long long> node1{
        {zm({{1, 0, 1}}), 1},
        {zm({{1, 4, -1}, {2, 2, 1}}), 1},
        {zm({{2, 4, -1}, {1, 2, 1}}), 1},
        {zm({{1, 6, -1}}), 1},
    };
    CHECK(chi_L_fundamental(b2, 1, 0).terms == node1);
    // Shifting the spectral parameter shifts every variable.
    for (const auto& [m, k] : chi_L_fundamental(b2, 1, 5).terms) {
        ZMonomial back;
        for (const auto& [idx, e] : m) back[SpectralIndex{idx.node, idx.shift - 5}] = e;
        CHECK(node1.count(back) == 1);
    }
    CHECK_THROWS_AS(chi_L_fundamental(build_cartan("G2"), 1, 0), std::invalid_argument);
}

TEST_CASE("specialization of the interpolating table") {
    const CartanData b2 = build_cartan("B2");
    const auto ys = b2_node2_specialized_y();
    CHECK(ys.size() == 6);
    for (const auto& y : ys) CHECK(y_to_z(b2, y).has_value());
    // Y_{2,0} alone is not a product of Z_2 pairs.
    CHECK_FALSE(y_to_z(b2, YMonomial{{{2, 0}, 1}}).has_value());
    CHECK(*y_to_z(b2, YMonomial{{{2, -1}, 1}, {{2, 1}, 1}}) == zm({{2, 0, 1}}));
}

TEST_CASE("standard dual characters") {
    const CartanData a1 = build_cartan("A1");
    const LanglandsChar e = chi_L_standard(make_truncation(a1, {}));
    CHECK(e.terms.size() == 1);
    CHECK(e.terms.begin()->first.empty());
    const LanglandsChar two = chi_L_standard(make_truncation(a1, {{1, {3, -1}}}));
    CHECK(two.raw_terms == 4);
    CHECK(two.provenance.size() == 2);
}

TEST_CASE("l-weights of dual monomials") {
    const CartanData b2 = build_cartan("B2");
    const TruncationData td = make_truncation(b2, {{2, {0}}});
    const MonomialLWeight head = psi_of_monomial(td, chi_L_standard(td).head);
    CHECK(head.mu == Coweight{0, 1});
    CHECK(equal_mod_signtwist(b2, head.psi, td.z_monomial()));
    const MonomialLWeight m = psi_of_monomial(td, zm({{1, 2, 1}, {1, 4, -1}}));
    CHECK(m.psi.monomial_part() == psi(1, -2) * psi(1, -4, -1));
    CHECK(m.mu == Coweight{0, 0});
    CHECK(monomial_of_psi(m.psi) == zm({{1, 2, 1}, {1, 4, -1}}));
    const MonomialLWeight c = psi_of_monomial(td, ZMonomial{});
    CHECK(c.psi.exps().empty());
    CHECK(c.mu == Coweight{0, 0});
}

TEST_CASE("conjecture reports on the worked examples") {
    const CartanData a1 = build_cartan("A1");
    for (const auto& roots : {std::vector<int>{3, -1}, std::vector<int>{2, 2}, std::vector<int>{0}}) {
        const ConjectureReport r = conjecture_report(make_truncation(a1, {{1, roots}}));
        CHECK(r.below_z);
        CHECK(r.agreement);
    }
    const ConjectureReport a2 = conjecture_report(make_truncation(build_cartan("A2"), {{1, {3}}}));
    CHECK(a2.matched_pairs == 3);
    CHECK(a2.agreement);

    const ConjectureReport b2 = conjecture_report(make_truncation(build_cartan("B2"), {{2, {0}}}));
    CHECK(b2.below_z);
    for (const auto& st : b2.strata)
        if (st.mu == Coweight{0, 0}) {
            REQUIRE(st.monomials.size() == 2);
            CHECK(st.matched == 2);
        }
}

TEST_CASE("finite-dimensional truncations") {
    const CartanData b2 = build_cartan("B2");
    const FdTruncation r = fd_truncation_for(b2, psi(1, -2) * psi(1, 2, -1));
    CHECK(r.z.monomial_part() == psi(1, -2) * psi(1, 8) * psi(1, 0) * psi(1, 6));
    CHECK(r.certificate);
    CHECK(r.nu_nonnegative);

    const CartanData a1 = build_cartan("A1");
    const FdTruncation s = fd_truncation_for(a1, generator(a1, GenKind::Ytilde, 1, 0));
    CHECK(s.certificate);
    CHECK(s.z.exps().size() == 2);

    const FdTruncation c = fd_truncation_for(a1, LWeightMonomial{});
    CHECK(c.z.exps().empty());
    CHECK(c.certificate);

    CHECK_THROWS_AS(fd_truncation_for(a1, psi(1, 0, -1)), std::invalid_argument);
    CHECK_FALSE(dominant_decomposition(a1, psi(1, 0, -1)).has_value());
    const auto d = dominant_decomposition(b2, generator(b2, GenKind::Ytilde, 2, 1) * psi(1, 3));
    REQUIRE(d.has_value());
    CHECK(d->first == ExponentMap{{SpectralIndex{2, 1}, 1}});
    CHECK(d->second == ExponentMap{{SpectralIndex{1, 3}, 1}});
}
