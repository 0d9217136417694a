#include "shq/cartan.hpp"
#include "shq/constant.hpp"
#include "shq/scalar.hpp"
#include "shq/smith.hpp"

#include <doctest.h>

#include <random>

using namespace shq;

namespace {

// [m]_u for u = q^k, written out as a ratio of differences.
ExactScalar qnum_direct(int m, int k) {
    const ExactScalar u = ExactScalar::q_power(k);
    return (u.pow(m) - u.pow(-m)) / (u - u.pow(-1));
}

ExactScalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> e(-4, 4), c(-3, 3);
    LaurentPoly num, den;
    for (int t = 0; t < 3; ++t) num.add_term(e(rng), c(rng));
    den.add_term(0, 1);
    den.add_term(1 + (rng() % 3), c(rng));
    if (num.is_zero()) num.add_term(0, 1);
    return ExactScalar(num, den);
}

}  // namespace

TEST_CASE("Cartan data for small types") {
    const CartanData a1 = build_cartan('A', 1);
    CHECK(a1.C == IntMatrix{{2}});
    CHECK(a1.r == std::vector<int>{1});
    CHECK(a1.dual_coxeter == 2);

    const CartanData b2 = build_cartan("B2");
    CHECK(b2.r == std::vector<int>{2, 1});
    CHECK(b2.c(1, 2) == -1);
    CHECK(b2.c(2, 1) == -2);
    CHECK(b2.b(1, 2) == -2);
    CHECK(b2.lacing == 2);

    const CartanData a2 = build_cartan("A2");
    CHECK(a2.C == IntMatrix{{2, -1}, {-1, 2}});
    CHECK(a2.bar_of(1) == 2);
    CHECK(a2.bar_of(2) == 1);

    CHECK_THROWS_AS(build_cartan("Q3"), std::invalid_argument);
    CHECK_THROWS_AS(build_cartan('E', 5), std::invalid_argument);
}

TEST_CASE("Cartan invariants hold for every supported type") {
    for (const char* label : {"A1", "A3", "B2", "B3", "C3", "D4", "E6", "E7", "E8", "F4", "G2"}) {
        CAPTURE(label);
        const CartanData cd = build_cartan(label);
        for (int i = 1; i <= cd.n; ++i) {
            CHECK(cd.c(i, i) == 2);
            CHECK(cd.bar_of(cd.bar_of(i)) == i);
            for (int j = 1; j <= cd.n; ++j) {
                CHECK(cd.b(i, j) == cd.b(j, i));
                if (i != j) CHECK((cd.c(i, j) <= 0 && cd.c(i, j) >= -3));
                CHECK(cd.c(cd.bar_of(i), cd.bar_of(j)) == cd.c(i, j));
            }
        }
    }
}

TEST_CASE("quantum Cartan entries") {
    const CartanData a1 = build_cartan("A1");
    CHECK(quantum_cartan(a1, 1, 1) == ExactScalar::q_power(1) + ExactScalar::q_power(-1));
    const CartanData b2 = build_cartan("B2");
    CHECK(quantum_cartan(b2, 1, 1) == ExactScalar::q_power(2) + ExactScalar::q_power(-2));
    CHECK(quantum_cartan(b2, 1, 2) == ExactScalar(-1L));
    for (int m = 1; m <= 5; ++m)
        for (int k = 1; k <= 3; ++k) CHECK(ExactScalar::qnum(m, k) == qnum_direct(m, k));
}

TEST_CASE("quantum Cartan matrix times its inverse is the identity") {
    for (const char* label : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"}) {
        CAPTURE(label);
        const CartanData cd = build_cartan(label);
        const ScalarMatrix prod = multiply(quantum_cartan_matrix(cd), invert_quantum_cartan(cd));
        for (int i = 0; i < cd.n; ++i)
            for (int j = 0; j < cd.n; ++j) CHECK(prod[i][j] == ExactScalar(i == j ? 1L : 0L));
    }
    const ScalarMatrix inv = invert_quantum_cartan(build_cartan("A1"));
    CHECK(inv[0][0] == ExactScalar(1L) / (ExactScalar::q_power(1) + ExactScalar::q_power(-1)));
}

TEST_CASE("exact scalar field axioms and evaluation") {
    std::mt19937 rng(7);
    const mpq_class v0(3, 2);
    for (int t = 0; t < 60; ++t) {
        const ExactScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == ExactScalar(0L));
        if (!a.is_zero()) CHECK(a * a.inverse() == ExactScalar(1L));
        CHECK((a * b).evaluate(v0) == a.evaluate(v0) * b.evaluate(v0));
        CHECK((a + b).evaluate(v0) == a.evaluate(v0) + b.evaluate(v0));
    }
}

TEST_CASE("constants compose as a group") {
    const NodeConst a = NodeConst::make(Rational(1, 2), 3), b = NodeConst::make(Rational(-3, 2), 6);
    CHECK((a * b).q_exp == Rational(-1));
    CHECK((a * b).zeta_pow == (9 % kZetaOrder));
    CHECK((a * a.inverse()).trivial());
    CHECK(NodeConst::minus_one().pow(2).trivial());
    ConstantFactor f = ConstantFactor::at(1, a) * ConstantFactor::at(2, b);
    CHECK((f * f.inverse()).trivial());
}

TEST_CASE("Smith normal form and modular solving") {
    const IntMatrix a{{2, -1}, {-2, 2}};
    const SmithForm s = smith_normal_form(a);
    // U A V = D with det = 2, so the invariant factors are 1 and 2.
    const IntMatrix uav = [&] {
        IntMatrix out(2, std::vector<long long>(2, 0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) out[i][j] += s.U[i][k] * a[k][l] * s.V[l][j];
        return out;
    }();
    CHECK(uav == s.D);
    CHECK(std::abs(s.D[0][0] * s.D[1][1]) == 2);
    CHECK(s.D[0][1] == 0);
    CHECK(s.D[1][0] == 0);
    const auto x = solve_mod(a, {1, 0}, 2);
    REQUIRE(x.has_value());
    CHECK(((2 * (*x)[0] - (*x)[1]) % 2 + 2) % 2 == 1);
    CHECK(kernel_mod(IntMatrix{{2}}, 2) == std::vector<std::vector<long long>>{{0}, {1}});
}
