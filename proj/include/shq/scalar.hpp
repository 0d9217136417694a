#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace shq {

// Laurent polynomial in the formal variable v (with v^2 = q) and rational
// coefficients. Zero coefficients are never stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const mpq_class& c);
    static LaurentPoly monomial(int exp, const mpq_class& c = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const std::map<int, mpq_class>& terms() const { return terms_; }

    int min_exp() const;
    int max_exp() const;
    mpq_class leading_coeff() const;
    mpq_class coeff(int exp) const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly scaled(const mpq_class& c) const;
    LaurentPoly shifted(int k) const;   // multiply by v^k
    LaurentPoly substitute_power(int m) const;  // v -> v^m, m != 0
    mpq_class evaluate(const mpq_class& v0) const;

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
    bool operator<(const LaurentPoly& o) const;

    void add_term(int exp, const mpq_class& c);
    std::string to_string() const;

private:
    std::map<int, mpq_class> terms_;
};

// Division with remainder of ordinary polynomials (min_exp >= 0).
void poly_divmod(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quot, LaurentPoly& rem);
// Monic gcd of ordinary polynomials.
LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b);

// Element of Q(v). The denominator is an ordinary polynomial with nonzero
// constant term and leading coefficient 1, coprime to the numerator; powers
// of v live in the numerator. This makes the representation canonical.
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(long n);  // NOLINT(google-explicit-constructor)
    explicit ExactScalar(const mpq_class& c);
    explicit ExactScalar(const LaurentPoly& p);
    ExactScalar(const LaurentPoly& num, const LaurentPoly& den);

    static ExactScalar v_power(int k);
    static ExactScalar q_power(int k) { return v_power(2 * k); }
    // [m]_u with u = q^k.
    static ExactScalar qnum(int m, int k = 1);
    // Gaussian binomial [s choose r]_u with u = q^k.
    static ExactScalar qbinom(int s, int r, int k = 1);

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;

    ExactScalar operator+(const ExactScalar& o) const;
    ExactScalar operator-(const ExactScalar& o) const;
    ExactScalar operator-() const;
    ExactScalar operator*(const ExactScalar& o) const;
    ExactScalar operator/(const ExactScalar& o) const;
    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }
    ExactScalar pow(int e) const;
    ExactScalar inverse() const;

    ExactScalar substitute_power(int m) const;
    mpq_class evaluate(const mpq_class& v0) const;

    bool operator==(const ExactScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ExactScalar& o) const { return !(*this == o); }
    bool operator<(const ExactScalar& o) const;

    std::string to_string() const;

private:
    void normalize();
    LaurentPoly num_;
    LaurentPoly den_ = LaurentPoly(mpq_class(1));
};

}  // namespace shq
