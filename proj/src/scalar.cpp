#include "shq/scalar.hpp"

#include <sstream>
#include <stdexcept>

namespace shq {

LaurentPoly::LaurentPoly(const mpq_class& c) {
    if (c != 0) terms_[0] = c;
}

LaurentPoly LaurentPoly::monomial(int exp, const mpq_class& c) {
    LaurentPoly p;
    p.add_term(exp, c);
    return p;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

int LaurentPoly::min_exp() const {
    if (terms_.empty()) throw std::logic_error("min_exp of zero polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_exp() const {
    if (terms_.empty()) throw std::logic_error("max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

mpq_class LaurentPoly::leading_coeff() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->second;
}

mpq_class LaurentPoly::coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void LaurentPoly::add_term(int exp, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::scaled(const mpq_class& c) const {
    if (c == 0) return {};
    LaurentPoly r;
    for (const auto& [e, x] : terms_) r.terms_[e] = x * c;
    return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
    return r;
}

LaurentPoly LaurentPoly::substitute_power(int m) const {
    if (m == 0) throw std::invalid_argument("substitute_power with m = 0");
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.add_term(e * m, c);
    return r;
}

mpq_class LaurentPoly::evaluate(const mpq_class& v0) const {
    if (v0 == 0 && !terms_.empty() && min_exp() < 0)
        throw std::domain_error("evaluation of a Laurent polynomial at 0");
    mpq_class total = 0;
    for (const auto& [e, c] : terms_) {
        mpq_class p = 1;
        mpq_class base = e >= 0 ? v0 : mpq_class(1) / v0;
        for (int k = 0; k < (e >= 0 ? e : -e); ++k) p *= base;
        total += c * p;
    }
    return total;
}

bool LaurentPoly::operator<(const LaurentPoly& o) const {
    return terms_ < o.terms_;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        mpq_class a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        os << "v";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

void poly_divmod(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quot, LaurentPoly& rem) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    quot = LaurentPoly();
    rem = a;
    const int db = b.max_exp();
    const mpq_class lb = b.leading_coeff();
    while (!rem.is_zero() && rem.max_exp() >= db) {
        const int shift = rem.max_exp() - db;
        const mpq_class c = rem.leading_coeff() / lb;
        quot.add_term(shift, c);
        rem = rem - b.shifted(shift).scaled(c);
    }
}

LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
    while (!b.is_zero()) {
        LaurentPoly q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(mpq_class(1) / a.leading_coeff());
}

ExactScalar::ExactScalar(long n) : num_(mpq_class(n)) {}

ExactScalar::ExactScalar(const mpq_class& c) : num_(c) {}

ExactScalar::ExactScalar(const LaurentPoly& p) : num_(p) {}

ExactScalar::ExactScalar(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("ExactScalar with zero denominator");
    normalize();
}

ExactScalar ExactScalar::v_power(int k) {
    return ExactScalar(LaurentPoly::monomial(k));
}

ExactScalar ExactScalar::qnum(int m, int k) {
    if (m == 0) return ExactScalar(0L);
    const int sign = m > 0 ? 1 : -1;
    const int a = m > 0 ? m : -m;
    LaurentPoly p;
    // [a]_u = u^{a-1} + u^{a-3} + ... + u^{1-a} with u = v^{2k}
    for (int j = 0; j < a; ++j) p.add_term(2 * k * (a - 1 - 2 * j), sign);
    return ExactScalar(p);
}

ExactScalar ExactScalar::qbinom(int s, int r, int k) {
    if (r < 0 || r > s) return ExactScalar(0L);
    ExactScalar result(1L);
    for (int j = 1; j <= r; ++j) result = result * qnum(s - r + j, k) / qnum(j, k);
    return result;
}

bool ExactScalar::is_one() const {
    return den_.is_constant() && num_.is_constant() && num_.coeff(0) == 1;
}

void ExactScalar::normalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(mpq_class(1));
        return;
    }
    // Move the v-adic part of the denominator into the numerator.
    const int ds = den_.min_exp();
    if (ds != 0) {
        den_ = den_.shifted(-ds);
        num_ = num_.shifted(-ds);
    }
    if (!den_.is_constant()) {
        const int ns = num_.min_exp();
        LaurentPoly n0 = num_.shifted(-ns);
        LaurentPoly g = poly_gcd(n0, den_);
        if (!g.is_constant()) {
            LaurentPoly q, r;
            poly_divmod(n0, g, q, r);
            n0 = q;
            poly_divmod(den_, g, q, r);
            den_ = q;
        }
        num_ = n0.shifted(ns);
    }
    const mpq_class lead = den_.leading_coeff();
    if (lead != 1) {
        num_ = num_.scaled(mpq_class(1) / lead);
        den_ = den_.scaled(mpq_class(1) / lead);
    }
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
    if (den_ == o.den_) {
        ExactScalar r;
        r.num_ = num_ + o.num_;
        r.den_ = den_;
        if (!den_.is_constant()) r.normalize();
        else if (r.num_.is_zero()) r.den_ = LaurentPoly(mpq_class(1));
        return r;
    }
    return ExactScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const {
    return *this + (-o);
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
    if (is_zero() || o.is_zero()) return ExactScalar(0L);
    if (den_.is_constant() && o.den_.is_constant()) {
        ExactScalar r;
        r.num_ = num_ * o.num_;
        return r;
    }
    return ExactScalar(num_ * o.num_, den_ * o.den_);
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return ExactScalar(den_, num_);
}

ExactScalar ExactScalar::operator/(const ExactScalar& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (is_zero()) return ExactScalar(0L);
    return ExactScalar(num_ * o.den_, den_ * o.num_);
}

ExactScalar ExactScalar::pow(int e) const {
    ExactScalar base = e >= 0 ? *this : inverse();
    ExactScalar r(1L);
    for (int k = 0; k < (e >= 0 ? e : -e); ++k) r = r * base;
    return r;
}

ExactScalar ExactScalar::substitute_power(int m) const {
    return ExactScalar(num_.substitute_power(m), den_.substitute_power(m));
}

mpq_class ExactScalar::evaluate(const mpq_class& v0) const {
    const mpq_class d = den_.evaluate(v0);
    if (d == 0) throw std::domain_error("evaluation at a pole");
    return num_.evaluate(v0) / d;
}

bool ExactScalar::operator<(const ExactScalar& o) const {
    if (num_ != o.num_) return num_ < o.num_;
    return den_ < o.den_;
}

std::string ExactScalar::to_string() const {
    if (den_.is_constant() && den_.coeff(0) == 1) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace shq
