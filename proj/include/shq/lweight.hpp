#pragma once

#include "shq/cartan.hpp"
#include "shq/constant.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shq {

// Node i (1-based) and spectral parameter a = q^shift.
struct SpectralIndex {
    int node = 1;
    int shift = 0;
    auto operator<=>(const SpectralIndex&) const = default;
};

using ExponentMap = std::map<SpectralIndex, long long>;

// Laurent monomial in the prefundamental variables Psi_{i,q^r} times a
// constant; Psi_{i,a} is the l-weight whose i-th component is (1 - z a).
class LWeightMonomial {
public:
    LWeightMonomial() = default;
    static LWeightMonomial psi(int node, int shift, long long e = 1);
    static LWeightMonomial constant(const ConstantFactor& c);
    static LWeightMonomial from_exps(const ExponentMap& exps, const ConstantFactor& c = {});

    const ExponentMap& exps() const { return exps_; }
    const ConstantFactor& cst() const { return cst_; }
    long long exponent(int node, int shift) const;
    bool is_identity() const { return exps_.empty() && cst_.trivial(); }

    LWeightMonomial operator*(const LWeightMonomial& o) const;
    LWeightMonomial operator/(const LWeightMonomial& o) const;
    LWeightMonomial& operator*=(const LWeightMonomial& o) { return *this = *this * o; }
    LWeightMonomial inverse() const;
    LWeightMonomial pow(long long e) const;
    LWeightMonomial with_constant(const ConstantFactor& c) const;
    LWeightMonomial monomial_part() const { return with_constant({}); }
    LWeightMonomial shifted(int k) const;  // a -> a q^k on every variable

    // Exponents at one node as shift -> exponent.
    std::map<int, long long> node_exps(int node) const;

    bool operator==(const LWeightMonomial& o) const { return exps_ == o.exps_ && cst_ == o.cst_; }
    bool operator!=(const LWeightMonomial& o) const { return !(*this == o); }
    bool operator<(const LWeightMonomial& o) const;

    std::string to_string() const;

private:
    void add(const SpectralIndex& s, long long e);
    ExponentMap exps_;
    ConstantFactor cst_;
};

enum class GenKind { Psi, Y, Ytilde, A, Lambda, Z, PsiTilde, PsiStar };
GenKind parse_gen_kind(const std::string& s);

LWeightMonomial generator(const CartanData& cd, GenKind kind, int node, int shift);

// Monoid law: M1 * M2^{sign}.
LWeightMonomial combine(const LWeightMonomial& m1, const LWeightMonomial& m2, int sign);

// alpha_i(mu) for each node, 0-based vector.
std::vector<long long> coweight_of(const CartanData& cd, const LWeightMonomial& m);

enum class Basis { A, Lambda };

// Expansion of prod basis_{i,u}^{v_{i,u}}, constants included (alpha-bar for A).
LWeightMonomial expand_in_basis(const CartanData& cd, const ExponentMap& v, Basis basis);

// Unique exponent map v with M (constant ignored) = prod basis^{v}, or nothing.
std::optional<ExponentMap> factor_in_basis(const CartanData& cd, const LWeightMonomial& m, Basis basis);

// True iff the monomial part is a product of nonnegative powers of
// Ytilde_{i,a} and Psi_{i,a}.
bool is_dominant(const CartanData& cd, const LWeightMonomial& m);

enum class Order { Nakajima, ZOrder };

// Nakajima: M / M' is a nonnegative A-monomial. ZOrder: M / M' is a
// nonnegative Lambda-monomial. Constants are ignored.
bool leq(const CartanData& cd, const LWeightMonomial& lower, const LWeightMonomial& upper, Order order);

// Sign-twist group K: zeta exponents k with sum_j C_{j,i} k_j = 0 mod kZetaOrder.
std::vector<std::vector<long long>> sign_twist_group(const CartanData& cd);
bool is_sign_twist(const CartanData& cd, const ConstantFactor& c);
bool equal_mod_signtwist(const CartanData& cd, const LWeightMonomial& m1, const LWeightMonomial& m2);

}  // namespace shq
