#pragma once

#include "shq/scalar.hpp"

#include <boost/rational.hpp>

#include <map>
#include <string>

namespace shq {

using Rational = boost::rational<long long>;

// Order of the root of unity used for constant prefactors.
inline constexpr int kZetaOrder = 8;

// A scalar of the form q^e * zeta^k with e rational and zeta a fixed
// primitive kZetaOrder-th root of unity.
struct NodeConst {
    Rational q_exp{0};
    int zeta_pow = 0;

    bool trivial() const { return q_exp.numerator() == 0 && zeta_pow == 0; }
    bool operator==(const NodeConst& o) const { return q_exp == o.q_exp && zeta_pow == o.zeta_pow; }
    bool operator<(const NodeConst& o) const {
        if (q_exp != o.q_exp) return q_exp < o.q_exp;
        return zeta_pow < o.zeta_pow;
    }
    NodeConst operator*(const NodeConst& o) const { return make(q_exp + o.q_exp, zeta_pow + o.zeta_pow); }
    NodeConst inverse() const { return make(-q_exp, -zeta_pow); }
    NodeConst pow(long long e) const { return make(q_exp * e, static_cast<int>((zeta_pow * (e % kZetaOrder)) % kZetaOrder)); }

    static NodeConst make(Rational e, long long k) {
        NodeConst c;
        c.q_exp = e;
        c.zeta_pow = static_cast<int>(((k % kZetaOrder) + kZetaOrder) % kZetaOrder);
        return c;
    }
    static NodeConst q(long long e) { return make(Rational(e), 0); }
    static NodeConst minus_one() { return make(Rational(0), kZetaOrder / 2); }

    // Exact value as an element of Q(v); only for +-1 times a power of v.
    bool representable() const;
    ExactScalar to_scalar() const;
    // Canonical square root q^{e/2} zeta^{k/2}; throws for odd k.
    NodeConst sqrt() const;
    std::string to_string() const;
};

// Per-node constant prefactor of an l-weight. Nodes are 1-based; trivial
// entries are never stored, so equality is structural.
class ConstantFactor {
public:
    ConstantFactor() = default;

    static ConstantFactor at(int node, const NodeConst& c) {
        ConstantFactor f;
        f.set(node, c);
        return f;
    }

    NodeConst get(int node) const {
        auto it = nodes_.find(node);
        return it == nodes_.end() ? NodeConst{} : it->second;
    }
    void set(int node, const NodeConst& c) {
        if (c.trivial()) nodes_.erase(node);
        else nodes_[node] = c;
    }
    const std::map<int, NodeConst>& nodes() const { return nodes_; }
    bool trivial() const { return nodes_.empty(); }

    ConstantFactor operator*(const ConstantFactor& o) const {
        ConstantFactor r = *this;
        for (const auto& [j, c] : o.nodes_) r.set(j, r.get(j) * c);
        return r;
    }
    ConstantFactor inverse() const {
        ConstantFactor r;
        for (const auto& [j, c] : nodes_) r.set(j, c.inverse());
        return r;
    }
    ConstantFactor operator/(const ConstantFactor& o) const { return *this * o.inverse(); }
    ConstantFactor pow(long long e) const {
        ConstantFactor r;
        for (const auto& [j, c] : nodes_) r.set(j, c.pow(e));
        return r;
    }

    bool operator==(const ConstantFactor& o) const { return nodes_ == o.nodes_; }
    bool operator!=(const ConstantFactor& o) const { return !(*this == o); }
    bool operator<(const ConstantFactor& o) const { return nodes_ < o.nodes_; }

    std::string to_string() const;

private:
    std::map<int, NodeConst> nodes_;
};

}  // namespace shq
