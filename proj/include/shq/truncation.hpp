#pragma once

#include "shq/lweight.hpp"
#include "shq/qchar.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shq {

// Coweights are written in the basis of fundamental coweights: mu[i-1] = alpha_i(mu).
using Coweight = std::vector<long long>;

// Truncation parameter. Z_i(z) = prod_k (1 - z q^{s_k}) over the stored factor
// shifts s_k of node i; the corresponding roots z_{i,k} = q^{s_k - r_i} satisfy
// Z_i(z) = prod_k (1 - q_i z z_{i,k}).
struct TruncationData {
    CartanData cd;
    std::map<int, std::vector<int>> zroots;  // node -> factor shifts (sorted)

    Coweight lambda() const;  // N_i = number of roots at node i
    LWeightMonomial z_monomial() const;
};

TruncationData make_truncation(const CartanData& cd, std::map<int, std::vector<int>> zroots);

// Parses "node:shift,shift;node:shift". Throws std::invalid_argument.
std::map<int, std::vector<int>> parse_zroots(const std::string& s);

// a with mu = lambda - sum_i a_i alpha_i^vee; nothing unless all a_i are
// non-negative integers.
std::optional<std::vector<long long>> truncation_shifts(const CartanData& cd, const Coweight& lambda, const Coweight& mu);

// phi_{i,Z} = (-1)^{N_i + sum_j C_{j,i} a_j} q_i^{alpha_i(mu)} prod_k z_{i,k}.
ConstantFactor phi_z(const TruncationData& td, const Coweight& mu, const std::vector<long long>& a);

// Canonical constant c with c_i^2 L_i = phi_{i,Z}, where L_i is the leading
// coefficient at infinity of the monomial part of Psi_i.
LWeightMonomial with_canonical_constant(const TruncationData& td, const Coweight& mu, const LWeightMonomial& psi);

// c * prod_s (1 - z q^s)^{m_s}.
struct NodePolynomial {
    NodeConst constant;
    std::map<int, long long> factors;
    long long degree() const;
    bool operator==(const NodePolynomial& o) const { return constant == o.constant && factors == o.factors; }
    std::string to_string() const;
};

// Eigenvalue of the truncation series on the highest weight vector, evaluated
// at z q_i^{-1}: for Z Psi^{-1} = prod Lambda_{i,u}^{v_{i,u}} it is
// prod_u (b^{-1/2} - z b^{1/2})^{v_{i,u}} with b = q^{u - r_i}.
// Nothing if Z Psi^{-1} is not a Lambda-monomial.
std::optional<std::map<int, NodePolynomial>> abar_eigenvalue(const TruncationData& td, const LWeightMonomial& psi);

struct AdmissibilityVerdict {
    bool pass = false;
    char failed_clause = 0;  // 'a', 'b', 'c' or 0
    std::string reason;
    ExponentMap lambda_exps;
};

// Necessary condition for L(Psi) to descend to the truncation.
AdmissibilityVerdict admissibility_check(const TruncationData& td, const Coweight& mu, const LWeightMonomial& psi);

enum class CandidateStatus { NecessaryOnly, StrongCandidate, Refuted, Classified };
std::string status_name(CandidateStatus s);

struct Candidate {
    LWeightMonomial psi;
    ExponentMap lambda_exps;
    Coweight mu;
    CandidateStatus status = CandidateStatus::NecessaryOnly;
    std::vector<LWeightMonomial> witnesses;  // l-weights violating the Z-order, lowest first
    std::string note;
};

// Spectral window scanned by the enumeration.
std::pair<int, int> enumeration_window(const TruncationData& td, const std::vector<long long>& a);

// All Psi (modulo sign-twist) passing admissibility_check, in canonical order; the
// result does not depend on the number of worker threads.
// Throws std::invalid_argument if mu is not below lambda.
std::vector<Candidate> enumerate_candidates(const TruncationData& td, const Coweight& mu, int threads = 1);

// Rank one: subsets of the roots of Z of size a.
std::vector<Candidate> sl2_classify(const TruncationData& td, const Coweight& mu);

// l-weights certain to occur in L(Psi), up to depth: the node strings of Psi,
// then the node strings of those terms along nodes not yet used, and so on.
// Multiplicities are not tracked. These can refute descent but not confirm it.
QCharacter node_string_slice(const CartanData& cd, const LWeightMonomial& psi, int depth);

// Checks every l-weight of the depth-truncated character against the Z-order.
// Without a character slice only the node strings are checked.
Candidate descent_refine(const TruncationData& td, const Candidate& c, int depth);

// Character slice of L(Psi) when one is available: all-negative monomials,
// all-positive monomials and rank one.
std::optional<QCharacter> simple_character(const CartanData& cd, const LWeightMonomial& psi, int depth);

TruncationData fuse_truncations(const TruncationData& a, const TruncationData& b);

}  // namespace shq
