#pragma once

#include "shq/lweight.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shq {

// Depth used for characters that are known exactly (finitely many terms).
inline constexpr int kInfiniteDepth = 1 << 20;

// Depth-truncated q-character. Every retained term has A^{-1}-height at most
// `depth` relative to `head`; `complete` means nothing was dropped.
struct QCharacter {
    LWeightMonomial head;
    int depth = kInfiniteDepth;
    bool complete = true;
    bool heuristic = false;  // produced outside the proven range of the expansion
    std::map<LWeightMonomial, long long> terms;

    long long dimension() const;
    bool operator==(const QCharacter& o) const {
        return head == o.head && depth == o.depth && complete == o.complete && terms == o.terms;
    }
};

QCharacter qc_unit();
QCharacter qc_monomial(const LWeightMonomial& m);

// Number of A^{-1} factors separating `term` from `head`, read off from the
// constant parts (each A_{j,a}^{-1} contributes alpha-bar_j^{-1}).
long long height_of(const CartanData& cd, const LWeightMonomial& term, const LWeightMonomial& head);

// Restriction to terms of height <= depth.
QCharacter qc_restrict(const CartanData& cd, const QCharacter& x, int depth);

QCharacter qc_mul(const CartanData& cd, const QCharacter& x1, const QCharacter& x2);

enum class ClosedForm { PosPrefund, NegPrefundSl2, PsiTilde, PsiStar };
ClosedForm parse_closed_form(const std::string& s);
QCharacter qc_closed_form(const CartanData& cd, ClosedForm kind, int node, int shift, int depth);

// Monomials in the Y variables: (i, r) -> exponent of Y_{i,q^r}.
using YMonomial = ExponentMap;

struct FMResult {
    std::map<YMonomial, long long> terms;
    std::map<YMonomial, int> height;
    bool complete = true;
};

// Frenkel-Mukhin expansion from a dominant Y-monomial, keeping terms of
// height <= depth. Throws std::invalid_argument for a non-dominant head and
// std::runtime_error when the colouring is inconsistent.
FMResult frenkel_mukhin_y(const CartanData& cd, const YMonomial& head, int depth);
LWeightMonomial y_to_psi(const CartanData& cd, const YMonomial& y);
// Y-form of A_{i,q^r}.
YMonomial a_in_y(const CartanData& cd, int node, int shift);
bool is_y_dominant(const YMonomial& y);

// With require_complete, throws if the expansion did not close within depth.
QCharacter qc_frenkel_mukhin(const CartanData& cd, const YMonomial& head, int depth, bool require_complete = false);

QCharacter qc_neg_prefund_limit(const CartanData& cd, int node, int shift, int depth);

// q-sets for sl2: the string {s, s+2, ..., s+2(len-1)}; len < 0 means infinite
// upward (the set attached to a positive prefundamental factor).
struct QString {
    int start = 0;
    int length = 1;
    bool infinite() const { return length < 0; }
};
bool in_special_position(const QString& a, const QString& b);
// Strings of a dominant rank-1 monomial: KR strings (finite) and positive
// prefundamental strings (infinite, starting at b q for Psi_b).
std::vector<QString> sl2_strings(const LWeightMonomial& psi);

QCharacter qc_simple_sl2(const CartanData& cd, const LWeightMonomial& psi);

// Terms of the node-i string of L(Psi): the weight spaces mu - k alpha_i form
// the simple module of the rank-one subalgebra at node i, whose character is
// a product of q-string characters. Poles and numerator roots of Psi_i are
// paired as a bracket sequence within each class modulo 2 r_i.
QCharacter qc_node_string(const CartanData& cd, const LWeightMonomial& psi, int node, int depth);

struct TriangularityReport {
    bool ok = true;
    std::vector<LWeightMonomial> violators;
};
TriangularityReport check_triangularity(const CartanData& cd, const QCharacter& x);

enum class IdentityKind { QQtilde, QQstar, PrefundFactorSl2 };
IdentityKind parse_identity_kind(const std::string& s);

struct IdentityReport {
    bool ok = true;
    int compared_depth = 0;
    long long compared_terms = 0;
    std::optional<LWeightMonomial> witness;
    std::string detail;
};
// For PrefundFactorSl2 the argument `shift` is s in Psi = Y_{1,q^0} Psi_{1,q^s}.
IdentityReport check_identity(const CartanData& cd, IdentityKind kind, int node, int shift, int depth);

// Weight character: multiset of constant parts of the terms.
std::map<ConstantFactor, long long> weight_character(const QCharacter& x);

std::string to_string(const QCharacter& x);

}  // namespace shq
