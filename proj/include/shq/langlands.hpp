#pragma once

#include "shq/lweight.hpp"
#include "shq/truncation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shq {

// Laurent monomial in the variables Z_{i,q^m}: (i, m) -> exponent.
using ZMonomial = ExponentMap;

std::string zmonomial_to_string(const ZMonomial& m);

struct LanglandsChar {
    std::map<ZMonomial, long long> terms;
    std::vector<std::pair<int, int>> provenance;  // fundamental factors (node, shift)
    ZMonomial head;
    // Number of products formed before equal monomials were merged.
    long long raw_terms = 1;
};

// Langlands dual q-character of the fundamental module at node i and
// spectral parameter q^shift. Simply-laced types use the Frenkel-Mukhin
// character with Y renamed to Z; B2 specializes the embedded interpolating
// character tables. Other types throw std::invalid_argument.
LanglandsChar chi_L_fundamental(const CartanData& cd, int node, int shift);

// Product of the fundamentals attached to the roots of Z: a factor
// (1 - z q^s) of Z_i contributes the fundamental at node i and shift -s.
LanglandsChar chi_L_standard(const TruncationData& td);

// The Y-monomial obtained from the node-2 interpolating table of B2 with
// alpha = 0 and t = 1, before rewriting in the Z variables.
std::vector<YMonomial> b2_node2_specialized_y();
// Rewrites a Y-monomial in the Z variables; nothing if it is not a Z-monomial.
std::optional<ZMonomial> y_to_z(const CartanData& cd, const YMonomial& y);

struct MonomialLWeight {
    LWeightMonomial psi;  // canonical constant when normalized is true
    Coweight mu;          // mu_M = sum_{i,a} u_{i,a} omega_i^vee
    bool normalized = false;
};

// Psi_M: Z_{i,q^t}^u becomes (1 - z q^{-t})^u at node i, with the constant
// fixed by Psi_i(0)^2 = prod (-a)^u phi_{i,Z} up to sign-twist. The constant
// is left trivial when mu_M is not below the weight of Z.
MonomialLWeight psi_of_monomial(const TruncationData& td, const ZMonomial& m);

// Inverse of the monomial part of psi_of_monomial.
ZMonomial monomial_of_psi(const LWeightMonomial& psi);

struct ConjectureEntry {
    ZMonomial monomial;
    long long multiplicity = 1;
    LWeightMonomial psi;
    bool below_z = false;   // Psi_M is below Z for the Z-order
    int matched_candidate = -1;  // index into the stratum's candidates
};

struct ConjectureStratum {
    Coweight mu;
    std::vector<ConjectureEntry> monomials;
    std::vector<Candidate> candidates;  // not refuted by descent_refine
    std::vector<Candidate> refuted;
    long long matched = 0;
    std::vector<std::string> discrepancies;
};

struct ConjectureReport {
    LanglandsChar chi;
    std::vector<ConjectureStratum> strata;
    bool below_z = true;
    long long matched_pairs = 0;
    bool agreement = true;  // every stratum is a perfect matching
};

// Compares the monomials of the Langlands dual q-character, grouped by mu_M,
// with the simple modules found by the truncation search at each mu_M.
ConjectureReport conjecture_report(const TruncationData& td, int refine_depth = 3);

struct FdTruncation {
    TruncationData td;
    LWeightMonomial z;
    std::map<SpectralIndex, long long> y_multiplicities;  // u_{i,a}
    LWeightMonomial lowest;                               // lowest l-weight of L(Psi)
    ExponentMap nu;  // Z Psi^{-1} = prod Lambda^{nu}
    ExponentMap v;   // Psi / lowest = prod A^{v}
    bool nu_nonnegative = false;
    bool certificate = false;  // nu_{i, a + r_i} >= v_{i,a} for all (i, a)
    std::vector<std::string> certificate_lines;
    std::optional<bool> monomial_in_chi_L;  // M_Psi occurs in chi_L of the standard module
};

// u_{i,a} with Psi = prod Ytilde_{i,a}^{u} * prod Psi_{i,b}^{p} (constants
// ignored); nothing if the monomial part is not dominant.
std::optional<std::pair<ExponentMap, ExponentMap>> dominant_decomposition(const CartanData& cd,
                                                                          const LWeightMonomial& psi);

// Builds the truncation of the finite-dimensional descent construction and
// its inequality certificate. Throws std::invalid_argument for non-dominant Psi.
FdTruncation fd_truncation_for(const CartanData& cd, const LWeightMonomial& psi);

}  // namespace shq
