#pragma once

#include "shq/lweight.hpp"
#include "shq/scalar.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace shq {

// Sparse vector / matrix over Q(v). Matrices are stored by column.
using SparseVector = std::map<int, ExactScalar>;

class SparseMatrix {
public:
    SparseMatrix() = default;
    explicit SparseMatrix(int dim) : dim_(dim) {}
    int dim() const { return dim_; }
    void set(int row, int col, const ExactScalar& x);
    void add(int row, int col, const ExactScalar& x);
    ExactScalar get(int row, int col) const;
    const std::map<int, SparseVector>& columns() const { return cols_; }
    SparseVector apply(const SparseVector& v) const;
    bool is_diagonal() const;

private:
    int dim_ = 0;
    std::map<int, SparseVector> cols_;
};

struct GenMatrix {
    SparseMatrix mat;
    // Basis vectors whose image leaves the cutoff space.
    std::set<int> polluted;
    // Weight shift of the operator, for the grading check.
    ConstantFactor weight_shift;
};

// A term coef * g_1 g_2 ... g_k of a relation (operators applied right to left).
struct RelationTerm {
    ExactScalar coef;
    std::vector<std::string> word;
};

struct Relation {
    std::string family;  // e.g. "xplus_xminus", "cartan_current", "ef"
    std::string label;   // mode labels
    std::vector<RelationTerm> terms;  // the relation asserts sum = 0
};

enum class ModuleKind { OscVermaPlus, OscVermaMinus, CoproductPlus, CoproductMinus, EvalSl2, PsiTilde, PsiStar };
ModuleKind parse_module_kind(const std::string& s);
std::string module_kind_name(ModuleKind k);

struct ModuleParams {
    std::string type = "A1";     // Cartan type for Drinfeld-type modules
    int node = 1;
    int shift = 0;               // spectral parameter a = q^shift
    ExactScalar gamma = ExactScalar(1L);  // oscillator / evaluation parameter
    ExactScalar beta = ExactScalar(1L);   // second factor of coproduct modules
};

struct ExplicitModule {
    ModuleKind kind = ModuleKind::OscVermaPlus;
    int cutoff = 0;
    int mode_window = 0;
    std::vector<std::string> basis;
    std::vector<ConstantFactor> weight;
    std::map<std::string, GenMatrix> gens;
    std::vector<Relation> relations;
    std::string cutoff_note;
    // l-weight of each basis vector for Drinfeld-type modules.
    std::vector<LWeightMonomial> lweights;
};

std::string xname(int sign, int node, int mode);    // x^{+/-}_{i,m}
std::string phiname(int sign, int node, int mode);  // phi^{+/-}_{i,m}

ExplicitModule build_module(ModuleKind kind, const ModuleParams& params, int cutoff, int mode_window);

struct RelationFailure {
    std::string family;
    std::string label;
    int column = 0;
    int row = 0;
    std::string residual;
};

struct RelationReport {
    bool ok = true;
    long long relations_checked = 0;
    long long columns_checked = 0;
    long long columns_skipped = 0;
    std::map<std::string, long long> per_family;
    std::vector<RelationFailure> failures;  // at most one per relation family
    bool grading_ok = true;
    std::string grading_detail;
};

// `families` empty means the full built-in suite.
RelationReport check_relations(const ExplicitModule& m, const std::set<std::string>& families = {});

// Coefficients of c * prod_s (1 - z q^s)^{e_s}: expansion at z = 0 (index m
// for z^m, m = 0..order) and at z = infinity (index k for z^{deg - k}).
std::vector<ExactScalar> expand_at_zero(const ExactScalar& c, const std::map<int, long long>& factors, int order);
std::vector<ExactScalar> expand_at_infinity(const ExactScalar& c, const std::map<int, long long>& factors, int order);

// Rational function prod (1 - q^shift z^zpow)^exp.
struct ZFactorProduct {
    std::map<std::pair<int, int>, long long> factors;  // (zpow, shift) -> exp
    bool operator==(const ZFactorProduct& o) const { return factors == o.factors; }
    ZFactorProduct operator*(const ZFactorProduct& o) const;
    std::string to_string() const;
};

struct TSeriesRatio {
    ZFactorProduct plus;
    ZFactorProduct minus;
};

// Eigenvalue ratios of T_i^{+/-}(z) between an l-weight and the head it
// descends from. Throws std::invalid_argument if target is not below head.
TSeriesRatio t_series_ratio(const CartanData& cd, const LWeightMonomial& target, const LWeightMonomial& head, int node);

}  // namespace shq
