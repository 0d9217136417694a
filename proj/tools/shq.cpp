// Command-line front end. Every subcommand prints one JSON document (or a
// plain-text rendering with --text) and exits with 0 on success, 1 when the
// input is rejected on mathematical grounds and 2 on a usage error.

#include "shq/json_io.hpp"
#include "shq/langlands.hpp"
#include "shq/modrep.hpp"
#include "shq/qchar.hpp"
#include "shq/truncation.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

using namespace shq;

namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Coweight parse_coweight(const std::string& s, int rank, const char* what) {
    Coweight out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError(std::string(what) + ": malformed integer '" + item + "'");
        }
    }
    if (static_cast<int>(out.size()) != rank)
        throw UsageError(std::string(what) + ": expected " + std::to_string(rank) + " entries");
    return out;
}

CartanData parse_type(const std::string& label) {
    try {
        return build_cartan(label);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

LWeightMonomial parse_monomial(const std::string& text) {
    try {
        return monomial_from_json(Json::parse(text));
    } catch (const std::exception& e) {
        throw UsageError(std::string("--monomial: ") + e.what());
    }
}

// "node:shift,node:shift" with repetitions adding up.
ExponentMap parse_index_list(const std::string& s, const char* what) {
    ExponentMap out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError(std::string(what) + ": expected node:shift in '" + item + "'");
        try {
            out[SpectralIndex{std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))}] += 1;
        } catch (const std::logic_error&) {
            throw UsageError(std::string(what) + ": malformed entry '" + item + "'");
        }
    }
    return out;
}

TruncationData parse_truncation(const CartanData& cd, const std::string& zroots, const std::string& lambda) {
    TruncationData td;
    try {
        td = make_truncation(cd, parse_zroots(zroots));
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (!lambda.empty()) {
        const Coweight l = parse_coweight(lambda, cd.n, "--lambda");
        if (l != td.lambda())
            throw UsageError("--lambda must count the roots of each Z_i (got a mismatch with --zroots)");
    }
    return td;
}

void print(const Json& j, bool text, const std::function<void(std::ostream&)>& render) {
    if (text)
        render(std::cout);
    else
        std::cout << j.dump(2) << "\n";
}

std::string coweight_string(const Coweight& mu) {
    std::string s;
    for (size_t k = 0; k < mu.size(); ++k) s += (k ? "," : "") + std::to_string(mu[k]);
    return s;
}

Json with_sign_twists(const CartanData& cd, const Candidate& c, bool up_to_signtwist) {
    Json j = to_json(c);
    if (up_to_signtwist) return j;
    Json reps = Json::array();
    for (const auto& k : sign_twist_group(cd)) {
        ConstantFactor twist;
        for (int i = 1; i <= cd.n; ++i) twist.set(i, NodeConst::make(Rational(0), k[i - 1]));
        reps.push_back(to_json(c.psi.with_constant(c.psi.cst() * twist)));
    }
    j["sign_twists"] = reps;
    return j;
}

void render_candidates(std::ostream& os, const std::vector<Candidate>& cs) {
    os << cs.size() << " candidate(s)\n";
    for (const auto& c : cs) {
        os << "  " << c.psi.to_string() << "  [" << status_name(c.status) << "]\n";
        if (!c.note.empty()) os << "    " << c.note << "\n";
        for (const auto& w : c.witnesses) os << "    witness " << w.to_string() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact l-weight and q-character combinatorics for shifted quantum affine algebras and truncations"};
    app.require_subcommand(1);
    app.fallthrough();
    bool text = false;
    app.add_flag("--text", text, "Human-readable output instead of JSON");
    app.add_flag("--json", [&](std::int64_t) { text = false; }, "JSON output (default)");

    std::string type = "A1", monomial, basis = "lambda", kind, y, families, zroots, lambda, mu;
    int node = 1, shift = 0, depth = 3, cutoff = 12, window = 6, threads = 1, refine_depth = 3;
    bool up_to_signtwist = false;

    auto* factor = app.add_subcommand("factor", "Factor a monomial in the A or Lambda basis");
    factor->add_option("--type", type, "Cartan type, e.g. A2, B2")->capture_default_str();
    factor->add_option("--basis", basis, "A or lambda")->check(CLI::IsMember({"A", "lambda"}))->capture_default_str();
    factor->add_option("--monomial", monomial, "Monomial as JSON {\"exps\": [[i, s, e], ...], \"const\": {...}}")
        ->required();

    auto* dominant = app.add_subcommand("dominant", "Test dominance (finite-dimensional highest l-weight)");
    dominant->add_option("--type", type)->capture_default_str();
    dominant->add_option("--monomial", monomial)->required();

    auto* qchar = app.add_subcommand("qchar", "Depth-truncated q-characters");
    qchar->add_option("--type", type)->capture_default_str();
    qchar->add_option("--kind", kind, "fm, pos_prefund, neg_prefund_sl2, psitilde, psistar, neg_prefund, simple_sl2")
        ->required()
        ->check(CLI::IsMember(
            {"fm", "pos_prefund", "neg_prefund_sl2", "psitilde", "psistar", "neg_prefund", "simple_sl2"}));
    qchar->add_option("--y", y, "Highest Y-monomial for fm as node:shift,...");
    qchar->add_option("--node", node)->capture_default_str();
    qchar->add_option("--shift", shift)->capture_default_str();
    qchar->add_option("--monomial", monomial, "l-weight for simple_sl2");
    qchar->add_option("--depth", depth)->capture_default_str()->check(CLI::NonNegativeNumber);

    auto* verify = app.add_subcommand("verify-relations", "Check the defining relations on an explicit module");
    verify->add_option("--module", kind, "osc_verma_plus, osc_verma_minus, coproduct_plus, coproduct_minus, "
                                         "eval_sl2, psitilde, psistar")
        ->required();
    verify->add_option("--type", type)->capture_default_str();
    verify->add_option("--node", node)->capture_default_str();
    verify->add_option("--shift", shift)->capture_default_str();
    verify->add_option("--cutoff", cutoff)->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--window", window)->capture_default_str()->check(CLI::NonNegativeNumber);
    verify->add_option("--families", families, "Comma-separated relation families (default: all)");

    auto* truncate = app.add_subcommand("truncate", "Enumerate simple modules of a truncation at weight mu");
    truncate->add_option("--type", type)->capture_default_str();
    truncate->add_option("--zroots", zroots, "Factor shifts of Z as \"node:s,s;node:s\"")->required();
    truncate->add_option("--lambda", lambda, "Optional check: root counts per node, e.g. 0,1");
    truncate->add_option("--mu", mu, "Coweight in the fundamental basis, e.g. 0,0")->required();
    truncate->add_option("--refine-depth", refine_depth, "Depth of the descent refinement (0 to skip)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    truncate->add_option("--threads", threads)->capture_default_str()->check(CLI::PositiveNumber);
    truncate->add_flag("--up-to-signtwist", up_to_signtwist, "Print only the canonical representative");

    auto* classify = app.add_subcommand("classify-sl2", "Rank-one classification of truncation simples");
    classify->add_option("--zroots", zroots)->required();
    classify->add_option("--lambda", lambda);
    classify->add_option("--mu", mu)->required();
    classify->add_flag("--up-to-signtwist", up_to_signtwist);

    auto* conj = app.add_subcommand("conjecture", "Compare Langlands dual q-character monomials with simples");
    conj->add_option("--type", type)->capture_default_str();
    conj->add_option("--zroots", zroots)->required();
    conj->add_option("--lambda", lambda);
    conj->add_option("--depth", refine_depth, "Depth of the descent refinement")->capture_default_str();

    auto* truncfd = app.add_subcommand("truncfd", "Truncation of a finite-dimensional simple with certificate");
    truncfd->add_option("--type", type)->capture_default_str();
    truncfd->add_option("--monomial", monomial, "Dominant l-weight as JSON");
    truncfd->add_option("--y", y, "Alternatively the Ytilde multiplicities as node:shift,...");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const CartanData cd = parse_type(classify->parsed() ? "A1" : type);

        if (factor->parsed()) {
            const LWeightMonomial m = parse_monomial(monomial);
            const auto v = factor_in_basis(cd, m, basis == "A" ? Basis::A : Basis::Lambda);
            Json j{{"basis", basis}, {"monomial", to_json(m)}, {"factorable", v.has_value()}};
            if (v) j["exponents"] = to_json(*v);
            print(j, text, [&](std::ostream& os) {
                if (!v) {
                    os << "not factorable in the " << basis << " basis\n";
                    return;
                }
                os << "factorable in the " << basis << " basis\n";
                for (const auto& [idx, e] : *v) os << "  (" << idx.node << "," << idx.shift << ")^" << e << "\n";
            });
            return v ? kOk : kRejected;
        }

        if (dominant->parsed()) {
            const LWeightMonomial m = parse_monomial(monomial);
            const bool d = is_dominant(cd, m);
            print(Json{{"monomial", to_json(m)}, {"dominant", d}}, text,
                  [&](std::ostream& os) { os << m.to_string() << (d ? " is dominant\n" : " is not dominant\n"); });
            return d ? kOk : kRejected;
        }

        if (qchar->parsed()) {
            QCharacter x;
            if (kind == "fm") {
                if (y.empty()) throw UsageError("--kind fm needs --y");
                x = qc_frenkel_mukhin(cd, parse_index_list(y, "--y"), depth);
            } else if (kind == "neg_prefund") {
                x = qc_neg_prefund_limit(cd, node, shift, depth);
            } else if (kind == "simple_sl2") {
                if (monomial.empty()) throw UsageError("--kind simple_sl2 needs --monomial");
                x = qc_restrict(cd, qc_simple_sl2(cd, parse_monomial(monomial)), depth);
            } else {
                x = qc_closed_form(cd, parse_closed_form(kind), node, shift, depth);
            }
            const TriangularityReport tri = check_triangularity(cd, x);
            Json j = to_json(cd, x);
            j["triangular"] = tri.ok;
            print(j, text, [&](std::ostream& os) {
                os << to_string(x) << "triangular: " << (tri.ok ? "yes" : "no") << "\n";
            });
            return kOk;
        }

        if (verify->parsed()) {
            ModuleParams params;
            params.type = type;
            params.node = node;
            params.shift = shift;
            ModuleKind mk;
            try {
                mk = parse_module_kind(kind);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            std::set<std::string> fams;
            std::stringstream ss(families);
            std::string f;
            while (std::getline(ss, f, ','))
                if (!f.empty()) fams.insert(f);
            const ExplicitModule m = build_module(mk, params, cutoff, window);
            const RelationReport r = check_relations(m, fams);
            Json j = to_json(r);
            j["module"] = module_kind_name(mk);
            j["dimension"] = m.basis.size();
            j["cutoff_note"] = m.cutoff_note;
            print(j, text, [&](std::ostream& os) {
                os << module_kind_name(mk) << ": " << m.basis.size() << " basis vectors, " << r.relations_checked
                   << " relations, " << r.columns_checked << " columns checked, " << r.columns_skipped
                   << " skipped at the cutoff\n";
                for (const auto& [fam, n] : r.per_family) os << "  " << fam << ": " << n << "\n";
                for (const auto& fl : r.failures)
                    os << "  FAIL " << fl.family << " " << fl.label << " column " << fl.column << ": " << fl.residual
                       << "\n";
                os << (r.ok ? "all relations hold\n" : "relations fail\n");
            });
            return r.ok ? kOk : kRejected;
        }

        if (truncate->parsed() || classify->parsed()) {
            const TruncationData td = parse_truncation(cd, zroots, lambda);
            const Coweight m = parse_coweight(mu, cd.n, "--mu");
            if (!truncation_shifts(cd, td.lambda(), m)) {
                print(Json{{"error", "mu is not below lambda"}}, text,
                      [](std::ostream& os) { os << "mu is not below lambda\n"; });
                return kRejected;
            }
            std::vector<Candidate> cs;
            if (classify->parsed()) {
                cs = sl2_classify(td, m);
            } else {
                for (const Candidate& c : enumerate_candidates(td, m, threads))
                    cs.push_back(refine_depth > 0 ? descent_refine(td, c, refine_depth) : c);
            }
            std::vector<Candidate> kept, refuted;
            for (auto& c : cs) (c.status == CandidateStatus::Refuted ? refuted : kept).push_back(c);
            Json jk = Json::array(), jr = Json::array();
            for (const auto& c : kept) jk.push_back(with_sign_twists(cd, c, up_to_signtwist));
            for (const auto& c : refuted) jr.push_back(with_sign_twists(cd, c, up_to_signtwist));
            Json j{{"truncation", to_json(td)},
                   {"mu", m},
                   {"count", kept.size()},
                   {"candidates", jk},
                   {"refuted", jr}};
            print(j, text, [&](std::ostream& os) {
                os << "type " << cd.label() << ", mu = (" << coweight_string(m) << ")\n";
                render_candidates(os, kept);
                if (!refuted.empty()) {
                    os << "refuted:\n";
                    render_candidates(os, refuted);
                }
            });
            return kOk;
        }

        if (conj->parsed()) {
            const TruncationData td = parse_truncation(cd, zroots, lambda);
            const ConjectureReport r = conjecture_report(td, refine_depth);
            print(to_json(r), text, [&](std::ostream& os) {
                os << "chi_L: " << r.chi.terms.size() << " monomials, head " << zmonomial_to_string(r.chi.head) << "\n";
                for (const auto& st : r.strata) {
                    os << "mu = (" << coweight_string(st.mu) << "): " << st.monomials.size() << " monomial(s), "
                       << st.candidates.size() << " simple(s), " << st.matched << " matched\n";
                    for (const auto& e : st.monomials)
                        os << "  " << zmonomial_to_string(e.monomial) << "  ->  " << e.psi.to_string()
                           << (e.below_z ? "" : "  [order violated]")
                           << (e.matched_candidate >= 0 ? "  matched" : "  unmatched") << "\n";
                    for (const auto& d : st.discrepancies) os << "  ! " << d << "\n";
                }
                os << "matched pairs: " << r.matched_pairs << ", agreement: " << (r.agreement ? "yes" : "no")
                   << ", order invariant: " << (r.below_z ? "holds" : "VIOLATED") << "\n";
            });
            return r.below_z ? kOk : kRejected;
        }

        if (truncfd->parsed()) {
            LWeightMonomial psi;
            if (!monomial.empty()) {
                psi = parse_monomial(monomial);
            } else if (!y.empty()) {
                for (const auto& [idx, e] : parse_index_list(y, "--y"))
                    psi *= generator(cd, GenKind::Ytilde, idx.node, idx.shift).pow(e);
            } else {
                throw UsageError("truncfd needs --monomial or --y");
            }
            if (!dominant_decomposition(cd, psi)) {
                print(Json{{"error", "l-weight is not dominant"}}, text,
                      [](std::ostream& os) { os << "l-weight is not dominant\n"; });
                return kRejected;
            }
            const FdTruncation r = fd_truncation_for(cd, psi);
            print(to_json(r), text, [&](std::ostream& os) {
                os << "Z = " << r.z.to_string() << "\n";
                os << "lowest l-weight: " << r.lowest.to_string() << "\n";
                for (const auto& line : r.certificate_lines) os << "  " << line << "\n";
                os << "certificate: " << (r.certificate ? "holds" : "FAILS") << "\n";
                if (r.monomial_in_chi_L)
                    os << "monomial in chi_L: " << (*r.monomial_in_chi_L ? "yes" : "no") << "\n";
            });
            return r.certificate ? kOk : kRejected;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kRejected;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRejected;
    }
    return kUsage;
}
