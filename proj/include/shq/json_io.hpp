#pragma once

#include "shq/langlands.hpp"
#include "shq/lweight.hpp"
#include "shq/modrep.hpp"
#include "shq/qchar.hpp"
#include "shq/truncation.hpp"

#include <json.hpp>

#include <string>

namespace shq {

using Json = nlohmann::json;

// Rationals are written as integers when integral and as "p/q" otherwise.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {"q": e, "zeta": k} for q^e zeta^k.
Json to_json(const NodeConst& c);
NodeConst node_const_from_json(const Json& j);

// {"1": {...}, "2": {...}}, trivial nodes omitted.
Json to_json(const ConstantFactor& c);
ConstantFactor constant_from_json(const Json& j);

// [[node, shift, exponent], ...]
Json to_json(const ExponentMap& m);
ExponentMap exponents_from_json(const Json& j);

// {"exps": [[node, shift, exponent], ...], "const": {...}, "text": "..."};
// "text" is ignored on input and "const" may be omitted.
Json to_json(const LWeightMonomial& m);
LWeightMonomial monomial_from_json(const Json& j);

Json to_json(const CartanData& cd, const QCharacter& x);
Json to_json(const Candidate& c);
Json to_json(const AdmissibilityVerdict& v);
Json to_json(const RelationReport& r);
Json to_json(const TruncationData& td);
Json to_json(const LanglandsChar& x);
Json to_json(const ConjectureReport& r);
Json to_json(const FdTruncation& r);

}  // namespace shq
