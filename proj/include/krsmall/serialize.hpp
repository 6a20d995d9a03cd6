#ifndef KRSMALL_SERIALIZE_HPP
#define KRSMALL_SERIALIZE_HPP

#include <json.hpp>

#include "krsmall/expansion.hpp"
#include "krsmall/monomial.hpp"
#include "krsmall/smallness.hpp"

namespace krsmall {

using Json = nlohmann::ordered_json;

/// Written as "schema_version" at the top of every document the CLI emits.
inline constexpr int kSchemaVersion = 1;

// Monomial: [{"node", "power", "exponent"}, ...] in canonical order.
Json to_json(const Monomial& m);
Monomial monomial_from_json(const Json& j);

// AWitness: [{"node", "power", "count"}, ...].
Json to_json(const AWitness& w);
AWitness witness_from_json(const Json& j);

// QCharacter: {"highest", "terms": [{"monomial", "multiplicity"}]}.
Json to_json(const QCharacter& chi);
QCharacter qchar_from_json(const Json& j);

// Chain: [{"node", "monomial"}], each entry the root expanded at that node.
Json to_json(const std::vector<ChainStep>& chain);
std::vector<ChainStep> chain_from_json(const Json& j);

Json to_json(const GenerationTrace& t);
Json to_json(const SpecialnessReport& r);
Json to_json(const EnumerationResult& e);
Json to_json(const RemarkReport& r);

// {"diagram", "node", "k", "r", "theoretical", "empirical", "agree"}.
Json to_json(const SmallnessVerdict& v);
SmallnessVerdict verdict_from_json(const Json& j);

} // namespace krsmall

#endif
