#pragma once

#include <json.hpp>

#include <string>

#include "abelicomp/bijections.hpp"
#include "abelicomp/closed_forms.hpp"
#include "abelicomp/finite_field.hpp"
#include "abelicomp/restriction.hpp"
#include "abelicomp/spectral.hpp"
#include "abelicomp/transfer.hpp"

namespace abelicomp {

using Json = nlohmann::ordered_json;

Json to_json(const Group& group);
Json to_json(const GroupElement& e);
Json to_json(const GroupVector& v);
Json to_json(const FieldSpec& field);
Json to_json(const AsymptoticEstimate& estimate);
Json to_json(const PerronData& perron);
Json to_json(const BijectionReport& report);
Json to_json(const Group& group, const IndependenceReport& report);
Json to_json(const CoordinateWitness& witness);

/// Exact rational as "p/q" (or "p" when integral).
std::string rational_string(const Rational& r);
/// Shortest round-trip decimal for a double.
std::string float_string(double x);

// Parsing throws ParseError on malformed input or unknown keys.
Group group_from_json(const Json& j);
GroupElement element_from_json(const Json& j);
GroupVector group_vector_from_json(const Json& j);
FieldSpec field_from_json(const Json& j);

Json save_digraph(const RestrictionDigraph& d);
/// Schema violations → ParseError; structural violations → InvalidDigraph.
RestrictionDigraph load_digraph(const Json& j);
RestrictionDigraph load_digraph_file(const std::string& path);

}  // namespace abelicomp
