#pragma once

#include <json.hpp>
#include <string>

#include "hshare/exactalg.hpp"
#include "hshare/geometry.hpp"
#include "hshare/tuples.hpp"
#include "hshare/units.hpp"

namespace hshare {

using Json = nlohmann::json;

Json to_json(const Rational& r);
Json to_json(const QVector& v);
Json to_json(const QMatrix& m);
Json to_json(const ExponentVector& e);
// Canonical form: list of {coeff, expo} in lex order of expo.
Json to_json(const ExpSum& s);
Json to_json(const Hyperplane& h);
Json to_json(const HyperplaneFamily& f);
Json to_json(const MapModel& m);
Json to_json(const GroupTuple& t);
Json to_json(const PropertyWitness& w);
Json to_json(const HomogeneousPolynomial& p);

// Readers throw ParseError naming the offending path, e.g. "H.members[2].coeffs".
Rational rational_from_json(const Json& j, const std::string& path);
ExpSum expsum_from_json(const Json& j, std::size_t units, const std::string& path);
Hyperplane hyperplane_from_json(const Json& j, const std::string& path);
HyperplaneFamily family_from_json(const Json& j, const std::string& path);
MapModel map_from_json(const Json& j, const std::string& path);
GroupTuple tuple_from_json(const Json& j, const std::string& path);

// Rejects fields outside `allowed` and reports missing required ones.
void require_fields(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {});

Json parse_json_text(const std::string& text);

}  // namespace hshare
