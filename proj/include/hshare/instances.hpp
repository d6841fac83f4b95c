#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hshare/engine.hpp"

namespace hshare {

enum class GeneratorKind { Remark13, Example61, IdentityPair };

// f = L(g), H_j = L(Hp_j).
SharedInstance gen_remark13(const MapModel& g, const HyperplaneFamily& Hp, const QMatrix& L);
SharedInstance gen_identity_pair(const MapModel& g, const HyperplaneFamily& Hp);
// Sharpness witness with q = N+2 into P^1; f0 = 1 + sum eta_i, f1 = 1 + sum a_i eta_i.
SharedInstance gen_example61(std::size_t N, const std::vector<Rational>& a);

// Random helpers draw raw mt19937_64 outputs so results do not depend on the
// standard library's distribution implementations.
using Rng = std::mt19937_64;

std::int64_t random_int(Rng& rng, std::int64_t lo, std::int64_t hi);
HyperplaneFamily random_general_position_family(Rng& rng, std::size_t dim, std::size_t q);
QMatrix random_invertible(Rng& rng, std::size_t size);
// Linearly non-degenerate, at most maxTerms terms per component.
MapModel random_nondegenerate_map(Rng& rng, std::size_t dim, std::size_t units, std::size_t maxTerms = 4);
// Random L, g and Hp with q members, fed through gen_remark13.
SharedInstance random_remark13(Rng& rng, std::size_t n, std::size_t q, std::size_t units = 2);

SharedInstance parse_instance(const std::string& text);
Json instance_to_json(const SharedInstance& inst);
std::string serialize_instance(const SharedInstance& inst);

}  // namespace hshare
