#pragma once

// Result payloads for the named computations exposed through the C API and
// the command-line tool. Every function is deterministic for fixed inputs
// and seed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modcoh/json_io.hpp"

namespace modcoh::report {

using io::json;

json lie_validate(const lie::LieAlgebra& g);
json lie_perfect(const lie::LieAlgebra& g);
json lie_cohomology(const lie::LieAlgebra& g, std::size_t degree);
json lie_generate(const lie::LieAlgebra& g, const std::vector<lie::LieElement>& gens);
json lie_ideal(const lie::LieAlgebra& g, const lie::LieElement& x);

json group_cohomology(const group::FiniteGroup& p, const group::AbelianCoefficients& a, std::size_t degree);
json group_cocycles(const group::FiniteGroup& p, const group::AbelianCoefficients& a, std::size_t degree);

json extension_summary(const ext::CentralExtensionTable& e);
json extension_equivalence(const ext::CentralExtensionTable& e1, const ext::CentralExtensionTable& e2);
json extension_split(const ext::CentralExtensionTable& e);

/// sigma may be empty, in which case the first surjection E -> P with central
/// kernel is used.
json correspondence(const group::FiniteGroup& e, const group::FiniteGroup& p, std::vector<std::size_t> sigma,
                    const group::AbelianCoefficients& a);

/// Full modular analysis of an algebra/state document. Throws
/// NotCyclicSeparating for a state that is not cyclic and separating.
json modular(const io::AlgebraState& input, std::uint64_t seed, std::size_t samples);
/// "tracial", "entangled" (parameter p) or "product".
json modular_example(const std::string& name, double p);

json spacetime_boost(double t);
/// family: "six" or "coordinate-only".
json spacetime_boost_generation(const std::string& family);
json spacetime_complement(const spacetime::Wedge& w);

}  // namespace modcoh::report
