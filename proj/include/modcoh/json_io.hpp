#pragma once

// JSON encodings shared by the C API and the command-line tool.
//
//   Lie algebra:  {"name", "dim", "labels", "brackets": [{"i", "j", "coeffs": {label: "p/q"}}]}
//   Lie element:  {"coeffs": {label: "p/q"}} or an array of dim rationals
//   group:        "z4" | {"name"?, "order", "table", "identity"}
//   cochain:      {"group", "coeff", "degree", "values": [{"args": [..], "value": a}]}
//                 where a is an element index of A or a list of components
//   extension:    {"base", "kernel", "cocycle", "carrier", "projection", "embedding"}
//   algebra:      {"dimension", "generators": [matrix...], "state": vector}
//                 complex entries as [re, im]; re and im numbers or "p/q"
//   wedge:        {"lorentz": 4x4, "translation": [4]}

#include <string>
#include <vector>

#include "json.hpp"
#include "modcoh/extension.hpp"
#include "modcoh/liealg.hpp"
#include "modcoh/modular.hpp"
#include "modcoh/spacetime.hpp"

namespace modcoh::io {

using json = nlohmann::json;

/// Parses text, converting syntax errors into ParseError with the position.
json parse(const std::string& text);

exact::Rational rational_from_json(const json& j);
json rational_to_json(const exact::Rational& q);

lie::LieAlgebra lie_from_json(const json& j);
json lie_to_json(const lie::LieAlgebra& g);
lie::LieElement element_from_json(const lie::LieAlgebra& g, const json& j);
json element_to_json(const lie::LieElement& x);
/// {"generators": [element...]} or a bare array of elements.
std::vector<lie::LieElement> elements_from_json(const lie::LieAlgebra& g, const json& j);

group::FiniteGroup group_from_json(const json& j);
json group_to_json(const group::FiniteGroup& g);
group::AbelianCoefficients coefficients_from_json(const json& j);
json coefficients_to_json(const group::AbelianCoefficients& a);

/// A cochain document carries its own group and coefficients.
group::Cochain cochain_from_json(const json& j);
json cochain_to_json(const group::Cochain& f);

json extension_to_json(const ext::CentralExtensionTable& e);
/// Rebuilds from base, kernel and cocycle and requires the stored carrier,
/// projection and embedding to match exactly.
ext::CentralExtensionTable extension_from_json(const json& j);

json matrix_to_json(const modular::Matrix& m);
modular::Matrix matrix_from_json(const json& j);
json vector_to_json(const modular::Vector& v);
modular::Vector vector_from_json(const json& j);

struct AlgebraState {
  std::vector<modular::Matrix> generators;
  modular::Vector state;
  std::vector<modular::ExactComplexMatrix> exact_generators;  // filled when every entry is exact
  bool exact = false;
};
AlgebraState algebra_state_from_json(const json& j);
json algebra_state_to_json(const std::vector<modular::Matrix>& generators, const modular::Vector& state);

spacetime::Wedge wedge_from_json(const json& j);
json wedge_to_json(const spacetime::Wedge& w);

}  // namespace modcoh::io
