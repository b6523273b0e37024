#include <cstring>
#include <string>
#include <thread>

#include "doctest.h"
#include "json.hpp"
#include "modcoh/modcoh.h"

using nlohmann::json;

namespace {

// Takes ownership of a returned string.
json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  mc_string_free(s);
  return j;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(mc_version()) == "0.3.0");
  CHECK(std::string(mc_status_name(MC_OK)) == "ok");
  CHECK(std::string(mc_status_name(MC_ERR_NOT_FOUND)) == "not_found");
  mc_string_free(nullptr);
}

TEST_CASE("Lie algebra handles") {
  mc_lie_algebra* g = nullptr;
  REQUIRE(mc_lie_builtin("poincare4", &g) == MC_OK);
  size_t dim = 0;
  CHECK(mc_lie_dim(g, &dim) == MC_OK);
  CHECK(dim == 10);
  int ok = 0;
  char* report = nullptr;
  CHECK(mc_lie_validate(g, &ok, &report) == MC_OK);
  CHECK(ok == 1);
  CHECK(take(report)["jacobi_defect"] == "0");
  int perfect = 0;
  CHECK(mc_lie_is_perfect(g, &perfect, nullptr) == MC_OK);
  CHECK(perfect == 1);
  size_t h = 99;
  CHECK(mc_lie_cohomology_dim(g, 2, &h, nullptr) == MC_OK);
  CHECK(h == 0);
  CHECK(mc_lie_ideal(g, "\"P0\"", &report) == MC_OK);
  CHECK(take(report)["ideal_dim"] == 4);
  CHECK(mc_lie_generate(g, "[\"J01\", \"J02\"]", &report) == MC_OK);
  CHECK(take(report)["closure_dim"] == 3);

  char* text = nullptr;
  REQUIRE(mc_lie_to_json(g, &text) == MC_OK);
  mc_lie_algebra* g2 = nullptr;
  CHECK(mc_lie_from_json(text, &g2) == MC_OK);
  mc_string_free(text);
  CHECK(mc_lie_dim(g2, &dim) == MC_OK);
  CHECK(dim == 10);
  mc_lie_free(g2);
  mc_lie_free(g);
  mc_lie_free(nullptr);
}

TEST_CASE("errors set codes and messages") {
  mc_lie_algebra* g = nullptr;
  CHECK(mc_lie_builtin("e8", &g) == MC_ERR_NOT_FOUND);
  CHECK(g == nullptr);
  CHECK(std::strlen(mc_last_error()) > 0);
  CHECK(mc_lie_from_json("{not json", &g) == MC_ERR_PARSE);
  CHECK(mc_lie_builtin(nullptr, &g) == MC_ERR_INVALID_ARGUMENT);
  CHECK(mc_lie_builtin("sl2", nullptr) == MC_ERR_INVALID_ARGUMENT);
  size_t d = 0;
  CHECK(mc_lie_dim(nullptr, &d) == MC_ERR_INVALID_ARGUMENT);
  CHECK(json::parse(mc_last_error_json()) == json::object());
}

TEST_CASE("last error is per thread") {
  mc_lie_algebra* g = nullptr;
  CHECK(mc_lie_builtin("e8", &g) == MC_ERR_NOT_FOUND);
  const std::string mine = mc_last_error();
  std::thread t([] {
    mc_group* p = nullptr;
    mc_group_builtin("monster", &p);
  });
  t.join();
  CHECK(mine == mc_last_error());
}

TEST_CASE("group cohomology through the C API") {
  mc_group* p = nullptr;
  mc_coefficients* a = nullptr;
  REQUIRE(mc_group_builtin("klein4", &p) == MC_OK);
  REQUIRE(mc_coefficients_parse("z2", &a) == MC_OK);
  size_t n = 0;
  CHECK(mc_group_order(p, &n) == MC_OK);
  CHECK(n == 4);
  CHECK(mc_coefficients_size(a, &n) == MC_OK);
  CHECK(n == 2);
  uint64_t order = 0;
  char* report = nullptr;
  CHECK(mc_group_cohomology(p, a, 2, &order, &report) == MC_OK);
  CHECK(order == 8);
  CHECK(take(report)["invariant_factors"] == json::array({2, 2, 2}));
  CHECK(mc_group_cohomology(p, a, 5, &order, nullptr) == MC_ERR_INVALID_ARGUMENT);
  mc_coefficients* bad = nullptr;
  CHECK(mc_coefficients_parse("q8", &bad) == MC_ERR_INVALID_ARGUMENT);
  mc_coefficients_free(a);
  mc_group_free(p);
}

TEST_CASE("extensions through the C API") {
  mc_cochain* w = nullptr;
  REQUIRE(mc_cochain_from_json(R"({"group": "z2", "coeff": "z2", "degree": 2, "values": {"1,1": 1}})", &w) ==
          MC_OK);
  int cocycle = 0;
  CHECK(mc_cochain_is_cocycle(w, &cocycle) == MC_OK);
  CHECK(cocycle == 1);
  mc_extension* e = nullptr;
  REQUIRE(mc_extension_build(w, &e) == MC_OK);
  size_t n = 0;
  CHECK(mc_extension_order(e, &n) == MC_OK);
  CHECK(n == 4);
  int split = 1;
  char* report = nullptr;
  CHECK(mc_extension_split(e, &split, &report) == MC_OK);
  CHECK(split == 0);
  mc_string_free(report);
  CHECK(mc_extension_report(e, &report) == MC_OK);
  CHECK(take(report)["cyclic"] == true);

  char* text = nullptr;
  REQUIRE(mc_extension_to_json(e, &text) == MC_OK);
  mc_extension* e2 = nullptr;
  CHECK(mc_extension_from_json(text, &e2) == MC_OK);
  mc_string_free(text);
  int eq = 0;
  CHECK(mc_extension_equivalent(e, e2, &eq, nullptr) == MC_OK);
  CHECK(eq == 1);
  mc_extension_free(e2);
  mc_extension_free(e);
  mc_cochain_free(w);

  mc_cochain* bad = nullptr;
  REQUIRE(mc_cochain_from_json(R"({"group": "z3", "coeff": "z2", "degree": 2, "values": {"1,1": 1}})", &bad) ==
          MC_OK);
  CHECK(mc_cochain_is_cocycle(bad, &cocycle) == MC_OK);
  CHECK(cocycle == 0);
  CHECK(mc_extension_build(bad, &e) == MC_ERR_MATH);
  const auto details = json::parse(mc_last_error_json());
  CHECK(details["triple"].size() == 3);
  mc_cochain_free(bad);
}

TEST_CASE("correspondence through the C API") {
  mc_group *z4 = nullptr, *z2 = nullptr;
  mc_coefficients* a = nullptr;
  REQUIRE(mc_group_builtin("z4", &z4) == MC_OK);
  REQUIRE(mc_group_builtin("z2", &z2) == MC_OK);
  REQUIRE(mc_coefficients_parse("z2", &a) == MC_OK);
  const size_t sigma[] = {0, 1, 0, 1};
  char* report = nullptr;
  REQUIRE(mc_correspondence(z4, z2, sigma, 4, a, &report) == MC_OK);
  const auto r = take(report);
  CHECK(r["applicable"] == true);
  CHECK(r["bijective"] == true);
  REQUIRE(mc_correspondence(z4, z2, nullptr, 0, a, &report) == MC_OK);
  CHECK(take(report)["sigma"] == json::array({0, 1, 0, 1}));
  const size_t wrong[] = {0, 1, 1, 0};
  CHECK(mc_correspondence(z4, z2, wrong, 4, a, &report) == MC_ERR_MATH);
  mc_coefficients_free(a);
  mc_group_free(z2);
  mc_group_free(z4);
}

TEST_CASE("modular reports through the C API") {
  char* input = nullptr;
  REQUIRE(mc_modular_example("entangled", 2.0 / 3.0, &input) == MC_OK);
  char* report = nullptr;
  REQUIRE(mc_modular_report(input, 1, 20, &report) == MC_OK);
  mc_string_free(input);
  const auto r = take(report);
  CHECK(r["cyclic"] == true);
  CHECK(r["spectrum"].size() == 4);
  CHECK(r["spectrum"][0].get<double>() == doctest::Approx(2.0));

  REQUIRE(mc_modular_example("product", 0, &input) == MC_OK);
  CHECK(mc_modular_report(input, 1, 20, &report) == MC_ERR_MATH);
  mc_string_free(input);
  const auto details = json::parse(mc_last_error_json());
  CHECK(details["property"] == "separating");
  CHECK(details.contains("annihilator"));
  CHECK(mc_modular_example("nonsense", 0, &input) == MC_ERR_NOT_FOUND);
}

TEST_CASE("spacetime through the C API") {
  double b[16];
  REQUIRE(mc_boost_matrix(0, b) == MC_OK);
  for (int i = 0; i < 16; ++i) CHECK(b[i] == (i % 5 == 0 ? 1.0 : 0.0));
  int success = 0;
  char* report = nullptr;
  REQUIRE(mc_spacetime_boost_generation("six", &success, &report) == MC_OK);
  CHECK(success == 1);
  CHECK(take(report)["closure_dim"] == 10);
  REQUIRE(mc_spacetime_boost_generation("coordinate-only", &success, &report) == MC_OK);
  CHECK(success == 0);
  mc_string_free(report);
  REQUIRE(mc_spacetime_complement(nullptr, &report) == MC_OK);
  CHECK(take(report)["involution"] == true);
  CHECK(mc_spacetime_boost_generation("seven", &success, &report) == MC_ERR_NOT_FOUND);
}
