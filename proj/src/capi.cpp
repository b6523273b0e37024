#include "modcoh/modcoh.h"

#include <cstring>
#include <string>

#include "modcoh/liecoh.hpp"
#include "modcoh/reports.hpp"

struct mc_lie_algebra {
  modcoh::lie::LieAlgebra g;
};
struct mc_group {
  modcoh::group::FiniteGroup g;
};
struct mc_coefficients {
  modcoh::group::AbelianCoefficients a;
};
struct mc_cochain {
  modcoh::group::Cochain f;
};
struct mc_extension {
  modcoh::ext::CentralExtensionTable e;
};

namespace {

using modcoh::io::json;

thread_local std::string last_error;
thread_local std::string last_error_json = "{}";

void set_error(const std::string& what, const json& details = json::object()) {
  last_error = what;
  last_error_json = details.dump();
}

json matrix_details(const Eigen::MatrixXcd& m) { return modcoh::io::matrix_to_json(m); }

struct NullArgument : modcoh::Error {
  using Error::Error;
};

struct NotFound : modcoh::Error {
  using Error::Error;
};

template <class F>
mc_status guard(F&& body, mc_status invalid = MC_ERR_INVALID_ARGUMENT) {
  try {
    set_error("");
    body();
    return MC_OK;
  } catch (const NullArgument& e) {
    set_error(e.what());
    return MC_ERR_INVALID_ARGUMENT;
  } catch (const NotFound& e) {
    set_error(e.what());
    return MC_ERR_NOT_FOUND;
  } catch (const modcoh::ext::NotACocycle& e) {
    set_error(e.what(), {{"triple", e.triple()}});
    return MC_ERR_MATH;
  } catch (const modcoh::ext::SplittingRejected& e) {
    set_error(e.what(), {{"pair", {e.pair().first, e.pair().second}}});
    return MC_ERR_MATH;
  } catch (const modcoh::modular::NotCyclicSeparating& e) {
    json d = {{"property", e.property()}};
    d["annihilator"] = e.annihilator() ? matrix_details(*e.annihilator()) : json();
    set_error(e.what(), d);
    return MC_ERR_MATH;
  } catch (const modcoh::liecoh::NotClosed& e) {
    set_error(e.what(), {{"triple", e.triple()}});
    return MC_ERR_MATH;
  } catch (const modcoh::SizeLimitExceeded& e) {
    set_error(e.what(), {{"requested", e.requested()}, {"bound", e.bound()}});
    return MC_ERR_SIZE_LIMIT;
  } catch (const modcoh::ParseError& e) {
    set_error(e.what());
    return MC_ERR_PARSE;
  } catch (const modcoh::MathError& e) {
    set_error(e.what());
    return MC_ERR_MATH;
  } catch (const modcoh::InvalidArgument& e) {
    set_error(e.what());
    return invalid;
  } catch (const json::exception& e) {
    set_error(std::string("malformed document: ") + e.what());
    return MC_ERR_PARSE;
  } catch (const std::exception& e) {
    set_error(std::string("internal error: ") + e.what());
    return MC_ERR_INTERNAL;
  } catch (...) {
    set_error("internal error");
    return MC_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  if (out) *out = dup(j.dump());
}

void require(const void* p, const char* what) {
  if (!p) throw NullArgument(std::string(what) + " must not be null");
}

void require_known(const std::string& name, std::initializer_list<const char*> known, const char* what) {
  for (const char* k : known)
    if (name == k) return;
  throw NotFound("unknown " + std::string(what) + " '" + name + "'");
}

}  // namespace

extern "C" {

const char* mc_version(void) { return MODCOH_VERSION; }

const char* mc_status_name(mc_status status) {
  switch (status) {
    case MC_OK: return "ok";
    case MC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MC_ERR_PARSE: return "parse_error";
    case MC_ERR_NOT_FOUND: return "not_found";
    case MC_ERR_MATH: return "math_error";
    case MC_ERR_SIZE_LIMIT: return "size_limit";
    case MC_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* mc_last_error(void) { return last_error.c_str(); }
const char* mc_last_error_json(void) { return last_error_json.c_str(); }
void mc_string_free(char* s) { std::free(s); }

// Lie algebras

mc_status mc_lie_builtin(const char* name, mc_lie_algebra** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    *out = new mc_lie_algebra{modcoh::lie::builtin(name)};
  }, MC_ERR_NOT_FOUND);
}

mc_status mc_lie_from_json(const char* text, mc_lie_algebra** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new mc_lie_algebra{modcoh::io::lie_from_json(modcoh::io::parse(text))};
  });
}

void mc_lie_free(mc_lie_algebra* g) { delete g; }

mc_status mc_lie_dim(const mc_lie_algebra* g, size_t* out) {
  return guard([&] {
    require(g, "algebra");
    require(out, "out");
    *out = g->g.dim();
  });
}

mc_status mc_lie_to_json(const mc_lie_algebra* g, char** out) {
  return guard([&] {
    require(g, "algebra");
    emit(out, modcoh::io::lie_to_json(g->g));
  });
}

mc_status mc_lie_validate(const mc_lie_algebra* g, int* ok, char** report) {
  return guard([&] {
    require(g, "algebra");
    const auto r = modcoh::report::lie_validate(g->g);
    if (ok) *ok = r["ok"].get<bool>() ? 1 : 0;
    emit(report, r);
  });
}

mc_status mc_lie_is_perfect(const mc_lie_algebra* g, int* out, char** report) {
  return guard([&] {
    require(g, "algebra");
    const auto r = modcoh::report::lie_perfect(g->g);
    if (out) *out = r["perfect"].get<bool>() ? 1 : 0;
    emit(report, r);
  });
}

mc_status mc_lie_cohomology_dim(const mc_lie_algebra* g, size_t degree, size_t* out, char** report) {
  return guard([&] {
    require(g, "algebra");
    if (degree > g->g.dim()) throw modcoh::InvalidArgument("degree exceeds the algebra dimension");
    const auto r = modcoh::report::lie_cohomology(g->g, degree);
    if (out) *out = r["dim_H"].get<size_t>();
    emit(report, r);
  });
}

mc_status mc_lie_generate(const mc_lie_algebra* g, const char* elements_json, char** report) {
  return guard([&] {
    require(g, "algebra");
    require(elements_json, "elements");
    const auto gens = modcoh::io::elements_from_json(g->g, modcoh::io::parse(elements_json));
    emit(report, modcoh::report::lie_generate(g->g, gens));
  });
}

mc_status mc_lie_ideal(const mc_lie_algebra* g, const char* element_json, char** report) {
  return guard([&] {
    require(g, "algebra");
    require(element_json, "element");
    const auto x = modcoh::io::element_from_json(g->g, modcoh::io::parse(element_json));
    emit(report, modcoh::report::lie_ideal(g->g, x));
  });
}

// Groups

mc_status mc_group_builtin(const char* name, mc_group** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    *out = new mc_group{modcoh::group::builtin_group(name)};
  }, MC_ERR_NOT_FOUND);
}

mc_status mc_group_from_json(const char* text, mc_group** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new mc_group{modcoh::io::group_from_json(modcoh::io::parse(text))};
  });
}

void mc_group_free(mc_group* g) { delete g; }

mc_status mc_group_order(const mc_group* g, size_t* out) {
  return guard([&] {
    require(g, "group");
    require(out, "out");
    *out = g->g.order();
  });
}

mc_status mc_coefficients_parse(const char* spec, mc_coefficients** out) {
  return guard([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new mc_coefficients{modcoh::group::AbelianCoefficients::parse(spec)};
  });
}

void mc_coefficients_free(mc_coefficients* a) { delete a; }

mc_status mc_coefficients_size(const mc_coefficients* a, size_t* out) {
  return guard([&] {
    require(a, "coefficients");
    require(out, "out");
    *out = a->a.size();
  });
}

mc_status mc_group_cohomology(const mc_group* p, const mc_coefficients* a, size_t degree, uint64_t* order,
                              char** report) {
  return guard([&] {
    require(p, "group");
    require(a, "coefficients");
    const auto r = modcoh::report::group_cohomology(p->g, a->a, degree);
    if (order) *order = r["order"].is_number() ? r["order"].get<uint64_t>() : 0;
    emit(report, r);
  });
}

mc_status mc_group_cocycles(const mc_group* p, const mc_coefficients* a, size_t degree, char** report) {
  return guard([&] {
    require(p, "group");
    require(a, "coefficients");
    emit(report, modcoh::report::group_cocycles(p->g, a->a, degree));
  });
}

mc_status mc_cochain_from_json(const char* text, mc_cochain** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new mc_cochain{modcoh::io::cochain_from_json(modcoh::io::parse(text))};
  });
}

void mc_cochain_free(mc_cochain* f) { delete f; }

mc_status mc_cochain_to_json(const mc_cochain* f, char** out) {
  return guard([&] {
    require(f, "cochain");
    emit(out, modcoh::io::cochain_to_json(f->f));
  });
}

mc_status mc_cochain_is_cocycle(const mc_cochain* f, int* out) {
  return guard([&] {
    require(f, "cochain");
    require(out, "out");
    if (f->f.degree() > 2) throw modcoh::InvalidArgument("coboundary is available up to degree 2");
    *out = modcoh::group::coboundary(f->f).is_zero() ? 1 : 0;
  });
}

// Extensions

mc_status mc_extension_build(const mc_cochain* cocycle, mc_extension** out) {
  return guard([&] {
    require(cocycle, "cocycle");
    require(out, "out");
    const auto& f = cocycle->f;
    if (f.degree() != 2) throw modcoh::InvalidArgument("an extension needs a 2-cochain");
    *out = new mc_extension{modcoh::ext::build_extension(f.group(), f.coefficients(), f)};
  });
}

mc_status mc_extension_from_json(const char* text, mc_extension** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new mc_extension{modcoh::io::extension_from_json(modcoh::io::parse(text))};
  });
}

void mc_extension_free(mc_extension* e) { delete e; }

mc_status mc_extension_order(const mc_extension* e, size_t* out) {
  return guard([&] {
    require(e, "extension");
    require(out, "out");
    *out = e->e.carrier.order();
  });
}

mc_status mc_extension_to_json(const mc_extension* e, char** out) {
  return guard([&] {
    require(e, "extension");
    emit(out, modcoh::io::extension_to_json(e->e));
  });
}

mc_status mc_extension_report(const mc_extension* e, char** report) {
  return guard([&] {
    require(e, "extension");
    emit(report, modcoh::report::extension_summary(e->e));
  });
}

mc_status mc_extension_equivalent(const mc_extension* e1, const mc_extension* e2, int* out, char** report) {
  return guard([&] {
    require(e1, "first extension");
    require(e2, "second extension");
    const auto r = modcoh::report::extension_equivalence(e1->e, e2->e);
    if (out) *out = r["equivalent"].get<bool>() ? 1 : 0;
    emit(report, r);
  });
}

mc_status mc_extension_split(const mc_extension* e, int* out, char** report) {
  return guard([&] {
    require(e, "extension");
    const auto r = modcoh::report::extension_split(e->e);
    if (out) *out = r["is_split"].get<bool>() ? 1 : 0;
    emit(report, r);
  });
}

mc_status mc_correspondence(const mc_group* covering, const mc_group* base, const size_t* sigma, size_t sigma_len,
                            const mc_coefficients* a, char** report) {
  return guard([&] {
    require(covering, "covering group");
    require(base, "base group");
    require(a, "coefficients");
    std::vector<std::size_t> s;
    if (sigma) s.assign(sigma, sigma + sigma_len);
    emit(report, modcoh::report::correspondence(covering->g, base->g, std::move(s), a->a));
  });
}

// Modular theory

mc_status mc_modular_report(const char* input_json, uint64_t seed, size_t samples, char** report) {
  return guard([&] {
    require(input_json, "input");
    if (samples == 0) throw modcoh::InvalidArgument("samples must be positive");
    const auto input = modcoh::io::algebra_state_from_json(modcoh::io::parse(input_json));
    emit(report, modcoh::report::modular(input, seed, samples));
  });
}

mc_status mc_modular_example(const char* name, double p, char** input_json) {
  return guard([&] {
    require(name, "name");
    require_known(name, {"tracial", "entangled", "product"}, "example");
    emit(input_json, modcoh::report::modular_example(name, p));
  });
}

// Spacetime

mc_status mc_boost_matrix(double t, double out[16]) {
  return guard([&] {
    require(out, "out");
    const Eigen::Matrix4d b = modcoh::spacetime::boost_matrix(t);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) out[4 * i + k] = b(i, k);
  });
}

mc_status mc_spacetime_boost(double t, char** report) {
  return guard([&] { emit(report, modcoh::report::spacetime_boost(t)); });
}

mc_status mc_spacetime_boost_generation(const char* family, int* success, char** report) {
  return guard([&] {
    const std::string name = family ? family : "six";
    require_known(name, {"six", "coordinate-only"}, "wedge family");
    const auto r = modcoh::report::spacetime_boost_generation(name);
    if (success) *success = r["success"].get<bool>() ? 1 : 0;
    emit(report, r);
  });
}

mc_status mc_spacetime_complement(const char* wedge_json, char** report) {
  return guard([&] {
    const auto w = wedge_json ? modcoh::io::wedge_from_json(modcoh::io::parse(wedge_json))
                              : modcoh::spacetime::Wedge::standard();
    emit(report, modcoh::report::spacetime_complement(w));
  });
}

}  // extern "C"
