// modcoh command-line front end. Every command prints one report
//   {"command", "inputs", "result", "version"}
// (plus "elapsed_ms" with --timing). Exit codes: 0 success, 1 mathematical
// failure, 2 usage or parse error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "modcoh/modcoh.h"

using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

// A failed C call, carried to main so it can pick the exit code.
struct CallFailed {
  mc_status status;
  std::string message;
  json details;
};

void check(mc_status s) {
  if (s == MC_OK) return;
  json details = json::parse(mc_last_error_json(), nullptr, false);
  if (details.is_discarded()) details = json::object();
  throw CallFailed{s, mc_last_error(), details};
}

json take(char* s) {
  std::unique_ptr<char, decltype(&mc_string_free)> guard(s, &mc_string_free);
  return json::parse(s);
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using LieHandle = Handle<mc_lie_algebra, mc_lie_free>;
using GroupHandle = Handle<mc_group, mc_group_free>;
using CoeffHandle = Handle<mc_coefficients, mc_coefficients_free>;
using CochainHandle = Handle<mc_cochain, mc_cochain_free>;
using ExtensionHandle = Handle<mc_extension, mc_extension_free>;

class Session {
 public:
  // Input echoed in the report: named values are hashed as given, files by
  // their bytes.
  std::string value(const std::string& flag, const std::string& v) {
    inputs_.push_back({{"flag", flag}, {"value", v}, {"sha256", sha256_hex(v)}});
    return v;
  }
  std::string file(const std::string& flag, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError(flag, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    inputs_.push_back({{"flag", flag}, {"path", path}, {"sha256", sha256_hex(ss.str())}});
    return ss.str();
  }
  const json& inputs() const { return inputs_; }

 private:
  json inputs_ = json::array();
};

struct Outcome {
  json result;
  int exit_code = kExitOk;
};

// ---------------------------------------------------------------------------
// text rendering

void render_text(std::ostream& os, const json& j, const std::string& indent) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object() && !v.empty()) {
      os << indent << it.key() << ":\n";
      render_text(os, v, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << indent << it.key() << ":\n";
      for (const auto& item : v) {
        os << indent << "  -\n";
        render_text(os, item, indent + "    ");
      }
    } else {
      os << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

std::string render(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::ostringstream os;
  os << "modcoh " << report["version"].get<std::string>() << ": " << report["command"].get<std::string>() << "\n";
  if (report.contains("error")) {
    os << "error: " << report["error"]["message"].get<std::string>() << "\n";
    if (!report["error"]["details"].empty()) render_text(os, report["error"]["details"], "  ");
  }
  if (!report["result"].is_null()) render_text(os, report["result"], "");
  if (report.contains("elapsed_ms")) os << "elapsed_ms: " << report["elapsed_ms"].dump() << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// argument helpers

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--sigma", "expected comma-separated indices, got '" + text + "'");
    }
  }
  return out;
}

double parse_weight(const std::string& text) {
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    const double n = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument(text);
    const double d = std::stod(den, &used);
    if (used != den.size() || d == 0) throw std::invalid_argument(text);
    return n / d;
  } catch (const std::exception&) {
    throw CLI::ValidationError("--p", "expected a number or a fraction, got '" + text + "'");
  }
}

// --algebra NAME or --file PATH
struct AlgebraSource {
  std::string name;
  std::string file;

  void attach(CLI::App* cmd) {
    auto* a = cmd->add_option("--algebra", name, "builtin algebra (poincare2..4, lorentz2..4, sl2, heisenberg, abelian<n>)");
    auto* f = cmd->add_option("--file", file, "algebra JSON file");
    a->excludes(f);
  }

  void load(Session& s, LieHandle& h) const {
    if (!file.empty()) {
      const auto text = s.file("--file", file);
      check(mc_lie_from_json(text.c_str(), h.out()));
    } else {
      check(mc_lie_builtin(s.value("--algebra", name.empty() ? "poincare4" : name).c_str(), h.out()));
    }
  }
};

void load_group(Session& s, const std::string& flag, const std::string& spec, GroupHandle& h) {
  if (!spec.empty() && (spec.front() == '@')) {
    const auto text = s.file(flag, spec.substr(1));
    check(mc_group_from_json(text.c_str(), h.out()));
  } else {
    check(mc_group_builtin(s.value(flag, spec).c_str(), h.out()));
  }
}

void load_extension_from_cocycle(Session& s, const std::string& flag, const std::string& path, ExtensionHandle& e) {
  const auto text = s.file(flag, path);
  CochainHandle f;
  check(mc_cochain_from_json(text.c_str(), f.out()));
  check(mc_extension_build(f.get(), e.out()));
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::ValidationError("--save", "cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modcoh: cohomology of groups and Lie algebras, central extensions, modular theory"};
  app.set_version_flag("--version", std::string(mc_version()));
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  bool timing = false;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", timing, "include elapsed wall time in the report");

  Session session;
  std::function<Outcome()> action;

  // lie ---------------------------------------------------------------------
  auto* lie = app.add_subcommand("lie", "Lie algebras given by structure constants");
  lie->require_subcommand(1);
  static AlgebraSource src_validate, src_perfect, src_coh, src_gen, src_ideal;
  std::size_t lie_degree = 2;
  std::string generators_file, element_file;

  auto* lv = lie->add_subcommand("validate", "check antisymmetry and the Jacobi identity");
  src_validate.attach(lv);
  lv->callback([&] {
    action = [&] {
      LieHandle g;
      src_validate.load(session, g);
      int ok = 0;
      char* r = nullptr;
      check(mc_lie_validate(g.get(), &ok, &r));
      return Outcome{take(r), ok ? kExitOk : kExitMath};
    };
  });

  auto* lp = lie->add_subcommand("perfect", "is the algebra equal to its derived subalgebra");
  src_perfect.attach(lp);
  lp->callback([&] {
    action = [&] {
      LieHandle g;
      src_perfect.load(session, g);
      char* r = nullptr;
      check(mc_lie_is_perfect(g.get(), nullptr, &r));
      return Outcome{take(r)};
    };
  });

  auto* lc = lie->add_subcommand("cohomology", "Chevalley-Eilenberg cohomology with real coefficients");
  src_coh.attach(lc);
  lc->add_option("--degree", lie_degree, "cohomological degree")->required();
  lc->callback([&] {
    action = [&] {
      LieHandle g;
      src_coh.load(session, g);
      session.value("--degree", std::to_string(lie_degree));
      char* r = nullptr;
      check(mc_lie_cohomology_dim(g.get(), lie_degree, nullptr, &r));
      return Outcome{take(r)};
    };
  });

  auto* lg = lie->add_subcommand("generate", "subalgebra generated by a list of elements");
  src_gen.attach(lg);
  lg->add_option("--generators", generators_file, "JSON file with the generating elements")->required();
  lg->callback([&] {
    action = [&] {
      LieHandle g;
      src_gen.load(session, g);
      const auto text = session.file("--generators", generators_file);
      char* r = nullptr;
      check(mc_lie_generate(g.get(), text.c_str(), &r));
      return Outcome{take(r)};
    };
  });

  auto* li = lie->add_subcommand("ideal", "ideal generated by one element");
  src_ideal.attach(li);
  li->add_option("--element", element_file, "JSON file with the element")->required();
  li->callback([&] {
    action = [&] {
      LieHandle g;
      src_ideal.load(session, g);
      const auto text = session.file("--element", element_file);
      char* r = nullptr;
      check(mc_lie_ideal(g.get(), text.c_str(), &r));
      return Outcome{take(r)};
    };
  });

  // group -------------------------------------------------------------------
  auto* grp = app.add_subcommand("group", "finite groups with abelian coefficients");
  grp->require_subcommand(1);
  std::string group_spec, coeff_spec = "z2";
  std::size_t group_degree = 2;
  const std::string group_help = "builtin group (z<n>, klein4, s3, q8, a4, products like z2xz3) or @file.json";

  auto* gh = grp->add_subcommand("h", "cohomology group H^n(P, A), n = 1 or 2");
  gh->add_option("--group", group_spec, group_help)->required();
  gh->add_option("--coeff", coeff_spec, "coefficients (z2, z2xz2, klein4, 2,3)");
  gh->add_option("--degree", group_degree, "degree")->required();
  gh->callback([&] {
    action = [&] {
      GroupHandle p;
      CoeffHandle a;
      load_group(session, "--group", group_spec, p);
      check(mc_coefficients_parse(session.value("--coeff", coeff_spec).c_str(), a.out()));
      session.value("--degree", std::to_string(group_degree));
      char* r = nullptr;
      check(mc_group_cohomology(p.get(), a.get(), group_degree, nullptr, &r));
      return Outcome{take(r)};
    };
  });

  auto* gz = grp->add_subcommand("cocycles", "generators of the cocycle group Z^n(P, A)");
  gz->add_option("--group", group_spec, group_help)->required();
  gz->add_option("--coeff", coeff_spec, "coefficients");
  gz->add_option("--degree", group_degree, "degree (default 2)");
  gz->callback([&] {
    action = [&] {
      GroupHandle p;
      CoeffHandle a;
      load_group(session, "--group", group_spec, p);
      check(mc_coefficients_parse(session.value("--coeff", coeff_spec).c_str(), a.out()));
      session.value("--degree", std::to_string(group_degree));
      char* r = nullptr;
      check(mc_group_cocycles(p.get(), a.get(), group_degree, &r));
      return Outcome{take(r)};
    };
  });

  auto* gext = grp->add_subcommand("extension", "central extensions from 2-cocycles");
  gext->require_subcommand(1);
  std::string cocycle_file, other_file, extension_file, save_file;

  auto* eb = gext->add_subcommand("build", "multiplication table of the extension defined by a cocycle");
  eb->add_option("--cocycle", cocycle_file, "cochain JSON file")->required();
  eb->add_option("--save", save_file, "write the extension document to this file");
  eb->callback([&] {
    action = [&] {
      ExtensionHandle e;
      load_extension_from_cocycle(session, "--cocycle", cocycle_file, e);
      char* r = nullptr;
      check(mc_extension_report(e.get(), &r));
      json result = take(r);
      if (!save_file.empty()) {
        char* doc = nullptr;
        check(mc_extension_to_json(e.get(), &doc));
        save_text(save_file, take(doc).dump(2) + "\n");
      }
      return Outcome{result};
    };
  });

  auto* ee = gext->add_subcommand("equiv", "are two cocycles' extensions equivalent");
  ee->add_option("--cocycle", cocycle_file, "first cochain JSON file")->required();
  ee->add_option("--other", other_file, "second cochain JSON file")->required();
  ee->callback([&] {
    action = [&] {
      ExtensionHandle e1, e2;
      load_extension_from_cocycle(session, "--cocycle", cocycle_file, e1);
      load_extension_from_cocycle(session, "--other", other_file, e2);
      char* r = nullptr;
      check(mc_extension_equivalent(e1.get(), e2.get(), nullptr, &r));
      return Outcome{take(r)};
    };
  });

  auto* es = gext->add_subcommand("split", "find a homomorphic section");
  es->add_option("--cocycle", cocycle_file, "cochain JSON file")->required();
  es->callback([&] {
    action = [&] {
      ExtensionHandle e;
      load_extension_from_cocycle(session, "--cocycle", cocycle_file, e);
      char* r = nullptr;
      check(mc_extension_split(e.get(), nullptr, &r));
      return Outcome{take(r)};
    };
  });

  auto* el = gext->add_subcommand("load", "read a saved extension document and verify it");
  el->add_option("--file", extension_file, "extension JSON file")->required();
  el->callback([&] {
    action = [&] {
      ExtensionHandle e;
      const auto text = session.file("--file", extension_file);
      check(mc_extension_from_json(text.c_str(), e.out()));
      char* r = nullptr;
      check(mc_extension_report(e.get(), &r));
      return Outcome{take(r)};
    };
  });

  std::string covering_spec, sigma_spec;
  auto* gc = grp->add_subcommand("correspondence", "compare H^1(ker sigma, A) with H^2(P, A)");
  gc->add_option("--covering", covering_spec, "covering group E")->required();
  gc->add_option("--group", group_spec, "base group P")->required();
  gc->add_option("--sigma", sigma_spec, "images of E's elements in P, comma-separated");
  gc->add_option("--coeff", coeff_spec, "coefficients");
  gc->callback([&] {
    action = [&] {
      GroupHandle e, p;
      CoeffHandle a;
      load_group(session, "--covering", covering_spec, e);
      load_group(session, "--group", group_spec, p);
      check(mc_coefficients_parse(session.value("--coeff", coeff_spec).c_str(), a.out()));
      std::vector<std::size_t> sigma;
      if (!sigma_spec.empty()) sigma = parse_index_list(session.value("--sigma", sigma_spec));
      char* r = nullptr;
      check(mc_correspondence(e.get(), p.get(), sigma.empty() ? nullptr : sigma.data(), sigma.size(), a.get(), &r));
      return Outcome{take(r)};
    };
  });

  // modular -----------------------------------------------------------------
  auto* mod = app.add_subcommand("modular", "Tomita-Takesaki analysis of a matrix algebra and a state");
  std::string input_file, example, weight = "2/3";
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  auto* in_opt = mod->add_option("--input", input_file, "algebra and state JSON file");
  auto* ex_opt = mod->add_option("--example", example, "built-in example")
                     ->check(CLI::IsMember({"tracial", "entangled", "product"}));
  in_opt->excludes(ex_opt);
  mod->add_option("--p", weight, "weight of the entangled example (number or fraction)");
  mod->add_option("--seed", seed, "seed for the randomized KMS check")->required();
  mod->add_option("--samples", samples, "number of KMS sample pairs");
  mod->callback([&] {
    if (input_file.empty() && example.empty()) throw CLI::RequiredError("--input or --example");
    action = [&] {
      std::string text;
      if (!input_file.empty()) {
        text = session.file("--input", input_file);
      } else {
        session.value("--example", example);
        double p = 0.5;
        if (example == "entangled") p = parse_weight(session.value("--p", weight));
        char* doc = nullptr;
        check(mc_modular_example(example.c_str(), p, &doc));
        text = take(doc).dump();
      }
      session.value("--seed", std::to_string(seed));
      session.value("--samples", std::to_string(samples));
      char* r = nullptr;
      check(mc_modular_report(text.c_str(), seed, samples, &r));
      return Outcome{take(r)};
    };
  });

  // spacetime ---------------------------------------------------------------
  auto* st = app.add_subcommand("spacetime", "wedges and boosts in Minkowski space");
  st->require_subcommand(1);
  std::string family = "six", wedge_file;
  double boost_t = 0;

  auto* sg = st->add_subcommand("boost-generation", "close the wedge boost generators under brackets");
  sg->add_option("--wedges", family, "wedge family")->check(CLI::IsMember({"six", "coordinate-only"}));
  sg->callback([&] {
    action = [&] {
      session.value("--wedges", family);
      int success = 0;
      char* r = nullptr;
      check(mc_spacetime_boost_generation(family.c_str(), &success, &r));
      return Outcome{take(r), success ? kExitOk : kExitMath};
    };
  });

  std::string t_text;
  auto* sb = st->add_subcommand("boost", "boost matrix of the standard wedge");
  sb->add_option("--t", t_text, "boost parameter")->required();
  sb->callback([&] {
    action = [&] {
      try {
        std::size_t used = 0;
        boost_t = std::stod(session.value("--t", t_text), &used);
        if (used != t_text.size()) throw std::invalid_argument(t_text);
      } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--t", "expected a number, got '" + t_text + "'");
      } catch (const std::out_of_range&) {
        throw CLI::ValidationError("--t", "out of range: '" + t_text + "'");
      }
      char* r = nullptr;
      check(mc_spacetime_boost(boost_t, &r));
      return Outcome{take(r)};
    };
  });

  auto* sc = st->add_subcommand("complement", "causal complement of a wedge and its boosts");
  sc->add_option("--wedge", wedge_file, "wedge JSON file (default: the standard wedge)");
  sc->callback([&] {
    action = [&] {
      std::string text;
      if (!wedge_file.empty()) text = session.file("--wedge", wedge_file);
      char* r = nullptr;
      check(mc_spacetime_complement(wedge_file.empty() ? nullptr : text.c_str(), &r));
      return Outcome{take(r)};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
  json report = {{"command", command}, {"version", mc_version()}};

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    Outcome out = action();
    report["result"] = std::move(out.result);
    code = out.exit_code;
  } catch (const CLI::Error& e) {
    std::cerr << "modcoh: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CallFailed& f) {
    if (f.status == MC_ERR_MATH || f.status == MC_ERR_SIZE_LIMIT || f.status == MC_ERR_INTERNAL) {
      report["result"] = nullptr;
      report["error"] = {{"status", mc_status_name(f.status)}, {"message", f.message}, {"details", f.details}};
      code = kExitMath;
    } else {
      std::cerr << "modcoh: " << mc_status_name(f.status) << ": " << f.message << "\n";
      return kExitUsage;
    }
  }
  report["inputs"] = session.inputs();
  if (timing)
    report["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::cout << render(report, format);
  return code;
}
