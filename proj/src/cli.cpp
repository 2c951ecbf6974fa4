#include "tamarkin/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tamarkin/demos.hpp"
#include "tamarkin/errors.hpp"
#include "tamarkin/io.hpp"
#include "tamarkin/random.hpp"
#include "tamarkin/specinv.hpp"
#include "tamarkin/sublevel.hpp"
#include "tamarkin/svg.hpp"

namespace tamarkin {

namespace {

using io::Json;

struct Config {
  std::uint32_t field = 2;
  double tol = kTol;
  bool sheaf_sign = false;
  std::string svg;
  std::uint64_t seed = 1;
  bool table = false;
};

struct Context {
  Config config;
  std::istream& in;
  std::ostream& out;
  std::ostream& err;

  PrimeField field() const { return PrimeField(config.field); }
};

std::string fmt(double x) {
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

void emit(const Context& ctx, const Json& j) { ctx.out << j.dump(2) << "\n"; }

void write_svg(const Context& ctx, const GradedBarcode& barcode) {
  if (ctx.config.svg.empty()) return;
  std::ofstream file(ctx.config.svg);
  if (!file) throw ParseError("cannot write " + ctx.config.svg);
  file << persistence_svg(barcode);
}

Json load_json(const Context& ctx, const std::string& path) { return io::parse(io::read_input(path, ctx.in)); }

// --- dist -----------------------------------------------------------------------------

int cmd_dist(const Context& ctx, const std::string& first_path, const std::string& second_path) {
  const auto b1 = io::barcode_from_json(load_json(ctx, first_path));
  const auto b2 = io::barcode_from_json(load_json(ctx, second_path));
  const auto bracket = distance_bracket(b1, b2);
  const double shifted = shifted_dprime(b1, b2);
  const double kernel = interleaving_distance(b1, b2);
  if (ctx.config.table) {
    ctx.out << "d'            " << fmt(bracket.dprime) << "\n"
            << "d in          [" << fmt(bracket.d_lower) << ", " << fmt(bracket.d_upper) << "]\n"
            << "inf_c d'      " << fmt(shifted) << "\n"
            << "interleaving  " << fmt(kernel) << "\n";
  } else {
    emit(ctx, {{"dprime", io::real_to_json(bracket.dprime)},
               {"d_lower", io::real_to_json(bracket.d_lower)},
               {"d_upper", io::real_to_json(bracket.d_upper)},
               {"shifted_dprime", io::real_to_json(shifted)},
               {"interleaving_distance", io::real_to_json(kernel)}});
  }
  write_svg(ctx, b1);
  return 0;
}

// --- limit ----------------------------------------------------------------------------

int cmd_limit(const Context& ctx, const std::string& path) {
  const auto seq = io::sequence_from_json(load_json(ctx, path));
  const auto result = cauchy_limit(seq);
  if (ctx.config.table) {
    ctx.out << "n    d'(F_n, lim)     16 a_>=n\n";
    for (std::size_t n = 0; n < result.certificate.achieved.size(); ++n) {
      ctx.out << std::left << std::setw(5) << n << std::setw(17) << fmt(result.certificate.achieved[n]) << " "
              << fmt(result.certificate.bounds[n]) << "\n";
    }
    ctx.out << (result.certificate.holds ? "holds" : "FAILS") << "\n";
  } else {
    emit(ctx, {{"limit", io::to_json(result.limit)}, {"certificate", io::to_json(result.certificate)}});
  }
  write_svg(ctx, result.limit);
  return result.certificate.holds ? 0 : 1;
}

// --- spec / ls-check / gamma ---------------------------------------------------------------

io::Bundle load_bundle(const Context& ctx, const std::vector<std::string>& inputs) {
  if (inputs.size() <= 1) return io::bundle_from_json(load_json(ctx, inputs.empty() ? "-" : inputs[0]));
  if (inputs.size() != 2) throw ParseError("expected a bundle, or a complex file and a function file");
  io::Bundle b{io::cell_complex_from_json(load_json(ctx, inputs[0])), {}};
  const std::string text = io::read_input(inputs[1], ctx.in);
  const auto first = text.find_first_not_of(" \t\r\n");
  b.function = (first != std::string::npos && text[first] == '{') ? io::function_from_json(io::parse(text))
                                                                  : io::function_from_csv(text);
  return b;
}

ActionSource default_action(const io::Bundle& b) {
  ActionSource source;
  const bool computable = b.complex.kind() == CellComplex::Kind::kSimplicial && b.complex.fiber_dim() == 0 &&
                          !b.function.clamp;
  source.mode = computable ? ActionSource::Mode::kCompute : ActionSource::Mode::kNone;
  return source;
}

ActionSource supplied_action(const Context& ctx, const std::string& path, std::size_t basis_size) {
  const Json j = load_json(ctx, path);
  ActionSource source;
  source.mode = ActionSource::Mode::kSupplied;
  source.ring = io::ring_from_json(j.contains("ring") ? j.at("ring") : Json::object({{"basis", Json::array()}}),
                                   ctx.field());
  source.action = io::action_from_json(j.contains("action") ? j.at("action") : Json::array(), source.ring, basis_size);
  return source;
}

SpecResult compute_spec(const Context& ctx, const io::Bundle& b, const std::string& action_path) {
  if (action_path.empty()) return spec_of_function(b.complex, b.function, default_action(b), ctx.field());
  // The basis size is only known after the reduction.
  const auto probe = spec_of_function(b.complex, b.function, {ActionSource::Mode::kNone, {}, {}}, ctx.field());
  return spec_of_function(b.complex, b.function, supplied_action(ctx, action_path, probe.module.size()), ctx.field());
}

std::vector<double> signed_values(const Context& ctx, std::vector<double> values) {
  if (!ctx.config.sheaf_sign) return values;
  for (auto& v : values) v = 0.0 - v;
  std::reverse(values.begin(), values.end());
  return values;
}

int cmd_spec(const Context& ctx, const std::vector<std::string>& inputs, const std::string& action_path) {
  const auto b = load_bundle(ctx, inputs);
  const auto result = compute_spec(ctx, b, action_path);
  auto multiplicity = result.spec.multiplicity;
  if (ctx.config.sheaf_sign) std::reverse(multiplicity.begin(), multiplicity.end());
  const auto values = signed_values(ctx, result.spec.values);
  if (ctx.config.table) {
    ctx.out << "Spec:";
    for (double v : values) ctx.out << " " << fmt(v);
    ctx.out << "\nbarcode:\n";
    for (const auto& [degree, bars] : result.barcode.bars()) {
      for (const auto& bar : bars) ctx.out << "  H" << degree << " [" << fmt(bar.birth) << ", " << fmt(bar.death) << ")\n";
    }
  } else {
    emit(ctx, {{"spec", values},
               {"multiplicity", multiplicity},
               {"sign", ctx.config.sheaf_sign ? "sheaf" : "function"},
               {"barcode", io::to_json(result.barcode)},
               {"module", io::to_json(result.module)}});
  }
  write_svg(ctx, result.barcode);
  return 0;
}

int cmd_ls_check(const Context& ctx, const std::vector<std::string>& inputs, const std::string& action_path) {
  FilteredGradedModule module;
  const Json first = load_json(ctx, inputs.empty() ? "-" : inputs[0]);
  if (first.contains("complex") || inputs.size() == 2) {
    io::Bundle b;
    if (inputs.size() == 2) {
      b = load_bundle(ctx, inputs);
    } else {
      b = io::bundle_from_json(first);
    }
    ActionSource source = default_action(b);
    if (action_path.empty() && source.mode == ActionSource::Mode::kNone) {
      if (b.complex.kind() == CellComplex::Kind::kCubical) {
        throw UnsupportedComplex("cup products need a simplicial complex; supply --action or triangulate");
      }
      throw ActionUnavailable("the H^*(M) action of a fibered or clamped complex must be supplied with --action");
    }
    module = compute_spec(ctx, b, action_path).module;
  } else {
    module = io::module_from_json(first, ctx.field());
  }
  const auto report = ls_check(module);
  if (ctx.config.table) {
    ctx.out << "N = " << report.n << ", cl(Q_inf) = " << report.cl_total << "\n";
    for (std::size_t i = 0; i < report.n; ++i) {
      ctx.out << "  d_" << i + 1 << " = " << fmt(report.levels[i]) << "  cl(quotient) = " << report.quotient_cl[i] << "\n";
    }
    ctx.out << "counting inequality " << (report.inequality_holds ? "holds" : "FAILS") << "\n";
    if (report.degenerate_level) ctx.out << "degenerate level " << fmt(*report.degenerate_level) << "\n";
  } else {
    emit(ctx, io::to_json(report));
  }
  return report.inequality_holds ? 0 : 1;
}

int cmd_gamma(const Context& ctx, const std::vector<std::string>& inputs) {
  const auto b = load_bundle(ctx, inputs);
  if (b.complex.fiber_dim() != 0 || b.function.clamp) {
    throw UnsupportedComplex("gamma needs a function on M itself: no fiber variables and no clamp");
  }
  const ActionSource none{ActionSource::Mode::kNone, {}, {}};
  const auto forward = spec_of_function(b.complex, b.function, none, ctx.field());
  const auto backward = spec_of_function(b.complex, dual_function(b.function), none, ctx.field());
  const auto report = gamma_duality_check(forward.barcode, forward.module, backward.module, ctx.config.tol);
  double lo = kInf, hi = -kInf;
  for (std::size_t v = 0; v < b.function.values.size(); ++v) {
    if (b.function.clamped(v)) continue;
    lo = std::min(lo, b.function.values[v]);
    hi = std::max(hi, b.function.values[v]);
  }
  if (ctx.config.table) {
    ctx.out << "gamma            " << fmt(report.gamma) << "\n"
            << "inf_c d'(1, F)   " << fmt(report.shifted_dprime) << "\n"
            << "max S - min S    " << fmt(hi - lo) << "\n"
            << (report.agree ? "agree" : "DISAGREE") << "\n";
  } else {
    emit(ctx, {{"gamma", report.gamma},
               {"shifted_dprime", io::real_to_json(report.shifted_dprime)},
               {"oscillation", hi - lo},
               {"agree", report.agree}});
  }
  return report.agree ? 0 : 1;
}

// --- cone-check -------------------------------------------------------------------------------

int cmd_cone_check(const Context& ctx, const std::string& path, bool kernel, int random_cases) {
  if (random_cases > 0) {
    Rng rng(ctx.config.seed);
    int passed = 0;
    double worst = 0.0;
    for (int i = 0; i < random_cases; ++i) {
      RandomPairOptions options;
      if (kernel) options.equal_shift = 0.25 * std::uniform_int_distribution<int>(0, 4)(rng);
      const auto cert = random_certified_pair(rng, ctx.field(), options);
      const auto report = kernel ? kernel_cone_check(cert) : cone_torsion_bound_check(cert);
      if (report.holds) ++passed;
      if (report.bound > 0) worst = std::max(worst, report.cone_torsion / report.bound);
    }
    if (ctx.config.table) {
      ctx.out << passed << "/" << random_cases << " certified pairs within the bound; worst ratio " << fmt(worst) << "\n";
    } else {
      emit(ctx, {{"cases", random_cases}, {"passed", passed}, {"worst_ratio", worst}, {"seed", ctx.config.seed}});
    }
    return passed == random_cases ? 0 : 1;
  }
  const auto cert = io::certificate_from_json(load_json(ctx, path.empty() ? "-" : path), ctx.field());
  const auto report = kernel ? kernel_cone_check(cert) : cone_torsion_bound_check(cert);
  if (ctx.config.table) {
    ctx.out << "cone torsion " << fmt(report.cone_torsion) << " <= " << fmt(report.bound) << " : "
            << (report.holds ? "holds" : "FAILS") << "\n";
  } else {
    Json j = io::to_json(report);
    j["a"] = cert.a();
    j["b"] = cert.b();
    emit(ctx, j);
  }
  write_svg(ctx, report.cone_barcode);
  return report.holds ? 0 : 1;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interleaving distances, Cauchy limits and spectral invariants of graded barcodes", "tamarkin"};
  app.require_subcommand(1);
  app.fallthrough();
  Config config;
  app.add_option("--field", config.field, "prime characteristic of the coefficient field")->capture_default_str();
  app.add_option("--tol", config.tol, "comparison tolerance")->capture_default_str();
  app.add_flag("--sheaf-sign", config.sheaf_sign, "report Spec with the sheaf sign convention");
  app.add_option("--svg", config.svg, "write persistence diagrams to this file");
  app.add_option("--seed", config.seed, "seed for randomized reports")->capture_default_str();
  app.add_flag("--table", config.table, "human-readable output");

  std::vector<std::string> paths;
  std::string action_path;
  bool kernel = false;
  int random_cases = 0;
  std::string demo_name;

  auto* dist = app.add_subcommand("dist", "d' distance between two barcode files");
  dist->add_option("barcodes", paths, "two barcode JSON files")->required()->expected(2);
  auto* limit = app.add_subcommand("limit", "limit of a Cauchy sequence file with its certificate");
  limit->add_option("sequence", paths, "sequence JSON file (- for stdin)")->expected(0, 1);
  auto* spec_cmd = app.add_subcommand("spec", "barcode, module and Spec of a sampled function");
  spec_cmd->add_option("inputs", paths, "bundle JSON, or complex JSON and function CSV (default: stdin)")->expected(0, 2);
  spec_cmd->add_option("--action", action_path, "ring and action JSON on the emitted basis");
  auto* ls = app.add_subcommand("ls-check", "cup-length counting report");
  ls->add_option("inputs", paths, "module JSON or bundle (default: stdin)")->expected(0, 2);
  ls->add_option("--action", action_path, "ring and action JSON on the emitted basis");
  auto* gamma = app.add_subcommand("gamma", "spectral norm against the shifted d' to the unit");
  gamma->add_option("inputs", paths, "bundle JSON, or complex JSON and function CSV (default: stdin)")->expected(0, 2);
  auto* cone_cmd = app.add_subcommand("cone-check", "cone torsion of a certificate against its bound");
  cone_cmd->add_option("certificate", paths, "certificate JSON (default: stdin)")->expected(0, 1);
  cone_cmd->add_flag("--kernel", kernel, "read the certificate in the kernel sense (a = b, bound 6a)");
  cone_cmd->add_option("--random", random_cases, "check this many seeded random certified pairs instead");
  auto* demo = app.add_subcommand("demo", "emit a worked example");
  demo->add_option("name", demo_name, "demo name")->required()->check(CLI::IsMember(demos::names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return 2;
  }

  if (!is_prime(config.field) || config.field >= 65536) {
    report_error(err, "InvalidField", "--field must be a prime below 65536");
    return 2;
  }
  if (!(config.tol > 0)) {
    report_error(err, "InvalidTolerance", "--tol must be > 0");
    return 2;
  }

  Context ctx{config, in, out, err};
  try {
    const auto first_path = paths.empty() ? std::string("-") : paths[0];
    if (*dist) return cmd_dist(ctx, paths.at(0), paths.at(1));
    if (*limit) return cmd_limit(ctx, first_path);
    if (*spec_cmd) return cmd_spec(ctx, paths, action_path);
    if (*ls) return cmd_ls_check(ctx, paths, action_path);
    if (*gamma) return cmd_gamma(ctx, paths);
    if (*cone_cmd) return cmd_cone_check(ctx, paths.empty() ? "" : paths[0], kernel, random_cases);
    if (*demo) {
      emit(ctx, demos::emit(demo_name));
      return 0;
    }
  } catch (const CertificateInvalid& e) {
    report_error(err, e.kind(), e.what());
    return 1;
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
    return 2;
  } catch (const std::exception& e) {
    report_error(err, "InputError", e.what());
    return 2;
  }
  return 2;
}

}  // namespace tamarkin
