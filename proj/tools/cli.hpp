#ifndef SCHUR_HARMONICS_TOOLS_CLI_HPP
#define SCHUR_HARMONICS_TOOLS_CLI_HPP

// Batch runner: one subcommand per library entry point. Every subcommand
// parses its inputs, calls the library and serializes the result.
//
// Exit codes: 0 success, 2 validation error, 3 numeric failure. Errors are
// also written to `err` as {"error": {"kind": ..., "message": ...}}.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "schur_harmonics/io.hpp"
#include "schur_harmonics/schur_harmonics.hpp"

namespace schur_harmonics::cli {

using Json = nlohmann::json;

enum ExitCode : int { kOk = 0, kValidation = 2, kNumeric = 3 };

namespace detail {

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Writes to `path`, or to `fallback` when the path is empty or "-".
inline void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  body(f);
  if (!f) throw InvalidInput("write to '" + path + "' failed");
}

inline void emit_json(const std::string& path, std::ostream& fallback, const Json& j) {
  emit(path, fallback, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

inline SchattenExponent parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return SchattenExponent::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput("exponent '" + s + "' is not a number");
  }
  if (used != s.size()) throw InvalidInput("exponent '" + s + "' is not a number");
  // "a/b" is not accepted by stod; fractions go in as decimals.
  return SchattenExponent(v);
}

// Test functions for `coeffs`: one | spherical:<l>,<m> (U2) or spherical:<n>
// (SU2) | power:<k> | gaussian:<w>.
struct FunctionSpec {
  std::string kind;
  std::vector<int> ints;
  double width = 1.0;
};

inline FunctionSpec parse_function(const std::string& text) {
  FunctionSpec f;
  const auto colon = text.find(':');
  f.kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto ints = [&](const std::string& a) {
    std::vector<int> out;
    std::stringstream ss(a);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument("bad");
        out.push_back(v);
      } catch (const std::exception&) {
        throw InvalidInput("--func: '" + tok + "' is not a nonnegative integer");
      }
    }
    return out;
  };
  if (f.kind == "one") {
    if (!arg.empty()) throw InvalidInput("--func one takes no argument");
  } else if (f.kind == "spherical" || f.kind == "power") {
    f.ints = ints(arg);
  } else if (f.kind == "gaussian") {
    try {
      f.width = std::stod(arg);
    } catch (const std::exception&) {
      throw InvalidInput("--func gaussian:<w> needs a number");
    }
    if (!(f.width > 0.0)) throw InvalidInput("--func gaussian width must be > 0");
  } else {
    throw InvalidInput("--func: unknown function '" + f.kind + "'");
  }
  return f;
}

inline BiInvariantFunction<U2Pair> u2_function(const FunctionSpec& f) {
  if (f.kind == "one") return [](std::complex<double>) { return std::complex<double>(1.0); };
  if (f.kind == "spherical") {
    if (f.ints.size() != 2) throw InvalidInput("--func spherical:<l>,<m> for U2");
    const SphericalIndexU2 idx{f.ints[0], f.ints[1]};
    return [idx](std::complex<double> z) { return spherical_u2(idx, z); };
  }
  if (f.kind == "power") {
    if (f.ints.size() != 1) throw InvalidInput("--func power:<k>");
    const int k = f.ints[0];
    return [k](std::complex<double> z) { return std::pow(z, k); };
  }
  const double w = f.width;
  return [w](std::complex<double> z) { return std::complex<double>(std::exp(-std::norm(z - 1.0) / w)); };
}

inline BiInvariantFunction<SU2Pair> su2_function(const FunctionSpec& f) {
  if (f.kind == "one") return [](double) { return std::complex<double>(1.0); };
  if (f.kind == "spherical") {
    if (f.ints.size() != 1) throw InvalidInput("--func spherical:<n> for SU2");
    const SphericalIndexSU2 idx{f.ints[0]};
    return [idx](double r) { return std::complex<double>(spherical_su2(idx, r)); };
  }
  if (f.kind == "power") {
    if (f.ints.size() != 1) throw InvalidInput("--func power:<k>");
    const int k = f.ints[0];
    return [k](double r) { return std::complex<double>(std::pow(r, k)); };
  }
  const double w = f.width;
  return [w](double r) { return std::complex<double>(std::exp(-(1.0 - r) / w)); };
}

// |c| against total degree for plotting.
template <class Spectrum, class Degree>
void write_spectrum_csv(std::ostream& out, const Spectrum& s, Degree degree, bool u2) {
  io::CsvWriter csv(out, {"pair", "l", "m_or_n", "degree", "dim", "abs_c", "re", "im"});
  for (const auto& [idx, c] : s.coefficients) {
    std::string l, mn;
    if constexpr (requires { idx.l; }) {
      l = std::to_string(idx.l);
      mn = std::to_string(idx.m);
    } else {
      mn = std::to_string(idx.n);
    }
    csv.row({u2 ? "U2" : "SU2", l, mn, std::to_string(degree(idx)), std::to_string(idx.dim()), io::format_double(std::abs(c)),
             io::format_double(c.real()), io::format_double(c.imag())});
  }
}

// Splices `--key value` pairs from a JSON config in front of the explicit
// arguments of the subcommand, so explicit flags win. Unknown keys are
// rejected.
inline std::vector<std::string> apply_config(CLI::App& app, std::vector<std::string> args) {
  std::vector<std::string> out;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InvalidInput("--config needs a path");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (config_path.empty()) return out;
  const Json cfg = read_json_file(config_path);
  if (!cfg.is_object()) throw InvalidInput("config must be a JSON object");

  // Subcommand path: leading words that name nested subcommands.
  CLI::App* target = &app;
  std::size_t pos = 0;
  while (pos < out.size()) {
    CLI::App* sub = nullptr;
    try {
      sub = target->get_subcommand(out[pos]);
    } catch (const CLI::OptionNotFound&) {
      sub = nullptr;
    }
    if (!sub) break;
    target = sub;
    ++pos;
  }
  if (target == &app) throw InvalidInput("--config requires a subcommand");

  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    CLI::Option* opt = target->get_option_no_throw("--" + key);
    if (!opt) throw InvalidInput("config: unknown key '" + key + "' for '" + target->get_name() + "'");
    if (opt->get_type_size() == 0) {
      if (!value.is_boolean()) throw InvalidInput("config: '" + key + "' must be a boolean");
      if (value.get<bool>()) injected.push_back("--" + key);
      continue;
    }
    std::string text;
    if (value.is_string()) text = value.get<std::string>();
    else if (value.is_number_integer()) text = std::to_string(value.get<long long>());
    else if (value.is_number()) text = io::format_double(value.get<double>());
    else throw InvalidInput("config: '" + key + "' must be a string or number");
    injected.push_back("--" + key);
    injected.push_back(text);
  }
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), injected.begin(), injected.end());
  return out;
}

inline Json error_json(const char* kind, const std::string& message) {
  return Json{{"error", {{"kind", kind}, {"message", message}}}};
}

} // namespace detail

// `args` excludes the program name.
inline int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schur multiplier and Gelfand-pair toolkit", "schur_harmonics"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_all_flag("--help-all");

  std::function<void()> action;

  // norm
  struct {
    std::string in, p = "4", out;
    std::uint64_t seed = 0;
    std::size_t amplify = 1;
    int restarts = 32, max_iterations = 2000;
    double tolerance = 1e-9;
  } norm;
  auto* c_norm = app.add_subcommand("norm", "lower bound for the MS^p (or amplified) norm of a symbol");
  c_norm->add_option("--in", norm.in, "symbol JSON {n, re, im}")->required();
  c_norm->add_option("--p", norm.p, "Schatten exponent (number or 'inf')");
  c_norm->add_option("--seed", norm.seed, "master RNG seed")->required();
  c_norm->add_option("--amplify", norm.amplify, "amplification m for the cb lower bound")->check(CLI::PositiveNumber);
  c_norm->add_option("--restarts", norm.restarts)->check(CLI::NonNegativeNumber);
  c_norm->add_option("--max-iterations", norm.max_iterations)->check(CLI::PositiveNumber);
  c_norm->add_option("--tolerance", norm.tolerance)->check(CLI::PositiveNumber);
  c_norm->add_option("-o,--out", norm.out, "output JSON path (default stdout)");
  c_norm->callback([&] {
    action = [&] {
      const MultiplierSymbol psi = io::symbol_from_json(detail::read_json_file(norm.in));
      const SchattenExponent p = detail::parse_exponent(norm.p);
      SearchConfig cfg;
      cfg.seed = norm.seed;
      cfg.restarts = norm.restarts;
      cfg.max_iterations = norm.max_iterations;
      cfg.tolerance = norm.tolerance;
      const NormEstimate est = norm.amplify == 1 ? ms_norm_lower(psi, p, cfg) : cb_lower_bound(psi, p, norm.amplify, cfg);
      Json j = io::norm_report_to_json(est);
      j["p"] = p.is_infinite() ? Json("inf") : Json(p.value());
      j["amplify"] = norm.amplify;
      j["sup_norm"] = psi.sup_norm();
      detail::emit_json(norm.out, out, j);
    };
  });

  // kak
  struct {
    std::string in, out;
  } kak;
  auto* c_kak = app.add_subcommand("kak", "KAK decomposition of a 4x4 symplectic matrix");
  c_kak->add_option("--in", kak.in, "matrix JSON (row-major 4x4 array or {g: ...})")->required();
  c_kak->add_option("-o,--out", kak.out);
  c_kak->callback([&] {
    action = [&] { detail::emit_json(kak.out, out, io::kak_to_json(kak_decompose(io::real_matrix_from_json(detail::read_json_file(kak.in))))); };
  });

  // solve
  auto* c_solve = app.add_subcommand("solve", "sinh systems linking Weyl and Gelfand-pair coordinates");
  c_solve->require_subcommand(1);
  struct {
    double alpha = 0, a = 0, b = 0, r = 0, beta = 0, gamma = 0, s = 0, t = 0, max = 30;
    int grid = 300;
    std::string kind = "st", out;
  } sv;
  auto* s_h = c_solve->add_subcommand("hyperbola", "sinh b sinh g = sinh^2 a (1-a^2-b^2), sinh b - sinh g = sinh 2a |a|");
  s_h->add_option("--alpha", sv.alpha)->required();
  s_h->add_option("--a", sv.a)->required();
  s_h->add_option("--b", sv.b)->required();
  s_h->add_option("-o,--out", sv.out);
  s_h->callback([&] {
    action = [&] {
      const WeylSolution w = solve_hyperbola(sv.alpha, sv.a, sv.b);
      detail::emit_json(sv.out, out, Json{{"beta", w.beta}, {"gamma", w.gamma}, {"residual", w.residual}});
    };
  });
  auto* s_c = c_solve->add_subcommand("circle", "sinh^2 b + sinh^2 g = sinh^2 2a, sinh b sinh g = sinh^2(2a) |r| / 2");
  s_c->add_option("--alpha", sv.alpha)->required();
  s_c->add_option("--r", sv.r)->required();
  s_c->add_option("-o,--out", sv.out);
  s_c->callback([&] {
    action = [&] {
      const WeylSolution w = solve_circle(sv.alpha, sv.r);
      detail::emit_json(sv.out, out, Json{{"beta", w.beta}, {"gamma", w.gamma}, {"residual", w.residual}});
    };
  });
  auto* s_st = c_solve->add_subcommand("st", "(s, t) from (beta, gamma)");
  s_st->add_option("--beta", sv.beta)->required();
  s_st->add_option("--gamma", sv.gamma)->required();
  s_st->add_option("-o,--out", sv.out);
  s_st->callback([&] {
    action = [&] {
      const STSolution r = solve_st(sv.beta, sv.gamma);
      detail::emit_json(sv.out, out,
                        Json{{"s", r.s},
                             {"t", r.t},
                             {"residuals", {{"s", r.residual_s}, {"t", r.residual_t}}},
                             {"ineq_margins", {{"s", r.margin_s}, {"t", r.margin_t}}},
                             {"iterations", r.iterations}});
    };
  });
  auto* s_bg = c_solve->add_subcommand("bg", "(beta, gamma) from (s, t)");
  s_bg->add_option("--s", sv.s)->required();
  s_bg->add_option("--t", sv.t)->required();
  s_bg->add_option("-o,--out", sv.out);
  s_bg->callback([&] {
    action = [&] {
      const BGSolution r = solve_bg(sv.s, sv.t);
      detail::emit_json(sv.out, out,
                        Json{{"beta", r.beta},
                             {"gamma", r.gamma},
                             {"residual", r.residual},
                             {"in_strip", r.in_strip},
                             {"ineq_margins", {{"beta", r.margin_beta}, {"gamma", r.margin_gamma}}}});
    };
  });
  auto* s_scan = c_solve->add_subcommand("scan", "inequality scan as CSV (kind st: beta grid; kind bg: strip in t)");
  s_scan->add_option("--kind", sv.kind)->check(CLI::IsMember({"st", "bg"}));
  s_scan->add_option("--max", sv.max, "beta_max (st) or t_max (bg)");
  s_scan->add_option("--grid", sv.grid)->check(CLI::Range(2, 5000));
  s_scan->add_option("-o,--out", sv.out, "CSV path (default stdout)");
  s_scan->callback([&] {
    action = [&] {
      const InequalityScan scan = sv.kind == "st" ? scan_st_inequalities(sv.max, sv.grid) : scan_bg_strip(sv.max, sv.grid);
      detail::emit(sv.out, out, [&](std::ostream& o) { io::write_scan_csv(o, scan.rows); });
      if (scan.violations > 0) throw NumericFailure("scan found " + std::to_string(scan.violations) + " inequality violations");
    };
  });

  // coeffs
  struct {
    std::string pair = "SU2", p = "2", func = "one", spectrum_in, csv, out;
    int degree = 24, order = 0;
  } co;
  auto* c_co = app.add_subcommand("coeffs", "spherical coefficients and the l^p lower bound");
  c_co->add_option("--pair", co.pair)->check(CLI::IsMember({"U2", "SU2"}));
  c_co->add_option("--degree", co.degree, "truncation degree")->check(CLI::NonNegativeNumber);
  c_co->add_option("--order", co.order, "quadrature order (0: default)")->check(CLI::NonNegativeNumber);
  c_co->add_option("--p", co.p);
  c_co->add_option("--func", co.func, "one | spherical:l,m | spherical:n | power:k | gaussian:w");
  c_co->add_option("--spectrum-in", co.spectrum_in, "read a spectrum JSON instead of expanding --func");
  c_co->add_option("--csv", co.csv, "|c| against degree as CSV");
  c_co->add_option("-o,--out", co.out);
  c_co->callback([&] {
    action = [&] {
      const SchattenExponent p = detail::parse_exponent(co.p);
      const bool u2 = co.pair == "U2";
      Json j{{"pair", co.pair}, {"p", p.value()}};
      auto finish = [&](const auto& spec, auto degree) {
        j["truncation"] = spec.truncation;
        j["lp_lower_bound"] = lp_lower_bound(spec, p);
        j["spectrum"] = io::spectrum_to_json(spec);
        if (!co.csv.empty()) detail::emit(co.csv, out, [&](std::ostream& o) { detail::write_spectrum_csv(o, spec, degree, u2); });
        detail::emit_json(co.out, out, j);
      };
      if (u2) {
        const SpectrumU2 spec = co.spectrum_in.empty() ? coefficients_u2(detail::u2_function(detail::parse_function(co.func)), co.degree, co.order)
                                                       : io::spectrum_u2_from_json(detail::read_json_file(co.spectrum_in));
        finish(spec, [](SphericalIndexU2 i) { return i.l + i.m; });
      } else {
        const SpectrumSU2 spec = co.spectrum_in.empty() ? coefficients_su2(detail::su2_function(detail::parse_function(co.func)), co.degree, co.order)
                                                        : io::spectrum_su2_from_json(detail::read_json_file(co.spectrum_in));
        finish(spec, [](SphericalIndexSU2 i) { return i.n; });
      }
    };
  });

  // holder
  struct {
    std::string family = "SU2", out;
    int max_degree = 200, grid = 2001;
  } ho;
  auto* c_ho = app.add_subcommand("holder", "grid scan of the Hoelder bounds of the spherical functions");
  c_ho->add_option("--family", ho.family)->check(CLI::IsMember({"U2", "SU2"}));
  c_ho->add_option("--max-degree", ho.max_degree);
  c_ho->add_option("--grid", ho.grid);
  c_ho->add_option("-o,--out", ho.out, "CSV path; a JSON summary then goes to stdout");
  c_ho->callback([&] {
    action = [&] {
      const HoelderScanReport rep =
          hoelder_bound_check(ho.family == "U2" ? SphericalFamily::u2 : SphericalFamily::su2, ho.max_degree, ho.grid);
      detail::emit(ho.out, out, [&](std::ostream& o) { io::write_hoelder_csv(o, rep); });
      if (!ho.out.empty() && ho.out != "-") {
        out << Json{{"family", family_name(rep.family)},
                    {"max_degree", rep.max_degree},
                    {"grid", rep.grid},
                    {"c_lipschitz", rep.c_lipschitz},
                    {"c_decay", rep.c_decay},
                    {"c_hoelder", rep.c_hoelder},
                    {"c_uniform", rep.c_uniform},
                    {"violations", rep.violations.size()}}
                   .dump(2)
            << '\n';
      }
      if (!rep.violations.empty()) throw NumericFailure("Hoelder scan found violations");
    };
  });

  // constants
  struct {
    double p_min = 12.5, p_max = 48;
    int steps = 20, truncation = 1000;
    std::optional<double> c_u2;
    std::string out;
  } cs;
  auto* c_cs = app.add_subcommand("constants", "decay-constant chain over a p-grid as CSV");
  c_cs->add_option("--p-min", cs.p_min);
  c_cs->add_option("--p-max", cs.p_max);
  c_cs->add_option("--steps", cs.steps)->check(CLI::PositiveNumber);
  c_cs->add_option("--c-u2", cs.c_u2, "U(2) Hoelder constant (default: fitted value x 1.5)");
  c_cs->add_option("--truncation", cs.truncation)->check(CLI::Range(2, 100000000));
  c_cs->add_option("-o,--out", cs.out, "CSV path (default stdout)");
  c_cs->callback([&] {
    action = [&] {
      if (cs.p_max < cs.p_min) throw InvalidInput("--p-max must be >= --p-min");
      const double c = cs.c_u2 ? *cs.c_u2 : default_u2_constant();
      std::vector<DecayConstants> rows;
      for (int i = 0; i < cs.steps; ++i) {
        const double p = cs.steps == 1 ? cs.p_min : cs.p_min + (cs.p_max - cs.p_min) * i / (cs.steps - 1);
        rows.push_back(chain_constants(p, c, cs.truncation));
      }
      detail::emit(cs.out, out, [&](std::ostream& o) {
        io::CsvWriter csv(o, io::constants_header());
        for (const auto& k : rows) csv.row(io::constants_row(k));
      });
    };
  });

  // certify
  struct {
    std::string in, out;
    double p = 24;
    std::optional<double> c_u2, ball_radius;
    std::optional<std::uint64_t> seed;
    int truncation = 1000;
  } ce;
  auto* c_ce = app.add_subcommand("certify", "MS^p lower bound from chamber samples via the decay estimate");
  c_ce->add_option("--in", ce.in, "samples JSON [{alpha1, alpha2, re, im, inf_re, inf_im}]");
  c_ce->add_option("--ball-radius", ce.ball_radius, "use phi = 1, phi_inf = 0 on the ball of this radius");
  c_ce->add_option("--p", ce.p);
  c_ce->add_option("--c-u2", ce.c_u2);
  c_ce->add_option("--truncation", ce.truncation)->check(CLI::Range(2, 100000000));
  c_ce->add_option("--seed", ce.seed, "recorded for provenance");
  c_ce->add_option("-o,--out", ce.out);
  c_ce->callback([&] {
    action = [&] {
      if (ce.in.empty() == !ce.ball_radius.has_value()) throw InvalidInput("certify needs exactly one of --in or --ball-radius");
      const DecayConstants k = chain_constants(ce.p, ce.c_u2 ? *ce.c_u2 : default_u2_constant(), ce.truncation);
      const std::vector<DecaySample> samples =
          ce.ball_radius ? unit_ball_samples(*ce.ball_radius) : io::samples_from_json(detail::read_json_file(ce.in));
      const Certificate cert = norm_certificate(samples, k);
      Json j{{"certificate", cert.value},
             {"argmax", cert.argmax},
             {"samples", samples.size()},
             {"provenance", {{"p", cert.p}, {"C_u2", cert.c_u2}, {"truncation", cert.truncation}}},
             {"C1", k.c1},
             {"C2", k.c2}};
      if (ce.seed) j["seed"] = *ce.seed;
      detail::emit_json(ce.out, out, j);
    };
  });

  // xcheck
  struct {
    int count = 200;
    std::uint64_t seed = 0;
    double alpha_max = 2.0, tolerance = 1e-6;
    std::string out;
  } xc;
  auto* c_xc = app.add_subcommand("xcheck", "sinh solvers against KAK of the constructed matrices");
  c_xc->add_option("--count", xc.count)->check(CLI::PositiveNumber);
  c_xc->add_option("--seed", xc.seed)->required();
  c_xc->add_option("--alpha-max", xc.alpha_max)->check(CLI::NonNegativeNumber);
  c_xc->add_option("--tolerance", xc.tolerance)->check(CLI::PositiveNumber);
  c_xc->add_option("-o,--out", xc.out, "per-case CSV (default: none)");
  c_xc->callback([&] {
    action = [&] {
      const FidelityReport rep = coset_fidelity(xc.count, xc.seed, xc.alpha_max);
      if (!xc.out.empty()) {
        detail::emit(xc.out, out, [&](std::ostream& o) {
          io::CsvWriter csv(o, {"system", "alpha", "a", "b", "r", "beta", "gamma", "kak_alpha1", "kak_alpha2", "error"});
          auto rows = [&](const std::vector<FidelityCase>& cases, const char* name) {
            for (const auto& c : cases)
              csv.row({name, io::format_double(c.params.alpha), io::format_double(c.params.a), io::format_double(c.params.b),
                       io::format_double(c.params.r), io::format_double(c.params.beta), io::format_double(c.params.gamma),
                       io::format_double(c.kak.alpha1), io::format_double(c.kak.alpha2), io::format_double(c.error)});
          };
          rows(rep.hyperbola, "hyperbola");
          rows(rep.circle, "circle");
        });
      }
      const bool ok = rep.max_error <= xc.tolerance;
      out << Json{{"count", xc.count}, {"seed", xc.seed}, {"max_error", rep.max_error}, {"tolerance", xc.tolerance}, {"passed", ok}}.dump(2)
          << '\n';
      if (!ok) throw NumericFailure("xcheck: solver/KAK disagreement above tolerance");
    };
  });

  try {
    std::vector<std::string> args = detail::apply_config(app, raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (action) action();
    return kOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << detail::error_json("usage", e.what()).dump() << '\n';
    return kValidation;
  } catch (const NumericFailure& e) {
    err << detail::error_json(e.kind(), e.what()).dump() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << detail::error_json(e.kind(), e.what()).dump() << '\n';
    return kValidation;
  } catch (const nlohmann::json::exception& e) {
    err << detail::error_json("invalid_input", e.what()).dump() << '\n';
    return kValidation;
  }
}

} // namespace schur_harmonics::cli

#endif
