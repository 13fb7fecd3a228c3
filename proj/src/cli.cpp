#include "operlab/cli.hpp"

#include "operlab/log.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace operlab::cli {

using checks::Outcome;
using checks::Verdict;

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return kPass;
    case Verdict::fail: return kFail;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kFail;
}

std::string RunConfig::command_name() const {
  std::string s;
  for (const auto& c : command) s += (s.empty() ? "" : " ") + c;
  return s;
}

json RunConfig::echo() const {
  auto opt = [](const std::optional<double>& x) -> json { return x ? json(*x) : json(nullptr); };
  json j;
  j["command"] = command_name();
  j["fixture"] = fixture;
  j["rep"] = rep;
  j["module"] = module;
  j["N"] = N;
  j["j"] = j_given ? json(this->j) : json(nullptr);
  j["order"] = order;
  j["samples"] = samples;
  j["mode"] = mode;
  j["tol"] = opt(tol);
  j["quad_tol"] = opt(quad_tol);
  j["min_gap"] = opt(min_gap);
  j["rank_tol"] = rank_tol;
  j["seed"] = seed;
  j["in"] = in;
  j["system"] = system;
  j["loop"] = loop;
  j["form"] = form;
  j["synthetic_failure"] = synthetic;
  return j;
}

// ---------------------------------------------------------------- config

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::ConfigError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw io::ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw io::ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    if (out.count(key)) throw io::ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key " + key);
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string canonical_fixture(const std::string& name) {
  if (name == "torus" || name == "once_punctured_torus") return "once_punctured_torus";
  if (name == "genus2" || name == "genus2_closed") return "genus2_closed";
  if (name == "gamma0_4") return "gamma0_4";
  if (std::filesystem::is_regular_file(name)) return name;
  throw io::ConfigError("unknown fixture '" + name + "' (torus, gamma0_4, genus2 or a fixture file)");
}

namespace {

fuchsian::Fixture load_fixture(const RunConfig& c) {
  if (c.fixture.empty()) throw io::ConfigError(c.command_name() + " needs --fixture");
  const std::string name = canonical_fixture(c.fixture);
  if (std::filesystem::is_regular_file(name)) return fuchsian::load_fixture_file(name);
  return fuchsian::fixture_group(name);
}

surface::GroupRepresentation load_rep(const RunConfig& c) {
  if (!c.rep.empty()) return io::representation_from_json(io::read_json_file(c.rep));
  return load_fixture(c).rep;
}

checks::ModuleSpec module_spec(const RunConfig& c) {
  checks::ModuleSpec m;
  const std::string kind = c.module.empty() ? (c.j_given ? "sym" : "adjoint") : c.module;
  if (kind == "adjoint") {
    m.kind = checks::ModuleSpec::Kind::adjoint;
    if (c.N < 2) throw io::ConfigError("--N must be at least 2");
  } else if (kind == "sym") {
    m.kind = checks::ModuleSpec::Kind::sym;
    if (c.j < 1) throw io::ConfigError("--j must be at least 1");
  } else {
    throw io::ConfigError("--module must be adjoint or sym");
  }
  m.n = c.N;
  m.j = c.j;
  return m;
}

std::string resolve_form_path(const std::string& given) {
  if (std::filesystem::is_regular_file(given)) return given;
  const std::string data = std::string(OPERLAB_DATA_DIR) + "/forms/" + given;
  if (std::filesystem::is_regular_file(data)) return data;
  throw io::ConfigError("cannot find q-expansion file " + given);
}

// Numerical breakdowns become verdicts instead of aborting the run.
Outcome guarded(const std::string& section, const std::function<Outcome()>& fn) {
  try {
    return fn();
  } catch (const fuchsian::QuadratureFailure& e) {
    Outcome o;
    checks::Check c;
    c.name = "quadrature";
    c.value = e.what();
    c.residual = e.achieved_error();
    c.verdict = Verdict::inconclusive;
    o.add(std::move(c));
    o.data["error"] = section + ": " + e.what();
    return o;
  } catch (const ode::ContinuationFailure& e) {
    Outcome o;
    checks::Check c;
    c.name = "continuation";
    c.value = e.what();
    c.verdict = Verdict::inconclusive;
    o.add(std::move(c));
    return o;
  } catch (const es::ESConsistencyFailure& e) {
    Outcome o;
    checks::Check c;
    c.name = "consistency";
    c.value = e.what();
    c.residual = e.residual;
    c.verdict = Verdict::fail;
    o.add(std::move(c));
    return o;
  }
}

double pick(const std::optional<double>& x, double fallback) {
  if (x && !(*x > 0.0)) throw io::ConfigError("tolerances must be positive");
  return x ? *x : fallback;
}

int samples_or(const RunConfig& c, int fallback) {
  if (c.samples < 0) throw io::ConfigError("--samples must be nonnegative");
  return c.samples > 0 ? c.samples : fallback;
}

es::ESConfig es_config(const RunConfig& c) {
  es::ESConfig cfg;
  cfg.tol = pick(c.quad_tol, cfg.tol);
  cfg.order = c.order;
  return cfg;
}

fuchsian::QuadratureOptions quad_options(const RunConfig& c, double fallback) {
  fuchsian::QuadratureOptions q;
  q.tol = pick(c.quad_tol, fallback);
  q.order = c.order;
  return q;
}

}  // namespace

// ------------------------------------------------------------------- run

Result run(const RunConfig& c) {
  Result r;
  const std::string cmd = c.command_name();
  const checks::Mode mode = checks::parse_mode(c.mode);
  if (c.order < 1) throw io::ConfigError("--order must be positive");
  if (!(c.rank_tol > 0.0)) throw io::ConfigError("tolerances must be positive");
  WarningSink::captured().clear();

  auto phase = [&](const std::string& name, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = guarded(name, fn);
    r.phases.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
    return o;
  };
  auto float_only = [&]() {
    if (mode == checks::Mode::exact) throw io::ConfigError(cmd + " supports --mode float only");
  };
  bool csv_artifact = false;

  if (cmd == "lie triple" || cmd == "lie identity") {
    if (c.N < 2) throw io::ConfigError("--N must be at least 2");
    const double tol = mode == checks::Mode::exact ? 0.0 : pick(c.tol, 1e-12);
    r.tolerances["residual"] = tol;
    r.outcome = phase(cmd, [&] {
      return cmd == "lie triple" ? checks::lie_triple(c.N, mode, tol) : checks::lie_identity(c.N, mode, tol, c.seed);
    });
  } else if (cmd == "gauge normalize") {
    checks::GaugeOptions g;
    g.n = c.N;
    g.order = c.order;
    g.samples = samples_or(c, 50);
    g.mode = mode;
    g.tol = mode == checks::Mode::exact ? 0.0 : pick(c.tol, 1e-10);
    g.seed = c.seed;
    if (g.n < 2) throw io::ConfigError("--N must be at least 2");
    r.tolerances["residual"] = g.tol;
    if (!c.in.empty()) {
      const json conn = io::read_json_file(c.in);
      r.outcome = phase(cmd, [&] { return checks::gauge_file(conn, g); });
    } else {
      r.outcome = phase(cmd, [&] { return checks::gauge_random(g); });
    }
  } else if (cmd == "monodromy") {
    float_only();
    checks::MonodromyOptions m;
    m.samples = samples_or(c, 20);
    m.tol = pick(c.tol, 1e-6);
    m.ode_tol = pick(c.quad_tol, m.ode_tol);
    m.seed = c.seed;
    r.tolerances = {{"eigenvalue_relative", m.tol}, {"unipotent", m.unipotent_tol}, {"ode", m.ode_tol}};
    if (c.system.empty()) {
      if (!c.loop.empty()) throw io::ConfigError("--loop needs --system");
      r.outcome = phase(cmd, [&] { return checks::monodromy_random(m); });
    } else {
      const auto sys = io::system_from_json(io::read_json_file(c.system));
      std::optional<checks::LoopSpec> loop;
      if (!c.loop.empty()) {
        json lj;
        try {
          lj = json::parse(c.loop);
        } catch (const json::exception& e) {
          throw io::ConfigError(std::string("--loop is not valid JSON: ") + e.what());
        }
        loop = checks::loop_from_json(lj);
      }
      r.outcome = phase(cmd, [&] { return checks::monodromy_system(sys, loop, m); });
    }
  } else if (cmd == "cohomology dims" || cmd == "cohomology basis") {
    float_only();
    const auto rep = load_rep(c);
    const auto m = module_spec(c);
    const checks::RankOptions ro{c.rank_tol, pick(c.min_gap, 1e3)};
    r.tolerances = {{"rank_tol", ro.rank_tol}, {"min_gap", ro.min_gap}};
    r.outcome = phase(cmd, [&] { return checks::cohomology(rep, m, ro, cmd == "cohomology basis"); });
  } else if (cmd == "domain area") {
    float_only();
    const auto fx = load_fixture(c);
    const auto q = quad_options(c, 1e-9);
    const double tol = pick(c.tol, 1e-6);
    r.tolerances = {{"relative_area", tol}, {"quadrature", q.tol}};
    r.outcome = phase(cmd, [&] { return checks::domain_area(fx, q, tol); });
  } else if (cmd == "es-cocycle") {
    float_only();
    const auto fx = load_fixture(c);
    checks::ESCheckOptions eo;
    eo.cfg = es_config(c);
    eo.residual_tol = pick(c.tol, 1e-8);
    eo.basepoint_tol = 10 * eo.residual_tol;
    r.tolerances = {{"relator", eo.residual_tol},
                    {"parabolicity", eo.residual_tol},
                    {"base_point", eo.basepoint_tol},
                    {"quadrature", eo.cfg.tol}};
    std::string path;
    if (!c.form.empty()) {
      path = resolve_form_path(c.form);
    } else {
      const auto it = fx.form_files.find(2 * c.j + 2);
      if (it == fx.form_files.end() || it->second.empty())
        throw io::ConfigError("fixture " + fx.name + " has no form of weight " + std::to_string(2 * c.j + 2) +
                              "; pass --form");
      path = fx.directory + "/../forms/" + it->second.front();
    }
    const fuchsian::ModularForm f(fuchsian::load_cusp_form(path), fx);
    r.outcome = phase(cmd, [&] { return checks::es_cocycle(fx, f, c.j, eo); });
  } else if (cmd == "pairing gram") {
    float_only();
    const auto fx = load_fixture(c);
    const auto m = module_spec(c);
    checks::PairingOptions po;
    po.skew_tol = pick(c.tol, 1e-10);
    po.isotropy_tol = po.skew_tol;
    po.coboundary_tol = 10 * po.skew_tol;
    po.samples = samples_or(c, 100);
    po.seed = c.seed;
    r.tolerances = {{"skew_symmetry", po.skew_tol},
                    {"coboundary_annihilation", po.coboundary_tol},
                    {"real_isotropy", po.isotropy_tol},
                    {"nondegeneracy_ratio", po.nondegeneracy_ratio}};
    r.outcome = phase(cmd, [&] { return checks::pairing_gram(fx, m, po); });
    csv_artifact = true;
  } else if (cmd == "pairing cross-validate") {
    float_only();
    const auto fx = load_fixture(c);
    const double threshold = pick(c.tol, 1e-3);
    const auto cfg = es_config(c);
    const auto q = quad_options(c, 1e-9);
    r.tolerances = {{"proportionality", threshold}, {"quadrature", q.tol}, {"period_quadrature", cfg.tol}};
    r.outcome = phase(cmd, [&] { return checks::cross_validate(fx, c.j, cfg, q, threshold); });
  } else if (cmd == "pairing transversality") {
    float_only();
    const auto fx = load_fixture(c);
    const checks::RankOptions ro{c.rank_tol, pick(c.min_gap, 10.0)};
    const auto cfg = es_config(c);
    r.tolerances = {{"rank_tol", ro.rank_tol}, {"min_gap", ro.min_gap}, {"period_quadrature", cfg.tol}};
    r.outcome = phase(cmd, [&] { return checks::transversality(fx, c.N, cfg, ro, c.synthetic); });
  } else if (cmd == "pairing hodge") {
    float_only();
    const auto fx = load_fixture(c);
    const double tol = pick(c.tol, 1e-8);
    const auto cfg = es_config(c);
    r.tolerances = {{"axiom_residual", tol}, {"period_quadrature", cfg.tol}};
    r.outcome = phase(cmd, [&] { return checks::hodge(fx, c.j, cfg, tol); });
  } else if (cmd == "full-suite") {
    float_only();
    const auto fx = load_fixture(c);
    const auto cfg = es_config(c);
    const auto q = quad_options(c, 1e-9);
    checks::ESCheckOptions eo;
    eo.cfg = cfg;
    eo.residual_tol = pick(c.tol, 1e-8);
    eo.basepoint_tol = 10 * eo.residual_tol;
    checks::PairingOptions po;
    po.samples = samples_or(c, 100);
    po.seed = c.seed;
    const double hodge_tol = pick(c.tol, 1e-8);
    r.tolerances = {{"es_residual", eo.residual_tol},
                    {"es_base_point", eo.basepoint_tol},
                    {"decomposition_rank_tol", c.rank_tol},
                    {"skew_symmetry", po.skew_tol},
                    {"coboundary_annihilation", po.coboundary_tol},
                    {"real_isotropy", po.isotropy_tol},
                    {"nondegeneracy_ratio", po.nondegeneracy_ratio},
                    {"proportionality", 1e-3},
                    {"hodge_axiom_residual", hodge_tol},
                    {"quadrature", q.tol},
                    {"period_quadrature", cfg.tol}};
    const auto forms = fuchsian::fixture_forms(fx, 2 * c.j + 2);
    if (!forms.empty())
      r.outcome.append(phase("es-cocycle", [&] { return checks::es_cocycle(fx, forms.front(), c.j, eo); }), "es_cocycle");
    r.outcome.append(phase("decomposition", [&] { return checks::decomposition(fx, c.j, cfg, c.rank_tol); }),
                     "decomposition");
    const checks::ModuleSpec sym{checks::ModuleSpec::Kind::sym, 2, c.j};
    r.outcome.append(phase("pairing gram", [&] { return checks::pairing_gram(fx, sym, po); }), "pairing");
    r.outcome.append(phase("positivity", [&] { return checks::pairing_positivity(fx, c.j, cfg, q); }), "positivity");
    r.outcome.append(phase("cross-validate", [&] { return checks::cross_validate(fx, c.j, cfg, q, 1e-3); }),
                     "cross_validate");
    r.outcome.append(phase("hodge", [&] { return checks::hodge(fx, c.j, cfg, hodge_tol); }), "hodge");
  } else {
    throw io::ConfigError("unknown command '" + cmd + "'");
  }

  r.artifact = csv_artifact ? r.outcome.csv : r.outcome.data.dump(2) + "\n";
  auto w = WarningSink::captured();
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  r.warnings = std::move(w);
  return r;
}

json make_report(const RunConfig& cfg, const Result& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = kToolName;
  j["tool_version"] = kToolVersion;
  j["command"] = cfg.command_name();
  j["seed"] = cfg.seed;
  j["config"] = cfg.echo();
  j["tolerances"] = r.tolerances;
  json checks = json::array();
  for (const auto& c : r.outcome.checks) checks.push_back(c.to_json());
  j["checks"] = checks;
  j["data"] = r.outcome.data;
  j["warnings"] = r.warnings;
  j["verdict"] = pairing::verdict_name(r.verdict());
  j["exit_code"] = exit_code(r.verdict());
  if (cfg.timing) {
    json t = json::array();
    for (const auto& p : r.phases) t.push_back({{"phase", p.name}, {"seconds", p.seconds}});
    j["timing"] = t;
  }
  return j;
}

// ------------------------------------------------------------------ main

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io::ConfigError("cannot write " + path);
  f << text;
}

std::string format_value(const json& v) {
  if (v.is_number_float()) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v.get<double>();
    return s.str();
  }
  return v.dump();
}

void summary(std::ostream& out, const RunConfig& cfg, const Result& r) {
  out << kToolName << " " << cfg.command_name() << "  seed " << cfg.seed << "\n";
  for (const auto& c : r.outcome.checks) {
    out << "  " << pairing::verdict_name(c.verdict) << "  " << c.name << "  " << format_value(c.value);
    out << "  tol " << format_value(json(c.tolerance));
    if (c.gap) out << "  gap " << format_value(json(*c.gap));
    out << "\n";
  }
  for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
  out << "verdict: " << pairing::verdict_name(r.verdict()) << "\n";
}

void use_stderr_logger() {
  static bool done = false;
  if (done) return;
  done = true;
  auto logger = spdlog::stderr_color_mt("oper-lab");
  spdlog::set_default_logger(logger);
}

// Pulls --config PATH / --config=PATH out of the argument list.
std::string take_config(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw io::ConfigError("--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return path;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  use_stderr_logger();
  RunConfig c;
  CLI::App app{"Numerical laboratory for opers, monodromy and period pairings"};
  app.name(kToolName);
  app.set_version_flag("--version", kToolVersion);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  double tol = 0, quad_tol = 0, min_gap = 0;
  app.add_option("--fixture", c.fixture, "torus, gamma0_4, genus2 or a fixture file");
  app.add_option("--rep", c.rep, "representation JSON file");
  app.add_option("--module", c.module, "adjoint or sym");
  app.add_option("--N", c.N, "rank of sl_N");
  auto* jopt = app.add_option("--j", c.j, "weight index of V_2j");
  app.add_option("--order", c.order, "truncation or quadrature order");
  app.add_option("--samples", c.samples, "random cases for property checks");
  app.add_option("--mode", c.mode, "exact or float");
  auto* tol_opt = app.add_option("--tol", tol, "primary residual tolerance");
  auto* quad_opt = app.add_option("--quad-tol", quad_tol, "quadrature / integrator tolerance");
  auto* gap_opt = app.add_option("--min-gap", min_gap, "required spectral gap for rank decisions");
  app.add_option("--rank-tol", c.rank_tol, "relative singular value threshold");
  app.add_option("--seed", c.seed, "seed for randomized checks");
  app.add_option("--in", c.in, "connection JSON file");
  app.add_option("--system", c.system, "meromorphic system JSON file");
  app.add_option("--loop", c.loop, "loop as JSON {center, radius, turns}");
  app.add_option("--form", c.form, "q-expansion file");
  app.add_option("--out", c.out, "artifact output path");
  app.add_option("--report", c.report, "JSON report output path");
  app.add_flag("--json", c.print_json, "print the JSON report on stdout");
  app.add_flag("--timing", c.timing, "include wall-clock per phase in the report");
  app.add_flag("--synthetic-failure", c.synthetic, "transversality: feed a real class as holomorphic");
  app.add_option("--config", "flat key=value file; keys are flag names");

  auto group = [&](const std::string& name, const std::string& help, std::vector<std::pair<std::string, std::string>> subs) {
    auto* g = app.add_subcommand(name, help)->fallthrough();
    if (!subs.empty()) g->require_subcommand(1);
    for (const auto& [s, h] : subs) g->add_subcommand(s, h)->fallthrough();
  };
  group("lie", "principal triple checks", {{"triple", "triple brackets"}, {"identity", "Killing identity for ad powers"}});
  group("gauge", "formal gauge normalization", {{"normalize", "normalize a connection or random ones"}});
  group("monodromy", "loop and local monodromy", {});
  group("cohomology", "parabolic cohomology", {{"dims", "dimensions and gaps"}, {"basis", "H1_P basis"}});
  group("domain", "fundamental domain", {{"area", "hyperbolic area by quadrature"}});
  group("es-cocycle", "period cocycle of a cusp form", {});
  group("pairing", "pairings on H1_P",
        {{"gram", "cup-product Gram matrix"},
         {"cross-validate", "cocycle pairing against Petersson integrals"},
         {"transversality", "real and holomorphic classes meet in zero"},
         {"hodge", "polarization axioms"}});
  group("full-suite", "period cocycle, decomposition, pairing, positivity, cross-validation, Hodge", {});

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    c.config = take_config(args);
    std::vector<std::string> tokens;
    if (!c.config.empty()) {
      for (const auto& [key, value] : read_config_file(c.config)) {
        auto* o = app.get_option_no_throw("--" + key);
        if (!o || key == "config") throw io::ConfigError(c.config + ": unknown key " + key);
        if (o->get_expected_min() == 0)
          tokens.push_back("--" + key + "=" + value);
        else
          tokens.insert(tokens.end(), {"--" + key, value});
      }
    }
    tokens.insert(tokens.end(), args.begin(), args.end());
    std::reverse(tokens.begin(), tokens.end());
    app.parse(tokens);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  } catch (const io::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  if (tol_opt->count()) c.tol = tol;
  if (quad_opt->count()) c.quad_tol = quad_tol;
  if (gap_opt->count()) c.min_gap = min_gap;
  c.j_given = jopt->count() > 0;
  for (const CLI::App* a = &app; !a->get_subcommands().empty();) {
    a = a->get_subcommands().front();
    c.command.push_back(a->get_name());
  }

  try {
    const Result r = run(c);
    const json report = make_report(c, r);
    if (!c.out.empty()) write_file(c.out, r.artifact);
    if (!c.report.empty()) write_file(c.report, report.dump(2) + "\n");
    if (c.print_json)
      out << report.dump(2) << "\n";
    else
      summary(out, c, r);
    return exit_code(r.verdict());
  } catch (const io::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const fuchsian::FixtureError& e) {
    err << "data error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace operlab::cli
