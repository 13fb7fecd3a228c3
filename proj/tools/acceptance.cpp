// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "operlab/checks.hpp"
#include "operlab/fuchsian.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace operlab;
using checks::Outcome;
using checks::Verdict;

namespace {

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<bool(std::vector<std::string>&)> body;
};

// Records every non-passing check of o under the given label.
bool expect_pass(const Outcome& o, const std::string& label, std::vector<std::string>& notes) {
  bool ok = true;
  for (const auto& c : o.checks) {
    if (c.verdict == Verdict::pass) continue;
    ok = false;
    notes.push_back(label + "/" + c.name + " " + pairing::verdict_name(c.verdict) + " " + c.value.dump());
  }
  if (o.checks.empty()) {
    notes.push_back(label + " produced no checks");
    ok = false;
  }
  return ok;
}

bool expect_dim(const Outcome& o, int expected, const std::string& label, std::vector<std::string>& notes) {
  const int got = o.data["H1_P"]["dim"].get<int>();
  if (got == expected) return true;
  notes.push_back(label + " dim H1_P = " + std::to_string(got) + ", expected " + std::to_string(expected));
  return false;
}

fuchsian::Fixture fixture(const std::string& name) { return fuchsian::fixture_group(name); }

checks::ModuleSpec adjoint(int n) { return {checks::ModuleSpec::Kind::adjoint, n, 1}; }
checks::ModuleSpec sym(int j) { return {checks::ModuleSpec::Kind::sym, 2, j}; }

std::vector<Criterion> criteria() {
  std::vector<Criterion> list;

  list.push_back({1, "sl2-triple and Killing identities, N = 2..6", 5.0, [](auto& notes) {
                    bool ok = true;
                    for (int n = 2; n <= 6; ++n) {
                      const std::string tag = "N=" + std::to_string(n);
                      ok &= expect_pass(checks::lie_triple(n, checks::Mode::exact, 0.0), tag + " exact triple", notes);
                      ok &= expect_pass(checks::lie_identity(n, checks::Mode::exact, 0.0, checks::kDefaultSeed),
                                        tag + " exact identity", notes);
                      ok &= expect_pass(checks::lie_triple(n, checks::Mode::floating, 1e-12), tag + " float triple", notes);
                      ok &= expect_pass(checks::lie_identity(n, checks::Mode::floating, 1e-12, checks::kDefaultSeed),
                                        tag + " float identity", notes);
                    }
                    return ok;
                  }});

  list.push_back({2, "gauge normalization, 50 connections per N in {2, 3}, order 12", 30.0, [](auto& notes) {
                    bool ok = true;
                    for (int n : {2, 3}) {
                      for (auto mode : {checks::Mode::exact, checks::Mode::floating}) {
                        checks::GaugeOptions g;
                        g.n = n;
                        g.mode = mode;
                        g.tol = mode == checks::Mode::exact ? 0.0 : 1e-10;
                        ok &= expect_pass(checks::gauge_random(g),
                                          "N=" + std::to_string(n) + " " + checks::mode_name(mode), notes);
                      }
                    }
                    return ok;
                  }});

  list.push_back({3, "local monodromy eigenvalues and unipotence, 20 systems in sl2 and sl3", 120.0, [](auto& notes) {
                    checks::MonodromyOptions m;
                    m.samples = 20;
                    return expect_pass(checks::monodromy_random(m), "monodromy", notes);
                  }});

  list.push_back({4, "dim H1_P on all fixtures, spectral gap > 1e3", 60.0, [](auto& notes) {
                    const checks::RankOptions ro{1e-8, 1e3};
                    bool ok = true;
                    const auto torus = fixture("once_punctured_torus");
                    const auto genus2 = fixture("genus2_closed");
                    const auto g04 = fixture("gamma0_4");
                    auto run = [&](const fuchsian::Fixture& fx, const checks::ModuleSpec& m) {
                      const auto o = checks::cohomology(fx.rep, m, ro, false);
                      ok &= expect_pass(o, fx.name + " " + m.label(), notes);
                      return o;
                    };
                    ok &= expect_dim(run(torus, adjoint(2)), 2, "torus adjoint sl2", notes);
                    ok &= expect_dim(run(torus, adjoint(3)), 6, "torus adjoint sl3", notes);
                    ok &= expect_dim(run(genus2, adjoint(2)), 6, "genus2 adjoint sl2", notes);
                    for (const auto* fx : {&torus, &genus2, &g04})
                      for (int j = 1; j <= 3; ++j) run(*fx, sym(j));
                    return ok;
                  }});

  list.push_back({5, "fundamental domain areas 2pi, 2pi, 4pi within 1e-6", 60.0, [](auto& notes) {
                    bool ok = true;
                    for (const auto& name : {"once_punctured_torus", "gamma0_4", "genus2_closed"})
                      ok &= expect_pass(checks::domain_area(fixture(name), {}, 1e-6), name, notes);
                    return ok;
                  }});

  list.push_back({6, "Eichler-Shimura cocycle and decomposition on gamma0_4", 300.0, [](auto& notes) {
                    const auto fx = fixture("gamma0_4");
                    const auto forms = fuchsian::fixture_forms(fx, 6);
                    if (forms.empty()) {
                      notes.push_back("gamma0_4 has no weight 6 form");
                      return false;
                    }
                    checks::ESCheckOptions eo;
                    eo.residual_tol = 1e-8;
                    eo.basepoint_tol = 1e-7;
                    bool ok = expect_pass(checks::es_cocycle(fx, forms.front(), 2, eo), "cocycle", notes);
                    const auto d = checks::decomposition(fx, 2, eo.cfg, 1e-8);
                    ok &= expect_pass(d, "decomposition", notes);
                    if (!d.data.contains("rank") || d.data["rank"].get<int>() != 2) {
                      notes.push_back("decomposition rank is not 2");
                      ok = false;
                    }
                    return ok;
                  }});

  list.push_back({7, "pairing skew-symmetry, isotropy, positivity, cross-validation", 600.0, [](auto& notes) {
                    const auto g04 = fixture("gamma0_4");
                    const auto torus = fixture("once_punctured_torus");
                    const checks::PairingOptions po;
                    bool ok = expect_pass(checks::pairing_gram(g04, sym(2), po), "gamma0_4 V4 gram", notes);
                    ok &= expect_pass(checks::pairing_gram(torus, adjoint(2), po), "torus sl2 gram", notes);
                    ok &= expect_pass(checks::pairing_gram(torus, adjoint(3), po), "torus sl3 gram", notes);
                    const es::ESConfig cfg;
                    const fuchsian::QuadratureOptions q;
                    ok &= expect_pass(checks::pairing_positivity(g04, 2, cfg, q), "positivity", notes);
                    ok &= expect_pass(checks::cross_validate(g04, 2, cfg, q, 1e-3), "cross-validation", notes);
                    return ok;
                  }});

  list.push_back({8, "transversality on the torus for N = 2, 3 with gap > 1e2; synthetic case fails", 120.0,
                  [](auto& notes) {
                    const auto torus = fixture("once_punctured_torus");
                    const es::ESConfig cfg;
                    const checks::RankOptions ro{1e-8, 1e2};
                    bool ok = true;
                    for (int n : {2, 3})
                      ok &= expect_pass(checks::transversality(torus, n, cfg, ro, false), "N=" + std::to_string(n),
                                        notes);
                    const auto s = checks::transversality(torus, 2, cfg, ro, true);
                    if (s.verdict() != Verdict::fail) {
                      notes.push_back(std::string("synthetic case returned ") + pairing::verdict_name(s.verdict()));
                      ok = false;
                    }
                    return ok;
                  }});

  list.push_back({9, "Hodge polarization axioms on gamma0_4, j = 2", 60.0, [](auto& notes) {
                    return expect_pass(checks::hodge(fixture("gamma0_4"), 2, {}, 1e-8), "hodge", notes);
                  }});

  return list;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::err);
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failed = 0;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    std::vector<std::string> notes;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(notes);
    } catch (const std::exception& e) {
      notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_seconds) {
      notes.push_back("runtime " + std::to_string(secs) + " s exceeds " + std::to_string(c.budget_seconds) + " s");
      ok = false;
    }
    failed += !ok;
    std::printf("%s  criterion %d: %s (%.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                c.budget_seconds);
    for (const auto& n : notes) std::printf("      %s\n", n.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
