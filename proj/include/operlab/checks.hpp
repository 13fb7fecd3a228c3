#pragma once

// Verdict-producing check suites shared by the command line front end and the
// acceptance runner. Each suite returns named checks plus structured data.

#include "operlab/eichler_shimura.hpp"
#include "operlab/io.hpp"
#include "operlab/ode_monodromy.hpp"
#include "operlab/pairing.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace operlab::checks {

using json = io::json;
using pairing::Verdict;

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct Check {
  std::string name;
  json value;
  double tolerance = 0.0;
  Verdict verdict = Verdict::pass;
  std::optional<double> residual;
  std::optional<double> gap;

  json to_json() const;
};

/// PASS iff residual <= tol.
Check bound(std::string name, double residual, double tol);
/// PASS iff value > floor.
Check exceeds(std::string name, double value, double floor);
/// Integer equality backed by a rank decision: a mismatch is FAIL, a match
/// whose spectral gap is below min_gap is INCONCLUSIVE.
Check dimension(std::string name, long measured, long expected, double gap, double min_gap);

struct Outcome {
  std::vector<Check> checks;
  json data = json::object();
  std::string csv;  ///< tabular artifact, when the suite has one

  Verdict verdict() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const Outcome& o, const std::string& prefix);
};

enum class Mode { exact, floating };
Mode parse_mode(const std::string& s);
const char* mode_name(Mode m);

struct ModuleSpec {
  enum class Kind { adjoint, sym };
  Kind kind = Kind::adjoint;
  int n = 2;  ///< adjoint sl_N
  int j = 1;  ///< V_{2j}
  std::string label() const;
};

/// dim H^1_P = sum over exponents j of 2 max(0, (2j+1)(g-1) + j r).
int expected_h1p_dim(int g, int r, const ModuleSpec& m);

// ------------------------------------------------------------------- lie

Outcome lie_triple(int n, Mode mode, double tol);
/// Killing identity for ad(q_-) powers over all (j, l, j', l'), with seeded
/// random rescalings of the invariant generators.
Outcome lie_identity(int n, Mode mode, double tol, std::uint64_t seed);

// ----------------------------------------------------------------- gauge

struct GaugeOptions {
  int n = 2;
  int order = 12;
  int samples = 50;
  Mode mode = Mode::exact;
  double tol = 1e-10;
  std::uint64_t seed = kDefaultSeed;
};

/// Normalizes seeded random weakly prepared connections.
Outcome gauge_random(const GaugeOptions& opt);
/// Normalizes one connection read from JSON, truncated to opt.order.
Outcome gauge_file(const json& connection, const GaugeOptions& opt);

// ------------------------------------------------------------- monodromy

struct LoopSpec {
  cplx center;
  double radius = 1.0;
  int turns = 1;
};
LoopSpec loop_from_json(const json& j);

struct MonodromyOptions {
  int samples = 20;
  double tol = 1e-6;            ///< relative eigenvalue mismatch
  double unipotent_tol = 1e-5;  ///< |(M - I)^N|
  double ode_tol = 1e-10;
  std::uint64_t seed = kDefaultSeed;
};

/// Loop monodromy of a declared system; without a loop, local checks at every pole.
Outcome monodromy_system(const ode::MeromorphicSystem& sys, const std::optional<LoopSpec>& loop,
                         const MonodromyOptions& opt);
/// Seeded random systems in sl_2 and sl_3 with semisimple and nilpotent residues.
Outcome monodromy_random(const MonodromyOptions& opt);

// ------------------------------------------------------------ cohomology

struct RankOptions {
  double rank_tol = 1e-8;
  double min_gap = 1e3;
};

Outcome cohomology(const surface::GroupRepresentation& rep, const ModuleSpec& m, const RankOptions& opt,
                   bool with_basis);

// ---------------------------------------------------------------- domain

Outcome domain_area(const fuchsian::Fixture& fx, const fuchsian::QuadratureOptions& opt, double tol);

// -------------------------------------------------------- eichler-shimura

struct ESCheckOptions {
  es::ESConfig cfg;
  double residual_tol = 1e-8;
  double basepoint_tol = 1e-7;
  cplx alt_base_point{0.3, 1.7};
};

Outcome es_cocycle(const fuchsian::Fixture& fx, const fuchsian::ModularForm& f, int j, const ESCheckOptions& opt);
Outcome decomposition(const fuchsian::Fixture& fx, int j, const es::ESConfig& cfg, double rank_tol);

// --------------------------------------------------------------- pairing

struct PairingOptions {
  double skew_tol = 1e-10;
  double coboundary_tol = 1e-9;
  double isotropy_tol = 1e-10;
  double nondegeneracy_ratio = 1e-6;
  int samples = 100;
  std::uint64_t seed = kDefaultSeed;
};

/// Cup-product Gram matrix on a real H^1_P basis, with skew-symmetry,
/// coboundary annihilation, isotropy and nondegeneracy checks. Fills csv.
Outcome pairing_gram(const fuchsian::Fixture& fx, const ModuleSpec& m, const PairingOptions& opt);
/// Positivity of the hermitian pairing on period classes and of the Petersson norms.
Outcome pairing_positivity(const fuchsian::Fixture& fx, int j, const es::ESConfig& cfg,
                           const fuchsian::QuadratureOptions& qopt);
Outcome cross_validate(const fuchsian::Fixture& fx, int j, const es::ESConfig& cfg,
                       const fuchsian::QuadratureOptions& qopt, double threshold);
/// synthetic: replace the holomorphic classes by real ones, which must FAIL.
Outcome transversality(const fuchsian::Fixture& fx, int n, const es::ESConfig& cfg, const RankOptions& opt,
                       bool synthetic);
Outcome hodge(const fuchsian::Fixture& fx, int j, const es::ESConfig& cfg, double tol);

std::string gram_csv(const std::vector<std::string>& labels, const RMat& gram);

}  // namespace operlab::checks
