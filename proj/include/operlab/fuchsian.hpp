#pragma once

// Hyperbolic-plane geometry for the fixture groups: Mobius maps, fundamental
// domains, quadrature over domains, and cusp forms given by q-expansions.

#include "operlab/scalar.hpp"
#include "operlab/surface_group.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace operlab::fuchsian {

class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, double estimate) : std::runtime_error(what), estimate_(estimate) {}
  double achieved_error() const { return estimate_; }

 private:
  double estimate_;
};

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (az + b) / (cz + d); throws when cz + d = 0.
cplx mobius_apply(const RMat& m, cplx z);
cplx mobius_apply(const CMat& m, cplx z);
/// Derivative of z -> m z for det m = 1: (cz + d)^{-2}.
cplx mobius_derivative(const RMat& m, cplx z);

/// Ideal vertex: a real number or the cusp at infinity.
struct IdealPoint {
  bool infinite = false;
  double x = 0.0;
};

struct FundamentalDomain {
  enum class Kind { ideal_polygon, compact_polygon };
  Kind kind = Kind::ideal_polygon;
  std::vector<IdealPoint> ideal_vertices;  ///< ideal polygons, counterclockwise
  std::vector<cplx> vertices;              ///< compact polygons in the upper half plane
  double expected_area = 0.0;
  double truncation_height = 3.0;  ///< Y in the normalized cusp coordinate of each triangle
};

struct Fixture {
  std::string name;
  surface::GroupRepresentation rep;
  FundamentalDomain domain;
  std::vector<RMat> normalizer;                         ///< extra elements normalizing the group
  std::map<int, std::vector<std::string>> form_files;  ///< weight -> q-expansion files
  std::string directory;                               ///< where the fixture file lives
};

Fixture load_fixture_file(const std::string& path);
/// One of once_punctured_torus, gamma0_4, genus2_closed from the data directory.
Fixture fixture_group(const std::string& name, const std::string& data_dir = OPERLAB_DATA_DIR);
std::vector<std::string> fixture_names();

// ---------------------------------------------------------------- quadrature

using Integrand = std::function<cplx(cplx)>;

struct QuadratureOptions {
  double tol = 1e-9;
  int order = 12;      ///< Gauss-Legendre points per panel edge
  int max_level = 7;   ///< panels per direction double up to 2^max_level
  int min_level = 1;
  bool parallel = true;
};

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;
  /// Integral of |integrand| over the cusp tails (above the truncation height).
  double tail_bound = 0.0;
  cplx tail_value;
  int levels = 0;
  long evaluations = 0;
};

/// Integral of h(z) dx dy over the domain.
QuadratureResult integrate_domain(const Integrand& h, const FundamentalDomain& domain, const QuadratureOptions& opt = {});

/// Hyperbolic area via the integrand y^{-2}.
QuadratureResult domain_area(const FundamentalDomain& domain, const QuadratureOptions& opt = {});

/// Element of SL2(R) taking (-1, 1, infinity) to the ideal triangle (a, b, c),
/// possibly after swapping a and b to fix the orientation.
RMat ideal_triangle_map(const IdealPoint& a, const IdealPoint& b, const IdealPoint& c);

// ---------------------------------------------------------------- cusp forms

struct CuspForm {
  int weight = 0;
  double width = 1.0;
  int level = 0;
  std::string tag;
  std::vector<cplx> coeffs;  ///< coeffs[m-1] = a_m, m = 1..M

  int truncation() const { return static_cast<int>(coeffs.size()); }
};

/// Parses `weight k width h level tag` followed by `m re im` lines. Rejects
/// a_0 != 0 and odd weights; warns when fewer than 10 coefficients are given.
CuspForm load_cusp_form(const std::string& path);
CuspForm parse_cusp_form(const std::string& text, const std::string& origin = "<memory>");

struct FormValue {
  cplx value;
  double tail_bound = 0.0;  ///< bound on the neglected q-series terms
};

/// Coefficient growth constants: |a_m| <= A m^{k/2}, fitted on the upper half
/// of the known coefficients (tail) and on all of them (body).
struct SeriesGrowth {
  double tail = 0.0;
  double body = 0.0;
};
SeriesGrowth series_growth(const CuspForm& f);
/// Truncated q-series with the given growth constants.
FormValue eval_series(const CuspForm& f, cplx z, const SeriesGrowth& g);

/// Raw truncated q-series; warns when the tail bound exceeds warn_tol.
FormValue eval_cusp_form(const CuspForm& f, cplx z, double warn_tol = 1e-10);

/// A cusp form bound to a fixture: the transformation factors under the
/// normalizer are measured once, then points are moved up the half plane
/// before summing the q-series.
class ModularForm {
 public:
  ModularForm(CuspForm form, const Fixture& fixture, double tol = 1e-8);

  const CuspForm& form() const { return form_; }
  int weight() const { return form_.weight; }
  /// f(z) using modular reduction; the accumulated tail bound is returned too.
  FormValue evaluate(cplx z) const;
  cplx operator()(cplx z) const { return evaluate(z).value; }
  /// f(g z) = eps(g) (cz + d)^k f(z) for the stored elements.
  const std::vector<cplx>& multipliers() const { return eps_; }
  const std::vector<RMat>& elements() const { return elems_; }
  /// Largest relative violation of f(gz)(cz+d)^{-k} = f(z) seen during the load-time check.
  double invariance_residual() const { return invariance_residual_; }
  /// Same check at caller-chosen points, for every group generator.
  double invariance_residual(const std::vector<cplx>& points) const;

 private:
  struct Move {
    RMat m;
    cplx eps;
  };

  void measure(const Fixture& fixture, double tol);

  CuspForm form_;
  SeriesGrowth growth_;
  surface::GroupRepresentation rep_;
  std::vector<RMat> elems_;  ///< normalizer elements with measured multipliers
  std::vector<cplx> eps_;
  std::optional<Move> translation_;  ///< shortest translation z -> z + tau
  double tau_ = 0.0;
  std::vector<Move> moves_;  ///< non-translation candidates used for reduction
  double invariance_residual_ = 0.0;
};

/// Loads every form shipped with the fixture for weight k.
std::vector<ModularForm> fixture_forms(const Fixture& fixture, int weight);

}  // namespace operlab::fuchsian
