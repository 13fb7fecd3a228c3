#pragma once

#include "operlab/fuchsian.hpp"
#include "operlab/surface_group.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace operlab::es {

class ESConsistencyFailure : public std::runtime_error {
 public:
  ESConsistencyFailure(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"), residual(residual) {}
  double residual;
};

class DecompositionFailure : public std::runtime_error {
 public:
  DecompositionFailure(const std::string& what, int rank, int expected)
      : std::runtime_error(what), rank(rank), expected(expected) {}
  int rank, expected;
};

struct ESConfig {
  cplx base_point{0.0, 1.0};
  double tol = 1e-11;        ///< relative tolerance of each period integral
  double check_tol = 1e-8;   ///< allowed relator and parabolicity residuals
  int order = 12;
  int max_depth = 40;
  bool parallel = true;
};

/// Period vector of f (zx + y)^{2j} dz between two points, along the straight segment.
/// Component s is the coefficient of x^{2j-s} y^s.
CVec segment_integral(const fuchsian::ModularForm& f, int j, cplx a, cplx b, const ESConfig& cfg);
/// Same integral along a polyline through the given points.
CVec path_integral(const fuchsian::ModularForm& f, int j, const std::vector<cplx>& points, const ESConfig& cfg);
/// Integral from the base point to gamma(base point).
CVec eichler_integral(const fuchsian::ModularForm& f, int j, const RMat& gamma, const ESConfig& cfg);

struct ESCocycle {
  int j = 0;
  std::string form_tag;
  bool holomorphic = true;
  CVec values;  ///< stacked generator values, as surface::cocycle_value expects
  double relator_residual = 0.0;
  double parabolicity_residual = 0.0;
  CVec value(int gen) const { return values.segment(static_cast<Eigen::Index>(gen) * (2 * j + 1), 2 * j + 1); }
};

/// Relative residual of the cocycle identity on the relator.
double relator_residual(const surface::ModuleAction<cplx>& act, const CVec& z);
/// Largest relative distance of z(T_i) from the image of T_i - 1.
double parabolicity_residual(const surface::ModuleAction<cplx>& act, const CVec& z);

ESCocycle es_cocycle(const fuchsian::ModularForm& f, const fuchsian::Fixture& fx, int j, const ESConfig& cfg = {});
ESCocycle es_cocycle_serial(const fuchsian::ModularForm& f, const fuchsian::Fixture& fx, int j, const ESConfig& cfg = {});
ESCocycle es_conjugate_cocycle(const fuchsian::ModularForm& f, const fuchsian::Fixture& fx, int j,
                               const ESConfig& cfg = {});
ESCocycle conjugate(const ESCocycle& c);

struct DecompositionReport {
  int j = 0;
  int forms = 0;
  int h1p_dim = 0;
  int rank = 0;
  Eigen::VectorXd singular_values;
  double min_ratio = 0.0;  ///< smallest / largest singular value
  CMat coords;             ///< columns: classes of eps(f_k), then of their conjugates
  bool pass = false;
};

/// Rank of the holomorphic and antiholomorphic classes inside H^1_P(V_{2j}).
DecompositionReport decomposition_check(const std::vector<fuchsian::ModularForm>& forms, const fuchsian::Fixture& fx,
                                        int j, const ESConfig& cfg = {}, double rank_tol = 1e-8);

}  // namespace operlab::es
