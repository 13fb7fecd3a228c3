#pragma once

// Analytic continuation of fundamental solutions of y' = A(t) y along paths
// in the plane, and the monodromy of loops.
//
// Convention: continuing Y' = A Y along a loop from Y = I yields Phi; the
// monodromy of the loop is Phi^{-1}. Around a simple pole with residue C,
// traversed counterclockwise, this gives exp(-2 pi i C) up to conjugacy, and
// Mon(gamma_1 gamma_2) = Mon(gamma_1) Mon(gamma_2) for gamma_1 traversed first.

#include "operlab/scalar.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace operlab::ode {

class ContinuationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTol = 1e-10;

/// A(t) = sum_i R_i / (t - p_i) + sum_k t^k P_k.
struct MeromorphicSystem {
  std::vector<cplx> poles;
  std::vector<CMat> residues;
  std::vector<CMat> poly;

  int n() const;
  void validate() const;
  CMat evaluate(cplx t) const;
  /// Constant gauge: A -> g A g^{-1}.
  MeromorphicSystem conjugated(const CMat& g) const;
};

struct LineSegment {
  cplx from;
  cplx to;
};

struct ArcSegment {
  cplx center;
  double radius = 1.0;
  double start_angle = 0.0;
  double sweep = 0.0;  ///< radians, positive = counterclockwise
};

using Segment = std::variant<LineSegment, ArcSegment>;

struct PathSpec {
  std::vector<Segment> segments;
  double clearance = 0.0;  ///< minimum distance to every pole; 0 disables the check beyond nonzero distance

  cplx start() const;
  cplx end() const;
  bool is_closed(double tol = 1e-12) const;
  /// Reverse traversal.
  PathSpec reversed() const;
  /// This path followed by `next`.
  PathSpec then(const PathSpec& next) const;
  /// Smallest distance from the path to any of the points.
  double distance_to(const std::vector<cplx>& points) const;

  /// Full circle starting at center + radius * exp(i angle).
  static PathSpec circle(cplx center, double radius, int turns = 1, bool counterclockwise = true,
                         double start_angle = 0.0);
  static PathSpec polyline(const std::vector<cplx>& vertices);
  /// Loop based at `base`: straight to the circle of `radius` about `point`,
  /// once around counterclockwise, and straight back.
  static PathSpec lasso(cplx base, cplx point, double radius);
};

struct IntegratorStats {
  long accepted = 0;
  long rejected = 0;
};

/// Transport y0 along the path with an adaptive Dormand-Prince 5(4) scheme.
CMat continue_along(const MeromorphicSystem& sys, const PathSpec& path, const CMat& y0, double tol = kDefaultTol,
                    IntegratorStats* stats = nullptr);

/// Monodromy (Phi^{-1}) of a closed path.
CMat loop_monodromy(const MeromorphicSystem& sys, const PathSpec& loop, double tol = kDefaultTol);

/// Monodromy of the positive circle of the given radius about a declared pole.
CMat local_monodromy_numeric(const MeromorphicSystem& sys, cplx puncture, double radius, double tol = kDefaultTol);

/// One matrix per loop, loops integrated in parallel.
std::vector<CMat> monodromy_representation(const MeromorphicSystem& sys, const std::vector<PathSpec>& loops,
                                           double tol = kDefaultTol);
/// Serial reference for monodromy_representation.
std::vector<CMat> monodromy_representation_serial(const MeromorphicSystem& sys, const std::vector<PathSpec>& loops,
                                                  double tol = kDefaultTol);

}  // namespace operlab::ode
