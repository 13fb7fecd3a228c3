#include "operlab/formal_gauge.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

namespace operlab::gauge {

CVec eigenvalues(const CMat& c) {
  Eigen::ComplexEigenSolver<CMat> es(c, false);
  return es.eigenvalues();
}

std::optional<std::pair<cplx, cplx>> integer_resonance(const CVec& ev, double tol) {
  for (Eigen::Index a = 0; a < ev.size(); ++a)
    for (Eigen::Index b = 0; b < ev.size(); ++b) {
      const cplx d = ev(a) - ev(b);
      if (std::abs(d) <= tol) continue;
      const double k = std::round(d.real());
      if (k != 0.0 && std::abs(d - cplx(k, 0.0)) <= tol) return std::make_pair(ev(a), ev(b));
    }
  return std::nullopt;
}

CMat local_monodromy(const CMat& c) {
  const CMat arg = c * cplx(0.0, -2.0 * std::numbers::pi);
  return arg.exp();
}

}  // namespace operlab::gauge
