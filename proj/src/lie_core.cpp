#include "operlab/lie_core.hpp"

#include <sstream>

namespace operlab {

std::string QComplex::str() const {
  std::ostringstream os;
  if (sgn(im) == 0) {
    os << re;
  } else if (sgn(re) == 0) {
    os << im << "i";
  } else {
    os << re << (sgn(im) > 0 ? "+" : "-") << abs(im) << "i";
  }
  return os.str();
}

}  // namespace operlab

namespace operlab::lie {

Matrix<cplx> sym_invariant_form(int j) {
  const auto triple = principal_triple<cplx>(j + 1);
  const auto u = *invariants_basis(triple, j);
  Matrix<cplx> out(2 * j + 1, 2 * j + 1);
  std::vector<LieElement<cplx>> images;
  for (int s = 0; s <= 2 * j; ++s) {
    Vector<cplx> e = Vector<cplx>::Zero(2 * j + 1);
    e(s) = 1.0;
    images.push_back(varsigma(triple, j, e, u));
  }
  for (int s = 0; s <= 2 * j; ++s)
    for (int t = 0; t <= 2 * j; ++t) out(s, t) = killing_form(images[s], images[t]);
  return out;
}

double invariant_norm(int j) {
  const auto triple = principal_triple<cplx>(j + 1);
  const auto u = *invariants_basis(triple, j);
  return graded_hermitian(triple, j, u, u).real();
}

}  // namespace operlab::lie
