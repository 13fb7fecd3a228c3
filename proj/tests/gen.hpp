#pragma once

// Hand-rolled generators for property tests.

#include "operlab/scalar.hpp"

#include <random>

namespace operlab::testgen {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline int small_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline cplx random_cplx() { return {uniform(-1, 1), uniform(-1, 1)}; }

/// Random traceless matrix with small Gaussian-integer entries.
template <class S>
Matrix<S> random_traceless(int n) {
  Matrix<S> m = zeros<S>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if constexpr (is_exact_v<S>)
        m(i, j) = QComplex(mpq_class(small_int(-3, 3)), mpq_class(small_int(-3, 3)));
      else
        m(i, j) = random_cplx();
    }
  const S tr = trace<S>(m);
  m(n - 1, n - 1) -= tr;
  return m;
}

/// Random element of SL2(Z) as a product of elementary matrices.
template <class S>
Matrix<S> random_sl2z(int factors = 3) {
  Matrix<S> m = identity<S>(2);
  for (int f = 0; f < factors; ++f) {
    Matrix<S> e = identity<S>(2);
    const int k = small_int(-2, 2);
    if (f % 2 == 0)
      e(0, 1) = ScalarOps<S>::from_int(k);
    else
      e(1, 0) = ScalarOps<S>::from_int(k);
    m = m * e;
  }
  return m;
}

/// Random complex matrix in SL2(C).
inline CMat random_sl2c() {
  CMat m(2, 2);
  m << random_cplx() + 1.0, random_cplx(), random_cplx(), random_cplx() + 1.0;
  const cplx det = m.determinant();
  return m / std::sqrt(det);
}

}  // namespace operlab::testgen
