#pragma once

#include <vector>

namespace operlab::quad {

struct GaussRule {
  std::vector<double> nodes;    ///< on [0, 1]
  std::vector<double> weights;  ///< sum to 1
};

/// n-point Gauss-Legendre rule on [0, 1] (Golub-Welsch), cached per n.
const GaussRule& gauss_legendre(int n);

/// Pairwise (tree) summation in index order; deterministic for a fixed input.
template <class T>
T pairwise_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return T{};
  if (hi - lo <= 8) {
    T s{};
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v, 0, v.size());
}

}  // namespace operlab::quad
