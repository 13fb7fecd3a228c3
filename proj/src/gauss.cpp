#include "operlab/gauss.hpp"

#include <Eigen/Dense>

#include <map>
#include <mutex>
#include <stdexcept>

namespace operlab::quad {

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("Gauss rule needs at least one node");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i, i - 1) = b;
    jac(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  GaussRule r;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(0.5 * (es.eigenvalues()(i) + 1.0));
    const double v = es.eigenvectors()(0, i);
    r.weights.push_back(v * v);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

}  // namespace operlab::quad
