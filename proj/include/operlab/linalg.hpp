#pragma once

#include "operlab/scalar.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

namespace operlab::linalg {

/// Reduced row echelon form. In exact mode a pivot is any nonzero entry; in
/// float mode the largest remaining entry is used and entries below `tol`
/// count as zero.
template <class S>
struct Rref {
  Matrix<S> reduced;
  std::vector<int> pivot_cols;
};

template <class S>
Rref<S> rref(Matrix<S> a, double tol = 0.0) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int best = -1;
    double best_mag = 0.0;
    for (int r = row; r < rows; ++r) {
      if (ScalarOps<S>::is_zero(a(r, col), tol)) continue;
      const double mag = ScalarOps<S>::magnitude(a(r, col));
      if constexpr (is_exact_v<S>) {
        best = r;
        break;
      } else if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best < 0) continue;
    a.row(best).swap(a.row(row));
    const S inv = ScalarOps<S>::from_int(1) / a(row, col);
    for (int c = col; c < cols; ++c) a(row, c) *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || ScalarOps<S>::is_zero(a(r, col), 0.0)) continue;
      const S f = a(r, col);
      for (int c = col; c < cols; ++c) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

/// Kernel basis, one column per free variable.
template <class S>
Matrix<S> nullspace_rref(const Matrix<S>& a, double tol = 0.0) {
  const auto [red, pivots] = rref<S>(a, tol);
  const int cols = static_cast<int>(a.cols());
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<S> basis = zeros<S>(cols, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    basis(fc, static_cast<Eigen::Index>(k)) = ScalarOps<S>::from_int(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], static_cast<Eigen::Index>(k)) = -red(static_cast<Eigen::Index>(r), fc);
  }
  return basis;
}

/// Unique solution of a square system, or nullopt when singular.
template <class S>
std::optional<Vector<S>> solve_square(const Matrix<S>& a, const Vector<S>& b, double tol = 0.0) {
  const Eigen::Index n = a.rows();
  Matrix<S> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  const auto [red, pivots] = rref<S>(aug, tol);
  if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
  return Vector<S>(red.col(n));
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& a, double tol = 0.0) {
  const Eigen::Index n = a.rows();
  Matrix<S> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = identity<S>(static_cast<int>(n));
  const auto [red, pivots] = rref<S>(aug, tol);
  if (static_cast<Eigen::Index>(pivots.size()) < n || pivots[n - 1] != n - 1) return std::nullopt;
  return Matrix<S>(red.rightCols(n));
}

/// Numerical rank decision by singular-value thresholding.
struct RankInfo {
  int rank = 0;
  double sigma_max = 0.0;
  double threshold = 0.0;
  /// sigma_rank / sigma_{rank+1}; when one side is missing the missing value
  /// is replaced by sigma_max * 1e-16 (or sigma_max for rank 0).
  double gap = 0.0;
  std::vector<double> singular_values;
};

/// The threshold is rel_tol * max(sigma_max, reference); pass reference = 1
/// when the columns are known to have unit scale (e.g. projected orthonormal
/// bases), so an all-noise matrix has rank 0.
template <class Mat>
RankInfo rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol, double reference = 0.0) {
  RankInfo info;
  info.singular_values.assign(sv.data(), sv.data() + sv.size());
  info.sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  info.threshold = rel_tol * std::max(info.sigma_max, reference);
  int r = 0;
  while (r < sv.size() && sv(r) > info.threshold && sv(r) > 0.0) ++r;
  info.rank = r;
  const double floor = std::max(info.sigma_max * 1e-16, std::numeric_limits<double>::min());
  const double above = r > 0 ? sv(r - 1) : std::max(info.sigma_max, 1.0);
  const double below = r < sv.size() ? std::max(sv(r), floor) : floor;
  info.gap = above / below;
  return info;
}

template <class Mat>
RankInfo rank_info(const Mat& a, double rel_tol = 1e-8) {
  if (a.size() == 0) {
    RankInfo info;
    info.gap = std::numeric_limits<double>::infinity();
    return info;
  }
  Eigen::JacobiSVD<Mat> svd(a);
  return rank_from_singular_values<Mat>(svd.singularValues(), rel_tol);
}

/// Orthonormal kernel basis (columns) together with the rank decision used.
template <class Mat>
std::pair<Mat, RankInfo> nullspace_svd(const Mat& a, double rel_tol = 1e-8) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) {
    RankInfo info;
    info.gap = std::numeric_limits<double>::infinity();
    return {Mat::Identity(cols, cols), info};
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  RankInfo info = rank_from_singular_values<Mat>(svd.singularValues(), rel_tol);
  Mat basis = svd.matrixV().rightCols(cols - info.rank);
  return {basis, info};
}

/// Orthonormal basis of the column space.
template <class Mat>
std::pair<Mat, RankInfo> column_space(const Mat& a, double rel_tol = 1e-8, double reference = 0.0) {
  if (a.cols() == 0 || a.rows() == 0) {
    RankInfo info;
    info.gap = std::numeric_limits<double>::infinity();
    return {Mat(a.rows(), 0), info};
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  RankInfo info = rank_from_singular_values<Mat>(svd.singularValues(), rel_tol, reference);
  return {Mat(svd.matrixU().leftCols(info.rank)), info};
}

}  // namespace operlab::linalg
