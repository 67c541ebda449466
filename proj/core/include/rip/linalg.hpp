#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rip {

class Polynomial;

/// Default relative threshold used to decide which singular values count
/// towards the numerical rank.
inline constexpr double kDefaultRankTol = 1e-10;

/// A finite, non-empty real matrix. Columns are the candidate vectors a_i.
class DenseMatrix {
 public:
  /// Throws std::invalid_argument on an empty matrix or non-finite entries.
  explicit DenseMatrix(Eigen::MatrixXd values);

  static DenseMatrix identity(Eigen::Index n);
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }
  const Eigen::MatrixXd& values() const { return values_; }
  auto column(Eigen::Index j) const { return values_.col(j); }

  double frobenius_norm_sq() const { return values_.squaredNorm(); }

 private:
  Eigen::MatrixXd values_;
};

/// Diagonal of W: one nonzero weight per column of A.
class WeightVector {
 public:
  /// Throws std::invalid_argument if any weight is zero or non-finite.
  explicit WeightVector(std::vector<double> weights);

  static WeightVector ones(std::size_t m);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> values() const { return weights_; }

  /// ||W^{-1}||_F^2 = sum_i w_i^{-2}.
  double inverse_frobenius_sq() const;

  /// Selection probability of column i, proportional to w_i^{-2}.
  double probability(std::size_t i) const;

  WeightVector scaled(double c) const;

 private:
  std::vector<double> weights_;
};

/// Throws std::invalid_argument unless W has one weight per column of A.
void require_compatible(const DenseMatrix& a, const WeightVector& w);

/// All min(n, m) singular values, nonincreasing.
std::vector<double> singular_values(const DenseMatrix& a);

/// Number of singular values strictly above rel_tol * sigma_1.
std::size_t numerical_rank(const DenseMatrix& a, double rel_tol = kDefaultRankTol);

/// The n x |S| matrix whose j-th column is w_{s_j} a_{s_j}. Indices are 0-based.
Eigen::MatrixXd weighted_columns(const DenseMatrix& a, const WeightVector& w,
                                 std::span<const std::size_t> subset);

/// sum_{s in S} w_s^2 a_s a_s^T (repeats allowed, each occurrence counted).
Eigen::MatrixXd weighted_gram(const DenseMatrix& a, const WeightVector& w,
                              std::span<const std::size_t> assignment);

/// sigma_min(A_S W_S). S must be non-empty with distinct, in-range indices.
double sigma_min_subset(const DenseMatrix& a, const WeightVector& w,
                        std::span<const std::size_t> subset);

/// Eigenvalues of a symmetric matrix, nonincreasing.
std::vector<double> symmetric_eigenvalues_desc(const Eigen::MatrixXd& m);

/// det[xI - M] for symmetric M, assembled from its eigenvalues.
Polynomial char_poly(const Eigen::MatrixXd& m);

}  // namespace rip
