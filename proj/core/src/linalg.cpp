#include "rip/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rip/polynomial.hpp"

namespace rip {

DenseMatrix::DenseMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw std::invalid_argument("matrix must have at least one row and one column");
  }
  if (!values_.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
}

DenseMatrix DenseMatrix::identity(Eigen::Index n) {
  return DenseMatrix(Eigen::MatrixXd::Identity(n, n));
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("matrix must have at least one row and one column");
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd values(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != m) {
      throw std::invalid_argument("row " + std::to_string(i + 1) + " has " +
                                  std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(m));
    }
    for (Eigen::Index j = 0; j < m; ++j) values(i, j) = row[static_cast<std::size_t>(j)];
  }
  return DenseMatrix(std::move(values));
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("weight vector is empty");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i])) {
      throw std::invalid_argument("weight " + std::to_string(i + 1) + " is not finite");
    }
    if (weights_[i] == 0.0) {
      throw std::invalid_argument("weight " + std::to_string(i + 1) + " is zero");
    }
  }
}

WeightVector WeightVector::ones(std::size_t m) { return WeightVector(std::vector<double>(m, 1.0)); }

double WeightVector::inverse_frobenius_sq() const {
  double total = 0.0;
  for (double w : weights_) total += 1.0 / (w * w);
  return total;
}

double WeightVector::probability(std::size_t i) const {
  return 1.0 / (weights_.at(i) * weights_.at(i)) / inverse_frobenius_sq();
}

WeightVector WeightVector::scaled(double c) const {
  std::vector<double> out(weights_);
  for (double& w : out) w *= c;
  return WeightVector(std::move(out));
}

void require_compatible(const DenseMatrix& a, const WeightVector& w) {
  if (static_cast<Eigen::Index>(w.size()) != a.cols()) {
    throw std::invalid_argument("matrix has " + std::to_string(a.cols()) + " columns but " +
                                std::to_string(w.size()) + " weights were given");
  }
}

std::vector<double> singular_values(const DenseMatrix& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.values());
  const Eigen::VectorXd& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

std::size_t numerical_rank(const DenseMatrix& a, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw std::invalid_argument("rank tolerance must lie in (0, 1)");
  }
  const auto s = singular_values(a);
  if (s.empty() || s.front() == 0.0) return 0;
  const double cutoff = rel_tol * s.front();
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [cutoff](double v) { return v > cutoff; }));
}

Eigen::MatrixXd weighted_columns(const DenseMatrix& a, const WeightVector& w,
                                 std::span<const std::size_t> subset) {
  require_compatible(a, w);
  Eigen::MatrixXd out(a.rows(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t j = 0; j < subset.size(); ++j) {
    const std::size_t s = subset[j];
    if (s >= w.size()) {
      throw std::out_of_range("column index " + std::to_string(s + 1) + " outside 1.." +
                              std::to_string(w.size()));
    }
    out.col(static_cast<Eigen::Index>(j)) = w[s] * a.column(static_cast<Eigen::Index>(s));
  }
  return out;
}

Eigen::MatrixXd weighted_gram(const DenseMatrix& a, const WeightVector& w,
                              std::span<const std::size_t> assignment) {
  const Eigen::MatrixXd cols = weighted_columns(a, w, assignment);
  return cols * cols.transpose();
}

double sigma_min_subset(const DenseMatrix& a, const WeightVector& w,
                        std::span<const std::size_t> subset) {
  if (subset.empty()) throw std::invalid_argument("subset is empty");
  std::vector<std::size_t> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("subset contains a repeated index");
  }
  const Eigen::MatrixXd cols = weighted_columns(a, w, subset);
  // An n x k matrix with k > n has only n singular values; its sigma_min as a
  // map on R^k is zero.
  if (cols.cols() > cols.rows()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

std::vector<double> symmetric_eigenvalues_desc(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigenvalue iteration did not converge");
  }
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

Polynomial char_poly(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("char_poly needs a square matrix");
  if (m.size() > 0) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw std::invalid_argument("char_poly needs a symmetric matrix");
    }
  }
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  const auto ev = symmetric_eigenvalues_desc(sym);
  return Polynomial::from_roots(ev);
}

}  // namespace rip
