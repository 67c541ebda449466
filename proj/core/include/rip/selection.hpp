#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "rip/linalg.hpp"
#include "rip/polynomial.hpp"

namespace rip {

/// Bounds that the selected subset is certified against. All bounds are on
/// sigma_min(A_S W_S)^2.
struct BoundReport {
  double rank_bound = 0.0;
  double stable_bound = 0.0;
  double srank2 = 0.0;
  double srank4 = 0.0;
  std::size_t r_used = 0;
  std::optional<double> epsilon_used;
};

struct SelectionResult {
  /// Chosen columns in selection order, 0-based.
  std::vector<std::size_t> subset;
  /// lambda_k of f_{s_1..s_j} for j = 0..k; entry 0 is lambda_k(f_emptyset).
  std::vector<double> lambda_trace;
  double sigma_min_sq = 0.0;
  BoundReport bounds;
  /// Largest imaginary part discarded while extracting roots.
  double max_residual_imag = 0.0;
};

struct SelectOptions {
  double rank_tol = kDefaultRankTol;
  double imag_tol = kDefaultImagTol;
  /// Threshold rank for the rank bound; defaults to numerical_rank(A).
  std::optional<std::size_t> r;
  /// When set, stable_bound is (epsilon ||A||_F / ||W^{-1}||_F)^2.
  std::optional<double> epsilon;
};

/// (sum sigma_i^2)^2 / sum sigma_i^4. Throws std::invalid_argument for A = 0.
double srank4(const DenseMatrix& a);

/// ||A||_F^2 / ||A||_2^2. Throws std::invalid_argument for A = 0.
double srank2(const DenseMatrix& a);

/// (sqrt(r) - sqrt(k-1))^2 / ||W^{-1}||_F^2 * r / sum_{i<=r} sigma_i^{-2}.
/// Requires 1 <= k <= r <= numerical_rank(A).
double bound_rank(const DenseMatrix& a, const WeightVector& w, std::size_t k, std::size_t r,
                  double rank_tol = kDefaultRankTol);

struct StableBound {
  std::size_t k = 0;
  /// Lower bound on sigma_min (not squared).
  double sigma_bound = 0.0;
};

/// k = floor((1-eps)^2 srank4(A)) + 1 and sigma_bound = eps ||A||_F / ||W^{-1}||_F.
StableBound bound_stable(const DenseMatrix& a, const WeightVector& w, double epsilon);

/// Stable-rank bound on sigma_min^2 for a given k:
/// (1 - sqrt((k-1)/srank4))^2 ||A||_F^2 / ||W^{-1}||_F^2, or 0 once k - 1 >= srank4.
double stable_bound_for_k(const DenseMatrix& a, const WeightVector& w, std::size_t k);

/// W = diag(1 / ||a_i||). Throws std::invalid_argument on a zero column.
WeightVector column_normalizing_weights(const DenseMatrix& a);

/// bound_stable under column-normalizing weights; sigma_bound is epsilon.
StableBound normalized_bound(const DenseMatrix& a, double epsilon);

/// Deterministic greedy selection over the interlacing family: at each step
/// append the unused column whose partial-assignment polynomial has the
/// largest k-th root. Ties within 1e-10 relative go to the smaller index.
///
/// Throws std::invalid_argument when k is zero or exceeds the numerical rank,
/// and std::runtime_error if a partial polynomial fails the real-root check.
SelectionResult greedy_select(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                              const SelectOptions& options = {});

/// Slack used when comparing an achieved value against a bound.
inline double certificate_slack(double value) { return 1e-7 * (1.0 + std::abs(value)); }

/// True when sigma_min_sq meets lambda_k(f_emptyset), the rank bound and the
/// stable bound, each within certificate_slack.
bool is_certified(const SelectionResult& result);

}  // namespace rip
