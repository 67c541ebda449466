#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "rip/linalg.hpp"
#include "rip/polynomial.hpp"

namespace rip {

/// Largest order d accepted by collapse_operator.
inline constexpr std::size_t kMaxCollapseOrder = 30;

/// det[xI - C + zB] as sum_i c_i(x) z^i; slices[i] holds c_i.
struct BivariatePoly {
  std::vector<Polynomial> slices;

  std::size_t z_degree() const { return slices.empty() ? 0 : slices.size() - 1; }
  double operator()(double x, double z) const;
};

/// A partial assignment s_1..s_j (0-based column indices) of a length-k draw.
///
/// Repeated indices are legal: the underlying family ranges over all of
/// [m]^k, and repeats are needed to state the one-step summation identity.
/// The greedy selector only ever builds repeat-free prefixes.
struct AssignmentPrefix {
  std::vector<std::size_t> indices;
  std::size_t k = 0;
};

/// Interpolates det[xI - C + zB] in z from n + 1 characteristic polynomials
/// of C - z_t B at Chebyshev nodes on [-h, h], h = node_radius. C and B must
/// be symmetric and the same size.
BivariatePoly bivariate_det(const Eigen::MatrixXd& c, const Eigen::MatrixXd& b,
                            double node_radius = 1.0);

/// (1 - d/dz)^d g(x, z) at z = 0, i.e. sum_i binom(d, i) (-1)^i i! c_i(x).
/// Throws std::invalid_argument for d > kMaxCollapseOrder.
Polynomial collapse_operator(const BivariatePoly& bp, std::size_t d);

/// Monic f_{s_1..s_j}: the expectation of det[xI - sum_i w_{s_i}^2 a_{s_i} a_{s_i}^T]
/// with the first j draws fixed and the remaining k - j drawn with
/// probability proportional to w^{-2}.
Polynomial partial_assignment_poly(const DenseMatrix& a, const WeightVector& w,
                                   const AssignmentPrefix& prefix);

/// Closed form of the expected characteristic polynomial f_{emptyset}:
/// x^{n-k} prod_{i <= rank} (1 - sigma_i^2 / ||W^{-1}||_F^2 d/dx) x^k.
Polynomial expected_char_poly(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                              double rank_tol = kDefaultRankTol);

}  // namespace rip
