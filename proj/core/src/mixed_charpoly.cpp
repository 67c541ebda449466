#include "rip/mixed_charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rip {
namespace {

void require_symmetric(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(name) + " is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument(std::string(name) + " is not symmetric");
  }
}

}  // namespace

double BivariatePoly::operator()(double x, double z) const {
  double acc = 0.0;
  for (auto it = slices.rbegin(); it != slices.rend(); ++it) acc = acc * z + (*it)(x);
  return acc;
}

BivariatePoly bivariate_det(const Eigen::MatrixXd& c, const Eigen::MatrixXd& b,
                            double node_radius) {
  if (!(node_radius > 0.0) || !std::isfinite(node_radius)) {
    throw std::invalid_argument("node radius must be positive and finite");
  }
  require_symmetric(c, "C");
  require_symmetric(b, "B");
  if (c.rows() != b.rows()) {
    throw std::invalid_argument("C is " + std::to_string(c.rows()) + "x" +
                                std::to_string(c.rows()) + " but B is " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.rows()));
  }
  const Eigen::Index n = c.rows();
  const Eigen::Index nodes = n + 1;

  // Chebyshev nodes u_t on [-1, 1], evaluated at z_t = h u_t. The monomial
  // Vandermonde system in u stays well conditioned; z-coefficients are then
  // recovered by dividing by h^i.
  Eigen::VectorXd u(nodes);
  for (Eigen::Index t = 0; t < nodes; ++t) {
    u(t) = std::cos(std::numbers::pi * (2.0 * static_cast<double>(t) + 1.0) /
                    (2.0 * static_cast<double>(nodes)));
  }
  Eigen::MatrixXd vandermonde(nodes, nodes);
  Eigen::MatrixXd values(nodes, n + 1);
  for (Eigen::Index t = 0; t < nodes; ++t) {
    double power = 1.0;
    for (Eigen::Index i = 0; i < nodes; ++i) {
      vandermonde(t, i) = power;
      power *= u(t);
    }
    const Polynomial p = char_poly(c - (node_radius * u(t)) * b);
    for (Eigen::Index l = 0; l <= n; ++l) values(t, l) = p.coeff(static_cast<std::size_t>(l));
  }
  const Eigen::MatrixXd coeffs = vandermonde.partialPivLu().solve(values);

  // Rows for z-powers beyond rank(B) are interpolation noise; drop the
  // negligible top rows so z_degree reflects the true degree.
  const double biggest = coeffs.cwiseAbs().maxCoeff();
  Eigen::Index top = nodes - 1;
  while (top > 0 && coeffs.row(top).cwiseAbs().maxCoeff() <= 1e-11 * biggest) --top;

  BivariatePoly out;
  out.slices.reserve(static_cast<std::size_t>(top + 1));
  double scale = 1.0;
  for (Eigen::Index i = 0; i <= top; ++i) {
    // z^i x^l can only appear when i + l <= n.
    std::vector<double> slice(static_cast<std::size_t>(n - i + 1));
    for (Eigen::Index l = 0; l <= n - i; ++l) {
      slice[static_cast<std::size_t>(l)] = coeffs(i, l) / scale;
    }
    out.slices.emplace_back(std::move(slice));
    scale *= node_radius;
  }
  return out;
}

Polynomial collapse_operator(const BivariatePoly& bp, std::size_t d) {
  if (d > kMaxCollapseOrder) {
    throw std::invalid_argument("collapse order " + std::to_string(d) + " exceeds " +
                                std::to_string(kMaxCollapseOrder));
  }
  if (bp.slices.empty()) return Polynomial();
  Polynomial out = bp.slices.front();
  // binom(d, i) * i! = d! / (d - i)!, built up incrementally.
  double falling = 1.0;
  const std::size_t top = std::min(d, bp.z_degree());
  for (std::size_t i = 1; i <= top; ++i) {
    falling *= static_cast<double>(d - i + 1);
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    out = out + (sign * falling) * bp.slices[i];
  }
  return out;
}

Polynomial partial_assignment_poly(const DenseMatrix& a, const WeightVector& w,
                                   const AssignmentPrefix& prefix) {
  require_compatible(a, w);
  const auto n = static_cast<std::size_t>(a.rows());
  if (prefix.k == 0) throw std::invalid_argument("selection size k must be positive");
  if (prefix.k > n) {
    throw std::invalid_argument("k = " + std::to_string(prefix.k) + " exceeds the dimension " +
                                std::to_string(n));
  }
  if (prefix.indices.size() > prefix.k) {
    throw std::invalid_argument("prefix is longer than k");
  }
  for (std::size_t s : prefix.indices) {
    if (s >= w.size()) {
      throw std::out_of_range("prefix index " + std::to_string(s + 1) + " outside 1.." +
                              std::to_string(w.size()));
    }
  }
  const Eigen::MatrixXd c = weighted_gram(a, w, prefix.indices);
  const Eigen::MatrixXd b = a.values() * a.values().transpose() / w.inverse_frobenius_sq();
  const std::size_t d = prefix.k - prefix.indices.size();
  // The collapse weights the z^i slice by about d^i, so nodes spread over
  // [-d, d] keep the heavily weighted slices accurate.
  const BivariatePoly bp = bivariate_det(c, b, std::max(1.0, static_cast<double>(d)));
  return collapse_operator(bp, d).monic();
}

Polynomial expected_char_poly(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                              double rank_tol) {
  require_compatible(a, w);
  const auto n = static_cast<std::size_t>(a.rows());
  if (k == 0 || k > n) {
    throw std::invalid_argument("k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  const auto sigma = singular_values(a);
  const std::size_t rank = numerical_rank(a, rank_tol);
  const double inv_frob = w.inverse_frobenius_sq();

  Polynomial g = Polynomial::monomial(k);
  for (std::size_t i = 0; i < rank; ++i) {
    g = apply_shift_operator(g, sigma[i] * sigma[i] / inv_frob);
  }
  return g.times_x_power(n - k);
}

}  // namespace rip
