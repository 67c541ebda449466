#include "rip/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rip {
namespace {

// Drops leading coefficients that are exact zeros.
void trim_zeros(std::vector<double>& c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
}

// A sum whose leading coefficients cancel to within rounding of the operands
// would otherwise report a spurious degree.
void trim_cancelled(std::vector<double>& c, const std::vector<double>& magnitude) {
  while (c.size() > 1 && std::abs(c.back()) <= kTrimRelTol * magnitude[c.size() - 1]) {
    c.pop_back();
  }
  if (c.size() == 1 && std::abs(c[0]) <= kTrimRelTol * magnitude[0]) c[0] = 0.0;
}

// Parlett-Reinsch balancing with radix 2. Similarity transform, so the
// spectrum is unchanged; it only evens out row and column norms.
void balance(Eigen::MatrixXd& h) {
  constexpr double radix = 2.0;
  constexpr double radix_sq = radix * radix;
  const Eigen::Index n = h.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(h(j, i));
        r += std::abs(h(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix_sq;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix_sq;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        h.row(i) /= f;
        h.col(i) *= f;
      }
    }
  }
}

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (double v : coeffs_) {
    if (!std::isfinite(v)) throw std::invalid_argument("polynomial coefficient is not finite");
  }
  trim_zeros(coeffs_);
}

Polynomial Polynomial::constant(double c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(std::size_t degree, double coeff) {
  std::vector<double> c(degree + 1, 0.0);
  c[degree] = coeff;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(std::span<const double> roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) throw std::invalid_argument("zero polynomial has no monic normalization");
  std::vector<double> c(coeffs_);
  const double lead = c.back();
  for (double& v : c) v /= lead;
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::times_x_power(std::size_t d) const {
  if (is_zero() || d == 0) return *this;
  std::vector<double> c(d, 0.0);
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  std::vector<double> magnitude(c.size(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = a.coeff(i) + b.coeff(i);
    magnitude[i] = std::max(std::abs(a.coeff(i)), std::abs(b.coeff(i)));
  }
  trim_cancelled(c, magnitude);
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> c(p.coeffs_);
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

Polynomial differentiate(const Polynomial& p) {
  if (p.degree() == 0) return Polynomial();
  std::vector<double> c(p.degree());
  for (std::size_t i = 1; i <= p.degree(); ++i) c[i - 1] = static_cast<double>(i) * p.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial apply_shift_operator(const Polynomial& p, double c) {
  if (c == 0.0) return p;
  return p - c * differentiate(p);
}

Polynomial deflate_zero_roots(const Polynomial& p, std::size_t d) {
  if (d == 0) return p;
  if (d > p.degree()) throw std::invalid_argument("cannot deflate more roots than the degree");
  const auto c = p.coefficients();
  return Polynomial(std::vector<double>(c.begin() + static_cast<std::ptrdiff_t>(d), c.end()));
}

RootList real_roots_descending(const Polynomial& p, double imag_tol) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has no roots");
  if (p.degree() == 0) throw std::invalid_argument("constant polynomial has no roots");

  const auto all = p.coefficients();
  std::size_t zeros = 0;
  while (all[zeros] == 0.0) ++zeros;

  RootList out;
  out.roots.assign(zeros, 0.0);

  const std::size_t n = p.degree() - zeros;
  if (n > 0) {
    const double lead = p.leading();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                      static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      companion(0, static_cast<Eigen::Index>(j)) = -all[zeros + n - 1 - j] / lead;
    }
    for (std::size_t i = 1; i < n; ++i) {
      companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    balance(companion);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("companion eigenvalue iteration did not converge");
    }
    for (const std::complex<double>& z : solver.eigenvalues()) {
      out.roots.push_back(z.real());
      out.residual_imag = std::max(out.residual_imag, std::abs(z.imag()));
    }
  }

  std::sort(out.roots.begin(), out.roots.end(), std::greater<>());
  double biggest = 0.0;
  for (double r : out.roots) biggest = std::max(biggest, std::abs(r));
  out.flagged = out.residual_imag > imag_tol * (1.0 + biggest);
  return out;
}

double kth_largest_root(const Polynomial& p, std::size_t k, double imag_tol) {
  if (k == 0 || k > p.degree()) {
    throw std::out_of_range("root index " + std::to_string(k) + " outside 1.." +
                            std::to_string(p.degree()));
  }
  return real_roots_descending(p, imag_tol).roots[k - 1];
}

double lower_barrier(const Polynomial& p, double b) {
  const double value = p(b);
  if (value == 0.0) throw std::domain_error("barrier evaluated at a root");
  return -differentiate(p)(b) / value;
}

}  // namespace rip
