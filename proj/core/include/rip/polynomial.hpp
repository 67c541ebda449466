#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rip {

/// Default tolerance on discarded imaginary parts, relative to 1 + max|root|.
inline constexpr double kDefaultImagTol = 1e-7;

/// When a sum cancels its leading terms down to this fraction of the operands'
/// magnitude, the cancelled coefficients are dropped.
inline constexpr double kTrimRelTol = 1e-13;

/// Real univariate polynomial, coefficients in ascending degree order.
///
/// The zero polynomial is stored as the single coefficient 0. Construction
/// drops exact-zero leading coefficients; addition and subtraction also drop
/// leading coefficients that cancel to rounding level, so that degree()
/// reflects the numerically meaningful degree.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  /// Throws std::invalid_argument on non-finite coefficients.
  explicit Polynomial(std::vector<double> ascending);

  static Polynomial constant(double c);
  static Polynomial monomial(std::size_t degree, double coeff = 1.0);
  /// Monic polynomial prod_i (x - roots[i]).
  static Polynomial from_roots(std::span<const double> roots);

  std::size_t degree() const { return coeffs_.size() - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  std::span<const double> coefficients() const { return coeffs_; }
  /// Coefficient of x^i; zero beyond the degree.
  double coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0.0; }
  double leading() const { return coeffs_.back(); }

  double operator()(double x) const;

  Polynomial monic() const;
  /// p(x) * x^d.
  Polynomial times_x_power(std::size_t d) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double c, const Polynomial& p);

 private:
  std::vector<double> coeffs_;
};

/// Roots of a real-rooted polynomial, largest first, with multiplicity.
struct RootList {
  std::vector<double> roots;
  /// Largest |imaginary part| discarded during extraction.
  double residual_imag = 0.0;
  /// Set when residual_imag exceeds imag_tol * (1 + max|root|).
  bool flagged = false;
};

Polynomial differentiate(const Polynomial& p);

/// (1 - c d/dx) p = p - c p'.
Polynomial apply_shift_operator(const Polynomial& p, double c);

/// p / x^d, discarding the d lowest coefficients. Callers use this when x^d
/// is known to divide p and the low coefficients are rounding noise.
Polynomial deflate_zero_roots(const Polynomial& p, std::size_t d);

/// Eigenvalues of the balanced companion matrix of the monic normalization.
/// Exact trailing zero coefficients are split off as exact zero roots first.
/// Throws std::invalid_argument for the zero polynomial or a constant.
RootList real_roots_descending(const Polynomial& p, double imag_tol = kDefaultImagTol);

/// k-th largest root, 1-based. Throws std::out_of_range unless 1 <= k <= degree.
double kth_largest_root(const Polynomial& p, std::size_t k, double imag_tol = kDefaultImagTol);

/// Phi_p(b) = -p'(b) / p(b) = sum_i 1 / (lambda_i - b).
/// Throws std::domain_error when p(b) == 0.
double lower_barrier(const Polynomial& p, double b);

}  // namespace rip
