#include "rip/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rip/mixed_charpoly.hpp"

namespace rip {
namespace {

struct SpectrumMoments {
  double sum_sq = 0.0;
  double sum_fourth = 0.0;
  double top_sq = 0.0;
};

SpectrumMoments moments(const DenseMatrix& a) {
  const auto s = singular_values(a);
  SpectrumMoments out;
  for (double v : s) {
    out.sum_sq += v * v;
    out.sum_fourth += v * v * v * v;
  }
  out.top_sq = s.front() * s.front();
  if (out.sum_sq == 0.0) throw std::invalid_argument("stable rank of the zero matrix");
  return out;
}

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
}

// lambda_k of a polynomial known to carry the factor x^{n-k}.
double kth_root_after_deflation(const Polynomial& f, std::size_t n, std::size_t k,
                                double imag_tol, double& max_residual) {
  const RootList roots = real_roots_descending(deflate_zero_roots(f, n - k), imag_tol);
  max_residual = std::max(max_residual, roots.residual_imag);
  if (roots.flagged) {
    std::ostringstream message;
    message << "partial assignment polynomial is not numerically real-rooted (imaginary residual "
            << roots.residual_imag << ")";
    throw std::runtime_error(message.str());
  }
  return roots.roots[k - 1];
}

}  // namespace

double srank4(const DenseMatrix& a) {
  const auto m = moments(a);
  return m.sum_sq * m.sum_sq / m.sum_fourth;
}

double srank2(const DenseMatrix& a) {
  const auto m = moments(a);
  return m.sum_sq / m.top_sq;
}

double bound_rank(const DenseMatrix& a, const WeightVector& w, std::size_t k, std::size_t r,
                  double rank_tol) {
  require_compatible(a, w);
  const std::size_t rank = numerical_rank(a, rank_tol);
  if (k < 1 || k > r) {
    throw std::invalid_argument("need 1 <= k <= r, got k = " + std::to_string(k) +
                                ", r = " + std::to_string(r));
  }
  if (r > rank) {
    throw std::invalid_argument("r = " + std::to_string(r) + " exceeds the numerical rank " +
                                std::to_string(rank));
  }
  const auto s = singular_values(a);
  double inv_sq_sum = 0.0;
  for (std::size_t i = 0; i < r; ++i) inv_sq_sum += 1.0 / (s[i] * s[i]);
  const double gap = std::sqrt(static_cast<double>(r)) - std::sqrt(static_cast<double>(k - 1));
  return gap * gap / w.inverse_frobenius_sq() * static_cast<double>(r) / inv_sq_sum;
}

StableBound bound_stable(const DenseMatrix& a, const WeightVector& w, double epsilon) {
  require_epsilon(epsilon);
  require_compatible(a, w);
  const double sr4 = srank4(a);
  StableBound out;
  out.k = static_cast<std::size_t>(std::floor((1.0 - epsilon) * (1.0 - epsilon) * sr4)) + 1;
  out.sigma_bound = epsilon * std::sqrt(a.frobenius_norm_sq() / w.inverse_frobenius_sq());
  return out;
}

double stable_bound_for_k(const DenseMatrix& a, const WeightVector& w, std::size_t k) {
  require_compatible(a, w);
  if (k == 0) throw std::invalid_argument("k must be positive");
  const double sr4 = srank4(a);
  const double ratio = static_cast<double>(k - 1) / sr4;
  if (ratio >= 1.0) return 0.0;
  const double gap = 1.0 - std::sqrt(ratio);
  return gap * gap * a.frobenius_norm_sq() / w.inverse_frobenius_sq();
}

WeightVector column_normalizing_weights(const DenseMatrix& a) {
  std::vector<double> w(static_cast<std::size_t>(a.cols()));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double norm = a.column(j).norm();
    if (norm == 0.0) {
      throw std::invalid_argument("column " + std::to_string(j + 1) + " is zero");
    }
    w[static_cast<std::size_t>(j)] = 1.0 / norm;
  }
  return WeightVector(std::move(w));
}

StableBound normalized_bound(const DenseMatrix& a, double epsilon) {
  require_epsilon(epsilon);
  StableBound out = bound_stable(a, column_normalizing_weights(a), epsilon);
  // ||W^{-1}||_F^2 = sum ||a_i||^2 = ||A||_F^2 under these weights.
  out.sigma_bound = epsilon;
  return out;
}

SelectionResult greedy_select(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                              const SelectOptions& options) {
  require_compatible(a, w);
  if (!(options.imag_tol > 0.0) || !std::isfinite(options.imag_tol)) {
    throw std::invalid_argument("imag_tol must be positive and finite");
  }
  const std::size_t rank = numerical_rank(a, options.rank_tol);
  if (k < 1 || k > rank) {
    throw std::invalid_argument("k = " + std::to_string(k) + " must lie in 1..rank(A) = " +
                                std::to_string(rank));
  }
  const std::size_t r = options.r.value_or(rank);
  if (r < k || r > rank) {
    throw std::invalid_argument("r = " + std::to_string(r) + " must lie in k..rank(A) = " +
                                std::to_string(k) + ".." + std::to_string(rank));
  }
  if (options.epsilon) {
    const StableBound sb = bound_stable(a, w, *options.epsilon);
    if (k > sb.k) {
      throw std::invalid_argument("epsilon = " + std::to_string(*options.epsilon) +
                                  " supports k <= " + std::to_string(sb.k));
    }
  }

  // Work on A / sigma_1 and W * ||W^{-1}||_F. This divides every root of every
  // partial polynomial by gamma = sigma_1^2 / ||W^{-1}||_F^2, keeps coefficients
  // near unit scale, and makes the argmax independent of how A and W are scaled.
  const double sigma1 = singular_values(a).front();
  const double inv_frob = w.inverse_frobenius_sq();
  const double gamma = sigma1 * sigma1 / inv_frob;
  const DenseMatrix unit_a(a.values() / sigma1);
  const WeightVector unit_w = w.scaled(std::sqrt(inv_frob));

  const auto n = static_cast<std::size_t>(a.rows());
  const auto m = static_cast<std::size_t>(a.cols());

  SelectionResult out;
  out.lambda_trace.reserve(k + 1);
  const Polynomial f_empty = expected_char_poly(unit_a, unit_w, k, options.rank_tol);
  out.lambda_trace.push_back(
      gamma * kth_root_after_deflation(f_empty, n, k, options.imag_tol, out.max_residual_imag));

  std::vector<bool> used(m, false);
  AssignmentPrefix prefix{{}, k};
  for (std::size_t step = 1; step <= k; ++step) {
    std::vector<std::size_t> candidates;
    std::vector<double> roots;
    for (std::size_t s = 0; s < m; ++s) {
      if (used[s]) continue;
      prefix.indices.push_back(s);
      const Polynomial f = partial_assignment_poly(unit_a, unit_w, prefix);
      prefix.indices.pop_back();
      candidates.push_back(s);
      roots.push_back(kth_root_after_deflation(f, n, k, options.imag_tol, out.max_residual_imag));
    }
    const double best = *std::max_element(roots.begin(), roots.end());
    const double cutoff = best - 1e-10 * std::abs(best);
    std::size_t pick = 0;
    while (roots[pick] < cutoff) ++pick;

    used[candidates[pick]] = true;
    prefix.indices.push_back(candidates[pick]);
    out.lambda_trace.push_back(gamma * roots[pick]);
  }

  out.subset = prefix.indices;
  const double sigma_min = sigma_min_subset(a, w, out.subset);
  out.sigma_min_sq = sigma_min * sigma_min;

  out.bounds.r_used = r;
  out.bounds.rank_bound = bound_rank(a, w, k, r, options.rank_tol);
  out.bounds.srank2 = srank2(a);
  out.bounds.srank4 = srank4(a);
  out.bounds.epsilon_used = options.epsilon;
  if (options.epsilon) {
    const double sigma_bound = bound_stable(a, w, *options.epsilon).sigma_bound;
    out.bounds.stable_bound = sigma_bound * sigma_bound;
  } else {
    out.bounds.stable_bound = stable_bound_for_k(a, w, k);
  }
  return out;
}

bool is_certified(const SelectionResult& result) {
  const double achieved = result.sigma_min_sq;
  const auto meets = [achieved](double bound) { return achieved >= bound - certificate_slack(bound); };
  return meets(result.lambda_trace.front()) && meets(result.bounds.rank_bound) &&
         meets(result.bounds.stable_bound);
}

}  // namespace rip
