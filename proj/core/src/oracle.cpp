#include "rip/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rip::oracle {
namespace {

// m^k, saturating at max uint64.
std::uint64_t power_saturating(std::uint64_t m, std::size_t k) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (m != 0 && out > std::numeric_limits<std::uint64_t>::max() / m) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= m;
  }
  return out;
}

std::uint64_t binomial_saturating(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  long double out = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * static_cast<long double>(m - k + i) / i;
  if (out >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(std::llround(out));
}

void require_budget(std::uint64_t needed, std::uint64_t budget, const char* what) {
  if (needed > budget) {
    throw BudgetExceeded(std::string(what) + " needs " + std::to_string(needed) +
                         " evaluations, budget is " + std::to_string(budget));
  }
}

// Advances an odometer over [m]^k; returns false after the last tuple.
bool next_assignment(std::vector<std::size_t>& tuple, std::size_t m) {
  for (std::size_t pos = tuple.size(); pos-- > 0;) {
    if (++tuple[pos] < m) return true;
    tuple[pos] = 0;
  }
  return false;
}

// Advances a strictly increasing k-combination of {0..m-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& comb, std::size_t m) {
  const std::size_t k = comb.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (comb[pos] < m - k + pos) {
      ++comb[pos];
      for (std::size_t j = pos + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double assignment_probability(const WeightVector& w, const std::vector<std::size_t>& tuple) {
  double p = 1.0;
  for (std::size_t s : tuple) p *= w.probability(s);
  return p;
}

}  // namespace

SubsetOptimum brute_force_best_subset(const DenseMatrix& a, const WeightVector& w,
                                      std::size_t k, std::uint64_t budget) {
  require_compatible(a, w);
  const auto m = static_cast<std::size_t>(a.cols());
  if (k < 1 || k > m) {
    throw std::invalid_argument("k = " + std::to_string(k) + " outside 1.." + std::to_string(m));
  }
  require_budget(binomial_saturating(m, k), budget, "subset enumeration");

  std::vector<std::size_t> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = i;
  SubsetOptimum best{comb, -1.0};
  do {
    const double value = sigma_min_subset(a, w, comb);
    if (value > best.value) best = {comb, value};
  } while (next_combination(comb, m));
  return best;
}

Polynomial brute_force_expected_poly(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                                     std::uint64_t budget) {
  require_compatible(a, w);
  if (k < 1) throw std::invalid_argument("k must be positive");
  const auto m = static_cast<std::size_t>(a.cols());
  require_budget(power_saturating(m, k), budget, "expectation enumeration");

  std::vector<double> sum(static_cast<std::size_t>(a.rows()) + 1, 0.0);
  std::vector<std::size_t> tuple(k, 0);
  do {
    const double p = assignment_probability(w, tuple);
    const Polynomial f = char_poly(weighted_gram(a, w, tuple));
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p * f.coeff(i);
  } while (next_assignment(tuple, m));
  return Polynomial(std::move(sum));
}

double coefficient_deviation(const Polynomial& a, const Polynomial& b) {
  const std::size_t deg = b.degree();
  const double lead = std::abs(b.leading());
  if (lead == 0.0) throw std::invalid_argument("reference polynomial is zero");
  double rho = 0.0;
  for (std::size_t i = 0; i < deg; ++i) {
    rho = std::max(rho, std::pow(std::abs(b.coeff(i)) / lead, 1.0 / static_cast<double>(deg - i)));
  }
  if (rho == 0.0) rho = 1.0;
  const std::size_t top = std::max(a.degree(), deg);
  double worst = 0.0;
  for (std::size_t i = 0; i <= top; ++i) {
    const double scale = lead * std::pow(rho, static_cast<double>(deg) - static_cast<double>(i));
    worst = std::max(worst, std::abs(a.coeff(i) - b.coeff(i)) / scale);
  }
  return worst;
}

double one_step_recursion_deviation(const DenseMatrix& a, const WeightVector& w,
                                    const AssignmentPrefix& prefix) {
  if (prefix.indices.size() >= prefix.k) {
    throw std::invalid_argument("prefix is already a full assignment");
  }
  const Polynomial parent = partial_assignment_poly(a, w, prefix);
  Polynomial children;
  AssignmentPrefix child = prefix;
  child.indices.push_back(0);
  for (std::size_t s = 0; s < w.size(); ++s) {
    child.indices.back() = s;
    children = children + w.probability(s) * partial_assignment_poly(a, w, child);
  }
  return coefficient_deviation(children, parent);
}

InterlacingReport interlacing_report(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                                     std::uint64_t budget) {
  require_compatible(a, w);
  const auto n = static_cast<std::size_t>(a.rows());
  const auto m = static_cast<std::size_t>(a.cols());
  if (k < 1 || k > n) {
    throw std::invalid_argument("k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  require_budget(power_saturating(m, k), budget, "interlacing enumeration");

  std::vector<double> lo(n, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> tuple(k, 0);
  do {
    const auto ev = symmetric_eigenvalues_desc(weighted_gram(a, w, tuple));
    for (std::size_t j = 0; j < n; ++j) {
      lo[j] = std::min(lo[j], ev[j]);
      hi[j] = std::max(hi[j], ev[j]);
    }
  } while (next_assignment(tuple, m));

  // Roots of f_emptyset: the n - k structural zeros plus the roots of g.
  const Polynomial f_empty = expected_char_poly(a, w, k);
  RootList g_roots = real_roots_descending(deflate_zero_roots(f_empty, n - k));
  std::vector<double> roots = std::move(g_roots.roots);
  roots.resize(n, 0.0);
  std::sort(roots.begin(), roots.end(), std::greater<>());

  InterlacingReport report;
  for (std::size_t j = 0; j < n; ++j) {
    const double slack = 1e-7 * (1.0 + std::abs(roots[j]));
    const double violation = std::max(lo[j] - roots[j], roots[j] - hi[j]);
    if (violation > 0.0) report.worst_sandwich_violation = std::max(report.worst_sandwich_violation, violation);
    if (violation > slack) report.sandwich_ok = false;
  }

  // One-step summation identity at every prefix of length < k.
  for (std::size_t depth = 0; depth < k; ++depth) {
    std::vector<std::size_t> prefix(depth, 0);
    do {
      const double dev = one_step_recursion_deviation(a, w, AssignmentPrefix{prefix, k});
      report.worst_recursion_deviation = std::max(report.worst_recursion_deviation, dev);
      if (depth == 0) break;
    } while (next_assignment(prefix, m));
  }
  report.recursion_ok = report.worst_recursion_deviation <= 1e-8;
  return report;
}

bool check_interlacing_consequence(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                                   std::uint64_t budget) {
  return interlacing_report(a, w, k, budget).ok();
}

OracleReport run_oracles(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                         const Budgets& budgets, double rank_tol) {
  OracleReport report;
  const SubsetOptimum best = brute_force_best_subset(a, w, k, budgets.subsets);
  report.best_subset = best.subset;
  report.best_value = best.value;

  const Polynomial enumerated = brute_force_expected_poly(a, w, k, budgets.expectation);
  const Polynomial closed_form = expected_char_poly(a, w, k, rank_tol);
  report.expected_poly_deviation = coefficient_deviation(enumerated, closed_form);
  report.expected_poly_match = report.expected_poly_deviation <= 1e-8;

  report.interlacing_ok = check_interlacing_consequence(a, w, k, budgets.interlacing);
  return report;
}

}  // namespace rip::oracle
