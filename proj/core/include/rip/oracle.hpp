#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rip/linalg.hpp"
#include "rip/mixed_charpoly.hpp"
#include "rip/polynomial.hpp"

// Exhaustive verifiers. Everything here enumerates directly over subsets or
// assignments and deliberately avoids the interpolation / closed-form routes
// that the selection code relies on, except where an identity between the
// two is the thing being checked.
namespace rip::oracle {

inline constexpr std::uint64_t kSubsetBudget = 1'000'000;
inline constexpr std::uint64_t kExpectationBudget = 100'000;
inline constexpr std::uint64_t kInterlacingBudget = 10'000;

/// Thrown when an enumeration would exceed its budget.
class BudgetExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SubsetOptimum {
  std::vector<std::size_t> subset;  // 0-based, ascending
  double value = 0.0;               // sigma_min(A_S W_S)
};

/// Maximizes sigma_min over all k-subsets; the lexicographically smallest
/// maximizer wins.
SubsetOptimum brute_force_best_subset(const DenseMatrix& a, const WeightVector& w,
                                      std::size_t k, std::uint64_t budget = kSubsetBudget);

/// sum over [m]^k of (prod p_{s_i}) det[xI - sum w_{s_i}^2 a_{s_i} a_{s_i}^T].
Polynomial brute_force_expected_poly(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                                     std::uint64_t budget = kExpectationBudget);

/// Max over i of |a_i - b_i| / (|b_lead| rho^{deg - i}), where rho bounds the
/// root magnitudes of b. This is a per-coefficient relative error measured at
/// the natural scale of each coefficient.
double coefficient_deviation(const Polynomial& a, const Polynomial& b);

/// Max coefficient_deviation between f_prefix and sum_s p_s f_{prefix + s}.
double one_step_recursion_deviation(const DenseMatrix& a, const WeightVector& w,
                                    const AssignmentPrefix& prefix);

struct InterlacingReport {
  bool sandwich_ok = true;
  bool recursion_ok = true;
  /// Worst violation of min_j <= lambda_j(f_emptyset) <= max_j, 0 if none.
  double worst_sandwich_violation = 0.0;
  double worst_recursion_deviation = 0.0;
  bool ok() const { return sandwich_ok && recursion_ok; }
};

/// For every j, lambda_j(f_emptyset) lies between the smallest and largest
/// lambda_j over all assignments in [m]^k (slack 1e-7 (1 + |lambda|)); and the
/// one-step summation identity holds (1e-8) at every prefix shorter than k.
InterlacingReport interlacing_report(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                                     std::uint64_t budget = kInterlacingBudget);

bool check_interlacing_consequence(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                                   std::uint64_t budget = kInterlacingBudget);

struct Budgets {
  std::uint64_t subsets = kSubsetBudget;
  std::uint64_t expectation = kExpectationBudget;
  std::uint64_t interlacing = kInterlacingBudget;
};

struct OracleReport {
  std::vector<std::size_t> best_subset;
  double best_value = 0.0;
  bool expected_poly_match = false;
  double expected_poly_deviation = 0.0;
  bool interlacing_ok = false;
};

/// Runs all three verifiers on one instance.
OracleReport run_oracles(const DenseMatrix& a, const WeightVector& w, std::size_t k,
                         const Budgets& budgets = {}, double rank_tol = kDefaultRankTol);

}  // namespace rip::oracle
