#include "rip/mixed_charpoly.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rip/oracle.hpp"
#include "support/random_instances.hpp"

namespace rip {
namespace {

void expect_coeffs(const Polynomial& p, const std::vector<double>& expected, double tol = 1e-12) {
  ASSERT_EQ(p.degree() + 1, expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(p.coeff(i), expected[i], tol) << "coefficient of x^" << i;
  }
}

TEST(BivariateDet, Examples) {
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);

  // (x + z)^2
  const auto sum_sq = bivariate_det(zero, eye);
  ASSERT_EQ(sum_sq.z_degree(), 2u);
  expect_coeffs(sum_sq.slices[0], {0.0, 0.0, 1.0});
  expect_coeffs(sum_sq.slices[1], {0.0, 2.0});
  expect_coeffs(sum_sq.slices[2], {1.0});

  const auto shifted = bivariate_det(eye, zero);
  ASSERT_EQ(shifted.z_degree(), 0u);
  expect_coeffs(shifted.slices[0], {1.0, -2.0, 1.0});

  // (x - 1 + z/2)(x + z/2) = x^2 - x + z (x - 1/2) + z^2 / 4
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 2);
  c(0, 0) = 1.0;
  const auto mixed = bivariate_det(c, eye / 2.0);
  ASSERT_EQ(mixed.z_degree(), 2u);
  expect_coeffs(mixed.slices[0], {0.0, -1.0, 1.0});
  expect_coeffs(mixed.slices[1], {-0.5, 1.0});
  expect_coeffs(mixed.slices[2], {0.25});
}

TEST(BivariateDet, Errors) {
  EXPECT_THROW(bivariate_det(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(3, 3)),
               std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  EXPECT_THROW(bivariate_det(asym, Eigen::MatrixXd::Zero(2, 2)), std::invalid_argument);
}

TEST(BivariateDet, NodeRadiusDoesNotChangeTheResult) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + trial % 6);
    const Eigen::MatrixXd c = testing::random_symmetric(rng, n);
    const Eigen::MatrixXd b = testing::random_symmetric(rng, n);
    const auto unit = bivariate_det(c, b);
    const auto wide = bivariate_det(c, b, 4.0);
    ASSERT_EQ(unit.z_degree(), wide.z_degree());
    for (double x : {-1.5, 0.3, 2.0}) {
      for (double z : {-2.0, 0.7, 3.0}) {
        EXPECT_NEAR(unit(x, z), wide(x, z), 1e-9 * (1.0 + std::abs(unit(x, z))));
      }
    }
  }
  EXPECT_THROW(bivariate_det(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2), 0.0),
               std::invalid_argument);
}

TEST(BivariateDet, ReproducesDeterminantOnGrid) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + trial % 7);
    const Eigen::MatrixXd c = testing::random_symmetric(rng, n);
    const Eigen::MatrixXd g = testing::gaussian_matrix(rng, n, n);
    const Eigen::MatrixXd b = g * g.transpose() / 3.0;
    const auto bp = bivariate_det(c, b);
    EXPECT_LE(bp.z_degree(), static_cast<std::size_t>(n));
    for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
      for (double z : {-1.5, 0.0, 0.7, 2.0}) {
        const Eigen::MatrixXd mat =
            x * Eigen::MatrixXd::Identity(n, n) - c + z * b;
        const double direct = mat.determinant();
        // Scale: product of the absolute row norms bounds |det|.
        double scale = 1.0;
        for (Eigen::Index i = 0; i < n; ++i) scale *= 1.0 + mat.row(i).norm();
        EXPECT_NEAR(bp(x, z), direct, 1e-7 * scale) << "x=" << x << " z=" << z;
      }
    }
    // Slice 0 is det[xI - C].
    EXPECT_LE(oracle::coefficient_deviation(bp.slices[0], char_poly(c)), 1e-9);
  }
}

TEST(BivariateDet, ZDegreeBoundedByRankOfB) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 5;
    const auto rank = static_cast<Eigen::Index>(1 + trial % 4);
    const Eigen::MatrixXd g = testing::gaussian_matrix(rng, n, rank);
    const auto bp = bivariate_det(testing::random_symmetric(rng, n), g * g.transpose());
    EXPECT_LE(bp.z_degree(), static_cast<std::size_t>(rank));
  }
}

TEST(CollapseOperator, Examples) {
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
  const auto sum_sq = bivariate_det(Eigen::MatrixXd::Zero(2, 2), eye);
  expect_coeffs(collapse_operator(sum_sq, 1), {0.0, -2.0, 1.0});
  expect_coeffs(collapse_operator(sum_sq, 0), {0.0, 0.0, 1.0});

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 2);
  c(0, 0) = 1.0;
  expect_coeffs(collapse_operator(bivariate_det(c, eye / 2.0), 1), {0.5, -2.0, 1.0});
}

TEST(CollapseOperator, HigherOrderMatchesRepeatedDerivatives) {
  // g(z) = (x + z)^2: (1 - d/dz)^3 g |_{z=0} = x^2 - 3 * 2x + 3 * 2 = x^2 - 6x + 6.
  const auto bp = bivariate_det(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Identity(2, 2));
  expect_coeffs(collapse_operator(bp, 3), {6.0, -6.0, 1.0});
  EXPECT_THROW(collapse_operator(bp, kMaxCollapseOrder + 1), std::invalid_argument);
}

TEST(PartialAssignmentPoly, Examples) {
  const auto a = DenseMatrix::identity(2);
  const auto w = WeightVector::ones(2);
  expect_coeffs(partial_assignment_poly(a, w, {{}, 1}), {0.0, -1.0, 1.0});
  expect_coeffs(partial_assignment_poly(a, w, {{0}, 2}), {0.5, -2.0, 1.0});
  expect_coeffs(partial_assignment_poly(a, w, {{0, 1}, 2}), {1.0, -2.0, 1.0});
}

TEST(PartialAssignmentPoly, Errors) {
  const auto a = DenseMatrix::identity(2);
  const auto w = WeightVector::ones(2);
  EXPECT_THROW(partial_assignment_poly(a, w, {{}, 3}), std::invalid_argument);
  EXPECT_THROW(partial_assignment_poly(a, w, {{}, 0}), std::invalid_argument);
  EXPECT_THROW(partial_assignment_poly(a, w, {{0, 1}, 1}), std::invalid_argument);
  EXPECT_THROW(partial_assignment_poly(a, w, {{2}, 2}), std::out_of_range);
  EXPECT_THROW(partial_assignment_poly(a, WeightVector::ones(3), {{}, 1}),
               std::invalid_argument);
}

TEST(PartialAssignmentPoly, FullAssignmentIsCharPolyOfGram) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testing::random_instance(rng, 6, 4, false);
    std::vector<std::size_t> full(inst.k);
    for (auto& s : full) s = testing::uniform_size(rng, 0, inst.w.size() - 1);
    const auto f = partial_assignment_poly(inst.a, inst.w, {full, inst.k});
    EXPECT_LE(oracle::coefficient_deviation(f, char_poly(weighted_gram(inst.a, inst.w, full))),
              1e-9);
  }
}

TEST(ExpectedCharPoly, Examples) {
  const auto a = DenseMatrix::identity(2);
  const auto w = WeightVector::ones(2);
  const auto k1 = expected_char_poly(a, w, 1);
  expect_coeffs(k1, {0.0, -1.0, 1.0});
  EXPECT_NEAR(kth_largest_root(k1, 1), 1.0, 1e-14);

  const auto k2 = expected_char_poly(a, w, 2);
  expect_coeffs(k2, {0.5, -2.0, 1.0});
  EXPECT_NEAR(kth_largest_root(k2, 2), 1.0 - 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(kth_largest_root(k2, 2), 0.292893, 1e-6);

  const auto zero = expected_char_poly(DenseMatrix(Eigen::MatrixXd::Zero(3, 2)),
                                       WeightVector::ones(2), 3);
  expect_coeffs(zero, {0.0, 0.0, 0.0, 1.0});
  EXPECT_THROW(expected_char_poly(a, w, 0), std::invalid_argument);
  EXPECT_THROW(expected_char_poly(a, w, 3), std::invalid_argument);
}

TEST(ExpectedCharPoly, AgreesWithInterpolationRoute) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = testing::random_instance(rng, 6, 4, false);
    const auto closed = expected_char_poly(inst.a, inst.w, inst.k);
    const auto interpolated = partial_assignment_poly(inst.a, inst.w, {{}, inst.k});
    EXPECT_LE(oracle::coefficient_deviation(interpolated, closed), 1e-8) << "trial " << trial;
  }
}

TEST(ExpectedCharPoly, EqualsEnumeratedExpectation) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = testing::random_instance(rng, 4, 3, false);
    const auto closed = expected_char_poly(inst.a, inst.w, inst.k);
    const auto enumerated = oracle::brute_force_expected_poly(inst.a, inst.w, inst.k);
    EXPECT_LE(oracle::coefficient_deviation(enumerated, closed), 1e-8) << "trial " << trial;
  }
}

// E det[xI + M - r r^T] over a finitely supported r equals
// (1 - d/dt) det[xI + M + t E r r^T] at t = 0.
TEST(BivariateDet, RankOneExpectationIdentity) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(testing::uniform_size(rng, 1, 4));
    const std::size_t support = testing::uniform_size(rng, 1, 4);
    const Eigen::MatrixXd m = testing::random_symmetric(rng, n);
    const Eigen::MatrixXd vs = testing::gaussian_matrix(rng, n, static_cast<Eigen::Index>(support));
    std::vector<double> p(support);
    double total = 0.0;
    for (double& v : p) total += (v = u(rng));
    for (double& v : p) v /= total;

    Polynomial enumerated;
    Eigen::MatrixXd second_moment = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t q = 0; q < support; ++q) {
      const Eigen::VectorXd v = vs.col(static_cast<Eigen::Index>(q));
      const Eigen::MatrixXd outer = v * v.transpose();
      enumerated = enumerated + p[q] * char_poly(outer - m);
      second_moment += p[q] * outer;
    }
    second_moment = 0.5 * (second_moment + second_moment.transpose());
    const auto collapsed = collapse_operator(bivariate_det(-m, second_moment), 1);
    EXPECT_LE(oracle::coefficient_deviation(collapsed, enumerated), 1e-9) << "trial " << trial;
  }
}

TEST(PartialAssignmentPoly, OneStepRecursion) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = testing::random_instance(rng, 6, 4, false);
    const std::size_t depth = testing::uniform_size(rng, 0, inst.k - 1);
    std::vector<std::size_t> prefix(depth);
    for (auto& s : prefix) s = testing::uniform_size(rng, 0, inst.w.size() - 1);
    EXPECT_LE(oracle::one_step_recursion_deviation(inst.a, inst.w, {prefix, inst.k}), 1e-8)
        << "trial " << trial;
  }
}

}  // namespace
}  // namespace rip
