#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "gepc/numerics.hpp"

using namespace gepc;
using namespace gepc::numerics;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(r, c);
  for (auto& v : m.values()) v = u(rng);
  return m;
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
  return d;
}

void expect_orthonormal_columns(const Matrix& q, double tol) {
  const Matrix g = transpose_times(q, q);
  EXPECT_LT(max_abs_diff(g, Matrix::identity(q.cols())), tol);
}

}  // namespace

TEST(SymmetricEigen, MatchesEigenSolver) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 2u, 5u, 12u, 30u}) {
    Matrix a = random_matrix(n, n, rng);
    a = transpose_times(a, a);
    const auto r = symmetric_eigen(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(r.values[i], es.eigenvalues()(n - 1 - i), 1e-10);
    for (std::size_t i = 1; i < n; ++i) EXPECT_GE(r.values[i - 1], r.values[i]);
    expect_orthonormal_columns(r.vectors, 1e-10);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t arg = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(r.vectors(i, j)) > std::abs(r.vectors(arg, j))) arg = i;
      EXPECT_GT(r.vectors(arg, j), 0.0);
    }
  }
}

TEST(Svd, JacobiMatchesEigenSingularValues) {
  std::mt19937_64 rng(2);
  for (auto [r, c] : {std::pair{6u, 4u}, std::pair{4u, 6u}, std::pair{10u, 10u}, std::pair{1u, 3u}}) {
    const Matrix m = random_matrix(r, c, rng);
    const auto s = jacobi_svd(m);
    Eigen::JacobiSVD<Eigen::MatrixXd> es(to_eigen(m));
    ASSERT_EQ(s.values.size(), std::min(r, c));
    for (std::size_t i = 0; i < s.values.size(); ++i) EXPECT_NEAR(s.values[i], es.singularValues()(i), 1e-10);
  }
}

TEST(Svd, TruncatedIsExactWhenOversamplingCoversTheRank) {
  std::mt19937_64 rng(3);
  for (auto [r, c, k] : {std::tuple{20u, 50u, 10u}, std::tuple{47u, 300u, 40u}, std::tuple{60u, 8u, 8u}}) {
    const Matrix m = random_matrix(r, c, rng, 0.0, 5.0);
    const auto s = truncated_svd(m, k, {.oversample = 10, .power_iterations = 4, .seed = 9});
    Eigen::JacobiSVD<Eigen::MatrixXd> es(to_eigen(m));
    ASSERT_EQ(s.values.size(), k);
    for (std::size_t i = 0; i < k; ++i) EXPECT_NEAR(s.values[i], es.singularValues()(i), 1e-8 * es.singularValues()(0));
    expect_orthonormal_columns(s.u, 1e-9);
    expect_orthonormal_columns(s.v, 1e-9);
    for (std::size_t i = 0; i < s.u.rows(); ++i)
      for (std::size_t j = 0; j < k; ++j) {
        double mv = 0.0;
        for (std::size_t t = 0; t < c; ++t) mv += m(i, t) * s.v(t, j);
        EXPECT_NEAR(mv, s.values[j] * s.u(i, j), 1e-8 * es.singularValues()(0));
      }
  }
}

TEST(Svd, RankDeficientInputAndErrors) {
  Matrix m(6, 4);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = static_cast<double>((i + 1) * (j + 1));
  const auto s = truncated_svd(m, 3);
  EXPECT_GT(s.values[0], 0.0);
  EXPECT_NEAR(s.values[1], 0.0, 1e-9);
  expect_orthonormal_columns(s.u, 1e-9);
  EXPECT_THROW(truncated_svd(m, 0), std::invalid_argument);
  EXPECT_THROW(truncated_svd(m, 5), std::invalid_argument);
}

TEST(Svd, SeededRunsAreIdentical) {
  std::mt19937_64 rng(4);
  const Matrix m = random_matrix(30, 80, rng);
  const auto a = truncated_svd(m, 3, {.oversample = 2, .power_iterations = 1, .seed = 5});
  const auto b = truncated_svd(m, 3, {.oversample = 2, .power_iterations = 1, .seed = 5});
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.values, b.values);
}

TEST(Mds, ThreeFourFiveTriangle) {
  const Matrix d{{0, 3, 4}, {3, 0, 5}, {4, 5, 0}};
  const auto e = classical_mds(d, 2);
  const Matrix back = euclidean_distances(e.coordinates);
  EXPECT_LT(max_abs_diff(back, d), 1e-6);
  EXPECT_LT(e.stress, 1e-9);
}

TEST(Mds, RecoversRandomPlanarConfigurations) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng() % 48;
    const Matrix pts = random_matrix(n, 2, rng, -10.0, 10.0);
    const Matrix d = euclidean_distances(pts);
    const auto e = classical_mds(d, 2);
    const Matrix back = euclidean_distances(e.coordinates);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d.values().size(); ++i) {
      num += std::pow(back.values()[i] - d.values()[i], 2);
      den += d.values()[i] * d.values()[i];
    }
    EXPECT_LT(std::sqrt(num / den), 1e-6) << "n=" << n;
  }
}

TEST(Mds, StressForNonEuclideanInputAndErrors) {
  const Matrix d{{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};  // violates the triangle inequality
  const auto e = classical_mds(d, 2);
  EXPECT_GT(e.stress, 0.0);
  EXPECT_EQ(e.coordinates.rows(), 3u);
  EXPECT_THROW(classical_mds(Matrix{{0}}, 1), std::invalid_argument);
  EXPECT_THROW(classical_mds(d, 3), std::invalid_argument);
  EXPECT_THROW(classical_mds(d, 0), std::invalid_argument);
  EXPECT_THROW(classical_mds(Matrix{{0, 1}, {2, 0}}, 1), std::invalid_argument);
}

TEST(Distances, CosineAndEuclidean) {
  const Matrix rows{{1, 0}, {0, 2}, {3, 0}, {0, 0}};
  const Matrix c = cosine_distances(rows);
  EXPECT_NEAR(c(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(c(0, 2), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(c(3, 0), 1.0);
  EXPECT_DOUBLE_EQ(c(3, 3), 0.0);
  EXPECT_DOUBLE_EQ(euclidean_distances(rows)(1, 2), std::sqrt(13.0));
}

TEST(Nmf, DocTopicRowsSumToOne) {
  std::mt19937_64 rng(7);
  Matrix v = random_matrix(12, 40, rng, 0.0, 3.0);
  for (std::size_t j = 0; j < 40; ++j) v(5, j) = 0.0;  // an empty document
  const auto m = nmf(v, 4, 200, 1e-9, 1);
  for (std::size_t i = 0; i < v.rows(); ++i) {
    double s = 0.0;
    for (std::size_t t = 0; t < 4; ++t) s += m.doc_topic(i, t);
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
  for (std::size_t t = 0; t < 4; ++t) EXPECT_DOUBLE_EQ(m.doc_topic(5, t), 0.25);
}

TEST(Nmf, ErrorNeverIncreasesOnRandomMatrices) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix v = random_matrix(30, 50, rng, 0.0, 1.0);
    const auto m = nmf(v, 5, 60, 0.0, static_cast<std::uint64_t>(trial));
    ASSERT_EQ(m.error_history.size(), m.iterations + 1);
    for (std::size_t i = 1; i < m.error_history.size(); ++i)
      ASSERT_LE(m.error_history[i], m.error_history[i - 1]) << "trial " << trial << " iteration " << i;
    Matrix w = m.weights, h = m.topic_term;
    EXPECT_NEAR(frobenius_norm(v - w * h), m.final_error(), 1e-9);
  }
}

TEST(Nmf, RecoversExactRankTwoFactorization) {
  std::mt19937_64 rng(9);
  const Matrix w = random_matrix(20, 2, rng, 0.1, 1.0);
  const Matrix h = random_matrix(2, 30, rng, 0.1, 1.0);
  const Matrix v = w * h;
  const auto m = nmf(v, 2, 5000, 1e-14, 3);
  EXPECT_LT(m.final_error() / frobenius_norm(v), 1e-3);
}

TEST(Nmf, TopTermsAndErrors) {
  const Matrix v{{5, 0, 1}, {0, 4, 0}};
  NmfOptions o;
  o.k = 2;
  o.top_terms = 2;
  o.max_iters = 300;
  const auto m = nmf(v, o);
  ASSERT_EQ(m.top_terms.size(), 2u);
  EXPECT_EQ(m.top_terms[0].size(), 2u);
  for (const auto& t : m.top_terms) EXPECT_GE(m.topic_term(&t - &m.top_terms[0], t[0]), m.topic_term(&t - &m.top_terms[0], t[1]));
  EXPECT_THROW(nmf(Matrix{{1, -1}}, 1, 10, 0.0, 0), std::invalid_argument);
  EXPECT_THROW(nmf(Matrix{{1, std::nan("")}}, 1, 10, 0.0, 0), std::invalid_argument);
  const auto again = nmf(v, o);
  EXPECT_EQ(again.weights, m.weights);
}

TEST(Pca, MatchesEigenCovariance) {
  std::mt19937_64 rng(10);
  Matrix pts = random_matrix(40, 3, rng);
  for (std::size_t i = 0; i < 40; ++i) pts(i, 1) += 2.0 * pts(i, 0);
  const auto p = pca(pts, 3);
  Eigen::MatrixXd x = to_eigen(pts);
  Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - mean;
  Eigen::MatrixXd cov = centered.transpose() * centered / 39.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  double total = cov.trace();
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(p.explained_variance[i], es.eigenvalues()(2 - i), 1e-10);
    EXPECT_NEAR(p.explained_ratio[i], es.eigenvalues()(2 - i) / total, 1e-10);
    EXPECT_NEAR(p.mean[i], mean(i), 1e-12);
  }
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t k = 0; k < 3; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < 3; ++j) s += (pts(i, j) - p.mean[j]) * p.components(k, j);
      EXPECT_NEAR(p.scores(i, k), s, 1e-10);
    }
  EXPECT_LT(max_abs_diff(p.components * p.components.transposed(), Matrix::identity(3)), 1e-10);
  const auto single = pca(Matrix{{1, 2}}, 1);
  EXPECT_DOUBLE_EQ(single.explained_variance[0], 0.0);
  EXPECT_DOUBLE_EQ(single.scores(0, 0), 0.0);
  EXPECT_THROW(pca(Matrix{{1, 2}}, 3), std::invalid_argument);
  EXPECT_THROW(pca(Matrix(0, 2), 1), std::invalid_argument);
}
