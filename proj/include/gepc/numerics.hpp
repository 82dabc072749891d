#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gepc/matrix.hpp"

namespace gepc::numerics {

struct EigenResult {
  std::vector<double> values;  // descending
  Matrix vectors;              // column j pairs with values[j]
};

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Each eigenvector
/// is signed so that its largest-magnitude entry is positive.
EigenResult symmetric_eigen(const Matrix& a, double tol = 1e-14, std::size_t max_sweeps = 100);

struct SvdResult {
  Matrix u;                     // rows x k, orthonormal columns
  std::vector<double> values;   // k, non-increasing
  Matrix v;                     // cols x k, orthonormal columns
};

struct SvdOptions {
  std::size_t oversample = 10;
  std::size_t power_iterations = 4;
  std::uint64_t seed = 0;
};

/// Randomized range finder with power iterations, then a one-sided Jacobi SVD
/// of the projected matrix. Exact up to rounding when k + oversample covers
/// min(rows, cols).
SvdResult truncated_svd(const Matrix& m, std::size_t k, const SvdOptions& options = {});

/// Singular values of a small dense matrix (one-sided Jacobi).
SvdResult jacobi_svd(const Matrix& m);

struct EmbeddingMap {
  Matrix coordinates;              // n x d
  double stress = 0.0;
  std::vector<double> eigenvalues; // top d, before clamping
};

/// Torgerson scaling of a distance matrix.
EmbeddingMap classical_mds(const Matrix& distances, std::size_t d);

/// Pairwise Euclidean distances between the rows of `points`.
Matrix euclidean_distances(const Matrix& points);

/// 1 - cosine similarity between rows (zero rows are at distance 1 from all others).
Matrix cosine_distances(const Matrix& rows);

struct NmfOptions {
  std::size_t k = 20;
  std::size_t max_iters = 500;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::size_t top_terms = 20;
};

struct TopicModel {
  Matrix doc_topic;   // row-normalized
  Matrix topic_term;  // k x terms
  Matrix weights;     // unnormalized document factor
  std::vector<std::vector<std::size_t>> top_terms;  // column indices, highest weight first
  std::vector<double> error_history;                // Frobenius error after init and each iteration
  std::size_t iterations = 0;

  double final_error() const { return error_history.back(); }
};

/// Lee-Seung multiplicative updates on the Frobenius objective.
TopicModel nmf(const Matrix& v, const NmfOptions& options);
TopicModel nmf(const Matrix& v, std::size_t k, std::size_t max_iters, double tol, std::uint64_t seed);

struct PcaResult {
  Matrix components;                    // k x m, orthonormal rows
  std::vector<double> explained_variance;
  std::vector<double> explained_ratio;
  Matrix scores;                        // n x k
  std::vector<double> mean;
};

PcaResult pca(const Matrix& points, std::size_t k);

}  // namespace gepc::numerics
