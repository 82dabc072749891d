#include "gepc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gepc/rng.hpp"

namespace gepc::numerics {

namespace {

double sign_or_one(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Flip column j of each matrix so that the largest-magnitude entry of `ref` is positive.
void canonical_sign(Matrix& ref, std::size_t j, Matrix* other = nullptr) {
  double best = 0.0;
  for (std::size_t i = 0; i < ref.rows(); ++i)
    if (std::abs(ref(i, j)) > std::abs(best) + 1e-12) best = ref(i, j);
  if (best >= 0.0) return;
  for (std::size_t i = 0; i < ref.rows(); ++i) ref(i, j) = -ref(i, j);
  if (other)
    for (std::size_t i = 0; i < other->rows(); ++i) (*other)(i, j) = -(*other)(i, j);
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& cols) {
  Matrix out(m.rows(), cols.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(i, cols[j]);
  return out;
}

double column_dot(const Matrix& m, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, a) * m(i, b);
  return s;
}

// Modified Gram-Schmidt with one reorthogonalization pass. Columns that
// vanish (rank deficiency) are replaced by unit vectors orthogonal to the rest.
void orthonormalize_columns(Matrix& q, std::size_t first = 0) {
  const std::size_t n = q.rows();
  std::size_t next_basis = 0;
  for (std::size_t j = first; j < q.cols(); ++j) {
    const double original = std::sqrt(column_dot(q, j, j));
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t p = 0; p < j; ++p) {
        const double r = column_dot(q, p, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= r * q(i, p);
      }
    double norm = std::sqrt(column_dot(q, j, j));
    while (norm <= 1e-10 * std::max(original, 1.0) || original == 0.0) {
      if (next_basis >= n) throw std::logic_error("orthonormalize_columns: cannot complete basis");
      for (std::size_t i = 0; i < n; ++i) q(i, j) = i == next_basis ? 1.0 : 0.0;
      ++next_basis;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t p = 0; p < j; ++p) {
          const double r = column_dot(q, p, j);
          for (std::size_t i = 0; i < n; ++i) q(i, j) -= r * q(i, p);
        }
      norm = std::sqrt(column_dot(q, j, j));
      if (norm > 1e-6) break;
    }
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
}

// One-sided Jacobi on the columns of g (rows >= cols). On return g holds U*S and v the rotations.
void hestenes(Matrix& g, Matrix& v) {
  const std::size_t n = g.cols();
  v = Matrix::identity(n);
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double alpha = column_dot(g, i, i);
        const double beta = column_dot(g, j, j);
        const double gamma = column_dot(g, i, j);
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = sign_or_one(zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < g.rows(); ++r) {
          const double gi = g(r, i), gj = g(r, j);
          g(r, i) = c * gi - s * gj;
          g(r, j) = s * gi + c * gj;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vi = v(r, i), vj = v(r, j);
          v(r, i) = c * vi - s * vj;
          v(r, j) = s * vi + c * vj;
        }
      }
    }
    if (!rotated) return;
  }
}

}  // namespace

EigenResult symmetric_eigen(const Matrix& input, double tol, std::size_t max_sweeps) {
  if (input.rows() != input.cols()) throw std::invalid_argument("symmetric_eigen: matrix not square");
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);
  const double scale = std::max(frobenius_norm(a), std::numeric_limits<double>::min());
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = sign_or_one(theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  const auto order = descending_order(diag);
  EigenResult r;
  r.vectors = select_columns(v, order);
  for (std::size_t j : order) r.values.push_back(diag[j]);
  for (std::size_t j = 0; j < n; ++j) canonical_sign(r.vectors, j);
  return r;
}

SvdResult jacobi_svd(const Matrix& m) {
  const bool wide = m.rows() < m.cols();
  Matrix g = wide ? m.transposed() : m;
  Matrix rot;
  hestenes(g, rot);
  const std::size_t n = g.cols();
  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(column_dot(g, j, j));
  const auto order = descending_order(sigma);
  Matrix left = select_columns(g, order);
  Matrix right = select_columns(rot, order);
  SvdResult r;
  const double cutoff = (sigma.empty() ? 0.0 : sigma[order[0]]) * 1e-14;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = sigma[order[j]];
    r.values.push_back(s);
    if (s > cutoff && s > 0.0) {
      for (std::size_t i = 0; i < left.rows(); ++i) left(i, j) /= s;
      ++rank;
    } else {
      r.values.back() = s;  // keep the tiny value; vector completed below
      for (std::size_t i = 0; i < left.rows(); ++i) left(i, j) = 0.0;
    }
  }
  orthonormalize_columns(left, rank);
  for (std::size_t j = 0; j < n; ++j) canonical_sign(right, j, &left);
  if (wide) {
    r.u = std::move(right);
    r.v = std::move(left);
  } else {
    r.u = std::move(left);
    r.v = std::move(right);
  }
  return r;
}

SvdResult truncated_svd(const Matrix& m, std::size_t k, const SvdOptions& options) {
  const std::size_t min_dim = std::min(m.rows(), m.cols());
  if (k == 0 || k > min_dim) throw std::invalid_argument("truncated_svd: k must lie in [1, min(rows, cols)]");
  const std::size_t l = std::min(k + options.oversample, min_dim);

  Rng rng(options.seed);
  Matrix omega(m.cols(), l);
  for (double& x : omega.values()) x = rng.normal();
  Matrix q = m * omega;
  orthonormalize_columns(q);
  const Matrix mt = m.transposed();
  for (std::size_t it = 0; it < options.power_iterations; ++it) {
    Matrix z = mt * q;
    orthonormalize_columns(z);
    q = m * z;
    orthonormalize_columns(q);
  }
  const Matrix b = transpose_times(q, m);  // l x cols
  SvdResult small = jacobi_svd(b);         // b = Ub S Vbᵀ
  Matrix u = q * small.u;

  std::vector<std::size_t> keep(k);
  std::iota(keep.begin(), keep.end(), 0);
  SvdResult r;
  r.u = select_columns(u, keep);
  r.v = select_columns(small.v, keep);
  r.values.assign(small.values.begin(), small.values.begin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

Matrix euclidean_distances(const Matrix& points) {
  const std::size_t n = points.rows();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < points.cols(); ++c) {
        const double diff = points(i, c) - points(j, c);
        s += diff * diff;
      }
      d(i, j) = d(j, i) = std::sqrt(s);
    }
  return d;
}

Matrix cosine_distances(const Matrix& rows) {
  const std::size_t n = rows.rows();
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (double v : rows.row(i)) s += v * v;
    norms[i] = std::sqrt(s);
  }
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double dist = 1.0;
      if (norms[i] > 0.0 && norms[j] > 0.0) {
        double dot = 0.0;
        const auto a = rows.row(i), b = rows.row(j);
        for (std::size_t c = 0; c < a.size(); ++c) dot += a[c] * b[c];
        dist = std::clamp(1.0 - dot / (norms[i] * norms[j]), 0.0, 2.0);
      }
      d(i, j) = d(j, i) = dist;
    }
  return d;
}

EmbeddingMap classical_mds(const Matrix& distances, std::size_t d) {
  const std::size_t n = distances.rows();
  if (distances.cols() != n) throw std::invalid_argument("classical_mds: matrix not square");
  if (n < 2) throw std::invalid_argument("classical_mds: need at least two points");
  if (d == 0 || d > n - 1) throw std::invalid_argument("classical_mds: d must lie in [1, n - 1]");
  double max_abs = 0.0;
  for (double v : distances.values()) max_abs = std::max(max_abs, std::abs(v));
  const double tol = 1e-12 * std::max(1.0, max_abs);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(distances(i, i)) > tol) throw std::invalid_argument("classical_mds: non-zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(distances(i, j) >= 0.0)) throw std::invalid_argument("classical_mds: negative or NaN distance");
      if (std::abs(distances(i, j) - distances(j, i)) > tol) throw std::invalid_argument("classical_mds: asymmetric input");
    }
  }

  Matrix sq(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sq(i, j) = distances(i, j) * distances(i, j);
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_mean[i] += sq(i, j);
    grand += row_mean[i];
    row_mean[i] /= static_cast<double>(n);
  }
  grand /= static_cast<double>(n * n);
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = -0.5 * (sq(i, j) - row_mean[i] - row_mean[j] + grand);

  const auto eig = symmetric_eigen(b);
  EmbeddingMap out;
  out.coordinates = Matrix(n, d);
  for (std::size_t j = 0; j < d; ++j) {
    out.eigenvalues.push_back(eig.values[j]);
    const double scale = std::sqrt(std::max(eig.values[j], 0.0));
    for (std::size_t i = 0; i < n; ++i) out.coordinates(i, j) = scale * eig.vectors(i, j);
  }

  const Matrix fitted = euclidean_distances(out.coordinates);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = distances(i, j) - fitted(i, j);
      num += r * r;
      den += distances(i, j) * distances(i, j);
    }
  out.stress = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return out;
}

namespace {

double reconstruction_error(const Matrix& v, const Matrix& w, const Matrix& h) {
  const Matrix wh = w * h;
  double s = 0.0;
  for (std::size_t i = 0; i < v.values().size(); ++i) {
    const double r = v.values()[i] - wh.values()[i];
    s += r * r;
  }
  return std::sqrt(s);
}

void multiplicative_step(Matrix& target, const Matrix& numerator, const Matrix& denominator) {
  for (std::size_t i = 0; i < target.values().size(); ++i) {
    const double den = denominator.values()[i];
    if (den > 0.0) target.values()[i] *= numerator.values()[i] / den;
  }
}

}  // namespace

TopicModel nmf(const Matrix& v, const NmfOptions& options) {
  if (options.k == 0) throw std::invalid_argument("nmf: k must be positive");
  if (v.empty()) throw std::invalid_argument("nmf: empty matrix");
  double sum = 0.0;
  for (double x : v.values()) {
    if (!(x >= 0.0)) throw std::invalid_argument("nmf: negative or NaN entry");
    sum += x;
  }
  const std::size_t k = options.k;
  const double mean = sum / static_cast<double>(v.values().size());
  const double scale = std::sqrt(mean / static_cast<double>(k));

  Rng rng(options.seed);
  Matrix w(v.rows(), k), h(k, v.cols());
  for (double& x : w.values()) x = scale * rng.uniform();
  for (double& x : h.values()) x = scale * rng.uniform();

  TopicModel model;
  model.error_history.push_back(reconstruction_error(v, w, h));
  for (std::size_t it = 0; it < options.max_iters; ++it) {
    {
      const Matrix num = transpose_times(w, v);
      const Matrix den = transpose_times(w, w) * h;
      multiplicative_step(h, num, den);
    }
    {
      const Matrix ht = h.transposed();
      const Matrix num = v * ht;
      const Matrix den = w * (h * ht);
      multiplicative_step(w, num, den);
    }
    const double err = reconstruction_error(v, w, h);
    const double prev = model.error_history.back();
    model.error_history.push_back(err);
    model.iterations = it + 1;
    if (prev == 0.0 || (prev - err) / prev < options.tol) break;
  }

  model.doc_topic = w;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    auto row = model.doc_topic.row(i);
    const double s = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& x : row) x = s > 0.0 ? x / s : 1.0 / static_cast<double>(k);
  }
  model.weights = std::move(w);
  model.topic_term = std::move(h);
  for (std::size_t t = 0; t < k; ++t) {
    const auto row = model.topic_term.row(t);
    std::vector<std::size_t> idx(row.size());
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t top = std::min(options.top_terms, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(top), idx.end(),
                      [&](std::size_t a, std::size_t b) { return row[a] > row[b] || (row[a] == row[b] && a < b); });
    idx.resize(top);
    model.top_terms.push_back(std::move(idx));
  }
  return model;
}

TopicModel nmf(const Matrix& v, std::size_t k, std::size_t max_iters, double tol, std::uint64_t seed) {
  NmfOptions o;
  o.k = k;
  o.max_iters = max_iters;
  o.tol = tol;
  o.seed = seed;
  return nmf(v, o);
}

PcaResult pca(const Matrix& points, std::size_t k) {
  const std::size_t n = points.rows(), m = points.cols();
  if (k == 0 || k > m) throw std::invalid_argument("pca: k must lie in [1, columns]");
  if (n == 0) throw std::invalid_argument("pca: no points");
  PcaResult r;
  r.mean.assign(m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) r.mean[j] += points(i, j);
  for (double& x : r.mean) x /= static_cast<double>(n);
  Matrix centered = points;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) centered(i, j) -= r.mean[j];
  Matrix cov = transpose_times(centered, centered);
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (double& x : cov.values()) x /= denom;

  const auto eig = symmetric_eigen(cov);
  double total = 0.0;
  for (double x : eig.values) total += std::max(x, 0.0);
  r.components = Matrix(k, m);
  for (std::size_t c = 0; c < k; ++c) {
    const double var = std::max(eig.values[c], 0.0);
    r.explained_variance.push_back(var);
    r.explained_ratio.push_back(total > 0.0 ? var / total : 0.0);
    for (std::size_t j = 0; j < m; ++j) r.components(c, j) = eig.vectors(j, c);
  }
  r.scores = centered * r.components.transposed();
  return r;
}

}  // namespace gepc::numerics
