#include "logwalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "logwalk/errors.hpp"
#include "logwalk/estimators.hpp"

namespace logwalk {

namespace {

constexpr std::size_t kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-12;

void require_size(const WeightedGraph& g, std::size_t limit) {
  if (g.size() > limit) {
    throw SizeError("dense oracle limited to " + std::to_string(limit) + " vertices, got " +
                    std::to_string(g.size()));
  }
}

double off_diagonal_mass(const DenseMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& other) const {
  if (cols_ != other.rows_) throw DomainError("matrix shapes do not match");
  DenseMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

std::vector<double> DenseMatrix::apply(std::span<const double> v) const {
  if (v.size() != cols_) throw DomainError("vector length does not match matrix");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> DenseMatrix::apply_left(std::span<const double> v) const {
  if (v.size() != rows_) throw DomainError("vector length does not match matrix");
  std::vector<double> out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (v[i] == 0.0) continue;
    for (std::size_t j = 0; j < cols_; ++j) out[j] += v[i] * (*this)(i, j);
  }
  return out;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix shapes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  }
  return worst;
}

DenseMatrix laplacian_dense(const WeightedGraph& g) {
  require_size(g, kOracleMaxVertices);
  const std::size_t n = g.size();
  DenseMatrix l(n, n);
  for (Vertex i = 0; i < n; ++i) {
    const double di = g.degree(i);
    if (di != 0.0) l(i, i) = 1.0;
    for (const auto& nb : g.neighbors(i)) {
      if (nb.vertex == i) {
        l(i, i) -= nb.weight / di;
      } else {
        l(i, nb.vertex) = -nb.weight / std::sqrt(di * g.degree(nb.vertex));
      }
    }
  }
  return l;
}

DenseMatrix transition_dense(const WeightedGraph& g) {
  require_size(g, kOracleMaxVertices);
  require_no_isolated_vertex(g);
  const std::size_t n = g.size();
  DenseMatrix p(n, n);
  for (Vertex i = 0; i < n; ++i) {
    for (const auto& nb : g.neighbors(i)) p(i, nb.vertex) = nb.weight / g.degree(i);
  }
  return p;
}

DenseMatrix m_dense(const WeightedGraph& g) {
  const DenseMatrix p = transition_dense(g);
  const std::size_t n = g.size();
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double si = std::sqrt(g.degree(i));
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = 0.5 * ((i == j ? 1.0 : 0.0) + si * p(i, j) / std::sqrt(g.degree(j)));
    }
  }
  return m;
}

DenseMatrix matrix_power(const DenseMatrix& a, std::uint64_t k) {
  if (a.rows() != a.cols()) throw DomainError("matrix power needs a square matrix");
  DenseMatrix result = DenseMatrix::identity(a.rows());
  for (std::uint64_t s = 0; s < k; ++s) result = result * a;
  return result;
}

std::vector<double> DenseSpectrum::vector(std::size_t c) const {
  std::vector<double> v(vectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, c);
  return v;
}

DenseSpectrum symmetric_eigen(const DenseMatrix& input) {
  if (input.rows() != input.cols()) throw DomainError("eigen-decomposition needs a square matrix");
  const std::size_t n = input.rows();
  DenseMatrix a = input;
  DenseMatrix v = DenseMatrix::identity(n);
  std::size_t sweep = 0;
  for (;; ++sweep) {
    if (off_diagonal_mass(a) <= kOffDiagonalTolerance) break;
    if (sweep == kMaxSweeps) throw ConvergenceError("Jacobi did not converge in 100 sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  DenseSpectrum out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, c) = v(i, order[c]);
  }
  return out;
}

DenseSpectrum spectrum(const WeightedGraph& g) {
  auto spec = symmetric_eigen(laplacian_dense(g));
  spec.graph_hash = g.fingerprint();
  return spec;
}

std::vector<double> pseudo_inverse_apply(const DenseSpectrum& spec, std::span<const double> b) {
  const std::size_t n = spec.values.size();
  if (b.size() != n) throw DomainError("b has the wrong length");
  std::vector<double> x(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    const double value = spec.values[c];
    if (value < kNullEigenvalue) continue;
    double coeff = 0.0;
    for (std::size_t i = 0; i < n; ++i) coeff += spec.vectors(i, c) * b[i];
    coeff /= value;
    for (std::size_t i = 0; i < n; ++i) x[i] += coeff * spec.vectors(i, c);
  }
  return x;
}

std::vector<double> pseudo_inverse_apply(const WeightedGraph& g, std::span<const double> b) {
  return pseudo_inverse_apply(spectrum(g), b);
}

double lambda2_exact(const DenseSpectrum& spec) {
  for (double value : spec.values) {
    if (value >= kNullEigenvalue) return value;
  }
  throw NotApplicableError("spectrum has no non-zero eigenvalue");
}

double lambda2_exact(const WeightedGraph& g) {
  require_connected(g);
  if (g.size() < 2) throw NotApplicableError("a single vertex has no spectral gap");
  return lambda2_exact(spectrum(g));
}

std::vector<double> dense_power_apply(const WeightedGraph& g, std::uint64_t k,
                                      std::span<const double> v) {
  const DenseMatrix m = m_dense(g);
  if (v.size() != g.size()) throw DomainError("vector has the wrong length");
  std::vector<double> x(v.begin(), v.end());
  for (std::uint64_t s = 0; s < k; ++s) x = m.apply(x);
  return x;
}

std::vector<double> transition_power_row(const WeightedGraph& g, Vertex start, std::uint64_t k) {
  if (start >= g.size()) throw IndexError("start vertex out of range");
  require_no_isolated_vertex(g);
  std::vector<double> row(g.size(), 0.0);
  row[start] = 1.0;
  std::vector<double> next(g.size());
  for (std::uint64_t s = 0; s < k; ++s) {
    std::fill(next.begin(), next.end(), 0.0);
    for (Vertex i = 0; i < g.size(); ++i) {
      if (row[i] == 0.0) continue;
      const double scale = row[i] / g.degree(i);
      for (const auto& nb : g.neighbors(i)) next[nb.vertex] += scale * nb.weight;
    }
    row.swap(next);
  }
  return row;
}

DenseMatrix binomial_mixture(const WeightedGraph& g, std::uint64_t k) {
  const DenseMatrix p = transition_dense(g);
  const std::size_t n = g.size();
  // Row k of Pascal's triangle divided by 2^k, built by repeated halving.
  std::vector<double> coeff{1.0};
  for (std::uint64_t level = 0; level < k; ++level) {
    std::vector<double> next(coeff.size() + 1, 0.0);
    for (std::size_t s = 0; s < coeff.size(); ++s) {
      next[s] += 0.5 * coeff[s];
      next[s + 1] += 0.5 * coeff[s];
    }
    coeff.swap(next);
  }
  DenseMatrix sum(n, n);
  DenseMatrix power = DenseMatrix::identity(n);
  for (std::uint64_t s = 0; s <= k; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) sum(i, j) += coeff[s] * power(i, j);
    }
    if (s < k) power = power * p;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sum(i, j) *= std::sqrt(g.degree(i)) / std::sqrt(g.degree(j));
    }
  }
  return sum;
}

std::vector<double> series_weights(const SeriesParams& params) {
  std::vector<double> weights(params.max_power, 0.0);
  const double h = static_cast<double>(params.horizon) / static_cast<double>(params.grid);
  const double kmax = static_cast<double>(params.max_power);
  for (std::uint64_t j = 1; j <= params.grid; ++j) {
    const double s = static_cast<double>(j) * h;
    // Terms are generated outward from the mode; 1e-25 of the peak is far
    // below double resolution of the accumulated weights.
    const double mode = std::floor(s);
    const double peak = poisson_pmf_exact(s, static_cast<std::uint64_t>(mode));
    const double floor_value = 1e-25 * peak;
    double p = peak;
    for (double k = mode; k < kmax && p >= floor_value; k += 1.0) {
      weights[static_cast<std::size_t>(k)] += h * p;
      p = p * s / (k + 1.0);
    }
    p = peak;
    for (double k = mode - 1.0; k >= 0.0; k -= 1.0) {
      p = p * (k + 1.0) / s;
      if (p < floor_value) break;
      if (k < kmax) weights[static_cast<std::size_t>(k)] += h * p;
    }
  }
  return weights;
}

std::vector<double> series_eval(const WeightedGraph& g, std::span<const double> b,
                                std::span<const double> weights) {
  require_size(g, kSeriesMaxVertices);
  if (b.size() != g.size()) throw DomainError("b has the wrong length");
  const DenseMatrix p = transition_dense(g);
  const std::size_t n = g.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[i] / std::sqrt(g.degree(i));
  std::vector<double> acc(n, 0.0);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += weights[k] * y[i];
    if (k + 1 < weights.size()) y = p.apply(y);
  }
  for (std::size_t i = 0; i < n; ++i) acc[i] *= std::sqrt(g.degree(i));
  return acc;
}

std::vector<double> series_eval(const WeightedGraph& g, std::span<const double> b,
                                const SeriesParams& params) {
  require_size(g, kSeriesMaxVertices);
  return series_eval(g, b, series_weights(params));
}

double eigenspace_overlap(const DenseSpectrum& spec, std::span<const double> v, double value,
                          double tol) {
  const std::size_t n = spec.values.size();
  if (v.size() != n) throw DomainError("vector has the wrong length");
  double sum = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    if (std::abs(spec.values[c] - value) > tol) continue;
    double coeff = 0.0;
    for (std::size_t i = 0; i < n; ++i) coeff += spec.vectors(i, c) * v[i];
    sum += coeff * coeff;
  }
  return std::sqrt(sum);
}

}  // namespace logwalk
