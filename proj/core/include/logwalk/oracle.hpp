#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "logwalk/graph.hpp"
#include "logwalk/solver.hpp"

namespace logwalk {

/// Largest graph the dense routines accept.
inline constexpr std::size_t kOracleMaxVertices = 500;
/// Largest graph series_eval accepts.
inline constexpr std::size_t kSeriesMaxVertices = 200;
/// Eigenvalues below this are treated as zero.
inline constexpr double kNullEigenvalue = 1e-9;

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  DenseMatrix operator*(const DenseMatrix& other) const;
  std::vector<double> apply(std::span<const double> v) const;
  /// v^T A, i.e. A^T v.
  std::vector<double> apply_left(std::span<const double> v) const;
  DenseMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

/// Normalized Laplacian: 1 - w(i,i)/d_i on the diagonal (0 when d_i = 0),
/// -w(i,j)/sqrt(d_i d_j) off it.
DenseMatrix laplacian_dense(const WeightedGraph& g);
/// P[i, j] = w(i, j) / d_i. Throws IsolatedVertexError.
DenseMatrix transition_dense(const WeightedGraph& g);
/// (I + D^{1/2} P D^{-1/2}) / 2.
DenseMatrix m_dense(const WeightedGraph& g);

DenseMatrix matrix_power(const DenseMatrix& a, std::uint64_t k);

struct DenseSpectrum {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column c is the eigenvector of values[c]
  std::uint64_t graph_hash = 0;
  std::size_t sweeps = 0;

  std::vector<double> vector(std::size_t c) const;
};

/// Cyclic-by-row Jacobi on a symmetric matrix. Sweeps until the
/// off-diagonal Frobenius mass is at most 1e-12; ConvergenceError after
/// 100 sweeps.
DenseSpectrum symmetric_eigen(const DenseMatrix& a);

/// Spectrum of the normalized Laplacian. SizeError above 500 vertices.
DenseSpectrum spectrum(const WeightedGraph& g);

/// L^+ b by eigen-expansion over eigenvalues >= 1e-9. The kernel part of b
/// is dropped, which is the same as projecting b onto Im(L) first.
std::vector<double> pseudo_inverse_apply(const DenseSpectrum& spec, std::span<const double> b);
std::vector<double> pseudo_inverse_apply(const WeightedGraph& g, std::span<const double> b);

/// Smallest eigenvalue >= 1e-9. Throws DisconnectedError.
double lambda2_exact(const WeightedGraph& g);
double lambda2_exact(const DenseSpectrum& spec);

/// M^k v by repeated multiplication.
std::vector<double> dense_power_apply(const WeightedGraph& g, std::uint64_t k,
                                      std::span<const double> v);

/// Row `start` of P^k.
std::vector<double> transition_power_row(const WeightedGraph& g, Vertex start, std::uint64_t k);

/// D^{1/2} (sum_s 2^{-k} C(k, s) P^s) D^{-1/2}.
DenseMatrix binomial_mixture(const WeightedGraph& g, std::uint64_t k);

/// Series weights (T/N) sum_j P_{jT/N}(k) for k < K.
std::vector<double> series_weights(const SeriesParams& params);

/// (T/N) sum_j sum_k P_{jT/N}(k) D^{1/2} P^k D^{-1/2} b, evaluated densely.
/// SizeError above 200 vertices.
std::vector<double> series_eval(const WeightedGraph& g, std::span<const double> b,
                                const SeriesParams& params);
std::vector<double> series_eval(const WeightedGraph& g, std::span<const double> b,
                                std::span<const double> weights);

/// Norm of the projection of v onto the eigenspace of eigenvalues within
/// `tol` of `value`.
double eigenspace_overlap(const DenseSpectrum& spec, std::span<const double> v, double value,
                          double tol = 1e-8);

}  // namespace logwalk
