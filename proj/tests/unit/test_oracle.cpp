#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#ifdef LOGWALK_HAVE_EIGEN
#include <Eigen/Dense>
#endif

#include "corpus.hpp"
#include "logwalk/errors.hpp"
#include "logwalk/generators.hpp"
#include "logwalk/oracle.hpp"

using namespace logwalk;

namespace {

const double kHalfRoot = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("dense constructions on K2") {
    const auto k2 = complete_graph(2);
    const auto l = laplacian_dense(k2);
    CHECK(l(0, 0) == 1.0);
    CHECK(l(0, 1) == -1.0);
    CHECK(l(1, 0) == -1.0);
    CHECK(l(1, 1) == 1.0);
    const auto m = m_dense(k2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) CHECK(m(i, j) == 0.5);
    }
    const auto loop = WeightedGraph::from_edges(2, std::vector<Edge>{{0, 0, 2.0}, {1, 1, 1.0}});
    CHECK(laplacian_dense(loop)(0, 0) == 0.0);
    const auto isolated = WeightedGraph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}});
    CHECK(laplacian_dense(isolated)(2, 2) == 0.0);
    CHECK_THROWS_AS(transition_dense(isolated), IsolatedVertexError);
  }

  TEST_CASE("small spectra") {
    const auto k2 = spectrum(complete_graph(2));
    CHECK(std::abs(k2.values[0]) < 1e-12);
    CHECK(k2.values[1] == doctest::Approx(2.0));
    const auto k3 = spectrum(complete_graph(3));
    CHECK(std::abs(k3.values[0]) < 1e-12);
    CHECK(k3.values[1] == doctest::Approx(1.5));
    CHECK(k3.values[2] == doctest::Approx(1.5));
    const auto p3 = spectrum(path_graph(3));
    CHECK(std::abs(p3.values[0]) < 1e-12);
    CHECK(p3.values[1] == doctest::Approx(1.0));
    CHECK(p3.values[2] == doctest::Approx(2.0));
    CHECK(p3.graph_hash == path_graph(3).fingerprint());
  }

  TEST_CASE("pseudo-inverse examples") {
    const auto x = pseudo_inverse_apply(complete_graph(2), std::vector<double>{kHalfRoot, -kHalfRoot});
    CHECK(x[0] == doctest::Approx(0.5 * kHalfRoot));
    CHECK(x[1] == doctest::Approx(-0.5 * kHalfRoot));
    const std::vector<double> b{kHalfRoot, -kHalfRoot, 0.0};
    const auto y = pseudo_inverse_apply(complete_graph(3), b);
    for (std::size_t i = 0; i < 3; ++i) CHECK(y[i] == doctest::Approx(2.0 / 3.0 * b[i]).epsilon(1e-12));
    const auto v = std::vector<double>{0.3, -0.1, 0.7, 0.2};
    CHECK(dense_power_apply(cycle_graph(4), 0, v) == v);
  }

  TEST_CASE("spectrum invariants over the corpus") {
    for (const auto& [name, g] : testing::corpus()) {
      CAPTURE(name);
      const auto spec = spectrum(g);
      const std::size_t n = g.size();
      const auto l = laplacian_dense(g);
      DenseMatrix rebuilt(n, n);
      DenseMatrix gram(n, n);
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            rebuilt(i, j) += spec.values[c] * spec.vectors(i, c) * spec.vectors(j, c);
            gram(i, j) += spec.vectors(c, i) * spec.vectors(c, j);
          }
        }
      }
      CHECK(max_abs_diff(rebuilt, l) <= 1e-9);
      CHECK(max_abs_diff(gram, DenseMatrix::identity(n)) <= 1e-10);
      CHECK(spec.values.front() >= -1e-10);
      CHECK(spec.values.back() <= 2.0 + 1e-10);

      // u_1 against the closed form, up to sign.
      const auto u1 = spec.vector(0);
      const auto closed = kernel_vector(g);
      CHECK(std::abs(std::abs(dot(u1, closed)) - 1.0) <= 1e-8);

      // L = I - D^{1/2} P D^{-1/2}.
      const auto p = transition_dense(g);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double expected = (i == j ? 1.0 : 0.0) -
                                  std::sqrt(g.degree(i)) * p(i, j) / std::sqrt(g.degree(j));
          CHECK(std::abs(l(i, j) - expected) <= 1e-12);
        }
      }

      // Eigenvalues of M are 1 - lambda_i / 2.
      const auto m_spec = symmetric_eigen(m_dense(g));
      for (std::size_t c = 0; c < n; ++c) {
        CHECK(std::abs(m_spec.values[n - 1 - c] - (1.0 - spec.values[c] / 2.0)) <= 1e-10);
      }

      // L (L^+ b) is the image part of b.
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::vector<double> b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = std::sin(1.0 + 3.7 * i + 11.0 * seed);
        const auto x = pseudo_inverse_apply(spec, b);
        const auto lx = l.apply(x);
        const auto proj = project_to_image(g, b);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(lx[i] - proj[i]) <= 1e-8);
      }
    }
  }

  TEST_CASE("complete graphs attain n/(n-1)") {
    for (std::size_t n = 4; n <= 10; ++n) {
      CHECK(std::abs(lambda2_exact(complete_graph(n)) - static_cast<double>(n) / (n - 1.0)) <= 1e-9);
    }
  }

  TEST_CASE("cycle spectra") {
    for (std::size_t n : {4u, 5u, 6u, 9u}) {
      CHECK(lambda2_exact(cycle_graph(n)) ==
            doctest::Approx(1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(n))));
    }
  }

  TEST_CASE("binomial mixture equals M^k") {
    for (const auto& [name, g] : testing::corpus()) {
      if (g.size() > 12) continue;
      CAPTURE(name);
      const auto m = m_dense(g);
      for (std::uint64_t k = 0; k <= 8; ++k) {
        CHECK(max_abs_diff(binomial_mixture(g, k), matrix_power(m, k)) <= 1e-10);
      }
    }
  }

  TEST_CASE("truncated series examples") {
    const auto k2 = complete_graph(2);
    const std::vector<double> u2{kHalfRoot, -kHalfRoot};
    const auto s2 = series_eval(k2, u2, series_params(0.1, 0.5));
    CHECK(testing::l2_distance(s2, pseudo_inverse_apply(k2, u2)) <= 0.05);

    const auto k3 = complete_graph(3);
    const std::vector<double> b3{kHalfRoot, -kHalfRoot, 0.0};
    const auto s3 = series_eval(k3, b3, series_params(0.2, 1.0 / 6.0));
    CHECK(testing::l2_distance(s3, pseudo_inverse_apply(k3, b3)) <= 0.1);

    const auto p3 = path_graph(3);
    const auto b = testing::random_image_vector(p3, 12);
    const auto sp = series_eval(p3, b, series_params(0.1, 0.125));
    CHECK(testing::l2_distance(sp, pseudo_inverse_apply(p3, b)) <= 0.05);
  }

  TEST_CASE("eigenspace overlap") {
    const auto spec = spectrum(complete_graph(4));
    const std::vector<double> v{kHalfRoot, -kHalfRoot, 0.0, 0.0};
    CHECK(eigenspace_overlap(spec, v, 4.0 / 3.0) == doctest::Approx(1.0));
    CHECK(eigenspace_overlap(spec, v, 0.0) == doctest::Approx(0.0));
  }

  TEST_CASE("size limits and convergence guard") {
    CHECK_THROWS_AS(spectrum(cycle_graph(501)), SizeError);
    CHECK_THROWS_AS(series_eval(cycle_graph(201), std::vector<double>(201, 0.0), series_params(1.0, 1.0)),
                    SizeError);
    CHECK_THROWS_AS(lambda2_exact(WeightedGraph::from_edges(
                        4, std::vector<Edge>{{0, 1, 1.0}, {2, 3, 1.0}})),
                    DisconnectedError);
  }

#ifdef LOGWALK_HAVE_EIGEN
  TEST_CASE("Jacobi agrees with Eigen") {
    for (const auto& [name, g] : testing::corpus()) {
      CAPTURE(name);
      const std::size_t n = g.size();
      Eigen::MatrixXd l = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (const auto& e : g.edges()) {
        const auto u = static_cast<Eigen::Index>(e.u);
        const auto v = static_cast<Eigen::Index>(e.v);
        if (e.u == e.v) continue;
        const double w = e.weight / std::sqrt(g.degree(e.u) * g.degree(e.v));
        l(u, v) -= w;
        l(v, u) -= w;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        l(ii, ii) += 1.0 - g.weight(i, i) / g.degree(i);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
      const auto spec = spectrum(g);
      for (std::size_t c = 0; c < n; ++c) {
        CHECK(std::abs(spec.values[c] - solver.eigenvalues()(static_cast<Eigen::Index>(c))) <= 1e-10);
      }
    }
  }
#endif

  TEST_CASE("Jacobi on a 300-vertex cycle") {
    const auto spec = spectrum(cycle_graph(300));
    CHECK(spec.values[1] == doctest::Approx(1.0 - std::cos(2.0 * std::numbers::pi / 300.0)).epsilon(1e-8));
    CHECK(spec.sweeps <= 100);
  }
}
