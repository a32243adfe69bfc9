#include "doctest.h"
#include "nbcrw.hpp"
#include "support/corpus.hpp"

using namespace nbcrw;

TEST_CASE("sym_eig small cases") {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  const auto e = sym_eig(m);
  CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
  Matrix bad(2, 2);
  bad << 0, 1, 2, 0;
  CHECK_THROWS_AS(sym_eig(bad), Error);
}

TEST_CASE("sym_eig reconstruction, orthonormality and trace") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng = make_stream(seed, 0);
    Matrix m(8, 8);
    for (Index i = 0; i < 8; ++i) {
      for (Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = 2.0 * uniform01(rng) - 1.0;
    }
    const auto e = sym_eig(m);
    const Matrix& v = e.eigenvectors;
    CHECK((v * e.eigenvalues.asDiagonal() * v.transpose() - m).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((v.transpose() * v - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(e.eigenvalues.sum() - m.trace()) < 1e-9 * 8);
    for (Index k = 1; k < 8; ++k) CHECK(e.eigenvalues(k) >= e.eigenvalues(k - 1));
    for (Index k = 0; k < 8; ++k) {
      const double res = (m * v.col(k) - e.eigenvalues(k) * v.col(k)).lpNorm<Eigen::Infinity>();
      CHECK(res <= 1e-12 * (1.0 + std::abs(e.eigenvalues(k))));
    }
  }
}

TEST_CASE("sym_eig is deterministic") {
  const Matrix a = make_rose({4, 4}).adjacency();
  const auto e1 = sym_eig(a);
  const auto e2 = sym_eig(a);
  CHECK(e1.eigenvalues == e2.eigenvalues);
  CHECK(e1.eigenvectors == e2.eigenvectors);
}

TEST_CASE("leading_eig on adjacency matrices") {
  const auto k4 = leading_eig(complete_graph(4).adjacency());
  CHECK(k4.converged);
  CHECK(k4.value == doctest::Approx(3.0));
  CHECK((k4.vector.array() - 0.5).abs().maxCoeff() < 1e-10);

  const auto star = leading_eig(star_graph(4).adjacency());
  CHECK(star.value == doctest::Approx(2.0));
  CHECK(star.vector(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(star.vector.norm() == doctest::Approx(1.0));
  CHECK(star.vector.minCoeff() > 0.0);

  CHECK_THROWS_AS(leading_eig(Matrix::Zero(3, 3)), Error);
}

TEST_CASE("leading_eig on the rose M matrix") {
  const Matrix m = build_m_matrix(make_rose({2, 4}));
  PowerOptions po;
  po.shift = 4.0;
  Vector start(14);
  start << make_rose({2, 4}).degree_vector(), Vector::Ones(7);
  po.start = start;
  const auto pair = leading_eig(m, po);
  CHECK(pair.converged);
  CHECK(pair.value == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-10));
}

TEST_CASE("leading_eig agrees with sym_eig on symmetric nonnegative matrices") {
  for (const auto& cg : testing::corpus()) {
    const Matrix a = cg.graph.adjacency();
    const double top = sym_eig(a).eigenvalues.maxCoeff();
    PowerOptions po;
    po.max_iter = 100000;
    const auto pair = leading_eig(a, po);
    CHECK_MESSAGE(std::abs(pair.value - top) <= 1e-8 * (1.0 + top), cg.name);
  }
}

TEST_CASE("leading_eig reports non-convergence instead of throwing") {
  PowerOptions po;
  po.max_iter = 2;
  const auto pair = leading_eig(make_rose({3, 4}).adjacency(), po);
  CHECK_FALSE(pair.converged);
  CHECK(pair.residual > 0.0);
}
