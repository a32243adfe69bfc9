#include <sstream>

#include "doctest.h"
#include "nbcrw.hpp"
#include "support/corpus.hpp"

using namespace nbcrw;

TEST_CASE("parse triangle") {
  const auto g = parse_edge_list("0 1\n1 2\n2 0");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(0) == 2);
}

TEST_CASE("parse collapses duplicates with one-based ids") {
  int warnings = 0;
  ParseOptions opts;
  opts.index_base = 1;
  opts.on_warning = [&](std::size_t, const std::string&) { ++warnings; };
  const auto g = parse_edge_list("1 2\n2 1", opts);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.duplicates_collapsed() == 1);
  CHECK(warnings == 1);
  CHECK(g.label(0) == 1);
  CHECK(g.find_label(2) == 1);
}

TEST_CASE("parse rejects self-loops, junk and out-of-range ids") {
  auto code_of = [](std::string_view text, ParseOptions opts = {}) {
    try {
      parse_edge_list(text, opts);
    } catch (const ParseError& e) {
      return static_cast<int>(e.line());
    }
    return -1;
  };
  CHECK(code_of("0 0") == 1);
  CHECK(code_of("0 1\n1 x") == 2);
  CHECK(code_of("0 1 2") == 1);
  CHECK(code_of("%N 2\n0 5") == 2);
  ParseOptions one;
  one.index_base = 1;
  CHECK(code_of("0 1", one) == 1);
}

TEST_CASE("parse comments, blank lines, commas and node-count header") {
  ParseOptions opts;
  opts.delimiter = Delimiter::comma;
  const auto g = parse_edge_list("# header\n%N 5\n\n0,1  # trailing\n1,2\n", opts);
  CHECK(g.node_count() == 5);
  CHECK(g.edge_count() == 2);
  const auto v = validate(g);
  CHECK_FALSE(v.connected);
  CHECK(v.component_count == 3);
}

TEST_CASE("edge list round trip preserves labels") {
  ParseOptions opts;
  opts.index_base = 1;
  const auto g = parse_edge_list("1 2\n2 3\n3 1\n3 4\n", opts);
  std::ostringstream out;
  const std::string comments[] = {"model test"};
  write_edge_list(out, g, comments);
  CHECK(out.str().rfind("# model test\n", 0) == 0);
  const auto h = parse_edge_list(out.str(), opts);
  CHECK(h.node_count() == g.node_count());
  CHECK(std::equal(h.edges().begin(), h.edges().end(), g.edges().begin(), g.edges().end()));
  CHECK(h.labels() == g.labels());
}

TEST_CASE("validate flags") {
  const auto p3 = path_graph(3);
  CHECK(validate(p3).connected);
  CHECK(validate(p3).is_tree);
  CHECK(validate(complete_graph(3)).connected);
  CHECK_FALSE(validate(complete_graph(3)).is_tree);
  const Edge two[] = {{0, 1}, {2, 3}};
  const auto g = Graph::from_edges(4, two);
  CHECK_FALSE(validate(g).connected);
  CHECK_FALSE(validate(g).is_tree);
  CHECK(validate(g).min_degree == 1);
}

TEST_CASE("from_edges rejects self-loops and bad ids") {
  const Edge loop[] = {{1, 1}};
  CHECK_THROWS_AS(Graph::from_edges(2, loop), Error);
  const Edge far[] = {{0, 7}};
  CHECK_THROWS_AS(Graph::from_edges(3, far), Error);
}

TEST_CASE("adjacency and degree invariants on random edge lists") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng = make_stream(seed, 99);
    std::vector<Edge> edges;
    const std::size_t n = 2 + uniform_index(rng, 30);
    for (int k = 0; k < 60; ++k) {
      const auto u = static_cast<NodeId>(uniform_index(rng, n));
      const auto v = static_cast<NodeId>(uniform_index(rng, n));
      if (u != v) edges.push_back({u, v});
    }
    const auto g = Graph::from_edges(n, edges);
    const Matrix a = g.adjacency();
    CHECK(a.isApprox(a.transpose()));
    CHECK(a.diagonal().isZero(0.0));
    CHECK(a.rowwise().sum().isApprox(g.degree_vector()));
    CHECK(g.degree_vector().sum() == doctest::Approx(2.0 * g.edge_count()));
  }
}

TEST_CASE("laplacian spectra") {
  auto eig = [](const Graph& g) { return sym_eig(laplacian(g)).eigenvalues; };
  const Vector k3 = eig(complete_graph(3));
  CHECK(k3(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(k3(1) == doctest::Approx(3.0));
  CHECK(k3(2) == doctest::Approx(3.0));
  const Vector p3 = eig(path_graph(3));
  CHECK(std::abs(p3(0)) < 1e-12);
  CHECK(p3(1) == doctest::Approx(1.0));
  CHECK(p3(2) == doctest::Approx(3.0));
  const Vector e = eig(path_graph(2));
  CHECK(e(1) == doctest::Approx(2.0));
}

TEST_CASE("laplacian zero multiplicity counts components") {
  const Edge edges[] = {{0, 1}, {1, 2}, {3, 4}, {5, 6}, {6, 7}, {7, 5}};
  const auto g = Graph::from_edges(9, edges);
  const auto eig = sym_eig(laplacian(g));
  int zeros = 0;
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) zeros += std::abs(eig.eigenvalues(k)) < 1e-10;
  CHECK(zeros == 4);
  CHECK(validate(g).component_count == 4);
  CHECK(largest_component(g).node_count() == 3);
}

TEST_CASE("weighted graph from centrality") {
  const auto k3 = complete_graph(3);
  const auto w = weighted_from_centrality(k3, Vector::Ones(3));
  CHECK(w.total_strength == doctest::Approx(6.0));
  CHECK(w.strengths(1) == doctest::Approx(2.0));
  CHECK(weighted_laplacian(w).isApprox(laplacian(k3)));

  const auto p = path_graph(3);
  Vector x(3);
  x << 1, 2, 3;
  const auto wp = weighted_from_centrality(p, x);
  CHECK(wp.weights(0, 1) == 2.0);
  CHECK(wp.weights(1, 2) == 6.0);
  CHECK(wp.total_strength == 16.0);
  Matrix expected(3, 3);
  expected << 2, -2, 0, -2, 8, -6, 0, -6, 6;
  CHECK(weighted_laplacian(wp) == expected);

  const auto zero = weighted_from_centrality(p, Vector::Zero(3));
  CHECK(zero.weights.isZero(0.0));
  CHECK(weighted_laplacian(zero).isZero(0.0));

  Vector neg(3);
  neg << 1, -1, 1;
  CHECK_THROWS_AS(weighted_from_centrality(p, neg), Error);
}

TEST_CASE("strengths are row sums of W on the corpus") {
  for (const auto& cg : testing::corpus()) {
    const auto c = nb_centrality(cg.graph);
    const auto w = weighted_from_centrality(cg.graph, c.x);
    CHECK((w.strengths - w.weights.rowwise().sum()).cwiseAbs().maxCoeff() < 1e-14);
    Vector ax;
    cg.graph.multiply_adjacency(c.x, ax);
    CHECK((w.strengths - c.x.cwiseProduct(ax)).cwiseAbs().maxCoeff() < 1e-14);
  }
}
