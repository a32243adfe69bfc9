#include "support/corpus.hpp"

#include <algorithm>

namespace nbcrw::testing {

namespace {

void add(std::vector<CorpusGraph>& out, std::string name, Graph g) {
  const auto v = validate(g);
  if (!v.connected || v.is_tree || g.node_count() < 3) return;
  const auto& d = g.degrees();
  const bool regular = std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) == d.end();
  out.push_back({std::move(name), std::move(g), regular});
}

std::vector<CorpusGraph> build() {
  std::vector<CorpusGraph> out;
  for (int m = 2; m <= 6; ++m) add(out, "rose-" + std::to_string(m), make_rose({m, 4}));
  for (const std::size_t n : {20, 50, 100}) {
    for (const double p : {0.1, 0.3}) {
      for (const std::uint64_t seed : {1, 2, 3}) {
        auto g = largest_component(gen_er(n, p, seed));
        if (g.node_count() < 4) continue;
        add(out,
            "er-" + std::to_string(n) + "-" + (p < 0.2 ? "0.1" : "0.3") + "-s" +
                std::to_string(seed),
            std::move(g));
      }
    }
  }
  for (const std::size_t n : {50, 200}) {
    for (const std::size_t m : {2, 3}) {
      for (const std::uint64_t seed : {1, 2, 3}) {
        add(out,
            "ba-" + std::to_string(n) + "-" + std::to_string(m) + "-s" + std::to_string(seed),
            gen_ba(n, m, seed));
      }
    }
  }
  for (const std::size_t k : {4, 6}) {
    for (const double beta : {0.1, 0.3}) {
      add(out, "ws-100-" + std::to_string(k) + (beta < 0.2 ? "-0.1" : "-0.3"),
          largest_component(gen_ws(100, k, beta, 1)));
    }
  }
  for (std::size_t n = 3; n <= 8; ++n) add(out, "complete-" + std::to_string(n), complete_graph(n));
  for (std::size_t n = 3; n <= 10; ++n) add(out, "cycle-" + std::to_string(n), cycle_graph(n));
  for (std::size_t l = 3; l <= 7; ++l) {
    add(out, "star-chord-" + std::to_string(l), star_with_chord(l));
  }
  add(out, "hypercube-3", hypercube_graph(3));
  add(out, "hypercube-4", hypercube_graph(4));
  const Edge tail[] = {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}};
  add(out, "triangle-tail", Graph::from_edges(5, tail));
  return out;
}

}  // namespace

const std::vector<CorpusGraph>& corpus() {
  static const std::vector<CorpusGraph> graphs = build();
  return graphs;
}

}  // namespace nbcrw::testing
