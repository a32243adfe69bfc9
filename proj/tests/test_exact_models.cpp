#include <sstream>

#include "doctest.h"
#include "nbcrw.hpp"

using namespace nbcrw;

TEST_CASE("rose construction") {
  const auto r2 = make_rose({2, 4});
  CHECK(r2.node_count() == 7);
  CHECK(r2.edge_count() == 8);
  CHECK(r2.degree(0) == 4);
  for (NodeId i = 1; i < 7; ++i) CHECK(r2.degree(i) == 2);
  CHECK(r2.has_edge(0, 1));
  CHECK(r2.has_edge(0, 2));
  CHECK(r2.has_edge(1, 3));
  CHECK(r2.has_edge(2, 3));
  CHECK(rose4_class(0) == RoseClass::hub);
  CHECK(rose4_class(4) == RoseClass::internal);
  CHECK(rose4_class(6) == RoseClass::peripheral);

  const auto r = make_rose({3, 20});
  CHECK(r.node_count() == 58);
  CHECK(r.degree(0) == 6);
  CHECK(r.edge_count() == 60);
  CHECK(validate(r).connected);

  CHECK_THROWS_AS(make_rose({2, 3}), Error);
  CHECK_THROWS_AS(make_rose({1, 4}), Error);
  CHECK_THROWS_AS(rose4_oracle(1), Error);
}

TEST_CASE("rose oracle values at small m") {
  const auto o = rose4_oracle(2);
  CHECK(o.kappa1 == doctest::Approx(std::pow(3.0, 0.25)));
  CHECK(o.nbcrw.pi.hub == doctest::Approx(1.0 / (2.0 + std::sqrt(3.0))));
  CHECK(o.nbcrw.t_hub == doctest::Approx(4.0 / 3.0 + std::sqrt(3.0)));
  CHECK(o.turw.t_global == doctest::Approx(200.0 / 21.0));
  CHECK(o.turw.hitting.h_to_p == 12.0);
  CHECK(o.turw.hitting.i_to_p == 7.0);
  CHECK(rose4_oracle(10).merw.pi.hub == doctest::Approx(10.0 / 22.0));
}

TEST_CASE("rose normalising factor matches the centrality sum") {
  for (int m = 2; m <= 12; ++m) {
    const auto o = rose4_oracle(m);
    const double k = o.kappa1;
    auto term = [&](double d, double x) { return ((k * k - 1.0) / k + d / k) * x * x; };
    const double q = term(2.0 * m, o.x.hub) + 2.0 * m * term(2.0, o.x.internal) +
                     m * term(2.0, o.x.peripheral);
    CHECK(o.q_norm == doctest::Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("size-parameterised forms agree with the petal-count forms") {
  for (int m = 2; m <= 60; ++m) {
    const auto o = rose4_oracle(m);
    const auto f = rose4_size_forms(m);
    CHECK(f.pi_hub_nbcrw == doctest::Approx(o.nbcrw.pi.hub).epsilon(1e-12));
    CHECK(f.pi_internal_nbcrw == doctest::Approx(o.nbcrw.pi.internal).epsilon(1e-12));
    CHECK(f.pi_peripheral_nbcrw == doctest::Approx(o.nbcrw.pi.peripheral).epsilon(1e-10));
    CHECK(f.pi_hub_merw == doctest::Approx(o.merw.pi.hub).epsilon(1e-12));
    CHECK(f.pi_internal_merw == doctest::Approx(o.merw.pi.internal).epsilon(1e-12));
    CHECK(f.pi_peripheral_merw == doctest::Approx(o.merw.pi.peripheral).epsilon(1e-12));
    CHECK(f.t_hub_nbcrw == doctest::Approx(o.nbcrw.t_hub).epsilon(1e-12));
    CHECK(f.t_hub_merw == doctest::Approx(o.merw.t_hub).epsilon(1e-12));
    CHECK(f.t_global_turw == doctest::Approx(o.turw.t_global).epsilon(1e-12));
    CHECK(f.t_global_nbcrw == doctest::Approx(o.nbcrw.t_global).epsilon(1e-11));
    CHECK(f.t_global_merw == doctest::Approx(o.merw.t_global).epsilon(1e-12));
  }
}

TEST_CASE("rose pipeline matches the oracle") {
  for (int m = 2; m <= 10; ++m) {
    const auto g = make_rose({m, 4});
    const auto o = rose4_oracle(m);
    for (const WalkKind kind : kAllWalks) {
      const auto& w = o.walk(kind);
      const auto pi = stationary_closed(kind, g).pi;
      CHECK(pi(0) == doctest::Approx(w.pi.hub).epsilon(1e-9));
      CHECK(pi(4) == doctest::Approx(w.pi.internal).epsilon(1e-9));
      CHECK(pi(6) == doctest::Approx(w.pi.peripheral).epsilon(1e-9));
      const auto r = hitting_linear(transition(kind, g));
      CHECK(r.t(1, 0) == doctest::Approx(w.hitting.i_to_h).epsilon(1e-9));
      CHECK(r.t(3, 0) == doctest::Approx(w.hitting.p_to_h).epsilon(1e-9));
      CHECK(r.t(0, 1) == doctest::Approx(w.hitting.h_to_i).epsilon(1e-9));
      CHECK(r.t(1, 2) == doctest::Approx(w.hitting.i_to_i).epsilon(1e-9));
      CHECK(r.t(3, 1) == doctest::Approx(w.hitting.p_to_i).epsilon(1e-9));
      CHECK(r.t(0, 3) == doctest::Approx(w.hitting.h_to_p).epsilon(1e-9));
      CHECK(r.t(1, 3) == doctest::Approx(w.hitting.i_to_p).epsilon(1e-9));
      CHECK(r.t_partial(0) == doctest::Approx(w.t_hub).epsilon(1e-9));
      CHECK(r.t_global == doctest::Approx(w.t_global).epsilon(1e-9));
      CHECK(transition(kind, g).p(1, 0) == doctest::Approx(w.internal_to_hub).epsilon(1e-9));
    }
  }
}

TEST_CASE("rose class symmetry and stationary ordering") {
  for (int m = 2; m <= 12; ++m) {
    const auto g = make_rose({m, 4});
    for (const WalkKind kind : kAllWalks) {
      const auto pi = stationary_closed(kind, g).pi;
      double imin = 1, imax = 0, pmin = 1, pmax = 0;
      for (NodeId i = 1; i < static_cast<NodeId>(g.node_count()); ++i) {
        const double v = pi(i);
        if (rose4_class(i) == RoseClass::internal) {
          imin = std::min(imin, v);
          imax = std::max(imax, v);
        } else {
          pmin = std::min(pmin, v);
          pmax = std::max(pmax, v);
        }
      }
      CHECK(imax - imin <= 1e-10);
      CHECK(pmax - pmin <= 1e-10);
    }
    const auto o = rose4_oracle(m);
    CHECK(o.merw.pi.hub > o.nbcrw.pi.hub);
    CHECK(o.merw.pi.internal == doctest::Approx(o.nbcrw.pi.internal));
    CHECK(o.merw.pi.peripheral < o.nbcrw.pi.peripheral);
  }
}

TEST_CASE("random generators") {
  CHECK(gen_er(10, 1.0, 3).edge_count() == 45);
  CHECK(gen_er(10, 0.0, 3).edge_count() == 0);
  const auto ba = gen_ba(100, 2, 1);
  CHECK(ba.edge_count() == 197);
  CHECK(validate(ba).connected);
  const auto ws = gen_ws(20, 4, 0.0, 5);
  CHECK(ws.edge_count() == 40);
  for (NodeId i = 0; i < 20; ++i) CHECK(ws.degree(i) == 4);
  CHECK(ws.has_edge(0, 2));
  CHECK(ws.has_edge(0, 18));
  const auto rewired = gen_ws(100, 6, 0.3, 2);
  CHECK(rewired.edge_count() == 300);
  CHECK_THROWS_AS(gen_ws(10, 3, 0.1, 1), Error);
  CHECK_THROWS_AS(gen_ba(2, 2, 1), Error);
  CHECK_THROWS_AS(gen_er(10, 1.5, 1), Error);
}

TEST_CASE("generators are deterministic per seed") {
  auto text = [](const Graph& g) {
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
  };
  for (const std::uint64_t seed : {1, 2, 99}) {
    const GenSpec specs[] = {{ErSpec{60, 0.1}, seed}, {BaSpec{60, 3}, seed},
                             {WsSpec{60, 4, 0.2}, seed}};
    for (const auto& spec : specs) CHECK(text(generate(spec)) == text(generate(spec)));
  }
  CHECK(text(gen_ba(60, 2, 1)) != text(gen_ba(60, 2, 2)));
  CHECK(describe({BaSpec{60, 3}, 7}) == "ba(n=60,m_attach=3,seed=7)");
}

TEST_CASE("fixed families") {
  CHECK(hypercube_graph(4).node_count() == 16);
  CHECK(hypercube_graph(4).edge_count() == 32);
  CHECK(star_with_chord(4).edge_count() == 5);
  CHECK(cycle_graph(5).edge_count() == 5);
}

TEST_CASE("scaling table and slope") {
  const int ms[] = {10, 20, 40};
  const auto rows = scaling_table(WalkKind::turw, ms);
  CHECK(rows.size() == 3);
  CHECK(rows[1].node_count == 61);
  CHECK(rows[1].t_global == doctest::Approx(rose4_oracle(20).turw.t_global));
  const ScalingRow exact[] = {{1, 10, 100.0}, {2, 100, 10000.0}};
  CHECK(loglog_slope(exact) == doctest::Approx(2.0));
}
