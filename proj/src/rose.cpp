#include "nbcrw/rose.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nbcrw/error.hpp"

namespace nbcrw {

Graph make_rose(const RoseSpec& spec) {
  if (spec.m < 2) throw Error(ErrorCode::invalid_params, "rose needs m >= 2");
  if (spec.l < 4 || spec.l % 2 != 0) {
    throw Error(ErrorCode::invalid_params, "rose needs an even cycle length l >= 4");
  }
  const int per = spec.l - 1;
  const std::size_t n = 1 + static_cast<std::size_t>(spec.m) * per;
  std::vector<Edge> edges;
  for (int i = 0; i < spec.m; ++i) {
    const NodeId base = 1 + i * per;
    if (spec.l == 4) {
      edges.push_back({0, base});
      edges.push_back({0, base + 1});
      edges.push_back({base, base + 2});
      edges.push_back({base + 1, base + 2});
      continue;
    }
    edges.push_back({0, base});
    for (int k = 0; k + 1 < per; ++k) edges.push_back({base + k, base + k + 1});
    edges.push_back({0, base + per - 1});
  }
  return Graph::from_edges(n, edges);
}

RoseClass rose4_class(NodeId node) {
  if (node == 0) return RoseClass::hub;
  return (node - 1) % 3 == 2 ? RoseClass::peripheral : RoseClass::internal;
}

const RoseWalkOracle& Rose4Oracle::walk(WalkKind kind) const noexcept {
  switch (kind) {
    case WalkKind::turw: return turw;
    case WalkKind::merw: return merw;
    case WalkKind::nbcrw: return nbcrw;
  }
  return turw;
}

double rose4_total_hitting(int m, const ClassHitting& h) {
  const double mm = m;
  return (6 * mm * mm - 4 * mm) * h.i_to_h + (3 * mm * mm - 2 * mm) * h.p_to_h +
         (6 * mm * mm - 4 * mm) * h.h_to_i + 2 * mm * h.i_to_i + 2 * mm * h.p_to_i +
         (3 * mm * mm - 2 * mm) * h.h_to_p + 2 * mm * h.i_to_p;
}

namespace {

void check(bool ok, const std::string& what, int m) {
  if (!ok) {
    throw std::logic_error("rose oracle invariant failed at m=" + std::to_string(m) + ": " +
                           what);
  }
}

void check_walk(const RoseWalkOracle& w, int m, const char* name) {
  const double total = w.pi.hub + 2.0 * m * w.pi.internal + m * w.pi.peripheral;
  check(std::abs(total - 1.0) <= 1e-12, std::string(name) + " class probabilities", m);
  const double hub = (2.0 * w.hitting.i_to_h + w.hitting.p_to_h) / 3.0;
  check(std::abs(hub - w.t_hub) <= 1e-12 * (1.0 + w.t_hub), std::string(name) + " T_hub", m);
  const double n = 3.0 * m + 1.0;
  const double global = rose4_total_hitting(m, w.hitting) / (n * (n - 1.0));
  check(std::abs(global - w.t_global) <= 1e-10 * (1.0 + w.t_global),
        std::string(name) + " <T>", m);
}

}  // namespace

Rose4Oracle rose4_oracle(int m) {
  if (m < 2) throw Error(ErrorCode::invalid_params, "rose oracle needs m >= 2");
  const double mm = m;
  const double r = std::sqrt(2.0 * mm - 1.0);
  const double k = std::sqrt(r);
  const double k2 = k * k;
  const double k4 = k2 * k2;

  Rose4Oracle o;
  o.m = m;
  o.node_count = 3 * m + 1;
  o.edge_count = 4 * m;
  o.kappa1 = k;

  const double s2 = (2.0 * mm - 1.0) * (2.0 * mm - 1.0);
  const double d = std::sqrt((k2 + 1.0) * (k4 * k4 + 2.0 * k4 * k2 + 2.0 * (8.0 * mm - 3.0) * k4 +
                                           2.0 * s2 * k2 + s2));
  o.x.hub = 2.0 * std::sqrt(mm) * k * k2 / d;
  o.x.internal = k2 * (k2 + 2.0 * mm - 1.0) / (std::sqrt(mm) * d);
  o.x.peripheral = k * (k4 + 2.0 * mm - 1.0) / (std::sqrt(mm) * d);
  o.q_norm = 2.0 * k * (2.0 * mm * mm + mm - 1.0 + r * (3.0 * mm - 1.0)) /
             ((r + 1.0) * (mm * (5.0 + r) - 2.0));

  auto& t = o.turw;
  t.pi = {0.25, 1.0 / (4.0 * mm), 1.0 / (4.0 * mm)};
  t.hitting = {3.0, 4.0, 6.0 * mm - 3.0, 4.0 * mm, 2.0 * mm + 1.0, 8.0 * mm - 4.0,
               4.0 * mm - 1.0};
  t.internal_to_hub = 0.5;
  t.t_hub = 10.0 / 3.0;
  t.t_global = 20.0 * mm * (3.0 * mm - 1.0) / (3.0 * (3.0 * mm + 1.0));

  auto& b = o.nbcrw;
  b.pi = {mm / (2.0 * (mm + r)), 1.0 / (4.0 * mm),
          (mm * r - 2.0 * mm + 1.0) / (2.0 * mm * (mm - 1.0) * (mm - 1.0))};
  b.hitting.i_to_h = 1.0 + 2.0 * r / mm;
  b.hitting.p_to_h = 2.0 + 2.0 * r / mm;
  b.hitting.h_to_i = 4.0 * mm + 2.0 * r - 1.0 - 2.0 * r / mm;
  b.hitting.i_to_i = 4.0 * mm;
  b.hitting.p_to_i = 2.0 * mm + 1.0;
  b.hitting.h_to_p =
      (4.0 * mm * mm * r + 2.0 * mm * mm * mm + 4.0 * mm * mm - 2.0 * mm * r - 6.0 * mm + 2.0) /
      (mm * r);
  b.hitting.i_to_p = 2.0 * mm * mm / r + 2.0 * mm - 1.0;
  b.internal_to_hub = mm / (mm + r);
  b.t_hub = 4.0 / 3.0 + 2.0 * r / mm;
  b.t_global = (2.0 * mm * mm * mm + 12.0 * mm * mm - 14.0 * mm + 4.0) / ((3.0 * mm + 1.0) * r) +
               (36.0 * mm * mm - 8.0 * mm) / (3.0 * (3.0 * mm + 1.0));

  auto& w = o.merw;
  w.pi = {mm / (2.0 * mm + 2.0), 1.0 / (4.0 * mm), 1.0 / (2.0 * mm * (mm + 1.0))};
  w.hitting.i_to_h = (mm + 2.0) / mm;
  w.hitting.p_to_h = 2.0 * (mm + 1.0) / mm;
  w.hitting.h_to_i = 4.0 * mm + 1.0 - 2.0 / mm;
  w.hitting.i_to_i = 4.0 * mm;
  w.hitting.p_to_i = 2.0 * mm + 1.0;
  w.hitting.h_to_p = 2.0 * (mm + 1.0) * (mm * mm + mm - 1.0) / mm;
  w.hitting.i_to_p = 2.0 * mm * (mm + 1.0) - 1.0;
  w.internal_to_hub = mm / (mm + 1.0);
  w.t_hub = 4.0 / 3.0 + 2.0 / mm;
  w.t_global = (6.0 * mm * mm * mm + 36.0 * mm * mm + 10.0 * mm - 12.0) / (9.0 * mm + 3.0);

  check(std::abs(k4 - (2.0 * mm - 1.0)) <= 1e-12 * k4, "kappa1", m);
  const double norm2 = (1.0 + 1.0 / k2) * (o.x.hub * o.x.hub + 2.0 * mm * o.x.internal * o.x.internal +
                                           mm * o.x.peripheral * o.x.peripheral);
  check(std::abs(norm2 - 1.0) <= 1e-12, "centrality normalisation", m);
  check_walk(t, m, "turw");
  check_walk(b, m, "nbcrw");
  check_walk(w, m, "merw");
  return o;
}

Rose4SizeForms rose4_size_forms(int m) {
  if (m < 2) throw Error(ErrorCode::invalid_params, "rose size forms need m >= 2");
  const double n = 3.0 * m + 1.0;
  const double q = std::sqrt(6.0 * n - 15.0);
  Rose4SizeForms f;
  f.pi_hub_nbcrw = (n - 1.0) / (2.0 * (n - 1.0) + 2.0 * q);
  f.pi_internal_nbcrw = 3.0 / (4.0 * (n - 1.0));
  f.pi_peripheral_nbcrw =
      (3.0 * (n - 1.0) * q - 18.0 * n + 45.0) / (2.0 * (n - 1.0) * (n - 4.0) * (n - 4.0));
  f.pi_hub_merw = (n - 1.0) / (2.0 * (n - 1.0) + 6.0);
  f.pi_internal_merw = 3.0 / (4.0 * (n - 1.0));
  f.pi_peripheral_merw = 9.0 / (2.0 * (n + 2.0) * (n - 1.0));
  f.t_hub_nbcrw = 4.0 / 3.0 + 2.0 * q / (n - 1.0);
  f.t_hub_merw = 4.0 / 3.0 + 6.0 / (n - 1.0);
  f.t_global_turw = 20.0 * (n - 1.0) * (n - 2.0) / (9.0 * n);
  f.t_global_nbcrw = (2.0 * n * n + 30.0 * n - 192.0) / (9.0 * q) +
                     (268.0 + 20.0 * q) / (9.0 * n * q) + (12.0 * n - 32.0) / 9.0;
  f.t_global_merw = (2.0 * n * n * n + 30.0 * n * n - 36.0 * n - 104.0) / (27.0 * n);
  return f;
}

std::vector<ScalingRow> scaling_table(WalkKind kind, std::span<const int> ms) {
  std::vector<ScalingRow> rows;
  rows.reserve(ms.size());
  for (const int m : ms) {
    const auto o = rose4_oracle(m);
    rows.push_back({m, o.node_count, o.walk(kind).t_global});
  }
  return rows;
}

double loglog_slope(std::span<const ScalingRow> rows) {
  if (rows.size() < 2) throw Error(ErrorCode::invalid_params, "slope needs two rows");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& row : rows) {
    const double x = std::log(static_cast<double>(row.node_count));
    const double y = std::log(row.t_global);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace nbcrw
