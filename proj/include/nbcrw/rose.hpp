#pragma once

#include <span>
#include <vector>

#include "nbcrw/graph.hpp"
#include "nbcrw/walks.hpp"

namespace nbcrw {

/// m cycles of even length l glued at a hub.
struct RoseSpec {
  int m = 2;
  int l = 4;
};

/// Hub is node 0. For l = 4, petal i has internal nodes 3i+1, 3i+2 and
/// peripheral node 3i+3. For other l, petal i occupies nodes
/// 1 + i(l-1) ... (i+1)(l-1) in cycle order.
Graph make_rose(const RoseSpec& spec);

/// Node classes of the l = 4 rose.
enum class RoseClass { hub, internal, peripheral };
RoseClass rose4_class(NodeId node);

struct ClassValues {
  double hub = 0.0;
  double internal = 0.0;
  double peripheral = 0.0;
};

/// Hitting times between node classes within one petal, e.g. `h_to_i` is
/// the hub to a given internal node and `i_to_i` is one internal node to the
/// other internal node of the same petal.
struct ClassHitting {
  double i_to_h = 0.0;
  double p_to_h = 0.0;
  double h_to_i = 0.0;
  double i_to_i = 0.0;
  double p_to_i = 0.0;
  double h_to_p = 0.0;
  double i_to_p = 0.0;
};

struct RoseWalkOracle {
  ClassValues pi;
  ClassHitting hitting;
  double internal_to_hub = 0.0;  // transition probability
  double t_hub = 0.0;
  double t_global = 0.0;
};

/// Closed forms for every walk on the l = 4 rose with m petals.
struct Rose4Oracle {
  int m = 0;
  int node_count = 0;
  int edge_count = 0;
  double kappa1 = 0.0;
  ClassValues x;  // non-backtracking centrality, unit stacked norm
  double q_norm = 0.0;  // NBCRW normalising factor
  RoseWalkOracle turw;
  RoseWalkOracle merw;
  RoseWalkOracle nbcrw;

  const RoseWalkOracle& walk(WalkKind kind) const noexcept;
};

/// Evaluates the m-parameterised closed forms and checks the class
/// probabilities sum to one and T_hub = (2 T_IH + T_PH) / 3 for every walk;
/// throws `invalid_params` for m < 2.
Rose4Oracle rose4_oracle(int m);

/// The same quantities re-expressed through N_m = 3m + 1.
struct Rose4SizeForms {
  double pi_hub_nbcrw = 0.0;
  double pi_internal_nbcrw = 0.0;
  double pi_peripheral_nbcrw = 0.0;
  double pi_hub_merw = 0.0;
  double pi_internal_merw = 0.0;
  double pi_peripheral_merw = 0.0;
  double t_hub_nbcrw = 0.0;
  double t_hub_merw = 0.0;
  double t_global_turw = 0.0;
  double t_global_nbcrw = 0.0;
  double t_global_merw = 0.0;
};

Rose4SizeForms rose4_size_forms(int m);

/// Sum of T_ij over all ordered pairs assembled from the class hitting
/// times.
double rose4_total_hitting(int m, const ClassHitting& h);

struct ScalingRow {
  int m = 0;
  int node_count = 0;
  double t_global = 0.0;
};

std::vector<ScalingRow> scaling_table(WalkKind kind, std::span<const int> ms);

/// Least-squares slope of log t_global against log node_count.
double loglog_slope(std::span<const ScalingRow> rows);

}  // namespace nbcrw
