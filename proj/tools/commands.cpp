#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbcrw.hpp"

namespace nbcrw::cli {

namespace {

using nlohmann::json;

struct Globals {
  double tol = kDefaultTol;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string output;
  bool timing = false;
};

struct GraphInput {
  std::vector<std::string> paths;
  int index_base = 0;
  std::string delimiter = "whitespace";
};

struct Loaded {
  Graph graph;
  std::string path;
  std::string sha256;
};

// Output of one command: a JSON document, or CSV rows with optional
// trailing comment lines.
struct Result {
  json doc;
  std::string csv;
  std::vector<std::string> csv_notes;
};

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::invalid_params, "sha256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> to_vec(const Vector& v) { return {v.data(), v.data() + v.size()}; }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(to_vec(m.row(i).transpose()));
  return rows;
}

Loaded load_graph(const std::string& path, const GraphInput& in, std::ostream& err) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::invalid_params, "cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  ParseOptions opts;
  opts.index_base = in.index_base;
  opts.delimiter = in.delimiter == "comma" ? Delimiter::comma : Delimiter::whitespace;
  opts.on_warning = [&](std::size_t line, const std::string& msg) {
    err << json{{"warning", msg}, {"file", path}, {"line", line}}.dump() << '\n';
  };
  return {parse_edge_list(text, opts), path, sha256_hex(text)};
}

std::vector<Loaded> load_all(const GraphInput& in, std::ostream& err) {
  std::vector<Loaded> out;
  for (const auto& p : in.paths) out.push_back(load_graph(p, in, err));
  return out;
}

std::vector<WalkKind> parse_walks(const std::string& spec) {
  if (spec == "all") return {std::begin(kAllWalks), std::end(kAllWalks)};
  std::vector<WalkKind> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_walk_kind(item));
  if (out.empty()) throw Error(ErrorCode::invalid_params, "empty walk list");
  return out;
}

NodeId node_by_label(const Graph& g, const std::string& token) {
  long long label = 0;
  try {
    std::size_t used = 0;
    label = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_params, "'" + token + "' is not a node label");
  }
  const NodeId id = g.find_label(label);
  if (id < 0) throw Error(ErrorCode::invalid_params, "no node with label " + token);
  return id;
}

void add_graph_options(CLI::App* cmd, GraphInput& in, bool many) {
  auto* opt = cmd->add_option("graph", in.paths, many ? "edge-list files ('-' for stdin)"
                                                      : "edge-list file ('-' for stdin)");
  opt->required();
  if (!many) opt->expected(1);
  cmd->add_option("--index-base", in.index_base, "smallest node id in the file")
      ->check(CLI::IsMember({0, 1}))
      ->envname("NBCRW_INDEX_BASE");
  cmd->add_option("--delimiter", in.delimiter, "field separator")
      ->check(CLI::IsMember({"whitespace", "comma"}))
      ->envname("NBCRW_DELIMITER");
}

NbcrwOptions walk_options(const Globals& g, const std::optional<double>& regularize) {
  return {g.tol, regularize};
}

// ---------------------------------------------------------------- commands

Result cmd_centrality(const Graph& g, const Globals& glob) {
  const auto c = nb_centrality(g, {glob.tol, 0});
  const auto perron = adjacency_perron(g, glob.tol);
  Result r;
  r.doc = {{"kappa", c.kappa},
           {"residual", c.residual},
           {"iterations", c.iterations},
           {"refined", c.refined},
           {"lambda1", perron.lambda},
           {"nodes", g.labels()},
           {"degrees", g.degrees()},
           {"x", to_vec(c.x)},
           {"y", to_vec(c.y)},
           {"eigenvector_centrality", to_vec(perron.psi)}};
  std::string csv = "node,degree,x,y,eigenvector_centrality\n";
  for (Index i = 0; i < c.x.size(); ++i) {
    csv += std::to_string(g.label(static_cast<NodeId>(i))) + "," +
           std::to_string(g.degree(static_cast<NodeId>(i))) + "," + num(c.x(i)) + "," +
           num(c.y(i)) + "," + num(perron.psi(i)) + "\n";
  }
  r.csv = std::move(csv);
  r.csv_notes = {"kappa " + num(c.kappa), "lambda1 " + num(perron.lambda)};
  return r;
}

Result cmd_stationary(const Graph& g, const Globals& glob, const std::vector<WalkKind>& walks,
                      bool check, const std::optional<double>& regularize) {
  const auto opts = walk_options(glob, regularize);
  Result r;
  json entries = json::array();
  std::vector<Vector> pis;
  for (const WalkKind kind : walks) {
    const auto sd = stationary_closed(kind, g, opts);
    json e = {{"kind", to_string(kind)},
              {"method", to_string(sd.method)},
              {"pi", to_vec(sd.pi)},
              {"ipr", ipr(sd.pi)}};
    if (kind == WalkKind::nbcrw && regularize) e["regularize"] = *regularize;
    if (check) {
      const auto p = transition(kind, g, opts);
      const auto generic = stationary_generic(p);
      e["check"] = {{"linear_solve_gap", (generic.pi - sd.pi).cwiseAbs().maxCoeff()},
                    {"detailed_balance", detailed_balance_residual(sd.pi, p.p)},
                    {"stationarity", stationarity_residual(sd.pi, p.p)},
                    {"row_stochastic", row_stochastic_residual(p.p)}};
      r.csv_notes.push_back(std::string(to_string(kind)) + " linear_solve_gap " +
                            num(e["check"]["linear_solve_gap"].get<double>()) +
                            " detailed_balance " +
                            num(e["check"]["detailed_balance"].get<double>()));
    }
    r.csv_notes.push_back(std::string(to_string(kind)) + " ipr " + num(ipr(sd.pi)));
    entries.push_back(std::move(e));
    pis.push_back(sd.pi);
  }
  r.doc = {{"nodes", g.labels()}, {"walks", std::move(entries)}};
  std::string csv = "node";
  for (const WalkKind k : walks) csv += ",pi_" + std::string(to_string(k));
  csv += "\n";
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    csv += std::to_string(g.label(static_cast<NodeId>(i)));
    for (const auto& pi : pis) csv += "," + num(pi(static_cast<Index>(i)));
    csv += "\n";
  }
  r.csv = std::move(csv);
  return r;
}

struct HittingFlags {
  std::string method = "spectral";
  std::string targets = "hub,global";
  bool full_matrix = false;
  bool verbatim = false;
  std::optional<double> regularize;
};

constexpr std::size_t kMatrixCap = 500;

json prefactor_audit(const Graph& g, const Globals& glob, const HittingReport& unit,
                     const NbcrwOptions& opts, bool show_matrix) {
  const auto c = nb_centrality(g, {glob.tol, 0});
  const Vector x = opts.regularize ? Vector(c.x.array() + *opts.regularize) : c.x;
  const auto w = weighted_from_centrality(g, x);
  const auto printed =
      hitting_spectral_weighted(w, WalkKind::nbcrw, glob.tol, PairwisePrefactor::half);
  const auto linear = hitting_linear(nbcrw_transition(g, c.x, opts.regularize), glob.threads);
  json a = {
      {"printed_prefactor", 0.5},
      {"t_global_pairwise_printed", printed.t_global},
      {"t_global_pairwise_unit", unit.t_global},
      {"t_global_closed", *unit.t_global_direct},
      {"t_global_linear_solve", linear.t_global},
      {"t_partial_closed_vs_printed_gap",
       (printed.t_partial - *unit.t_partial_direct).cwiseAbs().maxCoeff()},
      {"t_partial_closed_vs_unit_gap",
       (unit.t_partial - *unit.t_partial_direct).cwiseAbs().maxCoeff()},
      {"printed_vs_linear_max_gap", max_abs_gap(printed.t, linear.t)},
      {"unit_vs_linear_max_gap", max_abs_gap(unit.t, linear.t)},
      {"ratio_unit_over_printed", unit.t_global / printed.t_global},
      {"note",
       "the pairwise sum with the printed 1/2 prefactor gives half of the hitting times "
       "implied by the partial-mean and global closed forms and by the linear solve; "
       "reported values use the unit prefactor"}};
  if (show_matrix) a["t_matrix_printed"] = to_json(printed.t);
  return a;
}

Result cmd_hitting(const Graph& g, const Globals& glob, const std::vector<WalkKind>& walks,
                   const HittingFlags& f, std::ostream& err) {
  const bool spectral = f.method == "spectral" || f.method == "both";
  const bool linear = f.method == "linear" || f.method == "both";
  bool want_hub = false;
  std::vector<NodeId> nodes;
  {
    std::stringstream ss(f.targets);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "hub") want_hub = true;
      else if (item == "global") continue;
      else nodes.push_back(node_by_label(g, item));
    }
  }
  const bool has_nbcrw = std::find(walks.begin(), walks.end(), WalkKind::nbcrw) != walks.end();
  if (f.verbatim && !has_nbcrw) {
    throw Error(ErrorCode::invalid_params, "--verbatim-eq26 applies to the nbcrw walk only");
  }
  const bool show_matrix = f.full_matrix || g.node_count() <= kMatrixCap;
  const auto opts = walk_options(glob, f.regularize);

  Result r;
  json entries = json::array();
  std::vector<Vector> partials;
  for (const WalkKind kind : walks) {
    std::optional<HittingReport> s, l;
    if (spectral) {
      s = kind == WalkKind::nbcrw
              ? hitting_spectral_nbcrw(g, {opts, PairwisePrefactor::unit})
              : hitting_spectral(kind, g, opts);
    }
    if (linear) l = hitting_linear(transition(kind, g, opts), glob.threads);
    const HittingReport& main = s ? *s : *l;
    json e = {{"kind", to_string(kind)},
              {"method", f.method == "both" ? "both" : std::string(to_string(main.method))},
              {"t_global", main.t_global},
              {"t_partial", to_vec(main.t_partial)}};
    if (want_hub) {
      const auto hub = hub_report(g, main);
      e["hub"] = {{"node", hub.hub_label}, {"t_hub", hub.t_hub}};
    }
    if (!nodes.empty()) {
      json arr = json::array();
      for (const NodeId id : nodes) arr.push_back({{"node", g.label(id)}, {"t_partial", main.t_partial(id)}});
      e["nodes"] = std::move(arr);
    }
    if (s) {
      e["t_global_closed"] = *s->t_global_direct;
      e["consistency_gap"] = s->consistency_gap();
    }
    if (s && l) {
      const double gap = max_abs_gap(s->t, l->t);
      e["linear_solve"] = {{"t_global", l->t_global},
                           {"max_abs_gap", gap},
                           {"relative_gap", gap / (1.0 + l->t.maxCoeff())}};
      r.csv_notes.push_back(std::string(to_string(kind)) + " spectral_vs_linear_max_abs_gap " +
                            num(gap));
    }
    if (show_matrix) e["t_matrix"] = to_json(main.t);
    if (f.verbatim && kind == WalkKind::nbcrw && s) {
      e["pairwise_prefactor_audit"] = prefactor_audit(g, glob, *s, opts, show_matrix);
      err << json{{"warning", "printed pairwise prefactor disagrees with the closed forms"},
                  {"ratio", e["pairwise_prefactor_audit"]["ratio_unit_over_printed"]}}
                 .dump()
          << '\n';
    } else if (f.verbatim && kind == WalkKind::nbcrw) {
      throw Error(ErrorCode::invalid_params, "--verbatim-eq26 needs the spectral method");
    }
    r.csv_notes.push_back(std::string(to_string(kind)) + " t_global " + num(main.t_global));
    if (want_hub) {
      r.csv_notes.push_back(std::string(to_string(kind)) + " t_hub " +
                            num(e["hub"]["t_hub"].get<double>()));
    }
    partials.push_back(main.t_partial);
    entries.push_back(std::move(e));
  }
  r.doc = {{"nodes", g.labels()}, {"walks", std::move(entries)}};
  if (!show_matrix) r.doc["t_matrix_suppressed"] = true;
  std::string csv = "node";
  for (const WalkKind k : walks) csv += ",t_partial_" + std::string(to_string(k));
  csv += "\n";
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    csv += std::to_string(g.label(static_cast<NodeId>(i)));
    for (const auto& t : partials) csv += "," + num(t(static_cast<Index>(i)));
    csv += "\n";
  }
  r.csv = std::move(csv);
  return r;
}

json class_json(const ClassValues& v) {
  return {{"hub", v.hub}, {"internal", v.internal}, {"peripheral", v.peripheral}};
}

json hitting_json(const ClassHitting& h) {
  return {{"i_to_h", h.i_to_h}, {"p_to_h", h.p_to_h}, {"h_to_i", h.h_to_i},
          {"i_to_i", h.i_to_i}, {"p_to_i", h.p_to_i}, {"h_to_p", h.h_to_p},
          {"i_to_p", h.i_to_p}};
}

Result cmd_rose_oracle(int m, const std::vector<WalkKind>& walks) {
  const auto o = rose4_oracle(m);
  const auto f = rose4_size_forms(m);
  Result r;
  json w = json::object();
  std::string csv = "walk,quantity,value\n";
  for (const WalkKind kind : walks) {
    const auto& v = o.walk(kind);
    const std::string k(to_string(kind));
    w[k] = {{"pi", class_json(v.pi)},
            {"hitting", hitting_json(v.hitting)},
            {"internal_to_hub", v.internal_to_hub},
            {"t_hub", v.t_hub},
            {"t_global", v.t_global}};
    for (const auto& [name, value] : w[k]["pi"].items()) {
      csv += k + ",pi_" + name + "," + num(value.get<double>()) + "\n";
    }
    for (const auto& [name, value] : w[k]["hitting"].items()) {
      csv += k + ",t_" + name + "," + num(value.get<double>()) + "\n";
    }
    csv += k + ",internal_to_hub," + num(v.internal_to_hub) + "\n";
    csv += k + ",t_hub," + num(v.t_hub) + "\n";
    csv += k + ",t_global," + num(v.t_global) + "\n";
  }
  r.doc = {{"m", o.m},
           {"node_count", o.node_count},
           {"edge_count", o.edge_count},
           {"kappa1", o.kappa1},
           {"x", class_json(o.x)},
           {"q_norm", o.q_norm},
           {"walks", std::move(w)},
           {"size_forms",
            {{"pi_hub_nbcrw", f.pi_hub_nbcrw},
             {"pi_internal_nbcrw", f.pi_internal_nbcrw},
             {"pi_peripheral_nbcrw", f.pi_peripheral_nbcrw},
             {"pi_hub_merw", f.pi_hub_merw},
             {"pi_internal_merw", f.pi_internal_merw},
             {"pi_peripheral_merw", f.pi_peripheral_merw},
             {"t_hub_nbcrw", f.t_hub_nbcrw},
             {"t_hub_merw", f.t_hub_merw},
             {"t_global_turw", f.t_global_turw},
             {"t_global_nbcrw", f.t_global_nbcrw},
             {"t_global_merw", f.t_global_merw}}}};
  csv += "all,kappa1," + num(o.kappa1) + "\n";
  r.csv = std::move(csv);
  return r;
}

// Column order follows the usual T, B, M presentation.
constexpr WalkKind kCompareOrder[] = {WalkKind::turw, WalkKind::nbcrw, WalkKind::merw};

Result cmd_compare(const std::vector<Loaded>& graphs, const Globals& glob,
                   const std::optional<double>& regularize) {
  const auto opts = walk_options(glob, regularize);
  Result r;
  json rows = json::array();
  std::string csv =
      "network,size,ipr_turw,ipr_nbcrw,ipr_merw,t_hub_turw,t_hub_nbcrw,t_hub_merw,"
      "t_global_turw,t_global_nbcrw,t_global_merw\n";
  for (const auto& in : graphs) {
    const Graph& g = in.graph;
    const std::string name =
        in.path == "-" ? "stdin" : std::filesystem::path(in.path).stem().string();
    double ipr_v[3], hub_v[3], glob_v[3];
    for (int k = 0; k < 3; ++k) {
      const WalkKind kind = kCompareOrder[k];
      ipr_v[k] = ipr(stationary_closed(kind, g, opts).pi);
      const auto rep = kind == WalkKind::nbcrw
                           ? hitting_spectral_nbcrw(g, {opts, PairwisePrefactor::unit})
                           : hitting_spectral(kind, g, opts);
      hub_v[k] = hub_report(g, rep).t_hub;
      glob_v[k] = rep.t_global;
    }
    json row = {{"network", name}, {"size", g.node_count()}};
    csv += name + "," + std::to_string(g.node_count());
    for (int k = 0; k < 3; ++k) {
      row["ipr_" + std::string(to_string(kCompareOrder[k]))] = ipr_v[k];
      csv += "," + num(ipr_v[k]);
    }
    for (int k = 0; k < 3; ++k) {
      row["t_hub_" + std::string(to_string(kCompareOrder[k]))] = hub_v[k];
      csv += "," + num(hub_v[k]);
    }
    for (int k = 0; k < 3; ++k) {
      row["t_global_" + std::string(to_string(kCompareOrder[k]))] = glob_v[k];
      csv += "," + num(glob_v[k]);
    }
    csv += "\n";
    rows.push_back(std::move(row));
  }
  r.doc = {{"rows", std::move(rows)}};
  r.csv = std::move(csv);
  return r;
}

std::vector<int> parse_range(const std::string& spec) {
  std::vector<int> parts;
  std::stringstream ss(spec);
  std::string item;
  try {
    while (std::getline(ss, item, ':')) parts.push_back(std::stoi(item));
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_params, "bad --m-range '" + spec + "'");
  }
  if (parts.size() < 2 || parts.size() > 3 || parts[0] < 2 || parts[1] < parts[0] ||
      (parts.size() == 3 && parts[2] < 1)) {
    throw Error(ErrorCode::invalid_params,
                "--m-range takes lo:hi or lo:hi:step with 2 <= lo <= hi");
  }
  const int step = parts.size() == 3 ? parts[2] : 1;
  std::vector<int> ms;
  for (int m = parts[0]; m <= parts[1]; m += step) ms.push_back(m);
  return ms;
}

Result cmd_scaling(const std::vector<WalkKind>& walks, const std::string& range) {
  const auto ms = parse_range(range);
  Result r;
  json rows = json::array();
  json slopes = json::object();
  std::string csv = "kind,m,node_count,t_global\n";
  for (const WalkKind kind : walks) {
    const auto table = scaling_table(kind, ms);
    const std::string k(to_string(kind));
    for (const auto& row : table) {
      rows.push_back({{"kind", k}, {"m", row.m}, {"node_count", row.node_count},
                      {"t_global", row.t_global}});
      csv += k + "," + std::to_string(row.m) + "," + std::to_string(row.node_count) + "," +
             num(row.t_global) + "\n";
    }
    if (table.size() >= 2) {
      const double slope = loglog_slope(table);
      slopes[k] = slope;
      r.csv_notes.push_back("slope " + k + " " + num(slope));
    }
  }
  r.doc = {{"m_range", range}, {"rows", std::move(rows)}, {"slopes", std::move(slopes)}};
  r.csv = std::move(csv);
  return r;
}

struct SimFlags {
  std::string walk = "nbcrw";
  std::string mode = "hitting";
  std::string source;
  std::string target = "hub";
  SimConfig cfg;
  bool exact = true;
  std::optional<double> regularize;
};

Result cmd_simulate(const Graph& g, const Globals& glob, const SimFlags& f) {
  const WalkKind kind = parse_walk_kind(f.walk);
  const auto opts = walk_options(glob, f.regularize);
  const auto p = transition(kind, g, opts);
  SimConfig cfg = f.cfg;
  cfg.seed = glob.seed;
  cfg.threads = glob.threads;
  Result r;
  json doc = {{"kind", to_string(kind)}};
  if (f.mode == "stationary") {
    const auto s = simulate_stationary(p, cfg);
    doc["mode"] = to_string(s.mode);
    doc["nodes"] = g.labels();
    doc["estimate"] = to_vec(s.estimate);
    doc["std_error"] = to_vec(s.std_error);
    doc["steps"] = s.samples;
    doc["batches"] = s.batches;
    doc["burn_in"] = cfg.burn_in;
    doc["rng"] = {{"algorithm", s.rng_algorithm}, {"version", s.rng_version}};
    std::string csv = "node,estimate,std_error";
    Vector exact;
    if (f.exact) {
      exact = stationary_closed(kind, g, opts).pi;
      doc["exact"] = to_vec(exact);
      csv += ",exact";
    }
    csv += "\n";
    for (Index i = 0; i < s.estimate.size(); ++i) {
      csv += std::to_string(g.label(static_cast<NodeId>(i))) + "," + num(s.estimate(i)) + "," +
             num(s.std_error(i));
      if (f.exact) csv += "," + num(exact(i));
      csv += "\n";
    }
    r.csv = std::move(csv);
  } else {
    const NodeId target = f.target == "hub" ? hub_node(g) : node_by_label(g, f.target);
    // Default source: the first node that is not the target.
    const NodeId source = !f.source.empty() ? node_by_label(g, f.source) : (target == 0 ? 1 : 0);
    const auto s = simulate_hitting(p, source, target, cfg);
    doc["mode"] = to_string(s.mode);
    doc["source"] = g.label(source);
    doc["target"] = g.label(target);
    doc["mean"] = s.estimate(0);
    doc["std_error"] = s.std_error(0);
    doc["point_estimate"] = s.point_estimate ? json(*s.point_estimate) : json(nullptr);
    doc["capped_mean"] = s.capped_mean;
    doc["trials"] = s.samples;
    doc["truncated"] = s.truncated;
    doc["truncated_fraction"] = s.truncated_fraction;
    doc["max_steps"] = cfg.max_steps;
    doc["rng"] = {{"algorithm", s.rng_algorithm}, {"version", s.rng_version}};
    std::string csv = "source,target,mean,std_error,trials,truncated";
    std::string row = std::to_string(g.label(source)) + "," + std::to_string(g.label(target)) +
                      "," + num(s.estimate(0)) + "," + num(s.std_error(0)) + "," +
                      std::to_string(s.samples) + "," + std::to_string(s.truncated);
    if (f.exact) {
      const double t = hitting_spectral(kind, g, opts).t(source, target);
      doc["exact"] = t;
      doc["z_score"] = s.std_error(0) > 0.0 ? (s.estimate(0) - t) / s.std_error(0) : 0.0;
      csv += ",exact";
      row += "," + num(t);
    }
    r.csv = csv + "\n" + row + "\n";
  }
  r.doc = std::move(doc);
  return r;
}

struct GenFlags {
  std::string model;
  std::size_t n = 0;
  double p = 0.0;
  std::size_t m_attach = 2;
  std::size_t k = 4;
  double beta = 0.1;
  int m = 2;
  int l = 4;
  bool lcc = false;
};

std::pair<Graph, std::string> cmd_generate(const GenFlags& f, const Globals& glob) {
  if (f.model == "rose") {
    return {make_rose({f.m, f.l}), "rose(m=" + std::to_string(f.m) + ",l=" + std::to_string(f.l) + ")"};
  }
  GenSpec spec;
  spec.seed = glob.seed;
  if (f.model == "er") spec.model = ErSpec{f.n, f.p};
  else if (f.model == "ba") spec.model = BaSpec{f.n, f.m_attach};
  else spec.model = WsSpec{f.n, f.k, f.beta};
  Graph g = generate(spec);
  std::string desc = describe(spec);
  if (f.lcc) {
    g = largest_component(g);
    desc += " largest component";
  }
  return {std::move(g), std::move(desc)};
}

// ---------------------------------------------------------------- plumbing

json parameters(const CLI::App* app) {
  json out = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string key = opt->get_single_name();
    if (key == "help" || key == "version") continue;
    if (opt->get_expected_min() == 0) {
      out[key] = opt->count() > 0;
      continue;
    }
    const auto res = opt->count() > 0 ? opt->reduced_results() : std::vector<std::string>{};
    if (!res.empty()) {
      out[key] = res.size() == 1 ? json(res[0]) : json(res);
    } else {
      const std::string def = opt->get_default_str();
      out[key] = def.empty() ? json(nullptr) : json(def);
    }
  }
  return out;
}

json manifest(const CLI::App& app, const CLI::App* sub, const Globals& glob,
              const std::vector<Loaded>& inputs, double ms) {
  json files = json::array();
  for (const auto& in : inputs) files.push_back({{"path", in.path}, {"sha256", in.sha256}});
  json params = parameters(&app);
  params.update(parameters(sub));
  json m = {{"tool", "nbcrw"},
            {"version", kVersion},
            {"command", sub->get_name()},
            {"parameters", std::move(params)},
            {"inputs", std::move(files)},
            {"seed", glob.seed},
            {"rng", {{"algorithm", kRngAlgorithm}, {"version", kRngVersion}}}};
  if (glob.timing) m["timing_ms"] = ms;
  return m;
}

void emit(const Result& r, const json& man, const Globals& glob, std::ostream& out) {
  std::ofstream file;
  std::ostream* dst = &out;
  if (!glob.output.empty()) {
    file.open(glob.output, std::ios::binary);
    if (!file) throw Error(ErrorCode::invalid_params, "cannot write '" + glob.output + "'");
    dst = &file;
  }
  if (glob.format == "csv") {
    *dst << "# manifest " << man.dump() << '\n' << r.csv;
    for (const auto& note : r.csv_notes) *dst << "# " << note << '\n';
  } else {
    json doc = r.doc;
    doc["manifest"] = man;
    *dst << doc.dump(2) << '\n';
  }
}

void error_json(std::ostream& err, ErrorCode code, const std::string& message) {
  err << json{{"error", to_string(code)}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-backtracking centrality random walks: centrality, stationary "
               "distributions, hitting times and rose-graph closed forms.",
               "nbcrw"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Globals glob;
  app.add_option("--tol", glob.tol, "convergence tolerance")
      ->envname("NBCRW_TOL")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--threads", glob.threads, "worker threads")
      ->envname("NBCRW_THREADS")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  app.add_option("--seed", glob.seed, "random seed")->envname("NBCRW_SEED")->capture_default_str();
  app.add_option("--format", glob.format, "output format")
      ->envname("NBCRW_FORMAT")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("-o,--output", glob.output, "output file (default stdout)")
      ->envname("NBCRW_OUTPUT");
  app.add_flag("--timing", glob.timing, "record wall time in the manifest");

  GraphInput in;
  std::string walks_spec = "all";
  std::optional<double> regularize;
  auto add_regularize = [&](CLI::App* cmd) {
    cmd->add_option("--regularize", regularize,
                    "non-standard: add this constant to the centrality before weighting")
        ->check(CLI::NonNegativeNumber);
  };

  auto* centrality = app.add_subcommand("centrality", "non-backtracking and eigenvector centrality");
  add_graph_options(centrality, in, false);

  bool check = false;
  auto* stationary = app.add_subcommand("stationary", "stationary distributions and IPR");
  add_graph_options(stationary, in, false);
  stationary->add_option("--walk", walks_spec, "turw, merw, nbcrw, a comma list or all")
      ->capture_default_str();
  stationary->add_flag("--check", check, "cross-check against the linear solve");
  add_regularize(stationary);

  HittingFlags hf;
  auto* hitting = app.add_subcommand("hitting", "hitting times");
  add_graph_options(hitting, in, false);
  hitting->add_option("--walk", walks_spec, "turw, merw, nbcrw, a comma list or all")
      ->capture_default_str();
  hitting->add_option("--method", hf.method, "spectral, linear or both")
      ->check(CLI::IsMember({"spectral", "linear", "both"}))
      ->capture_default_str();
  hitting->add_option("--target", hf.targets, "comma list of hub, global and node labels")
      ->capture_default_str();
  hitting->add_flag("--full-matrix", hf.full_matrix, "emit T_ij above 500 nodes");
  hitting->add_flag("--verbatim-eq26", hf.verbatim,
                    "also evaluate the printed 1/2 prefactor of the weighted pairwise "
                    "expression and report the discrepancy");
  add_regularize(hitting);

  GenFlags gf;
  auto* gen = app.add_subcommand("generate", "write a generated graph as an edge list");
  gen->add_option("model", gf.model, "er, ba, ws or rose")
      ->required()
      ->check(CLI::IsMember({"er", "ba", "ws", "rose"}));
  gen->add_option("--n", gf.n, "node count (er, ba, ws)");
  gen->add_option("--p", gf.p, "edge probability (er)")->capture_default_str();
  gen->add_option("--m-attach", gf.m_attach, "edges per new node (ba)")->capture_default_str();
  gen->add_option("--k", gf.k, "ring degree (ws)")->capture_default_str();
  gen->add_option("--beta", gf.beta, "rewiring probability (ws)")->capture_default_str();
  gen->add_option("--m", gf.m, "petals (rose)")->capture_default_str();
  gen->add_option("--l", gf.l, "cycle length (rose)")->capture_default_str();
  gen->add_flag("--lcc", gf.lcc, "keep only the largest connected component");

  int rose_m = 2;
  auto* oracle = app.add_subcommand("rose-oracle", "closed forms for the four-cycle rose");
  oracle->add_option("m", rose_m, "petal count")->required();
  oracle->add_option("--walk", walks_spec, "turw, merw, nbcrw, a comma list or all")
      ->capture_default_str();

  GraphInput cmp_in;
  auto* compare = app.add_subcommand("compare", "IPR, hub and global hitting times per walk");
  add_graph_options(compare, cmp_in, true);
  add_regularize(compare);

  std::string range = "10:1000";
  auto* scaling = app.add_subcommand("scaling", "global hitting time against size on roses");
  scaling->add_option("--kind", walks_spec, "turw, merw, nbcrw, a comma list or all")
      ->capture_default_str();
  scaling->add_option("--m-range", range, "lo:hi[:step] petal counts")->capture_default_str();

  SimFlags sf;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo walker");
  add_graph_options(simulate, in, false);
  simulate->add_option("--walk", sf.walk, "turw, merw or nbcrw")->capture_default_str();
  simulate->add_option("--mode", sf.mode, "stationary or hitting")
      ->check(CLI::IsMember({"stationary", "hitting"}))
      ->capture_default_str();
  simulate->add_option("--source", sf.source, "source node label (default: first node)");
  simulate->add_option("--target", sf.target, "target node label or hub")->capture_default_str();
  simulate->add_option("--trials", sf.cfg.trials, "independent walks (hitting)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--max-steps", sf.cfg.max_steps, "steps per walk cap / trajectory length")
      ->capture_default_str();
  simulate->add_option("--burn-in", sf.cfg.burn_in, "discarded steps (stationary)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bool no_exact = false;
  simulate->add_flag("--no-exact", no_exact, "skip the exact reference value");
  add_regularize(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    error_json(err, ErrorCode::invalid_params, e.what());
    return static_cast<int>(ErrorCode::invalid_params);
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const CLI::App* sub = app.get_subcommands().front();
    std::vector<Loaded> inputs;
    Result result;
    if (sub == gen) {
      auto [g, desc] = cmd_generate(gf, glob);
      const auto ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      const json man = manifest(app, sub, glob, inputs, ms);
      std::ofstream file;
      std::ostream* dst = &out;
      if (!glob.output.empty()) {
        file.open(glob.output, std::ios::binary);
        if (!file) throw Error(ErrorCode::invalid_params, "cannot write '" + glob.output + "'");
        dst = &file;
      }
      const std::string comments[] = {"generated by nbcrw " + std::string(kVersion),
                                      "model " + desc, "seed " + std::to_string(glob.seed),
                                      "manifest " + man.dump()};
      write_edge_list(*dst, g, comments);
      return 0;
    }
    if (sub == oracle) {
      result = cmd_rose_oracle(rose_m, parse_walks(walks_spec));
    } else if (sub == scaling) {
      result = cmd_scaling(parse_walks(walks_spec), range);
    } else if (sub == compare) {
      inputs = load_all(cmp_in, err);
      result = cmd_compare(inputs, glob, regularize);
    } else {
      inputs = load_all(in, err);
      const Graph& g = inputs.front().graph;
      if (sub == centrality) {
        result = cmd_centrality(g, glob);
      } else if (sub == stationary) {
        result = cmd_stationary(g, glob, parse_walks(walks_spec), check, regularize);
      } else if (sub == hitting) {
        hf.regularize = regularize;
        result = cmd_hitting(g, glob, parse_walks(walks_spec), hf, err);
      } else {
        sf.exact = !no_exact;
        sf.regularize = regularize;
        result = cmd_simulate(g, glob, sf);
      }
    }
    const auto ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    emit(result, manifest(app, sub, glob, inputs, ms), glob, out);
    return 0;
  } catch (const Error& e) {
    error_json(err, e.code(), e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    error_json(err, ErrorCode::invalid_params, e.what());
    return static_cast<int>(ErrorCode::invalid_params);
  }
}

}  // namespace nbcrw::cli
