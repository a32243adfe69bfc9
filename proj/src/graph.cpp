#include "nbcrw/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "nbcrw/error.hpp"

namespace nbcrw {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::tree_graph: return "tree_graph";
    case ErrorCode::not_connected: return "not_connected";
    case ErrorCode::zero_denominator: return "zero_denominator";
    case ErrorCode::convergence_failure: return "convergence_failure";
    case ErrorCode::invalid_params: return "invalid_params";
  }
  return "unknown";
}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        std::vector<long long> labels) {
  if (!labels.empty() && labels.size() != node_count) {
    throw Error(ErrorCode::invalid_params, "label count does not match node count");
  }
  Graph g;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= node_count ||
        static_cast<std::size_t>(e.v) >= node_count) {
      throw Error(ErrorCode::invalid_params, "edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::invalid_params,
                  "self-loop at node " + std::to_string(e.u));
    }
    g.edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  const auto last = std::unique(g.edges_.begin(), g.edges_.end());
  g.duplicates_ = static_cast<std::size_t>(g.edges_.end() - last);
  g.edges_.erase(last, g.edges_.end());

  g.degrees_.assign(node_count, 0);
  for (const Edge& e : g.edges_) {
    ++g.degrees_[e.u];
    ++g.degrees_[e.v];
  }
  g.offsets_.assign(node_count + 1, 0);
  for (std::size_t i = 0; i < node_count; ++i) {
    g.offsets_[i + 1] = g.offsets_[i] + static_cast<std::size_t>(g.degrees_[i]);
  }
  g.targets_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) g.targets_[fill[e.u]++] = e.v;
  for (const Edge& e : g.edges_) g.targets_[fill[e.v]++] = e.u;
  for (std::size_t i = 0; i < node_count; ++i) {
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }

  if (labels.empty()) {
    labels.resize(node_count);
    std::iota(labels.begin(), labels.end(), 0LL);
  }
  g.labels_ = std::move(labels);
  return g;
}

std::span<const NodeId> Graph::neighbors(NodeId i) const noexcept {
  return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

int Graph::max_degree() const noexcept {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

bool Graph::has_edge(NodeId i, NodeId j) const noexcept {
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

NodeId Graph::find_label(long long label) const noexcept {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? NodeId{-1} : static_cast<NodeId>(it - labels_.begin());
}

Matrix Graph::adjacency() const {
  const auto n = static_cast<Index>(node_count());
  Matrix a = Matrix::Zero(n, n);
  for (const Edge& e : edges_) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

Vector Graph::degree_vector() const {
  Vector d(static_cast<Index>(node_count()));
  for (std::size_t i = 0; i < degrees_.size(); ++i) d(static_cast<Index>(i)) = degrees_[i];
  return d;
}

void Graph::multiply_adjacency(const Vector& x, Vector& y) const {
  const auto n = node_count();
  y.resize(static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) acc += x(targets_[k]);
    y(static_cast<Index>(i)) = acc;
  }
}

std::uint64_t Graph::fingerprint() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(node_count());
  for (const Edge& e : edges_) {
    mix(static_cast<std::uint64_t>(e.u));
    mix(static_cast<std::uint64_t>(e.v));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Edge-list text format

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, Delimiter delim) {
  std::vector<std::string_view> out;
  if (delim == Delimiter::comma) {
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(',', start);
      out.push_back(trim(line.substr(start, pos == std::string_view::npos
                                                ? std::string_view::npos
                                                : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return out;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_integer(std::string_view token, long long& value) {
  if (token.empty()) return false;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

Graph parse_edge_list(std::istream& in, const ParseOptions& opts) {
  if (opts.index_base != 0 && opts.index_base != 1) {
    throw Error(ErrorCode::invalid_params, "index base must be 0 or 1");
  }
  struct RawEdge {
    long long u, v;
    std::size_t line;
  };
  std::vector<RawEdge> raw;
  long long header_n = -1;
  long long max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    if (view.front() == '%') {
      const auto fields = split_fields(view.substr(1), Delimiter::whitespace);
      long long count = 0;
      if (fields.size() != 2 || fields[0] != "N" || !parse_integer(fields[1], count) ||
          count < 0) {
        throw ParseError(line_no, "malformed header, expected '%N <count>'");
      }
      if (!raw.empty()) throw ParseError(line_no, "header must precede edges");
      header_n = count;
      continue;
    }
    const auto fields = split_fields(view, opts.delimiter);
    long long u = 0;
    long long v = 0;
    if (fields.size() != 2 || !parse_integer(fields[0], u) || !parse_integer(fields[1], v)) {
      throw ParseError(line_no, "expected two integer node ids");
    }
    if (u == v) throw ParseError(line_no, "self-loop at node " + std::to_string(u));
    for (const long long id : {u, v}) {
      if (id < opts.index_base ||
          (header_n >= 0 && id >= opts.index_base + header_n)) {
        throw ParseError(line_no, "node id " + std::to_string(id) + " out of range");
      }
    }
    max_id = std::max({max_id, u, v});
    raw.push_back({u, v, line_no});
  }

  const long long n = header_n >= 0 ? header_n : max_id + 1 - opts.index_base;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& r : raw) {
    edges.push_back({static_cast<NodeId>(r.u - opts.index_base),
                     static_cast<NodeId>(r.v - opts.index_base)});
  }
  if (opts.on_warning) {
    std::vector<std::pair<Edge, std::size_t>> keyed;
    keyed.reserve(raw.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const Edge e = edges[k].u < edges[k].v ? edges[k] : Edge{edges[k].v, edges[k].u};
      keyed.emplace_back(e, raw[k].line);
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < keyed.size(); ++k) {
      if (keyed[k].first == keyed[k - 1].first) {
        opts.on_warning(keyed[k].second, "duplicate edge collapsed");
      }
    }
  }
  std::vector<long long> labels(static_cast<std::size_t>(std::max(n, 0LL)));
  std::iota(labels.begin(), labels.end(), static_cast<long long>(opts.index_base));
  return Graph::from_edges(static_cast<std::size_t>(std::max(n, 0LL)), edges,
                           std::move(labels));
}

Graph parse_edge_list(std::string_view text, const ParseOptions& opts) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, opts);
}

void write_edge_list(std::ostream& out, const Graph& g,
                     std::span<const std::string> comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  // Labels may be arbitrary; the header is only exact for contiguous ones.
  bool contiguous = true;
  const long long base = g.node_count() > 0 ? g.label(0) : 0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (g.label(static_cast<NodeId>(i)) != base + static_cast<long long>(i)) contiguous = false;
  }
  if (contiguous && (base == 0 || base == 1)) out << "%N " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

// ---------------------------------------------------------------------------
// Structure

std::vector<int> component_labels(const Graph& g) {
  const auto n = g.node_count();
  std::vector<int> comp(n, -1);
  std::vector<NodeId> stack;
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(static_cast<NodeId>(s));
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (const NodeId v : g.neighbors(u)) {
        if (comp[v] < 0) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

GraphValidation validate(const Graph& g) {
  GraphValidation v;
  v.node_count = g.node_count();
  v.edge_count = g.edge_count();
  const auto comp = component_labels(g);
  v.component_count = comp.empty() ? 0 : static_cast<std::size_t>(
                                              *std::max_element(comp.begin(), comp.end()) + 1);
  v.connected = v.component_count == 1;
  v.is_tree = v.connected && v.edge_count + 1 == v.node_count;
  const auto& d = g.degrees();
  v.min_degree = d.empty() ? 0 : *std::min_element(d.begin(), d.end());
  return v;
}

Graph largest_component(const Graph& g) {
  const auto comp = component_labels(g);
  if (comp.empty()) return g;
  const int count = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::size_t> sizes(static_cast<std::size_t>(count), 0);
  for (const int c : comp) ++sizes[static_cast<std::size_t>(c)];
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<NodeId> remap(g.node_count(), -1);
  std::vector<long long> labels;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (comp[i] == best) {
      remap[i] = static_cast<NodeId>(labels.size());
      labels.push_back(g.label(static_cast<NodeId>(i)));
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (remap[e.u] >= 0) edges.push_back({remap[e.u], remap[e.v]});
  }
  const std::size_t n = labels.size();
  return Graph::from_edges(n, edges, std::move(labels));
}

Matrix laplacian(const Graph& g) {
  Matrix l = -g.adjacency();
  l.diagonal() = g.degree_vector();
  return l;
}

WeightedGraph weighted_from_centrality(const Graph& g, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != g.node_count()) {
    throw Error(ErrorCode::invalid_params, "centrality length does not match node count");
  }
  if ((x.array() < 0.0).any()) {
    throw Error(ErrorCode::invalid_params, "negative centrality entry");
  }
  const auto n = static_cast<Index>(g.node_count());
  WeightedGraph w;
  w.weights = Matrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const double wij = x(e.u) * x(e.v);
    w.weights(e.u, e.v) = wij;
    w.weights(e.v, e.u) = wij;
  }
  w.strengths = w.weights.rowwise().sum();
  w.total_strength = w.strengths.sum();
  return w;
}

WeightedGraph make_weighted(Matrix weights) {
  if (weights.rows() != weights.cols()) {
    throw Error(ErrorCode::invalid_params, "weight matrix must be square");
  }
  if ((weights.array() < 0.0).any()) {
    throw Error(ErrorCode::invalid_params, "negative weight");
  }
  if (weights.diagonal().cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorCode::invalid_params, "weight matrix must have a zero diagonal");
  }
  if ((weights - weights.transpose()).cwiseAbs().maxCoeff() >
      1e-14 * std::max(1.0, weights.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::invalid_params, "weight matrix must be symmetric");
  }
  WeightedGraph w;
  w.weights = std::move(weights);
  w.strengths = w.weights.rowwise().sum();
  w.total_strength = w.strengths.sum();
  return w;
}

Matrix weighted_laplacian(const WeightedGraph& w) {
  Matrix l = -w.weights;
  l.diagonal() = w.strengths;
  return l;
}

}  // namespace nbcrw
