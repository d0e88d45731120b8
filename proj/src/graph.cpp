#include "balnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "balnet/rng.hpp"

namespace balnet {

Digraph Digraph::from_edges(std::size_t n, std::vector<Edge> edges) {
  if (n < 2) throw GraphError("digraph needs at least 2 nodes, got " + std::to_string(n));
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) {
      throw GraphError("edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
                       " references a node outside [0, " + std::to_string(n) + ")");
    }
    if (e.src == e.dst) throw GraphError("self-loop on node " + std::to_string(e.src));
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw GraphError("duplicate edge " + std::to_string(dup->src) + " -> " +
                     std::to_string(dup->dst));
  }

  Digraph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  const std::size_t m = g.edges_.size();

  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.out_offsets_[e.src + 1];
    ++g.in_offsets_[e.dst + 1];
  }
  for (std::size_t j = 0; j < n; ++j) {
    g.out_offsets_[j + 1] += g.out_offsets_[j];
    g.in_offsets_[j + 1] += g.in_offsets_[j];
  }

  g.out_nbrs_.resize(m);
  g.out_ids_.resize(m);
  g.in_nbrs_.resize(m);
  g.in_ids_.resize(m);
  std::vector<std::size_t> fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  // Edges are sorted by src, so in-lists come out ordered by source id.
  for (EdgeId id = 0; id < m; ++id) {
    const Edge& e = g.edges_[id];
    g.out_nbrs_[id] = e.dst;
    g.out_ids_[id] = id;
    const std::size_t slot = fill[e.dst]++;
    g.in_nbrs_[slot] = e.src;
    g.in_ids_[slot] = id;
  }
  return g;
}

std::span<const NodeId> Digraph::out_neighbors(NodeId j) const {
  return {out_nbrs_.data() + out_offsets_[j], out_degree(j)};
}

std::span<const NodeId> Digraph::in_neighbors(NodeId j) const {
  return {in_nbrs_.data() + in_offsets_[j], in_degree(j)};
}

std::span<const EdgeId> Digraph::out_edges(NodeId j) const {
  return {out_ids_.data() + out_offsets_[j], out_degree(j)};
}

std::span<const EdgeId> Digraph::in_edges(NodeId j) const {
  return {in_ids_.data() + in_offsets_[j], in_degree(j)};
}

std::optional<EdgeId> Digraph::find_edge(NodeId src, NodeId dst) const {
  if (src >= n_ || dst >= n_) return std::nullopt;
  auto nbrs = out_neighbors(src);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), dst);
  if (it == nbrs.end() || *it != dst) return std::nullopt;
  return out_offsets_[src] + static_cast<std::size_t>(it - nbrs.begin());
}

namespace {

// Drops a trailing '#' comment; true when nothing but whitespace remains.
bool skip_line(std::string& line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string line_ref(std::size_t lineno) { return "line " + std::to_string(lineno) + ": "; }

// Strict non-negative integer parse of one whitespace-delimited token list.
bool parse_ids(const std::string& line, std::vector<long long>& out) {
  out.clear();
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      return false;
    }
    if (used != tok.size()) return false;
    out.push_back(v);
  }
  return true;
}

}  // namespace

Digraph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::vector<long long> ids;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line)) continue;
    if (!parse_ids(line, ids)) throw GraphError(line_ref(lineno) + "malformed line '" + line + "'");
    if (!n) {
      if (ids.size() != 1) throw GraphError(line_ref(lineno) + "expected node count");
      if (ids[0] < 2) throw GraphError(line_ref(lineno) + "node count must be at least 2");
      n = static_cast<std::size_t>(ids[0]);
      continue;
    }
    if (ids.size() != 2) throw GraphError(line_ref(lineno) + "expected 'src dst'");
    for (long long v : ids) {
      if (v < 0 || static_cast<unsigned long long>(v) >= *n) {
        throw GraphError(line_ref(lineno) + "node id " + std::to_string(v) + " out of range");
      }
    }
    if (ids[0] == ids[1]) throw GraphError(line_ref(lineno) + "self-loop on node " + std::to_string(ids[0]));
    edges.push_back({static_cast<NodeId>(ids[0]), static_cast<NodeId>(ids[1])});
  }
  if (!n) throw GraphError("edge list is empty");
  return Digraph::from_edges(*n, std::move(edges));
}

Digraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

Digraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file '" + path + "'");
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Digraph& g) {
  out << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.src << ' ' << e.dst << '\n';
}

namespace {

std::size_t count_reachable(const Digraph& g, NodeId start, bool forward) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack{start};
  seen[start] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId u : forward ? g.out_neighbors(v) : g.in_neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count;
}

}  // namespace

bool is_strongly_connected(const Digraph& g) {
  const std::size_t n = g.node_count();
  return count_reachable(g, 0, true) == n && count_reachable(g, 0, false) == n;
}

std::vector<std::size_t> strongly_connected_components(const Digraph& g) {
  // Kosaraju: finish order on the forward graph, then sweep the reverse graph.
  const std::size_t n = g.node_count();
  std::vector<char> seen(n, 0);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
    seen[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      auto nbrs = g.out_neighbors(v);
      if (next < nbrs.size()) {
        NodeId u = nbrs[next++];
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back({u, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(n, unset);
  std::size_t count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != unset) continue;
    std::vector<NodeId> stack{*it};
    comp[*it] = count;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId u : g.in_neighbors(v)) {
        if (comp[u] == unset) {
          comp[u] = count;
          stack.push_back(u);
        }
      }
    }
    ++count;
  }

  // Renumber by smallest member.
  std::vector<std::size_t> relabel(count, unset);
  std::size_t next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (relabel[comp[v]] == unset) relabel[comp[v]] = next++;
    comp[v] = relabel[comp[v]];
  }
  return comp;
}

bool is_union_of_strong_components(const Digraph& g) {
  auto comp = strongly_connected_components(g);
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return comp[e.src] == comp[e.dst]; });
}

Digraph random_strongly_connected(std::size_t n, double extra_edge_prob, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random graph needs n >= 2");
  if (!(extra_edge_prob >= 0.0 && extra_edge_prob <= 1.0)) {
    throw std::invalid_argument("extra edge probability must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<NodeId> cycle(n);
  for (NodeId v = 0; v < n; ++v) cycle[v] = v;
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(cycle[i], cycle[rng.below(i + 1)]);
  }

  std::vector<char> present(n * n, 0);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    Edge e{cycle[i], cycle[(i + 1) % n]};
    if (!present[e.src * n + e.dst]) {
      present[e.src * n + e.dst] = 1;
      edges.push_back(e);
    }
  }
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId d = 0; d < n; ++d) {
      if (s == d || present[s * n + d]) continue;
      // One draw per candidate pair keeps the stream layout independent of p.
      if (rng.uniform() < extra_edge_prob) edges.push_back({s, d});
    }
  }
  return Digraph::from_edges(n, std::move(edges));
}

}  // namespace balnet
