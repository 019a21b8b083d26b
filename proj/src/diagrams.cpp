#include "permsort/diagrams.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace permsort {

bool Graph::add_edge(int u, int v) {
  if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw DomainError("edge endpoint out of range");
  if (u > v) std::swap(u, v);
  const auto e = std::make_pair(u, v);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return false;
  edges_.insert(it, e);
  return true;
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

int Graph::degree(int v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [v](const auto& e) { return e.first == v || e.second == v; }));
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
  for (const auto& [u, v] : edges_) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

Graph adjacency_graph(const Perm& pi) {
  const int n = pi.size();
  Graph g(n);
  const Perm inv = inverse(pi);
  for (int i = 1; i < n; ++i) {
    g.add_edge(i - 1, i);
    g.add_edge(inv(i) - 1, inv(i + 1) - 1);
  }
  g.coords.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) g.coords.emplace_back(i, pi(i));
  return g;
}

std::string_view to_string(VertexRole r) {
  switch (r) {
    case VertexRole::Start: return "start";
    case VertexRole::Terminal: return "terminal";
    case VertexRole::Internal: return "internal";
  }
  return "?";
}

std::string_view to_string(EdgeRole r) {
  switch (r) {
    case EdgeRole::Horizontal: return "horizontal";
    case EdgeRole::Vertical: return "vertical";
    case EdgeRole::Diagonal: return "diagonal";
  }
  return "?";
}

Perm SortingDiagram::product() const {
  Perm p = Perm::identity(n);
  for (const auto& s : steps) p = compose(s, p);
  return p;
}

// Block layout, with blocks counted in the order D1, S1, D2, ..., D_{t+1}:
//   D_i holds iota at   x = (t+1-i)n + k, y = (i-1)n + k
//   S_i holds sigma^i at x = (t+1-i)n + k, y = i*n + sigma^i(k)
// so D_i -> S_i is vertical and S_i -> D_{i+1} is horizontal.
SortingDiagram build_sorting_diagram(const std::vector<Perm>& steps, int n) {
  for (const auto& s : steps) {
    if (s.size() != n) throw SizeMismatch("sorting diagram steps must all have size " + std::to_string(n));
  }
  const int t = static_cast<int>(steps.size());
  SortingDiagram sd;
  sd.n = n;
  sd.steps = steps;
  sd.graph = Graph((2 * t + 1) * n);
  auto d_vertex = [n](int i, int k) { return (2 * (i - 1)) * n + (k - 1); };  // i in 1..t+1
  auto s_vertex = [n](int i, int k) { return (2 * i - 1) * n + (k - 1); };    // i in 1..t

  sd.graph.coords.resize(static_cast<std::size_t>(sd.graph.vertex_count()));
  sd.vertex_roles.assign(static_cast<std::size_t>(sd.graph.vertex_count()), VertexRole::Internal);
  sd.blocks.resize(static_cast<std::size_t>(sd.graph.vertex_count()));
  for (int i = 1; i <= t + 1; ++i) {
    for (int k = 1; k <= n; ++k) {
      const auto v = static_cast<std::size_t>(d_vertex(i, k));
      sd.graph.coords[v] = {(t + 1 - i) * n + k, (i - 1) * n + k};
      sd.blocks[v] = "D" + std::to_string(i);
      if (i == t + 1) sd.vertex_roles[v] = VertexRole::Terminal;
      if (i == 1) sd.vertex_roles[v] = VertexRole::Start;
    }
  }
  for (int i = 1; i <= t; ++i) {
    const Perm& sigma = steps[static_cast<std::size_t>(i - 1)];
    for (int k = 1; k <= n; ++k) {
      const auto v = static_cast<std::size_t>(s_vertex(i, k));
      sd.graph.coords[v] = {(t + 1 - i) * n + k, i * n + sigma(k)};
      sd.blocks[v] = "S" + std::to_string(i);
    }
  }

  std::vector<std::pair<std::pair<int, int>, EdgeRole>> tagged;
  auto add = [&](int u, int v, EdgeRole role) {
    if (sd.graph.add_edge(u, v)) tagged.push_back({{std::min(u, v), std::max(u, v)}, role});
  };
  for (int i = 1; i <= t; ++i) {
    const Perm& sigma = steps[static_cast<std::size_t>(i - 1)];
    for (int k = 1; k <= n; ++k) {
      add(d_vertex(i, k), s_vertex(i, k), EdgeRole::Vertical);
      add(s_vertex(i, k), d_vertex(i + 1, sigma(k)), EdgeRole::Horizontal);
    }
  }
  for (int k = 1; k < n; ++k) {
    add(d_vertex(1, k), d_vertex(1, k + 1), EdgeRole::Diagonal);
    add(d_vertex(t + 1, k), d_vertex(t + 1, k + 1), EdgeRole::Diagonal);
  }
  std::sort(tagged.begin(), tagged.end());
  for (const auto& entry : tagged) sd.edge_roles.push_back(entry.second);
  return sd;
}

SortingDiagram build_sorting_diagram(const std::vector<Perm>& steps) {
  if (steps.empty()) throw DomainError("cannot infer the size of an empty step list");
  return build_sorting_diagram(steps, steps.front().size());
}

Graph contract_to_adjacency(const SortingDiagram& sd) {
  const int total = sd.graph.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(total));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  const auto& edges = sd.graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (sd.edge_roles[e] == EdgeRole::Diagonal) continue;
    parent[static_cast<std::size_t>(find(edges[e].first))] = find(edges[e].second);
  }
  // Label each contracted path by the start vertex it contains.
  std::vector<int> label(static_cast<std::size_t>(total), -1);
  int next = 0;
  for (int v = 0; v < total; ++v) {
    if (sd.vertex_roles[static_cast<std::size_t>(v)] == VertexRole::Start) {
      label[static_cast<std::size_t>(find(v))] = next++;
    }
  }
  Graph out(next);
  for (const auto& [u, v] : edges) {
    const int a = label[static_cast<std::size_t>(find(u))];
    const int b = label[static_cast<std::size_t>(find(v))];
    if (a >= 0 && b >= 0 && a != b) out.add_edge(a, b);
  }
  return out;
}

long long straight_line_crossings(const SortingDiagram& sd) {
  long long total = 0;
  for (const auto& s : sd.steps) total += count_inversions(s);
  return total;
}

// ---------------------------------------------------------------------------
// Treewidth

int treewidth_exact(const Graph& g, int cap) {
  constexpr int kHardCap = 24;
  const int n = g.vertex_count();
  if (cap > kHardCap) throw LimitExceeded("exact treewidth cap may not exceed " + std::to_string(kHardCap));
  if (n > cap) {
    throw LimitExceeded("exact treewidth limited to " + std::to_string(cap) + " vertices, graph has " +
                        std::to_string(n));
  }
  if (n == 0) return 0;
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)] |= 1u << v;
    adj[static_cast<std::size_t>(v)] |= 1u << u;
  }
  // q(S, v): vertices outside S + v reachable from v through S.
  auto q = [&](std::uint32_t s, int v) {
    std::uint32_t reached = adj[static_cast<std::size_t>(v)];
    std::uint32_t inside = reached & s;
    std::uint32_t expanded = 0;
    while (inside & ~expanded) {
      const std::uint32_t fresh = inside & ~expanded;
      expanded |= fresh;
      for (std::uint32_t bits = fresh; bits; bits &= bits - 1) reached |= adj[static_cast<std::size_t>(std::countr_zero(bits))];
      inside = reached & s;
    }
    return std::popcount(reached & ~s & ~(1u << v));
  };
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<std::uint8_t> tw(static_cast<std::size_t>(full) + 1, 0);
  // tw[S] = best width when S is eliminated first. tw[0] = 0 stands in for
  // minus one, which is harmless because q is never negative.
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t bits = s; bits; bits &= bits - 1) {
      const int v = std::countr_zero(bits);
      const std::uint32_t rest = s & ~(1u << v);
      const int w = std::max<int>(tw[rest], q(rest, v));
      best = std::min(best, w);
    }
    tw[s] = static_cast<std::uint8_t>(best);
  }
  return tw[full];
}

namespace {

int greedy_width(const Graph& g, bool min_fill) {
  const int n = g.vertex_count();
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  std::vector<bool> gone(static_cast<std::size_t>(n), false);
  int width = 0;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    long long best = std::numeric_limits<long long>::max();
    for (int v = 0; v < n; ++v) {
      if (gone[static_cast<std::size_t>(v)]) continue;
      const auto& nb = adj[static_cast<std::size_t>(v)];
      long long score = static_cast<long long>(nb.size());
      if (min_fill) {
        score = 0;
        for (auto a = nb.begin(); a != nb.end(); ++a) {
          for (auto b = std::next(a); b != nb.end(); ++b) score += !adj[static_cast<std::size_t>(*a)].count(*b);
        }
      }
      if (score < best) {
        best = score;
        pick = v;
      }
    }
    const auto nb = adj[static_cast<std::size_t>(pick)];
    width = std::max(width, static_cast<int>(nb.size()));
    for (int a : nb) {
      adj[static_cast<std::size_t>(a)].erase(pick);
      for (int b : nb) {
        if (a != b) adj[static_cast<std::size_t>(a)].insert(b);
      }
    }
    adj[static_cast<std::size_t>(pick)].clear();
    gone[static_cast<std::size_t>(pick)] = true;
  }
  return width;
}

}  // namespace

int treewidth_upper(const Graph& g) { return std::min(greedy_width(g, true), greedy_width(g, false)); }

// ---------------------------------------------------------------------------
// Export

namespace {

std::string dot_body(const Graph& g, const std::vector<VertexRole>* vroles, const std::vector<std::string>* blocks,
                     const std::vector<EdgeRole>* eroles) {
  std::ostringstream out;
  out << "graph G {\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    out << "  " << v << " [label=\"" << v + 1 << "\"";
    if (static_cast<std::size_t>(v) < g.coords.size()) {
      const auto& [x, y] = g.coords[static_cast<std::size_t>(v)];
      out << ", pos=\"" << x << "," << y << "!\"";
    }
    if (vroles) out << ", role=\"" << to_string((*vroles)[static_cast<std::size_t>(v)]) << "\"";
    if (blocks) out << ", block=\"" << (*blocks)[static_cast<std::size_t>(v)] << "\"";
    out << "];\n";
  }
  const auto& edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out << "  " << edges[e].first << " -- " << edges[e].second;
    if (eroles) out << " [role=\"" << to_string((*eroles)[e]) << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string export_dot(const Graph& g) { return dot_body(g, nullptr, nullptr, nullptr); }

std::string export_dot(const SortingDiagram& sd) {
  return dot_body(sd.graph, &sd.vertex_roles, &sd.blocks, &sd.edge_roles);
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.vertex_count();
  j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) j["edges"].push_back({u, v});
  if (g.coords.empty()) {
    j["coords"] = nullptr;
  } else {
    j["coords"] = nlohmann::json::array();
    for (const auto& [x, y] : g.coords) j["coords"].push_back({x, y});
  }
  j["roles"] = nullptr;
  return j;
}

nlohmann::json diagram_to_json(const SortingDiagram& sd) {
  auto j = graph_to_json(sd.graph);
  nlohmann::json roles;
  roles["vertices"] = nlohmann::json::array();
  for (auto r : sd.vertex_roles) roles["vertices"].push_back(to_string(r));
  roles["blocks"] = sd.blocks;
  roles["edges"] = nlohmann::json::array();
  for (auto r : sd.edge_roles) roles["edges"].push_back(to_string(r));
  j["roles"] = roles;
  return j;
}

}  // namespace permsort
