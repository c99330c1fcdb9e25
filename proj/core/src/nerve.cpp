#include "hatcc/nerve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hatcc {

int FactorNerve::find_edge(FactorId a, FactorId b) const {
  const auto& adj = adjacency[static_cast<std::size_t>(a)];
  auto it = std::lower_bound(adj.begin(), adj.end(), std::make_pair(b, -1));
  return it != adj.end() && it->first == b ? it->second : -1;
}

FactorNerve build_factor_nerve(const FactorGraph& graph) {
  FactorNerve nerve;
  nerve.num_factors = static_cast<int>(graph.num_factors());
  nerve.adjacency.assign(graph.num_factors(), {});
  std::vector<std::vector<VarId>> sorted;
  sorted.reserve(graph.num_factors());
  for (const auto& f : graph.factors) {
    sorted.push_back(f.scope);
    std::sort(sorted.back().begin(), sorted.back().end());
  }
  std::vector<std::vector<std::size_t>> incident(graph.num_variables());
  for (std::size_t f = 0; f < sorted.size(); ++f) {
    for (VarId v : sorted[f]) incident[static_cast<std::size_t>(v)].push_back(f);
  }
  std::vector<VarId> overlap;
  std::vector<std::size_t> partners;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    partners.clear();
    for (VarId v : sorted[a]) {
      for (std::size_t b : incident[static_cast<std::size_t>(v)]) {
        if (b > a) partners.push_back(b);
      }
    }
    std::sort(partners.begin(), partners.end());
    partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
    for (std::size_t b : partners) {
      overlap.clear();
      std::set_intersection(sorted[a].begin(), sorted[a].end(), sorted[b].begin(), sorted[b].end(),
                            std::back_inserter(overlap));
      double w = 0.0;
      for (VarId v : overlap) w += std::log(static_cast<double>(graph.cardinality(v)));
      const int id = static_cast<int>(nerve.edges.size());
      nerve.edges.push_back({static_cast<FactorId>(a), static_cast<FactorId>(b), overlap, w});
      nerve.adjacency[a].emplace_back(static_cast<FactorId>(b), id);
      nerve.adjacency[b].emplace_back(static_cast<FactorId>(a), id);
    }
  }
  // a's list is filled in increasing b already; b's list receives a in increasing order too
  return nerve;
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

// Weights are sums of logs; quantize so that equal interfaces summed in a
// different order still tie exactly.
long long weight_key(double w) { return std::llround(w * 1e9); }

}  // namespace

Backbone backbone(const FactorNerve& nerve, const BackboneOptions& options) {
  std::vector<int> order(nerve.edges.size());
  std::iota(order.begin(), order.end(), 0);
  const bool maximize = options.objective == SpanningObjective::Maximum;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ea = nerve.edges[static_cast<std::size_t>(a)];
    const auto& eb = nerve.edges[static_cast<std::size_t>(b)];
    long long ka = weight_key(ea.weight);
    long long kb = weight_key(eb.weight);
    if (maximize) std::swap(ka, kb);
    return std::tie(ka, ea.u, ea.v) < std::tie(kb, eb.u, eb.v);
  });
  DisjointSets sets(nerve.num_factors);
  std::vector<int> tree;
  for (int e : order) {
    const auto& edge = nerve.edges[static_cast<std::size_t>(e)];
    if (sets.unite(edge.u, edge.v)) tree.push_back(e);
  }
  return backbone_from_tree_edges(nerve, std::move(tree), options);
}

Backbone backbone_from_tree_edges(const FactorNerve& nerve, std::vector<int> tree_edges,
                                  const BackboneOptions& options) {
  const auto n = static_cast<std::size_t>(nerve.num_factors);
  std::sort(tree_edges.begin(), tree_edges.end());
  tree_edges.erase(std::unique(tree_edges.begin(), tree_edges.end()), tree_edges.end());

  Backbone bb;
  std::vector<bool> in_tree(nerve.edges.size(), false);
  std::vector<std::vector<std::pair<FactorId, int>>> tree_adj(n);
  DisjointSets sets(nerve.num_factors);
  for (int e : tree_edges) {
    const auto& edge = nerve.edges.at(static_cast<std::size_t>(e));
    if (!sets.unite(edge.u, edge.v)) throw std::invalid_argument("tree edges contain a cycle");
    in_tree[static_cast<std::size_t>(e)] = true;
    tree_adj[static_cast<std::size_t>(edge.u)].emplace_back(edge.v, e);
    tree_adj[static_cast<std::size_t>(edge.v)].emplace_back(edge.u, e);
  }
  for (auto& adj : tree_adj) std::sort(adj.begin(), adj.end());
  bb.tree_edges = tree_edges;
  for (std::size_t e = 0; e < nerve.edges.size(); ++e) {
    if (!in_tree[e]) bb.chords.push_back(static_cast<int>(e));
  }

  // components come from the chosen forest, not the nerve; the two agree
  // whenever the forest is spanning
  bb.component.assign(n, -1);
  bb.parent.assign(n, -1);
  bb.parent_edge.assign(n, -1);
  bb.depth.assign(n, 0);
  bb.children.assign(n, {});
  std::vector<std::vector<FactorId>> members;
  for (std::size_t f = 0; f < n; ++f) {
    if (bb.component[f] >= 0) continue;
    const int c = static_cast<int>(members.size());
    members.emplace_back();
    std::vector<FactorId> stack{static_cast<FactorId>(f)};
    bb.component[f] = c;
    while (!stack.empty()) {
      const FactorId x = stack.back();
      stack.pop_back();
      members.back().push_back(x);
      for (auto [y, e] : tree_adj[static_cast<std::size_t>(x)]) {
        if (bb.component[static_cast<std::size_t>(y)] < 0) {
          bb.component[static_cast<std::size_t>(y)] = c;
          stack.push_back(y);
        }
      }
    }
  }
  for (auto& group : members) {
    FactorId root = *std::min_element(group.begin(), group.end());
    if (options.root_rule == RootRule::MaxDegree) {
      for (FactorId f : group) {
        if (nerve.degree(f) > nerve.degree(root) || (nerve.degree(f) == nerve.degree(root) && f < root)) {
          root = f;
        }
      }
    }
    bb.roots.push_back(root);
    std::vector<FactorId> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const FactorId x = queue[head];
      for (auto [y, e] : tree_adj[static_cast<std::size_t>(x)]) {
        if (y == bb.parent[static_cast<std::size_t>(x)] && e == bb.parent_edge[static_cast<std::size_t>(x)]) continue;
        bb.parent[static_cast<std::size_t>(y)] = x;
        bb.parent_edge[static_cast<std::size_t>(y)] = e;
        bb.depth[static_cast<std::size_t>(y)] = bb.depth[static_cast<std::size_t>(x)] + 1;
        bb.children[static_cast<std::size_t>(x)].push_back(y);
        queue.push_back(y);
      }
    }
  }
  return bb;
}

FundamentalCycle fundamental_cycle(const FactorNerve& nerve, const Backbone& bb, int chord) {
  const auto& edge = nerve.edges.at(static_cast<std::size_t>(chord));
  if (bb.component[static_cast<std::size_t>(edge.u)] != bb.component[static_cast<std::size_t>(edge.v)]) {
    throw std::invalid_argument("chord endpoints lie in different backbone components");
  }
  // climb from both ends to the lowest common ancestor
  std::vector<FactorId> from_v{edge.v};
  std::vector<FactorId> from_u{edge.u};
  FactorId a = edge.v;
  FactorId b = edge.u;
  while (bb.depth[static_cast<std::size_t>(a)] > bb.depth[static_cast<std::size_t>(b)]) {
    a = bb.parent[static_cast<std::size_t>(a)];
    from_v.push_back(a);
  }
  while (bb.depth[static_cast<std::size_t>(b)] > bb.depth[static_cast<std::size_t>(a)]) {
    b = bb.parent[static_cast<std::size_t>(b)];
    from_u.push_back(b);
  }
  while (a != b) {
    a = bb.parent[static_cast<std::size_t>(a)];
    b = bb.parent[static_cast<std::size_t>(b)];
    from_v.push_back(a);
    from_u.push_back(b);
  }
  FundamentalCycle cycle;
  cycle.chord = chord;
  cycle.factors = from_v;
  for (auto it = from_u.rbegin() + 1; it != from_u.rend(); ++it) cycle.factors.push_back(*it);
  for (std::size_t i = 0; i + 1 < cycle.factors.size(); ++i) {
    const int e = nerve.find_edge(cycle.factors[i], cycle.factors[i + 1]);
    cycle.interfaces.push_back(nerve.edges[static_cast<std::size_t>(e)].interface);
  }
  cycle.interfaces.push_back(edge.interface);
  return cycle;
}

std::string nerve_to_dot(const FactorNerve& nerve, const Backbone& bb) {
  std::vector<bool> chord(nerve.edges.size(), false);
  for (int e : bb.chords) chord[static_cast<std::size_t>(e)] = true;
  std::ostringstream os;
  os << "graph nerve {\n  node [shape=box];\n";
  for (int f = 0; f < nerve.num_factors; ++f) {
    os << "  f" << f;
    if (std::find(bb.roots.begin(), bb.roots.end(), f) != bb.roots.end()) os << " [peripheries=2]";
    os << ";\n";
  }
  for (std::size_t e = 0; e < nerve.edges.size(); ++e) {
    const auto& edge = nerve.edges[e];
    os << "  f" << edge.u << " -- f" << edge.v << " [label=\"{";
    for (std::size_t i = 0; i < edge.interface.size(); ++i) os << (i ? "," : "") << edge.interface[i];
    os << "}\"" << (chord[e] ? ", style=dashed" : "") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hatcc
