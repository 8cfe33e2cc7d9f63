#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "hkqa/quasi_graph.hpp"
#include "hkqa/text.hpp"

namespace hkqa {

struct GstEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double cost = 0.0;
};

/// Undirected graph with edge costs in [0,1] and terminal groups.
struct GstInstance {
  std::size_t node_count = 0;
  std::vector<GstEdge> edges;
  std::vector<std::vector<std::uint32_t>> groups;
};

struct SteinerTree {
  std::vector<std::uint32_t> nodes;  // ascending
  std::vector<std::uint32_t> edges;  // ascending edge ids
  double cost = 0.0;

  bool contains(std::uint32_t n) const { return std::binary_search(nodes.begin(), nodes.end(), n); }
  friend bool operator==(const SteinerTree&, const SteinerTree&) = default;
};

class DisconnectedInstanceError : public Error {
 public:
  DisconnectedInstanceError() : Error("GST instance is not connected") {}
};

class GroupBudgetError : public Error {
 public:
  GroupBudgetError(std::size_t groups, std::size_t budget)
      : Error("GST instance has " + std::to_string(groups) + " groups, exact budget is " + std::to_string(budget)) {}
};

inline constexpr std::size_t kDefaultGroupBudget = 12;
inline constexpr std::size_t kBruteForceMaxNodes = 10;
inline constexpr std::size_t kMaxLabels = 4'000'000;

/// The label search ran out of memory budget before reaching any full tree.
class LabelBudgetError : public Error {
 public:
  LabelBudgetError() : Error("GST label budget exhausted") {}
};

namespace detail {

struct Adjacency {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out;  // (neighbor, edge id)

  explicit Adjacency(const GstInstance& inst) : out(inst.node_count) {
    for (std::uint32_t i = 0; i < inst.edges.size(); ++i) {
      out[inst.edges[i].u].emplace_back(inst.edges[i].v, i);
      out[inst.edges[i].v].emplace_back(inst.edges[i].u, i);
    }
  }
};

inline bool connected(const GstInstance& inst, const Adjacency& adj) {
  if (inst.node_count == 0) return false;
  std::vector<char> seen(inst.node_count, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto [v, _] : adj.out[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == inst.node_count;
}

inline void validate(const GstInstance& inst, const Adjacency& adj) {
  if (inst.groups.empty()) throw Error("GST instance has no groups");
  for (const auto& g : inst.groups) {
    if (g.empty()) throw Error("GST instance has an empty group");
    for (auto n : g) {
      if (n >= inst.node_count) throw Error("GST group references unknown node");
    }
  }
  for (const auto& e : inst.edges) {
    if (e.u >= inst.node_count || e.v >= inst.node_count) throw Error("GST edge references unknown node");
    if (!(e.cost >= 0.0 && e.cost <= 1.0)) throw Error("GST edge cost outside [0,1]");
  }
  if (!connected(inst, adj)) throw DisconnectedInstanceError();
}

inline std::vector<std::uint32_t> group_masks(const GstInstance& inst) {
  std::vector<std::uint32_t> mask(inst.node_count, 0);
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    for (auto n : inst.groups[g]) mask[n] |= 1u << g;
  }
  return mask;
}

inline double sum_cost(const GstInstance& inst, const std::vector<std::uint32_t>& sorted_edges) {
  double c = 0.0;
  for (auto e : sorted_edges) c += inst.edges[e].cost;
  return c;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

/// Kruskal over `candidate` edges (cost, then id order).
inline std::vector<std::uint32_t> mst(const GstInstance& inst, std::vector<std::uint32_t> candidate) {
  std::sort(candidate.begin(), candidate.end(), [&](auto a, auto b) {
    return std::tie(inst.edges[a].cost, a) < std::tie(inst.edges[b].cost, b);
  });
  UnionFind uf(inst.node_count);
  std::vector<std::uint32_t> out;
  for (auto e : candidate) {
    if (uf.unite(inst.edges[e].u, inst.edges[e].v)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Repeatedly drops the smallest-id leaf whose removal keeps every group covered.
inline void prune(const GstInstance& inst, const std::vector<std::uint32_t>& masks, std::set<std::uint32_t>& nodes,
                  std::set<std::uint32_t>& edges) {
  const std::uint32_t full = (1u << inst.groups.size()) - 1;
  bool changed = true;
  while (changed && nodes.size() > 1) {
    changed = false;
    std::map<std::uint32_t, std::vector<std::uint32_t>> incident;
    for (auto e : edges) {
      incident[inst.edges[e].u].push_back(e);
      incident[inst.edges[e].v].push_back(e);
    }
    for (auto n : nodes) {
      auto it = incident.find(n);
      if (it == incident.end() || it->second.size() != 1) continue;
      std::uint32_t covered = 0;
      for (auto m : nodes) {
        if (m != n) covered |= masks[m];
      }
      if ((covered & full) != full) continue;
      nodes.erase(n);
      edges.erase(it->second.front());
      changed = true;
      break;
    }
  }
}

inline SteinerTree finish_tree(const GstInstance& inst, const std::vector<std::uint32_t>& masks,
                               std::set<std::uint32_t> nodes, const std::vector<std::uint32_t>& edge_union) {
  auto tree_edges = mst(inst, edge_union);
  std::set<std::uint32_t> edges(tree_edges.begin(), tree_edges.end());
  for (auto e : edges) {
    nodes.insert(inst.edges[e].u);
    nodes.insert(inst.edges[e].v);
  }
  prune(inst, masks, nodes, edges);
  SteinerTree t;
  t.nodes.assign(nodes.begin(), nodes.end());
  t.edges.assign(edges.begin(), edges.end());
  t.cost = sum_cost(inst, t.edges);
  return t;
}

/// Best-first label-setting DP over (node, group subset) with up to k labels per state.
class LabelEngine {
 public:
  LabelEngine(const GstInstance& inst, std::size_t k) : inst_(inst), adj_(inst), k_(k) {
    validate(inst_, adj_);
    masks_ = group_masks(inst_);
    full_ = (1u << inst_.groups.size()) - 1;
    settled_.resize(inst_.node_count);
    edge_hash_.resize(inst_.edges.size());
    std::uint64_t x = 0x9E3779B97F4A7C15ull;
    for (auto& h : edge_hash_) {
      x ^= x << 13;
      x ^= x >> 7;
      x ^= x << 17;
      h = x;
    }
  }

  /// Trees in non-decreasing cost with pairwise distinct node sets.
  std::vector<SteinerTree> run() {
    for (std::uint32_t v = 0; v < inst_.node_count; ++v) {
      if (masks_[v]) push({0.0, v, masks_[v], Kind::Base, 0, 0, 0, 0});
    }
    std::vector<SteinerTree> trees;
    std::set<std::vector<std::uint32_t>> seen_nodes;
    std::size_t full_labels = 0;
    while (!queue_.empty() && labels_.size() < kMaxLabels) {
      auto [cost, id] = queue_.top();
      queue_.pop();
      const Label lab = labels_[id];
      auto& bucket = settled_[lab.node][lab.mask];
      if (bucket.size() >= k_) continue;
      if (std::any_of(bucket.begin(), bucket.end(), [&](auto o) { return labels_[o].sig == lab.sig; })) continue;
      bucket.push_back(id);

      if (lab.mask == full_) {
        auto t = recover(id);
        if (seen_nodes.insert(t.nodes).second) trees.push_back(std::move(t));
        if (trees.size() >= k_ || ++full_labels >= k_ * 4) break;
        continue;
      }
      for (auto [u, e] : adj_.out[lab.node]) {
        push({cost + inst_.edges[e].cost, u, lab.mask | masks_[u], Kind::Grow, id, e, 0,
              lab.sig + edge_hash_[e]});
      }
      // Merge with settled labels at this node whose subsets overlap only in
      // the node's own groups.
      for (const auto& [other, others] : settled_[lab.node]) {
        if ((other & lab.mask & ~masks_[lab.node]) != 0) continue;
        if ((other | lab.mask) == lab.mask || (other | lab.mask) == other) continue;
        for (auto o : others) {
          push({cost + labels_[o].cost, lab.node, lab.mask | other, Kind::Merge, id, 0, o, lab.sig + labels_[o].sig});
        }
      }
    }
    std::stable_sort(trees.begin(), trees.end(), [](const auto& a, const auto& b) { return a.cost < b.cost; });
    return trees;
  }

 private:
  enum class Kind : std::uint8_t { Base, Grow, Merge };
  struct Label {
    double cost;
    std::uint32_t node;
    std::uint32_t mask;
    Kind kind;
    std::uint32_t a;     // previous label (Grow) or left part (Merge)
    std::uint32_t edge;  // Grow edge
    std::uint32_t b;     // right part (Merge)
    std::uint64_t sig;   // order-independent sum of edge hashes
  };

  void push(Label l) {
    auto id = static_cast<std::uint32_t>(labels_.size());
    labels_.push_back(l);
    queue_.emplace(l.cost, id);
  }

  SteinerTree recover(std::uint32_t id) const {
    std::set<std::uint32_t> nodes{labels_[id].node};
    std::vector<std::uint32_t> edges;
    std::vector<std::uint32_t> stack{id};
    while (!stack.empty()) {
      const auto& l = labels_[stack.back()];
      stack.pop_back();
      nodes.insert(l.node);
      if (l.kind == Kind::Grow) {
        edges.push_back(l.edge);
        stack.push_back(l.a);
      } else if (l.kind == Kind::Merge) {
        stack.push_back(l.a);
        stack.push_back(l.b);
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return finish_tree(inst_, masks_, std::move(nodes), edges);
  }

  using QueueItem = std::pair<double, std::uint32_t>;  // ties pop in creation order
  const GstInstance& inst_;
  Adjacency adj_;
  std::size_t k_;
  std::vector<std::uint32_t> masks_;
  std::uint32_t full_ = 0;
  std::vector<Label> labels_;
  std::vector<std::map<std::uint32_t, std::vector<std::uint32_t>>> settled_;  // node -> mask -> labels
  std::vector<std::uint64_t> edge_hash_;
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue_;
};

inline void check_budget(const GstInstance& inst, std::size_t budget) {
  if (inst.groups.size() > budget || inst.groups.size() > 31) throw GroupBudgetError(inst.groups.size(), budget);
}

}  // namespace detail

/// Up to k trees in non-decreasing cost. The first is optimal; later ones are
/// the cheapest the bounded label lists happen to reach.
inline std::vector<SteinerTree> solve_topk(const GstInstance& inst, std::size_t k,
                                           std::size_t group_budget = kDefaultGroupBudget) {
  if (k == 0) throw Error("solve_topk: k must be >= 1");
  detail::check_budget(inst, group_budget);
  auto trees = detail::LabelEngine(inst, k).run();
  if (trees.empty()) throw LabelBudgetError();
  return trees;
}

/// Minimum-cost group Steiner tree.
inline SteinerTree solve_exact(const GstInstance& inst, std::size_t group_budget = kDefaultGroupBudget) {
  return solve_topk(inst, 1, group_budget).front();
}

/// Shortest-path attachment from each member of the smallest group, then leaf
/// pruning; keeps the cheapest result.
inline SteinerTree solve_greedy(const GstInstance& inst) {
  detail::Adjacency adj(inst);
  detail::validate(inst, adj);
  auto masks = detail::group_masks(inst);
  const std::uint32_t full = (1u << inst.groups.size()) - 1;
  constexpr double inf = std::numeric_limits<double>::infinity();

  const auto& roots = *std::min_element(inst.groups.begin(), inst.groups.end(),
                                        [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::optional<SteinerTree> best;
  for (auto root : roots) {
    std::set<std::uint32_t> nodes{root};
    std::vector<std::uint32_t> edges;
    std::uint32_t covered = masks[root];
    while ((covered & full) != full) {
      std::vector<double> dist(inst.node_count, inf);
      std::vector<std::int64_t> via(inst.node_count, -1);
      using Item = std::pair<double, std::uint32_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      for (auto n : nodes) {
        dist[n] = 0.0;
        pq.emplace(0.0, n);
      }
      while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (auto [v, e] : adj.out[u]) {
          double nd = d + inst.edges[e].cost;
          if (nd < dist[v]) {
            dist[v] = nd;
            via[v] = e;
            pq.emplace(nd, v);
          }
        }
      }
      std::int64_t target = -1;
      for (std::uint32_t v = 0; v < inst.node_count; ++v) {
        if ((masks[v] & ~covered & full) == 0) continue;
        if (target < 0 || dist[v] < dist[target]) target = v;
      }
      for (auto v = static_cast<std::uint32_t>(target); !nodes.count(v);) {
        nodes.insert(v);
        covered |= masks[v];
        auto e = static_cast<std::uint32_t>(via[v]);
        edges.push_back(e);
        v = inst.edges[e].u == v ? inst.edges[e].v : inst.edges[e].u;
      }
    }
    std::sort(edges.begin(), edges.end());
    auto t = detail::finish_tree(inst, masks, nodes, edges);
    if (!best || t.cost < best->cost) best = std::move(t);
  }
  return *best;
}

/// Exhaustive oracle: MST of every connected node subset covering all groups.
/// Ties go to the lexicographically smallest edge-id list.
inline SteinerTree brute_force(const GstInstance& inst) {
  if (inst.node_count > kBruteForceMaxNodes) {
    throw Error("brute_force supports at most " + std::to_string(kBruteForceMaxNodes) + " nodes");
  }
  detail::Adjacency adj(inst);
  detail::validate(inst, adj);
  auto masks = detail::group_masks(inst);
  const std::uint32_t full = (1u << inst.groups.size()) - 1;
  std::optional<SteinerTree> best;
  for (std::uint32_t subset = 1; subset < (1u << inst.node_count); ++subset) {
    std::uint32_t covered = 0;
    std::vector<std::uint32_t> nodes;
    for (std::uint32_t v = 0; v < inst.node_count; ++v) {
      if (subset >> v & 1u) {
        covered |= masks[v];
        nodes.push_back(v);
      }
    }
    if (covered != full) continue;
    std::vector<std::uint32_t> induced;
    for (std::uint32_t e = 0; e < inst.edges.size(); ++e) {
      if ((subset >> inst.edges[e].u & 1u) && (subset >> inst.edges[e].v & 1u)) induced.push_back(e);
    }
    auto tree_edges = detail::mst(inst, induced);
    if (tree_edges.size() + 1 != nodes.size()) continue;  // not connected
    SteinerTree t{nodes, tree_edges, detail::sum_cost(inst, tree_edges)};
    if (!best || t.cost < best->cost || (t.cost == best->cost && t.edges < best->edges)) best = std::move(t);
  }
  if (!best) throw Error("no feasible Steiner tree");
  return *best;
}

/// Tree covers every group, is connected and acyclic, and its cost matches its edges.
inline bool is_feasible(const GstInstance& inst, const SteinerTree& t) {
  if (t.nodes.empty() || t.edges.size() + 1 != t.nodes.size()) return false;
  for (const auto& g : inst.groups) {
    if (std::none_of(g.begin(), g.end(), [&](auto n) { return t.contains(n); })) return false;
  }
  detail::UnionFind uf(inst.node_count);
  for (auto e : t.edges) {
    if (e >= inst.edges.size()) return false;
    if (!t.contains(inst.edges[e].u) || !t.contains(inst.edges[e].v)) return false;
    if (!uf.unite(inst.edges[e].u, inst.edges[e].v)) return false;
  }
  return t.cost >= 0.0;
}

/// Node and edge ids carry over from the quasi-graph; cost = 1 - weight.
inline GstInstance make_instance(const QuasiGraph& qg, const CornerstoneGroups& groups) {
  GstInstance inst;
  inst.node_count = qg.node_count();
  for (const auto& e : qg.edges()) inst.edges.push_back({e.src, e.dst, std::clamp(1.0 - e.weight, 0.0, 1.0)});
  for (const auto& g : groups) {
    std::vector<std::uint32_t> members;
    for (const auto& [n, _] : g.members) members.push_back(n);
    inst.groups.push_back(std::move(members));
  }
  return inst;
}

}  // namespace hkqa
