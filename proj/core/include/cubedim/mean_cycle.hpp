#pragma once

#include <optional>
#include <vector>

#include "cubedim/errors.hpp"
#include "cubedim/rational.hpp"

namespace cubedim {

// Optimal mean cycle in a directed multigraph with exact rational edge
// weights, via Karp's dynamic program run per strongly connected component.
//
// multiplicative mode: a path's weight is the product of its (positive)
// edge weights and the "mean" of a cycle is log(product)/length; candidate
// means are compared exactly through cross powers. additive mode: plain
// sums, means compared by cross multiplication.
enum class MeanMode { multiplicative, additive };

struct MeanCycleEdge {
  int from = 0;
  int to = 0;
  Rational weight;
  int label = -1;  // caller-defined tag, reported back on the optimal cycle
};

struct MeanCycleResult {
  bool found = false;
  Rational weight;         // product (multiplicative) or sum (additive) over the cycle
  long length = 0;
  std::vector<int> edges;  // edge indices along the optimal cycle, in order
};

namespace detail {

inline Rational mc_identity(MeanMode mode) {
  return mode == MeanMode::multiplicative ? Rational(1) : Rational(0);
}

inline Rational mc_combine(MeanMode mode, const Rational& a, const Rational& b) {
  if (mode == MeanMode::multiplicative) return Rational(a * b);
  return Rational(a + b);
}

inline Rational mc_subtract(MeanMode mode, const Rational& a, const Rational& b) {
  if (mode == MeanMode::multiplicative) return Rational(a / b);
  return Rational(a - b);
}

// sign of mean(a over la) - mean(b over lb)
inline int mc_compare_mean(MeanMode mode, const Rational& a, long la, const Rational& b, long lb) {
  if (mode == MeanMode::multiplicative) return compare_log_mean(a, la, b, lb);
  const Rational lhs = a * lb, rhs = b * la;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

// Tarjan strongly connected components; returns component id per node.
inline int scc_decompose(int num_nodes, const std::vector<MeanCycleEdge>& edges,
                         std::vector<int>& component) {
  std::vector<std::vector<int>> adj(num_nodes);
  for (std::size_t e = 0; e < edges.size(); ++e) adj[edges[e].from].push_back(edges[e].to);

  component.assign(num_nodes, -1);
  std::vector<int> index(num_nodes, -1), low(num_nodes, 0), stack;
  std::vector<char> on_stack(num_nodes, 0);
  int next_index = 0, num_components = 0;

  // iterative Tarjan
  struct Frame {
    int node;
    std::size_t child;
  };
  for (int start = 0; start < num_nodes; ++start) {
    if (index[start] >= 0) continue;
    std::vector<Frame> frames{{start, 0}};
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.node].size()) {
        const int to = adj[f.node][f.child++];
        if (index[to] < 0) {
          index[to] = low[to] = next_index++;
          stack.push_back(to);
          on_stack[to] = 1;
          frames.push_back({to, 0});
        } else if (on_stack[to]) {
          low[f.node] = std::min(low[f.node], index[to]);
        }
      } else {
        if (low[f.node] == index[f.node]) {
          while (true) {
            const int v = stack.back();
            stack.pop_back();
            on_stack[v] = 0;
            component[v] = num_components;
            if (v == f.node) break;
          }
          ++num_components;
        }
        const int done = f.node;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[done]);
      }
    }
  }
  return num_components;
}

}  // namespace detail

// maximize == true: maximum mean cycle; false: minimum. Returns found=false
// when the graph is acyclic.
inline MeanCycleResult optimal_mean_cycle(int num_nodes, const std::vector<MeanCycleEdge>& edges,
                                          MeanMode mode, bool maximize) {
  using detail::mc_combine;
  using detail::mc_compare_mean;
  using detail::mc_identity;
  using detail::mc_subtract;

  for (const auto& e : edges) {
    if (e.from < 0 || e.from >= num_nodes || e.to < 0 || e.to >= num_nodes)
      fail(Errc::InvalidParams, "mean-cycle edge endpoint out of range");
    if (mode == MeanMode::multiplicative && !(e.weight > 0))
      fail(Errc::InvalidParams, "multiplicative mean-cycle weights must be positive");
  }

  std::vector<int> component;
  const int num_components = detail::scc_decompose(num_nodes, edges, component);

  MeanCycleResult best;
  Rational best_weight;
  long best_length = 0;

  for (int comp = 0; comp < num_components; ++comp) {
    std::vector<int> nodes;
    for (int v = 0; v < num_nodes; ++v)
      if (component[v] == comp) nodes.push_back(v);
    std::vector<int> local(num_nodes, -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);

    std::vector<int> comp_edges;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (component[edges[e].from] == comp && component[edges[e].to] == comp)
        comp_edges.push_back(static_cast<int>(e));
    if (comp_edges.empty()) continue;

    const int n = static_cast<int>(nodes.size());
    // D[k][v]: optimal weight of a k-edge walk from nodes[0] to v, with the
    // edge achieving it for walk reconstruction.
    std::vector<std::vector<std::optional<Rational>>> dist(
        n + 1, std::vector<std::optional<Rational>>(n));
    std::vector<std::vector<int>> via(n + 1, std::vector<int>(n, -1));
    dist[0][0] = mc_identity(mode);

    for (int k = 1; k <= n; ++k) {
      for (int ei : comp_edges) {
        const auto& e = edges[ei];
        const int u = local[e.from], v = local[e.to];
        if (!dist[k - 1][u]) continue;
        Rational cand = mc_combine(mode, *dist[k - 1][u], e.weight);
        if (!dist[k][v] || (maximize ? cand > *dist[k][v] : cand < *dist[k][v])) {
          dist[k][v] = std::move(cand);
          via[k][v] = ei;
        }
      }
    }

    // Karp: for the max mean, lambda* = max_v min_k mean(D_n(v) - D_k(v));
    // min mean swaps the extrema.
    for (int v = 0; v < n; ++v) {
      if (!dist[n][v]) continue;
      std::optional<Rational> inner_w;
      long inner_len = 0;
      for (int k = 0; k < n; ++k) {
        if (!dist[k][v]) continue;
        Rational gap = mc_subtract(mode, *dist[n][v], *dist[k][v]);
        const long len = n - k;
        if (!inner_w) {
          inner_w = std::move(gap);
          inner_len = len;
          continue;
        }
        const int cmp = mc_compare_mean(mode, gap, len, *inner_w, inner_len);
        // inner extremum: min for maximize, max for minimize
        if (maximize ? cmp < 0 : cmp > 0) {
          inner_w = std::move(gap);
          inner_len = len;
        }
      }
      if (!inner_w) continue;
      bool take = !best.found;
      if (!take) {
        const int cmp = mc_compare_mean(mode, *inner_w, inner_len, best_weight, best_length);
        take = maximize ? cmp > 0 : cmp < 0;
      }
      if (take) {
        best.found = true;
        best_weight = *inner_w;
        best_length = inner_len;
        best.weight = best_weight;
        best.length = best_length;

        // Reconstruct the critical n-edge walk to v, then peel simple cycles
        // off it until one matches the candidate mean exactly. For the final
        // (optimal) candidate such a cycle always exists.
        std::vector<int> walk(n);  // edge indices; walk[k-1] is the k-th step
        {
          int at = v;
          for (int k = n; k >= 1; --k) {
            walk[k - 1] = via[k][at];
            at = local[edges[walk[k - 1]].from];
          }
        }
        best.edges.clear();
        while (!walk.empty() && best.edges.empty()) {
          std::vector<int> first_seen(n, -1);
          std::vector<int> node_at(walk.size() + 1);
          node_at[0] = 0;  // local index of nodes[0]
          for (std::size_t k = 1; k <= walk.size(); ++k)
            node_at[k] = local[edges[walk[k - 1]].to];
          int s = -1, k_rep = -1;
          for (std::size_t k = 0; k <= walk.size(); ++k) {
            if (first_seen[node_at[k]] >= 0) {
              s = first_seen[node_at[k]];
              k_rep = static_cast<int>(k);
              break;
            }
            first_seen[node_at[k]] = static_cast<int>(k);
          }
          if (s < 0) break;  // simple path, no cycles left
          Rational w = mc_identity(mode);
          for (int i = s; i < k_rep; ++i) w = mc_combine(mode, w, edges[walk[i]].weight);
          if (mc_compare_mean(mode, w, k_rep - s, best_weight, best_length) == 0) {
            best.edges.assign(walk.begin() + s, walk.begin() + k_rep);
            best.weight = w;
            best.length = k_rep - s;
          } else {
            walk.erase(walk.begin() + s, walk.begin() + k_rep);
          }
        }
      }
    }
  }
  return best;
}

}  // namespace cubedim
