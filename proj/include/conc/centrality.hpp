#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conc/network.hpp"
#include "conc/parallel.hpp"
#include "conc/score_table.hpp"

namespace conc {

/**
 * Common out-neighbor score of two distinct nodes: sum over k of
 * min(A(u,k), A(v,k)), the size of the intersection of the two out-edge
 * multisets.
 */
inline double con_pair(const CompetitionNetwork& net, NodeId u, NodeId v) {
  net.checked(u);
  net.checked(v);
  if (u == v) throw std::invalid_argument("con_pair requires distinct nodes");
  const auto ut = net.out_targets(u), vt = net.out_targets(v);
  const auto uw = net.out_weights(u), vw = net.out_weights(v);
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ut.size() && j < vt.size()) {
    if (ut[i] < vt[j]) {
      ++i;
    } else if (vt[j] < ut[i]) {
      ++j;
    } else {
      sum += std::min(uw[i], vw[j]);
      ++i;
      ++j;
    }
  }
  return sum;
}

/**
 * CON score of u: sum of con_pair(u, v) over every other node v.
 *
 * Only nodes sharing an out-neighbor with u contribute, so the work is
 * bounded by the in-lists of u's targets. Per-partner sums accumulate in
 * ascending target order and are added in ascending partner order, which
 * reproduces the floating-point result of summing con_pair directly.
 */
inline double con_node(const CompetitionNetwork& net, NodeId u) {
  net.checked(u);
  std::vector<double> partner(net.node_count(), 0.0);
  std::vector<std::uint32_t> touched;
  const auto targets = net.out_targets(u);
  const auto weights = net.out_weights(u);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto sources = net.in_sources(targets[t]);
    const auto in_w = net.in_weights(targets[t]);
    for (std::size_t s = 0; s < sources.size(); ++s) {
      if (sources[s] == u) continue;
      auto& slot = partner[sources[s].index];
      if (slot == 0.0) touched.push_back(sources[s].index);
      slot += std::min(weights[t], in_w[s]);
    }
  }
  std::sort(touched.begin(), touched.end());
  double sum = 0.0;
  for (auto v : touched) sum += partner[v];
  return sum;
}

/// CON of a node set: con_pair summed over unordered pairs of distinct members.
inline double con_set(const CompetitionNetwork& net, std::span<const NodeId> members) {
  if (members.size() < 2) throw std::invalid_argument("con_set requires at least two nodes");
  std::vector<NodeId> sorted(members.begin(), members.end());
  for (auto u : sorted) net.checked(u);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("con_set members must be distinct");
  double sum = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j) sum += con_pair(net, sorted[i], sorted[j]);
  return sum;
}

enum class ClosenessMode {
  /// (n-1) / sum of distances, or 0 unless every other node is reachable.
  strict,
  /// Wasserman-Faust: (r/(n-1)) * (r / sum of distances to the r reachable nodes).
  wf,
};

inline std::string_view to_string(ClosenessMode mode) { return mode == ClosenessMode::strict ? "strict" : "wf"; }

/**
 * Directed closeness of u from hop-count BFS over arcs with positive weight.
 * Weights only determine which arcs exist; they are not lengths.
 */
inline double closeness(const CompetitionNetwork& net, NodeId u, ClosenessMode mode = ClosenessMode::strict) {
  net.checked(u);
  const std::size_t n = net.node_count();
  if (n == 1) return 0.0;

  std::vector<std::uint32_t> dist(n, UINT32_MAX);
  std::queue<NodeId> frontier;
  dist[u.index] = 0;
  frontier.push(u);
  std::size_t reached = 0;
  double total = 0.0;
  while (!frontier.empty()) {
    const auto x = frontier.front();
    frontier.pop();
    for (auto y : net.out_targets(x)) {
      if (dist[y.index] != UINT32_MAX) continue;
      dist[y.index] = dist[x.index] + 1;
      ++reached;
      total += dist[y.index];
      frontier.push(y);
    }
  }

  const double others = static_cast<double>(n - 1);
  if (mode == ClosenessMode::strict) return reached == n - 1 ? others / total : 0.0;
  if (reached == 0) return 0.0;
  const double r = static_cast<double>(reached);
  return (r / others) * (r / total);
}

enum class NodeMetric { con, closeness_strict, closeness_wf, in_degree, out_degree };

inline std::string_view to_string(NodeMetric metric) {
  switch (metric) {
    case NodeMetric::con: return "con";
    case NodeMetric::closeness_strict: return "closeness-strict";
    case NodeMetric::closeness_wf: return "closeness-wf";
    case NodeMetric::in_degree: return "in-degree";
    case NodeMetric::out_degree: return "out-degree";
  }
  return "unknown";
}

/// Computes `metric` for every node. Nodes are independent; `threads` > 1 spreads them over workers.
inline ScoreTable score_table(const CompetitionNetwork& net, NodeMetric metric, unsigned threads = 1) {
  std::vector<double> scores(net.node_count());
  parallel_for(net.node_count(), threads, [&](std::size_t i) {
    const NodeId u{static_cast<std::uint32_t>(i)};
    switch (metric) {
      case NodeMetric::con: scores[i] = con_node(net, u); break;
      case NodeMetric::closeness_strict: scores[i] = closeness(net, u, ClosenessMode::strict); break;
      case NodeMetric::closeness_wf: scores[i] = closeness(net, u, ClosenessMode::wf); break;
      case NodeMetric::in_degree: scores[i] = net.in_degree(u); break;
      case NodeMetric::out_degree: scores[i] = net.out_degree(u); break;
    }
  });
  return ScoreTable(std::string(to_string(metric)), net, std::move(scores));
}

}  // namespace conc
