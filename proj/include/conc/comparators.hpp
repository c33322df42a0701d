#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conc/centrality.hpp"
#include "conc/error.hpp"
#include "conc/network.hpp"
#include "conc/parallel.hpp"
#include "conc/score_table.hpp"

namespace conc {

struct PageRankConfig {
  double damping = 0.85;
  /// Stop once the L1 change between iterates falls below this.
  double tolerance = 1e-10;
  int max_iterations = 1000;

  void validate() const {
    if (!(damping > 0.0 && damping < 1.0)) throw std::invalid_argument("pagerank damping must lie in (0,1)");
    if (!(tolerance > 0.0)) throw std::invalid_argument("pagerank tolerance must be positive");
    if (max_iterations < 1) throw std::invalid_argument("pagerank max_iterations must be positive");
  }
};

/**
 * PageRank on the reversed-edge network, so receiving competition edges
 * confers rank.
 *
 * Power iteration with transitions proportional to arc weight. A node
 * without out-weight in the reversed graph (a node that never targeted
 * anyone) spreads its mass uniformly over all nodes. Throws NumericError
 * carrying the last L1 residual if the tolerance is not met in time.
 */
inline ScoreTable pagerank_reversed(const CompetitionNetwork& net, const PageRankConfig& cfg = {}) {
  cfg.validate();
  const std::size_t n = net.node_count();
  const double inv_n = 1.0 / static_cast<double>(n);

  // In the reversed graph, v -> u carries A(u,v); mass flowing into u comes
  // from u's original out-targets, each normalised by its original in-degree.
  std::vector<double> rank(n, inv_n), next(n);
  double residual = 0.0;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::uint32_t v = 0; v < n; ++v)
      if (net.in_degree(NodeId{v}) == 0.0) dangling += rank[v];
    const double base = (1.0 - cfg.damping) * inv_n + cfg.damping * dangling * inv_n;

    for (std::uint32_t u = 0; u < n; ++u) {
      const auto targets = net.out_targets(NodeId{u});
      const auto weights = net.out_weights(NodeId{u});
      double inflow = 0.0;
      for (std::size_t i = 0; i < targets.size(); ++i)
        inflow += rank[targets[i].index] * weights[i] / net.in_degree(targets[i]);
      next[u] = base + cfg.damping * inflow;
    }

    double mass = 0.0;
    for (double x : next) mass += x;
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= mass;
      residual += std::abs(next[i] - rank[i]);
    }
    rank.swap(next);
    if (residual < cfg.tolerance) return ScoreTable("pagerank", net, std::move(rank));
  }
  throw NumericError("pagerank did not converge in " + std::to_string(cfg.max_iterations) +
                         " iterations (residual " + std::to_string(residual) + ")",
                     residual);
}

/**
 * Weighted (multiset) Jaccard similarity of two out-rows:
 * sum_k min(A(u,k),A(v,k)) / sum_k max(A(u,k),A(v,k)); 0 when both rows are empty.
 */
inline double jaccard_pair(const CompetitionNetwork& net, NodeId u, NodeId v) {
  net.checked(u);
  net.checked(v);
  const auto ut = net.out_targets(u), vt = net.out_targets(v);
  const auto uw = net.out_weights(u), vw = net.out_weights(v);
  double lo = 0.0, hi = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ut.size() || j < vt.size()) {
    if (j == vt.size() || (i < ut.size() && ut[i] < vt[j])) {
      hi += uw[i++];
    } else if (i == ut.size() || vt[j] < ut[i]) {
      hi += vw[j++];
    } else {
      lo += std::min(uw[i], vw[j]);
      hi += std::max(uw[i], vw[j]);
      ++i;
      ++j;
    }
  }
  return hi == 0.0 ? 0.0 : lo / hi;
}

/// Node-level Jaccard score: sum of jaccard_pair(u, v) over all v != u.
inline double jaccard_score(const CompetitionNetwork& net, NodeId u) {
  net.checked(u);
  double sum = 0.0;
  for (std::uint32_t v = 0; v < net.node_count(); ++v)
    if (v != u.index) sum += jaccard_pair(net, u, NodeId{v});
  return sum;
}

inline ScoreTable jaccard_table(const CompetitionNetwork& net, unsigned threads = 1) {
  std::vector<double> scores(net.node_count());
  parallel_for(net.node_count(), threads,
               [&](std::size_t i) { scores[i] = jaccard_score(net, NodeId{static_cast<std::uint32_t>(i)}); });
  return ScoreTable("jaccard", net, std::move(scores));
}

/**
 * Spearman's rank correlation 1 - 6 sum d_i^2 / (N (N^2 - 1)) between two
 * tables over the same labels. Tied scores receive the average of the
 * positions they span; without ties this is the textbook closed form.
 */
inline double spearman(const ScoreTable& a, const ScoreTable& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("spearman: tables cover different node sets");
  if (n < 2) throw std::invalid_argument("spearman: need at least two nodes");
  const auto ra = a.average_ranks();
  const auto rb = b.average_ranks();
  double sum_sq = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const NodeId ia{i};
    const auto jb = b.labels()[i] == a.label(ia) ? std::optional<NodeId>(ia) : b.find(a.label(ia));
    if (!jb) throw std::invalid_argument("spearman: label '" + a.label(ia) + "' missing from second table");
    const double d = ra[i] - rb[jb->index];
    sum_sq += d * d;
  }
  const double nn = static_cast<double>(n);
  return 1.0 - 6.0 * sum_sq / (nn * (nn * nn - 1.0));
}

}  // namespace conc
