#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "conc/centrality.hpp"
#include "conc/comparators.hpp"
#include "conc/ingest.hpp"
#include "conc/network.hpp"
#include "conc/parallel.hpp"
#include "conc/score_table.hpp"

namespace conc {

/// Rounds a percentage to one decimal place, halves away from zero.
inline double round1(double x) { return std::round(x * 10.0) / 10.0; }

// ---------------------------------------------------------------------------
// Metric dispatch

enum class Metric { con, pagerank, jaccard, closeness, in_degree, out_degree };

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::con: return "con";
    case Metric::pagerank: return "pagerank";
    case Metric::jaccard: return "jaccard";
    case Metric::closeness: return "closeness";
    case Metric::in_degree: return "in-degree";
    case Metric::out_degree: return "out-degree";
  }
  return "unknown";
}

inline std::optional<Metric> parse_metric(std::string_view name) {
  for (auto m : {Metric::con, Metric::pagerank, Metric::jaccard, Metric::closeness, Metric::in_degree,
                 Metric::out_degree})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

struct MetricOptions {
  ClosenessMode closeness = ClosenessMode::strict;
  PageRankConfig pagerank;
  unsigned threads = 1;
};

/// Score table for any supported metric; closeness follows options.closeness.
inline ScoreTable compute_table(const CompetitionNetwork& net, Metric metric, const MetricOptions& opts = {}) {
  switch (metric) {
    case Metric::con: return score_table(net, NodeMetric::con, opts.threads);
    case Metric::pagerank: return pagerank_reversed(net, opts.pagerank);
    case Metric::jaccard: return jaccard_table(net, opts.threads);
    case Metric::closeness:
      return score_table(net,
                         opts.closeness == ClosenessMode::strict ? NodeMetric::closeness_strict
                                                                 : NodeMetric::closeness_wf,
                         opts.threads);
    case Metric::in_degree: return score_table(net, NodeMetric::in_degree, opts.threads);
    case Metric::out_degree: return score_table(net, NodeMetric::out_degree, opts.threads);
  }
  throw std::invalid_argument("unknown metric");
}

// ---------------------------------------------------------------------------
// Winner prediction

/// Number of nodes whose score is strictly greater than that of `target`.
inline std::size_t strictly_above(const ScoreTable& table, std::string_view target) {
  const auto id = table.find(target);
  if (!id) throw std::invalid_argument("node '" + std::string(target) + "' is not in the score table");
  const double mine = table.score(*id);
  return static_cast<std::size_t>(
      std::count_if(table.scores().begin(), table.scores().end(), [mine](double s) { return s > mine; }));
}

/**
 * True when `target` has one of the top-k scores. Ties at the boundary count
 * as hits: only nodes with a strictly greater score push the target out.
 */
inline bool topk_hit(const ScoreTable& table, std::string_view target, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return strictly_above(table, target) < k;
}

/// Percentage (one decimal) of seasons whose winner is a top-k node under `metric`.
inline double hit_rate(std::span<const SeasonRecord> seasons, Metric metric, std::size_t k,
                       const MetricOptions& opts = {}) {
  if (seasons.empty()) throw std::invalid_argument("hit_rate needs at least one season");
  std::size_t hits = 0;
  for (const auto& s : seasons)
    if (topk_hit(compute_table(s.network, metric, opts), s.winner(), k)) ++hits;
  return round1(100.0 * static_cast<double>(hits) / static_cast<double>(seasons.size()));
}

/// (min, max) over seasons of k / players as percentages, one decimal each.
inline std::pair<double, double> random_baseline_range(std::span<const SeasonRecord> seasons, std::size_t k) {
  if (seasons.empty()) throw std::invalid_argument("random_baseline_range needs at least one season");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  double lo = 100.0, hi = 0.0;
  for (const auto& s : seasons) {
    const auto n = s.players.size();
    if (n < k)
      throw InputError("season '" + s.season_name + "' has " + std::to_string(n) + " players, fewer than k=" +
                       std::to_string(k));
    const double p = 100.0 * static_cast<double>(k) / static_cast<double>(n);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return {round1(lo), round1(hi)};
}

struct SeasonOutcome {
  std::string season_name;
  std::string winner;
  std::size_t players = 0;
  /// Per metric: how many players scored strictly above the winner.
  std::vector<std::size_t> above_winner;
};

/// Evaluation summary: hit rates per (metric, k) plus the random-set range per k.
struct EvaluationSummary {
  std::vector<Metric> metrics;
  std::vector<std::size_t> ks;
  /// rates[m][j] is the hit rate of metrics[m] at ks[j].
  std::vector<std::vector<double>> rates;
  std::vector<std::pair<double, double>> random_range;
  std::vector<SeasonOutcome> seasons;
};

/// Evaluates every season once per metric. Seasons run concurrently when opts.threads > 1.
inline EvaluationSummary evaluate_seasons(std::span<const SeasonRecord> seasons, std::vector<Metric> metrics,
                                          std::vector<std::size_t> ks, const MetricOptions& opts = {}) {
  if (seasons.empty()) throw std::invalid_argument("evaluation needs at least one season");
  EvaluationSummary out;
  out.metrics = std::move(metrics);
  out.ks = std::move(ks);
  for (auto k : out.ks) out.random_range.push_back(random_baseline_range(seasons, k));

  MetricOptions inner = opts;
  inner.threads = 1;
  out.seasons.resize(seasons.size());
  parallel_for(seasons.size(), opts.threads, [&](std::size_t i) {
    const auto& s = seasons[i];
    auto& row = out.seasons[i];
    row.season_name = s.season_name;
    row.winner = s.winner();
    row.players = s.players.size();
    for (auto m : out.metrics) row.above_winner.push_back(strictly_above(compute_table(s.network, m, inner), s.winner()));
  });

  for (std::size_t m = 0; m < out.metrics.size(); ++m) {
    std::vector<double> per_k;
    for (auto k : out.ks) {
      std::size_t hits = 0;
      for (const auto& row : out.seasons)
        if (row.above_winner[m] < k) ++hits;
      per_k.push_back(round1(100.0 * static_cast<double>(hits) / static_cast<double>(out.seasons.size())));
    }
    out.rates.push_back(std::move(per_k));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Slope graphs

enum class SlopeClass { black, red, green, absent_left, absent_right };

inline std::string_view to_string(SlopeClass c) {
  switch (c) {
    case SlopeClass::black: return "black";
    case SlopeClass::red: return "red";
    case SlopeClass::green: return "green";
    case SlopeClass::absent_left: return "absent-left";
    case SlopeClass::absent_right: return "absent-right";
  }
  return "black";
}

/**
 * Colour of one actor given its top-N positions (nullopt = not in that top-N).
 * Within 3 places is black; left ranked 4+ places better is red; right
 * ranked 4+ places better is green. Missing on one side means no line.
 */
inline SlopeClass classify_slope(std::optional<std::size_t> left, std::optional<std::size_t> right) {
  if (!left && !right) throw std::invalid_argument("actor must appear in at least one ranking");
  if (!left) return SlopeClass::absent_left;
  if (!right) return SlopeClass::absent_right;
  const auto l = static_cast<long>(*left), r = static_cast<long>(*right);
  if (r - l >= 4) return SlopeClass::red;
  if (l - r >= 4) return SlopeClass::green;
  return SlopeClass::black;
}

struct SlopeRow {
  std::string label;
  /// Position in the left/right top-N, if the actor made it.
  std::optional<std::size_t> left_rank;
  std::optional<std::size_t> right_rank;
  /// Position in the full ranking, always known.
  std::size_t left_global_rank = 0;
  std::size_t right_global_rank = 0;
  SlopeClass cls = SlopeClass::black;
};

struct SlopeGraphReport {
  std::string left_metric;
  std::string right_metric;
  std::size_t top_n = 15;
  /// Left top-N in rank order, then actors only in the right top-N in right rank order.
  std::vector<SlopeRow> rows;
};

/// Compares the top `top_n` of two rankings; top_n beyond the node count covers every node.
inline SlopeGraphReport slope_graph(const ScoreTable& left, const ScoreTable& right, std::size_t top_n = 15) {
  if (top_n < 1) throw std::invalid_argument("top_n must be at least 1");
  if (left.size() != right.size()) throw std::invalid_argument("slope graph: tables cover different node sets");
  std::unordered_map<std::string, NodeId> right_ids;
  for (std::uint32_t i = 0; i < right.size(); ++i) right_ids.emplace(right.labels()[i], NodeId{i});
  for (const auto& label : left.labels())
    if (!right_ids.contains(label))
      throw std::invalid_argument("slope graph: label '" + label + "' missing from right table");

  const auto n = std::min(top_n, left.size());
  SlopeGraphReport report{left.metric_name(), right.metric_name(), top_n, {}};
  auto make_row = [&](NodeId l) {
    const NodeId r = right_ids.at(left.label(l));
    SlopeRow row;
    row.label = left.label(l);
    row.left_global_rank = left.rank(l);
    row.right_global_rank = right.rank(r);
    if (row.left_global_rank <= n) row.left_rank = row.left_global_rank;
    if (row.right_global_rank <= n) row.right_rank = row.right_global_rank;
    row.cls = classify_slope(row.left_rank, row.right_rank);
    return row;
  };

  const auto left_order = left.ranking();
  for (std::size_t i = 0; i < n; ++i) report.rows.push_back(make_row(left_order[i]));
  const auto right_order = right.ranking();
  for (std::size_t i = 0; i < n; ++i) {
    const auto l = left.find(right.label(right_order[i]));
    if (left.rank(*l) > n) report.rows.push_back(make_row(*l));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Leader report

struct LeaderRow {
  std::string label;
  double in_degree = 0.0;
  double out_degree = 0.0;
  double closeness_strict = 0.0;
  double closeness_wf = 0.0;
  double con = 0.0;
};

/// Per-node in/out-degree, closeness (both modes) and CON, sorted by CON descending then label.
inline std::vector<LeaderRow> leader_report(const CompetitionNetwork& net, unsigned threads = 1) {
  std::vector<LeaderRow> rows(net.node_count());
  parallel_for(net.node_count(), threads, [&](std::size_t i) {
    const NodeId u{static_cast<std::uint32_t>(i)};
    rows[i] = {net.label(u),
               net.in_degree(u),
               net.out_degree(u),
               closeness(net, u, ClosenessMode::strict),
               closeness(net, u, ClosenessMode::wf),
               con_node(net, u)};
  });
  std::sort(rows.begin(), rows.end(), [](const LeaderRow& a, const LeaderRow& b) {
    if (a.con != b.con) return a.con > b.con;
    return a.label < b.label;
  });
  return rows;
}

}  // namespace conc
