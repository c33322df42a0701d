#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "conc/error.hpp"

namespace conc {

/// Dense index of a node within one network.
struct NodeId {
  std::uint32_t index = 0;

  friend constexpr bool operator==(NodeId, NodeId) = default;
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

/// Edge as supplied to CompetitionNetwork::build, addressed by label.
struct LabeledEdge {
  std::string from;
  std::string to;
  double weight = 1.0;
};

/**
 * Immutable directed graph with non-negative real arc weights.
 *
 * A(u,v) is the competition intensity from u toward v. Parallel edges are
 * summed at construction, zero-weight entries are dropped and self-loops are
 * rejected. Both out- and in-adjacency lists are kept sorted by node index.
 */
class CompetitionNetwork {
public:
  static CompetitionNetwork build(std::vector<std::string> labels,
                                  std::span<const LabeledEdge> edges) {
    CompetitionNetwork net;
    net.labels_ = std::move(labels);
    if (net.labels_.empty()) throw InputError("network must have at least one node");
    if (net.labels_.size() > UINT32_MAX) throw InputError("too many nodes");
    for (std::size_t i = 0; i < net.labels_.size(); ++i) {
      const auto& label = net.labels_[i];
      if (label.empty()) throw InputError("empty node label");
      if (!net.index_.emplace(label, static_cast<std::uint32_t>(i)).second)
        throw InputError("duplicate node label '" + label + "'");
    }

    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> triples;
    triples.reserve(edges.size());
    for (const auto& e : edges) {
      const auto from = net.lookup_or_throw(e.from);
      const auto to = net.lookup_or_throw(e.to);
      if (!(e.weight >= 0.0)) throw InputError("negative or NaN weight on edge " + e.from + " -> " + e.to);
      if (from == to) throw InputError("self-loop on node '" + e.from + "'");
      triples.emplace_back(from.index, to.index, e.weight);
    }
    net.assemble(std::move(triples));
    return net;
  }

  static CompetitionNetwork build(std::vector<std::string> labels,
                                  std::initializer_list<LabeledEdge> edges) {
    return build(std::move(labels), std::span<const LabeledEdge>(edges.begin(), edges.size()));
  }

  [[nodiscard]] std::size_t node_count() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t arc_count() const noexcept { return out_targets_.size(); }

  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::string& label(NodeId u) const { return labels_.at(checked(u).index); }

  [[nodiscard]] std::optional<NodeId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return NodeId{it->second};
  }

  [[nodiscard]] NodeId node(std::string_view label) const {
    auto id = find(label);
    if (!id) throw std::out_of_range("unknown node label '" + std::string(label) + "'");
    return *id;
  }

  /// A(u,v); 0 when there is no arc.
  [[nodiscard]] double weight(NodeId u, NodeId v) const {
    checked(v);
    const auto targets = out_targets(u);
    auto it = std::lower_bound(targets.begin(), targets.end(), v);
    if (it == targets.end() || *it != v) return 0.0;
    return out_weights_[out_offsets_[u.index] + static_cast<std::size_t>(it - targets.begin())];
  }

  [[nodiscard]] std::span<const NodeId> out_targets(NodeId u) const {
    checked(u);
    return {out_targets_.data() + out_offsets_[u.index], out_offsets_[u.index + 1] - out_offsets_[u.index]};
  }
  [[nodiscard]] std::span<const double> out_weights(NodeId u) const {
    checked(u);
    return {out_weights_.data() + out_offsets_[u.index], out_offsets_[u.index + 1] - out_offsets_[u.index]};
  }
  [[nodiscard]] std::span<const NodeId> in_sources(NodeId u) const {
    checked(u);
    return {in_sources_.data() + in_offsets_[u.index], in_offsets_[u.index + 1] - in_offsets_[u.index]};
  }
  [[nodiscard]] std::span<const double> in_weights(NodeId u) const {
    checked(u);
    return {in_weights_.data() + in_offsets_[u.index], in_offsets_[u.index + 1] - in_offsets_[u.index]};
  }

  /// Weighted out-degree, sum_v A(u,v).
  [[nodiscard]] double out_degree(NodeId u) const { return out_sums_.at(checked(u).index); }
  /// Weighted in-degree, sum_v A(v,u).
  [[nodiscard]] double in_degree(NodeId u) const { return in_sums_.at(checked(u).index); }

  [[nodiscard]] double total_weight() const noexcept {
    return std::accumulate(out_weights_.begin(), out_weights_.end(), 0.0);
  }

  /// Network with every arc flipped; labels and node ids preserved.
  [[nodiscard]] CompetitionNetwork reversed() const {
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> triples;
    triples.reserve(arc_count());
    for (std::uint32_t u = 0; u < node_count(); ++u) {
      const auto targets = out_targets(NodeId{u});
      const auto weights = out_weights(NodeId{u});
      for (std::size_t i = 0; i < targets.size(); ++i) triples.emplace_back(targets[i].index, u, weights[i]);
    }
    CompetitionNetwork net;
    net.labels_ = labels_;
    net.index_ = index_;
    net.assemble(std::move(triples));
    return net;
  }

  NodeId checked(NodeId u) const {
    if (u.index >= labels_.size())
      throw std::out_of_range("node index " + std::to_string(u.index) + " out of range");
    return u;
  }

  /// Equal labels (in order) and equal A(u,v) for every pair.
  friend bool operator==(const CompetitionNetwork& a, const CompetitionNetwork& b) {
    return a.labels_ == b.labels_ && a.out_offsets_ == b.out_offsets_ && a.out_targets_ == b.out_targets_ &&
           a.out_weights_ == b.out_weights_;
  }

private:
  CompetitionNetwork() = default;

  NodeId lookup_or_throw(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InputError("edge references unknown node '" + label + "'");
    return NodeId{it->second};
  }

  // Sorts (from, to, w) triples, merges duplicates and fills both CSR layouts.
  void assemble(std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> triples) {
    const std::size_t n = labels_.size();
    std::sort(triples.begin(), triples.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });

    // Merge parallel edges; summation order follows the sorted weight order so
    // the result does not depend on the input edge order.
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> merged;
    for (std::size_t i = 0; i < triples.size();) {
      std::size_t j = i;
      std::vector<double> parts;
      while (j < triples.size() && std::get<0>(triples[j]) == std::get<0>(triples[i]) &&
             std::get<1>(triples[j]) == std::get<1>(triples[i])) {
        parts.push_back(std::get<2>(triples[j]));
        ++j;
      }
      std::sort(parts.begin(), parts.end());
      const double w = std::accumulate(parts.begin(), parts.end(), 0.0);
      if (w > 0.0) merged.emplace_back(std::get<0>(triples[i]), std::get<1>(triples[i]), w);
      i = j;
    }

    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (const auto& [from, to, w] : merged) {
      ++out_offsets_[from + 1];
      ++in_offsets_[to + 1];
    }
    std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
    std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());

    out_targets_.resize(merged.size());
    out_weights_.resize(merged.size());
    in_sources_.resize(merged.size());
    in_weights_.resize(merged.size());
    std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
    // merged is sorted by (from, to), so in-lists come out sorted by source.
    for (std::size_t i = 0; i < merged.size(); ++i) {
      const auto& [from, to, w] = merged[i];
      out_targets_[i] = NodeId{to};
      out_weights_[i] = w;
      const auto slot = in_fill[to]++;
      in_sources_[slot] = NodeId{from};
      in_weights_[slot] = w;
    }

    out_sums_.assign(n, 0.0);
    in_sums_.assign(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      for (auto k = out_offsets_[u]; k < out_offsets_[u + 1]; ++k) out_sums_[u] += out_weights_[k];
      for (auto k = in_offsets_[u]; k < in_offsets_[u + 1]; ++k) in_sums_[u] += in_weights_[k];
    }
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::size_t> out_offsets_, in_offsets_;
  std::vector<NodeId> out_targets_, in_sources_;
  std::vector<double> out_weights_, in_weights_;
  std::vector<double> out_sums_, in_sums_;
};

inline double out_degree(const CompetitionNetwork& net, NodeId u) { return net.out_degree(u); }
inline double in_degree(const CompetitionNetwork& net, NodeId u) { return net.in_degree(u); }
inline CompetitionNetwork reverse(const CompetitionNetwork& net) { return net.reversed(); }

}  // namespace conc
