#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conc/network.hpp"

namespace conc {

/**
 * Per-node scores of one metric plus the ranking they induce.
 *
 * The ranking orders nodes by non-increasing score; equal scores are ordered
 * by ascending label so that every table has exactly one ranking.
 */
class ScoreTable {
public:
  ScoreTable(std::string metric_name, std::vector<std::string> labels, std::vector<double> scores)
      : metric_(std::move(metric_name)), labels_(std::move(labels)), scores_(std::move(scores)) {
    if (labels_.size() != scores_.size()) throw std::invalid_argument("score table: label/score count mismatch");
    ranking_.resize(scores_.size());
    std::iota(ranking_.begin(), ranking_.end(), 0u);
    std::sort(ranking_.begin(), ranking_.end(), [this](std::uint32_t a, std::uint32_t b) {
      if (scores_[a] != scores_[b]) return scores_[a] > scores_[b];
      return labels_[a] < labels_[b];
    });
    position_.resize(scores_.size());
    for (std::size_t i = 0; i < ranking_.size(); ++i) position_[ranking_[i]] = i;
  }

  ScoreTable(std::string metric_name, const CompetitionNetwork& net, std::vector<double> scores)
      : ScoreTable(std::move(metric_name), net.labels(), std::move(scores)) {}

  [[nodiscard]] const std::string& metric_name() const noexcept { return metric_; }
  [[nodiscard]] std::size_t size() const noexcept { return scores_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::vector<double>& scores() const noexcept { return scores_; }

  [[nodiscard]] double score(NodeId u) const { return scores_.at(u.index); }
  [[nodiscard]] const std::string& label(NodeId u) const { return labels_.at(u.index); }

  /// Node ids in rank order, best first.
  [[nodiscard]] std::vector<NodeId> ranking() const {
    std::vector<NodeId> out;
    out.reserve(ranking_.size());
    for (auto i : ranking_) out.push_back(NodeId{i});
    return out;
  }

  /// 1-based position of u in the ranking.
  [[nodiscard]] std::size_t rank(NodeId u) const { return position_.at(u.index) + 1; }

  [[nodiscard]] std::optional<NodeId> find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return NodeId{static_cast<std::uint32_t>(i)};
    return std::nullopt;
  }

  /**
   * 1-based ranks where each group of equal scores shares the mean of the
   * positions it occupies (fractional ranking), indexed by node id.
   */
  [[nodiscard]] std::vector<double> average_ranks() const {
    std::vector<double> out(scores_.size());
    for (std::size_t i = 0; i < ranking_.size();) {
      std::size_t j = i;
      while (j < ranking_.size() && scores_[ranking_[j]] == scores_[ranking_[i]]) ++j;
      const double mean = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
      for (std::size_t k = i; k < j; ++k) out[ranking_[k]] = mean;
      i = j;
    }
    return out;
  }

private:
  std::string metric_;
  std::vector<std::string> labels_;
  std::vector<double> scores_;
  std::vector<std::uint32_t> ranking_;
  std::vector<std::size_t> position_;
};

}  // namespace conc
