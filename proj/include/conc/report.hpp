#pragma once

// Serialisation of reports: TSV, JSON and a minimal SVG slope graph.
// Output is a pure function of the inputs so repeated runs are byte-identical.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conc/centrality.hpp"
#include "conc/evaluation.hpp"
#include "conc/score_table.hpp"
#include "json.hpp"

namespace conc {

/// Shortest decimal form that reads back to the same double.
inline std::string format_number(double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

/// Fixed one-decimal form used for percentages.
inline std::string format_percent(double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), round1(x), std::chars_format::fixed, 1);
  return std::string(buf.data(), ptr);
}

inline std::string leader_report_tsv(const std::vector<LeaderRow>& rows, ClosenessMode mode) {
  std::string out = "Name\tID\tOD\tC\tCON\tC_strict\tC_wf\n";
  for (const auto& r : rows) {
    const double c = mode == ClosenessMode::strict ? r.closeness_strict : r.closeness_wf;
    out += r.label + '\t' + format_number(r.in_degree) + '\t' + format_number(r.out_degree) + '\t' +
           format_number(c) + '\t' + format_number(r.con) + '\t' + format_number(r.closeness_strict) + '\t' +
           format_number(r.closeness_wf) + '\n';
  }
  return out;
}

inline std::string score_table_tsv(const ScoreTable& table) {
  std::string out = "rank\tlabel\t" + table.metric_name() + "\n";
  for (auto u : table.ranking())
    out += std::to_string(table.rank(u)) + '\t' + table.label(u) + '\t' + format_number(table.score(u)) + '\n';
  return out;
}

inline std::string slope_graph_tsv(const SlopeGraphReport& report) {
  auto opt = [](const std::optional<std::size_t>& r) { return r ? std::to_string(*r) : std::string("-"); };
  std::string out = "label\t" + report.left_metric + "_rank\t" + report.right_metric +
                    "_rank\tleft_global_rank\tright_global_rank\tclass\n";
  for (const auto& r : report.rows)
    out += r.label + '\t' + opt(r.left_rank) + '\t' + opt(r.right_rank) + '\t' + std::to_string(r.left_global_rank) +
           '\t' + std::to_string(r.right_global_rank) + '\t' + std::string(to_string(r.cls)) + '\n';
  return out;
}

/**
 * JSON form of a slope graph:
 *   { "left_metric", "right_metric", "top_n", "spearman" (when given),
 *     "rows": [ { "label", "left_rank" | null, "right_rank" | null,
 *                 "left_global_rank", "right_global_rank", "class" } ] }
 */
inline nlohmann::ordered_json slope_graph_json(const SlopeGraphReport& report,
                                               std::optional<double> spearman_value = std::nullopt) {
  nlohmann::ordered_json j;
  j["left_metric"] = report.left_metric;
  j["right_metric"] = report.right_metric;
  j["top_n"] = report.top_n;
  if (spearman_value) j["spearman"] = *spearman_value;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["label"] = r.label;
    row["left_rank"] = r.left_rank ? nlohmann::ordered_json(*r.left_rank) : nlohmann::ordered_json(nullptr);
    row["right_rank"] = r.right_rank ? nlohmann::ordered_json(*r.right_rank) : nlohmann::ordered_json(nullptr);
    row["left_global_rank"] = r.left_global_rank;
    row["right_global_rank"] = r.right_global_rank;
    row["class"] = to_string(r.cls);
    j["rows"].push_back(std::move(row));
  }
  return j;
}

/// Two-column static SVG; lines join actors present in both top-N lists.
inline std::string slope_graph_svg(const SlopeGraphReport& report) {
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
      }
    }
    return out;
  };
  auto colour = [](SlopeClass c) {
    switch (c) {
      case SlopeClass::red: return "#c0392b";
      case SlopeClass::green: return "#27ae60";
      default: return "#000000";
    }
  };
  std::size_t slots = 0;
  for (const auto& r : report.rows) {
    if (r.left_rank) slots = std::max(slots, *r.left_rank);
    if (r.right_rank) slots = std::max(slots, *r.right_rank);
  }
  const int row_h = 20, top = 40, left_x = 260, right_x = 540, width = 800;
  const auto y = [&](std::size_t rank) { return std::to_string(top + static_cast<int>(rank) * row_h); };
  const auto height = top + static_cast<int>(slots + 1) * row_h;

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
                    std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<text x=\"" + std::to_string(left_x) + "\" y=\"20\" text-anchor=\"end\" font-weight=\"bold\">" +
         escape(report.left_metric) + "</text>\n";
  out += "<text x=\"" + std::to_string(right_x) + "\" y=\"20\" font-weight=\"bold\">" + escape(report.right_metric) +
         "</text>\n";
  for (const auto& r : report.rows) {
    const std::string fill = colour(r.cls);
    if (r.left_rank)
      out += "<text x=\"" + std::to_string(left_x - 8) + "\" y=\"" + y(*r.left_rank) +
             "\" text-anchor=\"end\" fill=\"" + fill + "\">" + std::to_string(*r.left_rank) + ". " + escape(r.label) +
             "</text>\n";
    if (r.right_rank)
      out += "<text x=\"" + std::to_string(right_x + 8) + "\" y=\"" + y(*r.right_rank) + "\" fill=\"" + fill + "\">" +
             std::to_string(*r.right_rank) + ". " + escape(r.label) + "</text>\n";
    if (r.left_rank && r.right_rank)
      out += "<line x1=\"" + std::to_string(left_x) + "\" y1=\"" + y(*r.left_rank) + "\" x2=\"" +
             std::to_string(right_x) + "\" y2=\"" + y(*r.right_rank) + "\" stroke=\"" + fill + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

/// One row per k, one column per metric, then the random-set range.
inline std::string hit_rates_tsv(const EvaluationSummary& summary) {
  std::string out = "k";
  for (auto m : summary.metrics) out += '\t' + std::string(to_string(m));
  out += "\trandom_set\n";
  for (std::size_t j = 0; j < summary.ks.size(); ++j) {
    out += std::to_string(summary.ks[j]);
    for (std::size_t m = 0; m < summary.metrics.size(); ++m) out += '\t' + format_percent(summary.rates[m][j]);
    out += '\t' + format_percent(summary.random_range[j].first) + '-' +
           format_percent(summary.random_range[j].second) + '\n';
  }
  return out;
}

inline nlohmann::ordered_json evaluation_json(const EvaluationSummary& summary) {
  nlohmann::ordered_json j;
  j["seasons_evaluated"] = summary.seasons.size();
  j["k"] = summary.ks;
  nlohmann::ordered_json rates = nlohmann::ordered_json::object();
  for (std::size_t m = 0; m < summary.metrics.size(); ++m) {
    nlohmann::ordered_json per_k = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < summary.ks.size(); ++i)
      per_k["top" + std::to_string(summary.ks[i])] = round1(summary.rates[m][i]);
    rates[std::string(to_string(summary.metrics[m]))] = std::move(per_k);
  }
  j["hit_rates"] = std::move(rates);
  nlohmann::ordered_json random = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < summary.ks.size(); ++i)
    random["top" + std::to_string(summary.ks[i])] = {{"min", round1(summary.random_range[i].first)},
                                                     {"max", round1(summary.random_range[i].second)}};
  j["random_set"] = std::move(random);
  j["seasons"] = nlohmann::ordered_json::array();
  for (const auto& s : summary.seasons) {
    nlohmann::ordered_json row;
    row["season"] = s.season_name;
    row["players"] = s.players;
    row["winner"] = s.winner;
    nlohmann::ordered_json above = nlohmann::ordered_json::object();
    for (std::size_t m = 0; m < summary.metrics.size(); ++m)
      above[std::string(to_string(summary.metrics[m]))] = s.above_winner[m];
    row["players_scoring_above_winner"] = std::move(above);
    j["seasons"].push_back(std::move(row));
  }
  return j;
}

}  // namespace conc
