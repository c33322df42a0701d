#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "conc/error.hpp"
#include "conc/network.hpp"

namespace conc {

namespace detail {

// Reads lines, stripping a UTF-8 BOM on the first line and a trailing CR.
class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (number_ == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  [[nodiscard]] std::size_t number() const noexcept { return number_; }

private:
  std::istream& in_;
  std::size_t number_ = 0;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Votes-CSV

enum class PlayerStatus { eliminated, finalist, winner };

inline std::string_view to_string(PlayerStatus s) {
  switch (s) {
    case PlayerStatus::eliminated: return "eliminated";
    case PlayerStatus::finalist: return "finalist";
    case PlayerStatus::winner: return "winner";
  }
  return "eliminated";
}

struct Player {
  std::string label;
  PlayerStatus status = PlayerStatus::eliminated;

  friend bool operator==(const Player&, const Player&) = default;
};

struct Vote {
  std::string voter;
  std::string target;

  friend bool operator==(const Vote&, const Vote&) = default;
};

/**
 * One season of a voting game. `players` is in elimination order (first
 * voted out first, winner last). The winner is the only player flagged
 * `winner`; finalists are the players flagged `finalist` or `winner`.
 * Only elimination votes belong in `votes`; end-game jury votes have the
 * opposite polarity and must be left out.
 */
struct SeasonRecord {
  std::string season_name;
  std::vector<Player> players;
  std::vector<Vote> votes;
  CompetitionNetwork network;

  [[nodiscard]] const std::string& winner() const { return players.back().label; }

  [[nodiscard]] std::vector<std::string> finalists() const {
    std::vector<std::string> out;
    for (const auto& p : players)
      if (p.status != PlayerStatus::eliminated) out.push_back(p.label);
    return out;
  }

  friend bool operator==(const SeasonRecord& a, const SeasonRecord& b) {
    return a.season_name == b.season_name && a.players == b.players && a.votes == b.votes &&
           a.network == b.network;
  }
};

/**
 * Parses the Votes-CSV layout:
 *
 *     #season,<name>
 *     #players
 *     <label>,<eliminated|finalist|winner>     (elimination order, winner last)
 *     #votes
 *     <voter>,<target>
 *
 * Blank lines are skipped. Errors carry the offending line number.
 */
inline SeasonRecord parse_votes_csv(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  enum class Section { start, header, players, votes } section = Section::start;

  std::string season;
  std::vector<Player> players;
  std::vector<Vote> votes;
  std::unordered_set<std::string> known;
  std::size_t winner_line = 0;

  while (reader.next(line)) {
    const auto text = detail::trim(line);
    const auto at = reader.number();
    if (text.empty()) continue;

    if (section == Section::start) {
      if (!text.starts_with("#season,")) throw InputError("expected '#season,<name>' header", at);
      season = std::string(detail::trim(text.substr(8)));
      if (season.empty()) throw InputError("season name is empty", at);
      section = Section::header;
      continue;
    }
    if (text == "#players") {
      if (section != Section::header) throw InputError("unexpected '#players' section", at);
      section = Section::players;
      continue;
    }
    if (text == "#votes") {
      if (section != Section::players) throw InputError("'#votes' must follow the '#players' section", at);
      section = Section::votes;
      continue;
    }
    if (section == Section::header) throw InputError("expected '#players' section", at);

    const auto fields = detail::split(text, ',');
    if (fields.size() != 2) throw InputError("expected two comma-separated fields", at);
    const std::string first(detail::trim(fields[0]));
    const std::string second(detail::trim(fields[1]));

    if (section == Section::players) {
      if (first.empty()) throw InputError("empty player label", at);
      if (winner_line != 0) throw InputError("the winner must be the last player listed", at);
      Player p{first, PlayerStatus::eliminated};
      if (second == "finalist") {
        p.status = PlayerStatus::finalist;
      } else if (second == "winner") {
        p.status = PlayerStatus::winner;
        winner_line = at;
      } else if (second != "eliminated") {
        throw InputError("unknown player status '" + second + "'", at);
      }
      if (!known.insert(first).second) throw InputError("duplicate player '" + first + "'", at);
      players.push_back(std::move(p));
    } else {
      if (!known.contains(first)) throw InputError("vote from unknown player '" + first + "'", at);
      if (!known.contains(second)) throw InputError("vote for unknown player '" + second + "'", at);
      if (first == second) throw InputError("self-vote by '" + first + "'", at);
      votes.push_back({first, second});
    }
  }

  const auto end = reader.number() + 1;
  if (section == Section::start) throw InputError("missing '#season' header", end);
  if (section != Section::votes) throw InputError("missing '#votes' section", end);
  if (players.empty()) throw InputError("season lists no players", end);
  if (winner_line == 0) throw InputError("no player is marked as winner", end);

  std::vector<std::string> labels;
  labels.reserve(players.size());
  for (const auto& p : players) labels.push_back(p.label);
  std::vector<LabeledEdge> edges;
  edges.reserve(votes.size());
  for (const auto& v : votes) edges.push_back({v.voter, v.target, 1.0});
  auto net = CompetitionNetwork::build(std::move(labels), edges);
  return SeasonRecord{std::move(season), std::move(players), std::move(votes), std::move(net)};
}

inline SeasonRecord parse_votes_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_votes_csv(in);
}

/// Writes a season back out in Votes-CSV form; parse_votes_csv of the result reproduces it.
inline std::string serialize_votes_csv(const SeasonRecord& season) {
  auto check = [](const std::string& s) {
    if (s.find_first_of(",\n\r") != std::string::npos || detail::trim(s) != s)
      throw InputError("label cannot be written to Votes-CSV: '" + s + "'");
  };
  check(season.season_name);
  std::string out = "#season," + season.season_name + "\n#players\n";
  for (const auto& p : season.players) {
    check(p.label);
    out += p.label + "," + std::string(to_string(p.status)) + "\n";
  }
  out += "#votes\n";
  for (const auto& v : season.votes) out += v.voter + "," + v.target + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Events-CSV

/// One conflict record. Undirected events count against both actors.
struct EventRecord {
  std::string actor_a;
  std::string actor_b;
  bool directed = false;
  long count = 1;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct EventLog {
  /// Actors in order of first appearance (declarations included).
  std::vector<std::string> actors;
  std::vector<EventRecord> events;
};

/**
 * Parses Events-CSV: header `actor_a,actor_b,directed,count`, then one row
 * per event or aggregate. `directed` is `true` or `false`; `count` is a
 * positive integer. A line `#actor,<label>` declares an actor that may have
 * no events; other lines starting with `#` are comments.
 */
inline EventLog parse_event_log(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  bool header_seen = false;
  EventLog log;
  std::unordered_set<std::string> known;
  auto note_actor = [&](const std::string& a) {
    if (known.insert(a).second) log.actors.push_back(a);
  };

  while (reader.next(line)) {
    const auto text = detail::trim(line);
    const auto at = reader.number();
    if (text.empty()) continue;
    if (!header_seen) {
      if (text != "actor_a,actor_b,directed,count")
        throw InputError("expected header 'actor_a,actor_b,directed,count'", at);
      header_seen = true;
      continue;
    }
    if (text.starts_with("#")) {
      if (text.starts_with("#actor,")) {
        const std::string actor(detail::trim(text.substr(7)));
        if (actor.empty()) throw InputError("empty actor declaration", at);
        note_actor(actor);
      }
      continue;
    }

    const auto fields = detail::split(text, ',');
    if (fields.size() != 4) throw InputError("expected four comma-separated fields", at);
    EventRecord ev;
    ev.actor_a = std::string(detail::trim(fields[0]));
    ev.actor_b = std::string(detail::trim(fields[1]));
    if (ev.actor_a.empty() || ev.actor_b.empty()) throw InputError("empty actor label", at);
    if (ev.actor_a == ev.actor_b) throw InputError("self-conflict for actor '" + ev.actor_a + "'", at);
    const auto directed = detail::lower(detail::trim(fields[2]));
    if (directed == "true") {
      ev.directed = true;
    } else if (directed != "false") {
      throw InputError("directed must be 'true' or 'false'", at);
    }
    const auto count = detail::parse_number<long>(detail::trim(fields[3]));
    if (!count) throw InputError("count is not an integer", at);
    if (*count < 1) throw InputError("count must be at least 1", at);
    ev.count = *count;
    note_actor(ev.actor_a);
    note_actor(ev.actor_b);
    log.events.push_back(std::move(ev));
  }
  if (!header_seen) throw InputError("missing header", reader.number() + 1);
  if (log.actors.empty()) throw InputError("no actors declared or referenced", reader.number() + 1);
  return log;
}

/// Directed events add to A(a,b) only; undirected ones add to A(a,b) and A(b,a).
inline CompetitionNetwork build_conflict_network(const EventLog& log) {
  std::vector<LabeledEdge> edges;
  for (const auto& ev : log.events) {
    const auto w = static_cast<double>(ev.count);
    edges.push_back({ev.actor_a, ev.actor_b, w});
    if (!ev.directed) edges.push_back({ev.actor_b, ev.actor_a, w});
  }
  return CompetitionNetwork::build(log.actors, edges);
}

inline CompetitionNetwork parse_events_csv(std::istream& in) { return build_conflict_network(parse_event_log(in)); }

inline CompetitionNetwork parse_events_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_events_csv(in);
}

// ---------------------------------------------------------------------------
// Pajek

/**
 * Parses the Pajek subset used by weighted food webs:
 *
 *     *Vertices n
 *     1 "label"
 *     ...
 *     *Arcs
 *     i j w
 *
 * Keywords are case-insensitive, `%` starts a comment line and an optional
 * leading `*Network` title line is ignored. Vertices without a label line
 * are named `v<i>`. A missing weight means 1. Every other section
 * (*Edges, *Matrix, *Arcslist, ...) is rejected.
 */
inline CompetitionNetwork parse_pajek(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  enum class Section { start, vertices, arcs } section = Section::start;
  std::size_t n = 0;
  std::vector<std::optional<std::string>> names;
  std::vector<LabeledEdge> edges;
  std::vector<std::size_t> edge_lines;
  std::vector<std::pair<std::size_t, std::size_t>> arc_ends;

  while (reader.next(line)) {
    const auto text = detail::trim(line);
    const auto at = reader.number();
    if (text.empty() || text.front() == '%') continue;

    if (text.front() == '*') {
      std::istringstream words{std::string(text)};
      std::string keyword;
      words >> keyword;
      keyword = detail::lower(keyword);
      if (keyword == "*network") {
        if (section != Section::start) throw InputError("*Network must precede *Vertices", at);
        continue;
      }
      if (keyword == "*vertices") {
        if (section != Section::start) throw InputError("duplicate *Vertices section", at);
        std::string count_word, extra;
        words >> count_word;
        const auto count = detail::parse_number<long>(count_word);
        if (!count || *count <= 0) throw InputError("*Vertices needs a positive vertex count", at);
        if (words >> extra) throw InputError("two-mode *Vertices headers are not supported", at);
        n = static_cast<std::size_t>(*count);
        names.assign(n, std::nullopt);
        section = Section::vertices;
        continue;
      }
      if (keyword == "*arcs") {
        if (section != Section::vertices) throw InputError("*Arcs must follow a single *Vertices section", at);
        std::string extra;
        if (words >> extra) throw InputError("multi-relational *Arcs sections are not supported", at);
        section = Section::arcs;
        continue;
      }
      throw InputError("unsupported Pajek section '" + keyword + "'", at);
    }

    if (section == Section::start) throw InputError("data before *Vertices section", at);

    // Leading integer index shared by vertex and arc lines.
    std::string_view rest = text;
    auto take_token = [&rest]() {
      rest = detail::trim(rest);
      const auto end = rest.find_first_of(" \t");
      auto token = rest.substr(0, end);
      rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
      return token;
    };
    auto take_index = [&](std::string_view token) {
      const auto idx = detail::parse_number<long>(token);
      if (!idx) throw InputError("expected a vertex index, got '" + std::string(token) + "'", at);
      if (*idx < 1 || static_cast<std::size_t>(*idx) > n)
        throw InputError("vertex index " + std::to_string(*idx) + " out of range 1.." + std::to_string(n), at);
      return static_cast<std::size_t>(*idx);
    };

    if (section == Section::vertices) {
      const auto idx = take_index(take_token());
      rest = detail::trim(rest);
      std::string name;
      if (!rest.empty() && rest.front() == '"') {
        const auto close = rest.find('"', 1);
        if (close == std::string_view::npos) throw InputError("unterminated vertex label", at);
        name = std::string(rest.substr(1, close - 1));
      } else {
        name = std::string(take_token());
      }
      if (name.empty()) throw InputError("empty vertex label", at);
      if (names[idx - 1]) throw InputError("vertex " + std::to_string(idx) + " listed twice", at);
      names[idx - 1] = std::move(name);
      continue;
    }

    const auto from = take_index(take_token());
    const auto to = take_index(take_token());
    double weight = 1.0;
    if (auto token = take_token(); !token.empty()) {
      const auto w = detail::parse_number<double>(token);
      if (!w || !std::isfinite(*w)) throw InputError("arc weight is not a number", at);
      weight = *w;
    }
    if (!detail::trim(rest).empty()) throw InputError("unexpected trailing fields on arc line", at);
    if (weight < 0.0) throw InputError("negative arc weight", at);
    if (from == to) throw InputError("self-loop on vertex " + std::to_string(from), at);
    arc_ends.emplace_back(from, to);
    edge_lines.push_back(at);
    edges.push_back({{}, {}, weight});
  }

  const auto end = reader.number() + 1;
  if (section == Section::start) throw InputError("missing *Vertices section", end);
  if (section == Section::vertices) throw InputError("missing *Arcs section", end);

  std::vector<std::string> labels(n);
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = names[i] ? *names[i] : "v" + std::to_string(i + 1);
    if (!seen.emplace(labels[i], i).second) throw InputError("duplicate vertex label '" + labels[i] + "'", end);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i].from = labels[arc_ends[i].first - 1];
    edges[i].to = labels[arc_ends[i].second - 1];
  }
  return CompetitionNetwork::build(std::move(labels), edges);
}

inline CompetitionNetwork parse_pajek(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pajek(in);
}

/// A node whose weighted in- and out-flow disagree.
struct FlowImbalance {
  std::string label;
  double in_flow = 0.0;
  double out_flow = 0.0;
};

/**
 * Nodes whose in- and out-degree differ by more than `relative_tolerance`
 * of the larger of the two. Energy-balanced food webs give an empty list;
 * this is a diagnostic, not a validity check.
 */
inline std::vector<FlowImbalance> flow_imbalances(const CompetitionNetwork& net, double relative_tolerance = 0.01) {
  std::vector<FlowImbalance> out;
  for (std::uint32_t u = 0; u < net.node_count(); ++u) {
    const double in_w = net.in_degree(NodeId{u});
    const double out_w = net.out_degree(NodeId{u});
    if (std::abs(in_w - out_w) > relative_tolerance * std::max(in_w, out_w))
      out.push_back({net.label(NodeId{u}), in_w, out_w});
  }
  return out;
}

}  // namespace conc
