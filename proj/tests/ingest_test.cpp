#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "conc/ingest.hpp"

using conc::InputError;
using conc::NodeId;

namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(CONC_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t error_line(auto&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(VotesCsv, FourPlayerFixture) {
  const auto season = conc::parse_votes_csv(read("votes_four.csv"));
  const auto& net = season.network;
  EXPECT_EQ(season.season_name, "Fixture Four");
  EXPECT_EQ(season.winner(), "p1");
  EXPECT_EQ(season.finalists(), (std::vector<std::string>{"p2", "p1"}));
  EXPECT_EQ(net.weight(net.node("p3"), net.node("p4")), 2.0);
  EXPECT_EQ(net.weight(net.node("p4"), net.node("p3")), 1.0);
  EXPECT_EQ(net.weight(net.node("p2"), net.node("p4")), 1.0);
  EXPECT_EQ(net.total_weight(), 4.0);
  EXPECT_EQ(net.labels(), (std::vector<std::string>{"p4", "p3", "p2", "p1"}));
}

TEST(VotesCsv, EmptyVotesSection) {
  const auto season = conc::parse_votes_csv("#season,S\n#players\na,eliminated\nb,winner\n#votes\n");
  EXPECT_EQ(season.network.arc_count(), 0u);
  EXPECT_EQ(season.network.node_count(), 2u);
}

TEST(VotesCsv, CrlfAndBlankLines) {
  const auto season = conc::parse_votes_csv("#season,S\r\n\r\n#players\r\na,eliminated\r\nb,winner\r\n#votes\r\na,b\r\n");
  EXPECT_EQ(season.network.weight(NodeId{0}, NodeId{1}), 1.0);
}

TEST(VotesCsv, Errors) {
  EXPECT_THROW(conc::parse_votes_csv(read("votes_bad_winner.csv")), InputError);
  EXPECT_EQ(error_line([] { conc::parse_votes_csv("season,S\n"); }), 1u);
  EXPECT_EQ(error_line([] { conc::parse_votes_csv("#season,S\n#players\na,eliminated\nb,winner\n#votes\na,z\n"); }), 6u);
  EXPECT_EQ(error_line([] { conc::parse_votes_csv("#season,S\n#players\na,eliminated\nb,winner\n#votes\na,a\n"); }), 6u);
  EXPECT_EQ(error_line([] { conc::parse_votes_csv("#season,S\n#players\na,winner\nb,eliminated\n#votes\n"); }), 4u);
  EXPECT_EQ(error_line([] { conc::parse_votes_csv("#season,S\n#players\na,quit\n#votes\n"); }), 3u);
  EXPECT_EQ(error_line([] { conc::parse_votes_csv("#season,S\n#players\na,eliminated\na,winner\n#votes\n"); }), 4u);
  EXPECT_THROW(conc::parse_votes_csv("#season,S\n#players\na,eliminated\nb,winner\n"), InputError);
  EXPECT_THROW(conc::parse_votes_csv(""), InputError);
}

TEST(VotesCsv, RoundTripOnRandomSeasons) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 15)(rng);
    std::string text = "#season,Random " + std::to_string(trial) + "\n#players\n";
    for (int i = 0; i < n; ++i)
      text += "player " + std::to_string(i) + "," + (i == n - 1 ? "winner" : i >= n - 3 ? "finalist" : "eliminated") + "\n";
    text += "#votes\n";
    const int votes = std::uniform_int_distribution<int>(0, 40)(rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int v = 0; v < votes; ++v) {
      int a = pick(rng), b = pick(rng);
      if (a == b) continue;
      text += "player " + std::to_string(a) + ",player " + std::to_string(b) + "\n";
    }
    const auto first = conc::parse_votes_csv(text);
    const auto written = conc::serialize_votes_csv(first);
    const auto second = conc::parse_votes_csv(written);
    EXPECT_EQ(first, second);
    EXPECT_EQ(conc::serialize_votes_csv(second), written);
  }
}

TEST(EventsCsv, ReciprocalAndDirectedRules) {
  auto net = conc::parse_events_csv("actor_a,actor_b,directed,count\nx,y,false,3\n");
  EXPECT_EQ(net.weight(net.node("x"), net.node("y")), 3.0);
  EXPECT_EQ(net.weight(net.node("y"), net.node("x")), 3.0);

  auto civ = conc::parse_events_csv("actor_a,actor_b,directed,count\nmilitia,civilians,true,2\n");
  EXPECT_EQ(civ.weight(civ.node("militia"), civ.node("civilians")), 2.0);
  EXPECT_EQ(civ.weight(civ.node("civilians"), civ.node("militia")), 0.0);
}

TEST(EventsCsv, EmptyBodyKeepsDeclaredActors) {
  auto net = conc::parse_events_csv("actor_a,actor_b,directed,count\n#actor,alpha\n#actor,beta\n");
  EXPECT_EQ(net.node_count(), 2u);
  EXPECT_EQ(net.arc_count(), 0u);
  EXPECT_THROW(conc::parse_events_csv("actor_a,actor_b,directed,count\n"), InputError);
}

TEST(EventsCsv, FixtureUndirectedPairsAreSymmetric) {
  auto net = conc::parse_events_csv(read("conflict.csv"));
  EXPECT_EQ(net.node_count(), 7u);
  EXPECT_TRUE(net.find("Observer Mission").has_value());
  const auto police = net.node("Police Forces"), militia_b = net.node("Militia B");
  EXPECT_EQ(net.weight(police, militia_b), 3.0);
  EXPECT_EQ(net.weight(militia_b, police), 3.0);
  EXPECT_EQ(net.in_degree(net.node("Civilians")), 7.0);
  EXPECT_EQ(net.out_degree(net.node("Civilians")), 0.0);
}

TEST(EventsCsv, Errors) {
  EXPECT_EQ(error_line([] { conc::parse_events_csv("actor_a,actor_b,directed,count\nx,x,false,1\n"); }), 2u);
  EXPECT_EQ(error_line([] { conc::parse_events_csv("actor_a,actor_b,directed,count\nx,y,false,0\n"); }), 2u);
  EXPECT_EQ(error_line([] { conc::parse_events_csv("actor_a,actor_b,directed,count\nx,y,maybe,1\n"); }), 2u);
  EXPECT_EQ(error_line([] { conc::parse_events_csv("actor_a,actor_b,directed,count\nx,y,true,1.5\n"); }), 2u);
  EXPECT_EQ(error_line([] { conc::parse_events_csv("a,b,c,d\n"); }), 1u);
}

TEST(EventsProperty, UndirectedOnlyPairsAreSymmetric) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    std::string text = "actor_a,actor_b,directed,count\n";
    std::uniform_int_distribution<int> actor(0, 6), count(1, 5);
    for (int r = 0; r < 20; ++r) {
      int a = actor(rng), b = actor(rng);
      if (a == b) continue;
      text += "A" + std::to_string(a) + ",A" + std::to_string(b) + ",false," + std::to_string(count(rng)) + "\n";
    }
    if (text.find('\n') == text.size() - 1) continue;
    auto net = conc::parse_events_csv(text);
    for (std::uint32_t u = 0; u < net.node_count(); ++u)
      for (std::uint32_t v = 0; v < net.node_count(); ++v)
        EXPECT_EQ(net.weight(NodeId{u}, NodeId{v}), net.weight(NodeId{v}, NodeId{u}));
  }
}

TEST(Pajek, SingleArcWithDefaultLabels) {
  auto net = conc::parse_pajek("*Vertices 2\n*Arcs\n1 2 0.75\n");
  EXPECT_EQ(net.weight(net.node("v1"), net.node("v2")), 0.75);
}

TEST(Pajek, DuplicateArcsAccumulate) {
  auto net = conc::parse_pajek("*vertices 2\n1 \"x\"\n2 \"y\"\n*ARCS\n1 2 0.5\n1 2 0.5\n");
  EXPECT_EQ(net.weight(net.node("x"), net.node("y")), 1.0);
}

TEST(Pajek, Fixture) {
  auto net = conc::parse_pajek(read("web.net"));
  EXPECT_EQ(net.node_count(), 5u);
  EXPECT_EQ(net.weight(net.node("Shark"), net.node("Tuna")), 1.0);
  EXPECT_EQ(net.weight(net.node("Tuna"), net.node("Sardine")), 1.5);
  EXPECT_EQ(net.label(NodeId{4}), "Phytoplankton");
}

TEST(Pajek, Errors) {
  EXPECT_EQ(error_line([] { conc::parse_pajek(read("web_bad.net")); }), 7u);
  EXPECT_EQ(error_line([] { conc::parse_pajek("*Vertices 0\n*Arcs\n"); }), 1u);
  EXPECT_EQ(error_line([] { conc::parse_pajek("*Vertices 2\n*Arcs\n1 2 -1\n"); }), 3u);
  EXPECT_EQ(error_line([] { conc::parse_pajek("*Vertices 2\n*Edges\n1 2 1\n"); }), 2u);
  EXPECT_EQ(error_line([] { conc::parse_pajek("*Vertices 2\n*Matrix\n"); }), 2u);
  EXPECT_EQ(error_line([] { conc::parse_pajek("*Vertices 2\n*Arcs\n2 2 1\n"); }), 3u);
  EXPECT_EQ(error_line([] { conc::parse_pajek("1 2 3\n"); }), 1u);
  EXPECT_THROW(conc::parse_pajek("*Vertices 2\n1 \"a\"\n"), InputError);
  EXPECT_THROW(conc::parse_pajek("% nothing\n"), InputError);
}

TEST(Pajek, CommentsNetworkTitleAndUnquotedLabels) {
  auto net = conc::parse_pajek("*Network web\n% c\n*Vertices 2\n1 alpha 0.1 0.2\n2 \"beta gamma\"\n*Arcs\n% c\n2 1\n");
  EXPECT_EQ(net.weight(net.node("beta gamma"), net.node("alpha")), 1.0);
}

TEST(FlowImbalance, ReportsUnbalancedNodes) {
  auto balanced = conc::parse_pajek("*Vertices 2\n*Arcs\n1 2 1\n2 1 1\n");
  EXPECT_TRUE(conc::flow_imbalances(balanced).empty());
  auto web = conc::parse_pajek(read("web.net"));
  const auto report = conc::flow_imbalances(web);
  ASSERT_FALSE(report.empty());
  EXPECT_EQ(report.front().label, "Shark");
  EXPECT_EQ(report.front().out_flow, 1.25);
  EXPECT_EQ(report.front().in_flow, 0.0);
}
