// conc: rank actors of competition networks by CON score and compare rankings.
//
//   conc rank     --format pajek --in web.net --out out/
//   conc compare  --format events --in pakistan.csv --metric con --metric pagerank --svg --out out/
//   conc eval     --format votes --in s1.csv --in s2.csv --k 3 --k 5 --out out/
//   conc validate --format pajek --in web.net
//
// Exit codes: 0 success, 1 numeric/internal failure, 2 input or usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "conc/conc.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

enum class Format { votes, events, pajek };

struct RunConfig {
  Format format = Format::votes;
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  std::vector<std::string> metrics;
  std::string closeness = "strict";
  conc::PageRankConfig pagerank;
  std::size_t top_n = 15;
  std::vector<std::size_t> ks;
  bool svg = false;
  unsigned threads = 1;
};

// Input failure tied to one file; reported with its path and mapped to exit code 2.
struct FileError {
  std::string path;
  std::string message;
};

struct Output {
  std::string name;
  std::string content;
};

void add_common_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--format", cfg.format, "Input format")
      ->required()
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"votes", Format::votes}, {"events", Format::events}, {"pajek", Format::pajek}}));
  cmd.add_option("--in", cfg.inputs, "Input file (repeatable)")->required()->check(CLI::ExistingFile);
}

void add_output_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
  cmd.add_option("--metric", cfg.metrics, "con|pagerank|jaccard|closeness (repeatable)")
      ->check(CLI::IsMember({"con", "pagerank", "jaccard", "closeness", "in-degree", "out-degree"}));
  cmd.add_option("--closeness", cfg.closeness, "Closeness mode: strict|wf")
      ->check(CLI::IsMember({"strict", "wf"}))
      ->capture_default_str();
  cmd.add_option("--damping", cfg.pagerank.damping, "PageRank damping")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--tol", cfg.pagerank.tolerance, "PageRank L1 tolerance")->check(CLI::PositiveNumber);
  cmd.add_option("--max-iter", cfg.pagerank.max_iterations, "PageRank iteration cap")->check(CLI::PositiveNumber);
  cmd.add_option("--top-n", cfg.top_n, "Slope graph depth")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--k", cfg.ks, "Top-k cut-off (repeatable)")->check(CLI::PositiveNumber);
  cmd.add_flag("--svg", cfg.svg, "Also write an SVG slope graph");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError{path, "cannot open file"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <typename Parse>
auto parse_file(const std::string& path, Parse&& parse) {
  const auto text = read_file(path);
  try {
    return parse(std::string_view(text));
  } catch (const conc::InputError& e) {
    throw FileError{path, e.what()};
  }
}

conc::CompetitionNetwork load_network(Format format, const std::string& path) {
  switch (format) {
    case Format::votes: return parse_file(path, [](std::string_view t) { return conc::parse_votes_csv(t).network; });
    case Format::events: return parse_file(path, [](std::string_view t) { return conc::parse_events_csv(t); });
    case Format::pajek: {
      auto net = parse_file(path, [](std::string_view t) { return conc::parse_pajek(t); });
      for (const auto& w : conc::flow_imbalances(net))
        std::cerr << "conc: warning: " << path << ": '" << w.label << "' in-flow " << conc::format_number(w.in_flow)
                  << " differs from out-flow " << conc::format_number(w.out_flow) << "\n";
      return net;
    }
  }
  throw FileError{path, "unknown format"};
}

const std::string& single_input(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw FileError{"--in", "this command takes exactly one input file"};
  return cfg.inputs.front();
}

conc::ClosenessMode closeness_mode(const RunConfig& cfg) {
  return cfg.closeness == "wf" ? conc::ClosenessMode::wf : conc::ClosenessMode::strict;
}

conc::MetricOptions metric_options(const RunConfig& cfg) {
  return {closeness_mode(cfg), cfg.pagerank, cfg.threads};
}

conc::Metric metric_of(const std::string& name) { return *conc::parse_metric(name); }

std::string table_name(const conc::ScoreTable& t) { return "scores_" + t.metric_name() + ".tsv"; }

// Writes every output to a temporary sibling first, then renames into place.
void commit(const std::string& dir, const std::vector<Output>& outputs) {
  fs::create_directories(dir);
  std::vector<std::pair<fs::path, fs::path>> staged;
  for (const auto& o : outputs) {
    const fs::path final_path = fs::path(dir) / o.name;
    const fs::path tmp = fs::path(dir) / ("." + o.name + ".tmp");
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << o.content;
    f.close();
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    staged.emplace_back(tmp, final_path);
  }
  for (const auto& [tmp, final_path] : staged) fs::rename(tmp, final_path);
}

int cmd_rank(const RunConfig& cfg) {
  const auto net = load_network(cfg.format, single_input(cfg));
  const auto opts = metric_options(cfg);
  std::vector<std::string> metrics = cfg.metrics;
  if (metrics.empty()) metrics = {"con", "pagerank", "jaccard", "closeness"};

  std::vector<Output> outputs;
  outputs.push_back({"leader_report.tsv", conc::leader_report_tsv(conc::leader_report(net, cfg.threads), closeness_mode(cfg))});
  for (const auto& m : metrics) {
    const auto table = conc::compute_table(net, metric_of(m), opts);
    outputs.push_back({table_name(table), conc::score_table_tsv(table)});
  }
  commit(cfg.out_dir, outputs);
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
  std::vector<std::string> metrics = cfg.metrics;
  if (metrics.empty()) metrics = {"con", "pagerank"};
  if (metrics.size() != 2) throw FileError{"--metric", "compare needs exactly two metrics"};
  const auto net = load_network(cfg.format, single_input(cfg));
  const auto opts = metric_options(cfg);
  const auto left = conc::compute_table(net, metric_of(metrics[0]), opts);
  const auto right = conc::compute_table(net, metric_of(metrics[1]), opts);
  const auto report = conc::slope_graph(left, right, cfg.top_n);
  std::optional<double> rho;
  if (net.node_count() >= 2) rho = conc::spearman(left, right);

  std::vector<Output> outputs;
  outputs.push_back({"slope_graph.json", conc::slope_graph_json(report, rho).dump(2) + "\n"});
  outputs.push_back({"slope_graph.tsv", conc::slope_graph_tsv(report)});
  if (cfg.svg) outputs.push_back({"slope_graph.svg", conc::slope_graph_svg(report)});
  commit(cfg.out_dir, outputs);
  std::cout << "spearman\t" << (rho ? conc::format_number(*rho) : std::string("n/a")) << "\n";
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg) {
  if (cfg.format != Format::votes) throw FileError{"--format", "eval requires votes input"};
  std::vector<std::optional<conc::SeasonRecord>> parsed(cfg.inputs.size());
  conc::parallel_for(cfg.inputs.size(), cfg.threads, [&](std::size_t i) {
    parsed[i] = parse_file(cfg.inputs[i], [](std::string_view t) { return conc::parse_votes_csv(t); });
  });
  std::vector<conc::SeasonRecord> seasons;
  for (auto& s : parsed) seasons.push_back(std::move(*s));

  std::vector<conc::Metric> metrics;
  for (const auto& m : cfg.metrics) metrics.push_back(metric_of(m));
  if (metrics.empty()) metrics = {conc::Metric::con, conc::Metric::pagerank, conc::Metric::jaccard};
  std::vector<std::size_t> ks = cfg.ks;
  if (ks.empty()) ks = {3, 5};

  conc::EvaluationSummary summary;
  try {
    summary = conc::evaluate_seasons(seasons, metrics, ks, metric_options(cfg));
  } catch (const conc::InputError& e) {
    throw FileError{"eval", e.what()};
  }
  std::vector<Output> outputs;
  outputs.push_back({"hit_rates.tsv", conc::hit_rates_tsv(summary)});
  outputs.push_back({"evaluation.json", conc::evaluation_json(summary).dump(2) + "\n"});
  commit(cfg.out_dir, outputs);
  std::cout << outputs.front().content;
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg) {
  int status = kExitOk;
  for (const auto& path : cfg.inputs) {
    try {
      const auto net = load_network(cfg.format, path);
      std::cout << path << ": ok, " << net.node_count() << " nodes, " << net.arc_count() << " arcs, total weight "
                << conc::format_number(net.total_weight()) << "\n";
    } catch (const FileError& e) {
      std::cerr << "conc: " << e.path << ": " << e.message << "\n";
      status = kExitInput;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Competition-network centrality: CON scores, closeness and ranking comparisons"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.threads = conc::threads_from_env();

  auto* rank = app.add_subcommand("rank", "Write the leader report and per-metric score tables");
  auto* compare = app.add_subcommand("compare", "Slope graph and Spearman coefficient of two rankings");
  auto* eval = app.add_subcommand("eval", "Winner-in-top-k hit rates over a corpus of seasons");
  auto* validate = app.add_subcommand("validate", "Parse inputs and report problems without writing outputs");
  for (auto* cmd : {rank, compare, eval, validate}) add_common_options(*cmd, cfg);
  for (auto* cmd : {rank, compare, eval}) add_output_options(*cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*rank) return cmd_rank(cfg);
    if (*compare) return cmd_compare(cfg);
    if (*eval) return cmd_eval(cfg);
    return cmd_validate(cfg);
  } catch (const FileError& e) {
    std::cerr << "conc: " << e.path << ": " << e.message << "\n";
    return kExitInput;
  } catch (const conc::InputError& e) {
    std::cerr << "conc: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "conc: " << e.what() << "\n";
    return kExitInput;
  } catch (const conc::NumericError& e) {
    std::cerr << "conc: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "conc: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
