// vcm: command-line front end for connectivity scoring, ranking, alpha
// sweeps, method comparison and pair-log ingestion.
//
// Exit codes: 0 success, 1 usage error, 2 file or parse error, 3 unknown vertex.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vcm/vcm.hpp"

namespace {

using json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kUnknownVertex = 3 };

struct Options {
  std::string graph;
  std::string format{"json"};
  bool undirected{false};

  std::string source;
  std::string target;
  double alpha{1.0};
  bool level_share{false};
  bool input_max{false};

  std::size_t top{10};
  std::optional<int> level;
  std::string alphas;

  std::string methods{"vcm,katz,communicability,maxflow,escape"};
  double katz_alpha{0.33};
  std::optional<int> katz_max_len;
  double escape_c{0.9};
  std::size_t dense_limit{vcm::kDenseVertexLimit};

  std::string pairs;
  std::size_t src_col{0};
  std::size_t dst_col{1};
  bool header{false};
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string display(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

vcm::VcmParams vcm_params(const Options& o) {
  return {o.alpha, o.level_share, o.input_max};
}

void require_finite(double v) {
  if (!std::isfinite(v)) throw UsageError("result overflowed; lower --alpha");
}

json echo(const Options& o, std::string_view command) {
  json j;
  j["command"] = command;
  j["graph"] = o.graph;
  j["undirected"] = o.undirected;
  j["source"] = o.source;
  return j;
}

void echo_vcm(json& j, const vcm::VcmParams& p) {
  j["alpha"] = p.alpha;
  j["level_share"] = p.level_share;
  j["input_max"] = p.input_max;
}

json ranking_json(const std::vector<vcm::RankEntry>& ranking) {
  json rows = json::array();
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    require_finite(ranking[i].score);
    rows.push_back({{"rank", i + 1},
                    {"label", ranking[i].label},
                    {"score", ranking[i].score},
                    {"level", ranking[i].level}});
  }
  return rows;
}

vcm::Graph load(const Options& o) {
  if (o.graph.empty()) throw UsageError("--graph is required");
  return vcm::load_edge_list(o.graph, o.undirected);
}

std::vector<double> parse_alphas(const std::string& list) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string::npos) comma = list.size();
    std::string item = list.substr(start, comma - start);
    double v{};
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw UsageError("bad alpha '" + item + "'");
    if (!std::isfinite(v) || v < 0.0) throw UsageError("alpha must be non-negative: " + item);
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

int cmd_score(const Options& o) {
  if (o.source.empty() || o.target.empty()) throw UsageError("--source and --target are required");
  const vcm::Graph g = load(o);
  const auto p = vcm_params(o);
  vcm::check_params(p);
  const double score = vcm::vcm(g, g.resolve(o.source), g.resolve(o.target), p);
  require_finite(score);
  if (o.format == "tsv") {
    std::cout << "source\ttarget\talpha\tlevel_share\tinput_max\tscore\n"
              << o.source << '\t' << o.target << '\t' << display(p.alpha) << '\t'
              << p.level_share << '\t' << p.input_max << '\t' << display(score) << '\n';
    return kOk;
  }
  json j = echo(o, "score");
  j["target"] = o.target;
  echo_vcm(j, p);
  j["score"] = score;
  std::cout << j.dump() << '\n';
  return kOk;
}

void print_ranking_tsv(const std::vector<vcm::RankEntry>& ranking) {
  std::cout << "rank\tlabel\tscore\tlevel\n";
  for (std::size_t i = 0; i < ranking.size(); ++i)
    std::cout << i + 1 << '\t' << ranking[i].label << '\t' << display(ranking[i].score) << '\t'
              << ranking[i].level << '\n';
}

int cmd_rank(const Options& o) {
  if (o.source.empty()) throw UsageError("--source is required");
  if (o.top < 1) throw UsageError("--top must be at least 1");
  const vcm::Graph g = load(o);
  const auto p = vcm_params(o);
  vcm::check_params(p);
  auto ranking = vcm::rank_from_source(g, g.resolve(o.source), p, o.top, o.level);
  json rows = ranking_json(ranking);
  if (o.format == "tsv") {
    print_ranking_tsv(ranking);
    return kOk;
  }
  json j = echo(o, "rank");
  echo_vcm(j, p);
  j["top"] = o.top;
  j["level"] = o.level ? json(*o.level) : json(nullptr);
  j["ranking"] = std::move(rows);
  std::cout << j.dump() << '\n';
  return kOk;
}

int cmd_sweep(const Options& o) {
  if (o.source.empty()) throw UsageError("--source is required");
  if (o.alphas.empty()) throw UsageError("--alphas is required");
  if (o.top < 1) throw UsageError("--top must be at least 1");
  const auto alphas = parse_alphas(o.alphas);
  const vcm::Graph g = load(o);
  const auto p = vcm_params(o);
  const auto table = vcm::alpha_sweep(g, g.resolve(o.source), alphas, p, o.top, o.level);

  json columns = json::array();
  for (std::size_t c = 0; c < table.alphas.size(); ++c)
    columns.push_back({{"alpha", table.alphas[c]}, {"ranking", ranking_json(table.columns[c])}});

  if (o.format == "tsv") {
    std::cout << "rank";
    for (double a : table.alphas) std::cout << '\t' << display(a);
    std::cout << '\n';
    for (std::size_t r = 0; r < table.row_count(); ++r) {
      std::cout << r + 1;
      for (const auto& col : table.columns) {
        std::cout << '\t';
        if (r < col.size()) std::cout << col[r].label << ' ' << display(col[r].score);
      }
      std::cout << '\n';
    }
    return kOk;
  }
  json j = echo(o, "sweep");
  j["alphas"] = table.alphas;
  j["level_share"] = p.level_share;
  j["input_max"] = p.input_max;
  j["top"] = o.top;
  j["level"] = o.level ? json(*o.level) : json(nullptr);
  j["columns"] = std::move(columns);
  std::cout << j.dump() << '\n';
  return kOk;
}

std::vector<vcm::Method> parse_methods(const std::string& list) {
  std::vector<vcm::Method> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string::npos) comma = list.size();
    std::string name = list.substr(start, comma - start);
    auto m = vcm::parse_method(name);
    if (!m) throw UsageError("unknown method '" + name + "'");
    out.push_back(*m);
    start = comma + 1;
  }
  return out;
}

int cmd_compare(const Options& o) {
  if (o.source.empty()) throw UsageError("--source is required");
  if (o.top < 1) throw UsageError("--top must be at least 1");
  const auto methods = parse_methods(o.methods);
  if (!(o.escape_c > 0.0 && o.escape_c <= 1.0)) throw UsageError("--escape-c must lie in (0, 1]");
  if (!(o.katz_alpha > 0.0) || !std::isfinite(o.katz_alpha))
    throw UsageError("--katz-alpha must be positive");
  if (o.katz_max_len && *o.katz_max_len < 1) throw UsageError("--katz-max-len must be >= 1");
  const vcm::Graph g = load(o);

  vcm::CompareParams params;
  params.vcm = vcm_params(o);
  vcm::check_params(params.vcm);
  params.katz_alpha = o.katz_alpha;
  params.katz_max_len = o.katz_max_len;
  params.escape_c = o.escape_c;
  params.dense_limit = o.dense_limit;
  const auto cmp = vcm::compare_methods(g, g.resolve(o.source), methods, params, o.top);

  json results = json::array();
  for (const auto& r : cmp.results) {
    json m;
    m["method"] = vcm::method_name(r.method);
    if (r.error)
      m["error"] = *r.error;
    else
      m["ranking"] = ranking_json(r.ranking);
    results.push_back(std::move(m));
  }

  if (o.format == "tsv") {
    std::cout << "rank";
    for (const auto& r : cmp.results) std::cout << '\t' << vcm::method_name(r.method);
    std::cout << '\n';
    std::size_t rows = 0;
    for (const auto& r : cmp.results) rows = std::max(rows, r.ranking.size());
    for (std::size_t i = 0; i < rows; ++i) {
      std::cout << i + 1;
      for (const auto& r : cmp.results) {
        std::cout << '\t';
        if (i < r.ranking.size()) std::cout << r.ranking[i].label << ' ' << display(r.ranking[i].score);
      }
      std::cout << '\n';
    }
    for (const auto& r : cmp.results)
      if (r.error) std::cout << "# " << vcm::method_name(r.method) << " error: " << *r.error << '\n';
    for (const auto& ov : cmp.overlaps)
      std::cout << "# overlap top" << params.overlap_k << '\t' << vcm::method_name(ov.first) << '\t'
                << vcm::method_name(ov.second) << '\t' << ov.shared << '\n';
    return kOk;
  }

  json j = echo(o, "compare");
  echo_vcm(j, params.vcm);
  j["katz_alpha"] = params.katz_alpha;
  j["katz_max_len"] = params.katz_max_len ? json(*params.katz_max_len) : json(nullptr);
  j["escape_c"] = params.escape_c;
  j["dense_limit"] = params.dense_limit;
  j["top"] = o.top;
  j["results"] = std::move(results);
  json overlaps = json::array();
  for (const auto& ov : cmp.overlaps)
    overlaps.push_back({{"first", vcm::method_name(ov.first)},
                        {"second", vcm::method_name(ov.second)},
                        {"top", params.overlap_k},
                        {"shared", ov.shared}});
  j["overlap"] = std::move(overlaps);
  std::cout << j.dump() << '\n';
  return kOk;
}

int cmd_ingest(const Options& o) {
  if (o.pairs.empty()) throw UsageError("--pairs is required");
  if (o.out.empty()) throw UsageError("--out is required");
  const auto log = vcm::read_pair_log(o.pairs, o.src_col, o.dst_col, o.header);
  const auto edges = vcm::aggregate_pairs(log, o.undirected);
  vcm::write_edge_list(edges, o.out);
  json j;
  j["command"] = "ingest";
  j["pairs"] = o.pairs;
  j["src_col"] = o.src_col;
  j["dst_col"] = o.dst_col;
  j["header"] = o.header;
  j["undirected"] = o.undirected;
  j["out"] = o.out;
  j["events"] = log.size();
  j["edges"] = edges.size();
  std::cout << j.dump() << '\n';
  return kOk;
}

void add_vcm_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--source", o.source, "Source vertex label");
  cmd->add_option("--alpha", o.alpha, "Attenuation factor per level");
  cmd->add_flag("--level-share", o.level_share, "Exchange scores along intra-level arcs");
  cmd->add_flag("--input-max", o.input_max, "Combine forward inputs by max instead of sum");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex connectivity scoring for weighted graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--graph", o.graph, "Weighted edge list (source<TAB>target<TAB>weight)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
  app.add_flag("--undirected", o.undirected, "Treat every edge as two arcs");

  auto* score = app.add_subcommand("score", "Score one source/target pair");
  add_vcm_flags(score, o);
  score->add_option("--target", o.target, "Target vertex label");

  auto* rank = app.add_subcommand("rank", "Rank every vertex from a source");
  add_vcm_flags(rank, o);
  rank->add_option("--top", o.top, "Number of entries");
  rank->add_option("--level", o.level, "Keep only vertices this many hops away");

  auto* sweep = app.add_subcommand("sweep", "Rankings for a list of alphas");
  add_vcm_flags(sweep, o);
  sweep->add_option("--alphas", o.alphas, "Comma-separated alpha values");
  sweep->add_option("--top", o.top, "Number of entries per column");
  sweep->add_option("--level", o.level, "Keep only vertices this many hops away");

  auto* compare = app.add_subcommand("compare", "Rank with several proximity methods");
  add_vcm_flags(compare, o);
  compare->add_option("--methods", o.methods, "vcm,katz,communicability,maxflow,escape");
  compare->add_option("--katz-alpha", o.katz_alpha, "Katz walk attenuation");
  compare->add_option("--katz-max-len", o.katz_max_len, "Katz walk length cap (default: diameter)");
  compare->add_option("--escape-c", o.escape_c, "Escape-probability continuation");
  compare->add_option("--dense-limit", o.dense_limit, "Vertex cap for the dense baselines");
  compare->add_option("--top", o.top, "Number of entries");

  auto* ingest = app.add_subcommand("ingest", "Aggregate a pair-log CSV into a weighted edge list");
  ingest->add_option("--pairs", o.pairs, "Input CSV of (source, target) events");
  ingest->add_option("--src-col", o.src_col, "0-based source column");
  ingest->add_option("--dst-col", o.dst_col, "0-based target column");
  ingest->add_flag("--header", o.header, "Skip the first record");
  ingest->add_option("--out", o.out, "Output edge list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*score) return cmd_score(o);
    if (*rank) return cmd_rank(o);
    if (*sweep) return cmd_sweep(o);
    if (*compare) return cmd_compare(o);
    if (*ingest) return cmd_ingest(o);
  } catch (const UsageError& e) {
    std::cerr << "vcm: " << e.what() << '\n';
    return kUsage;
  } catch (const vcm::unknown_vertex& e) {
    std::cerr << "vcm: " << e.what() << '\n';
    return kUnknownVertex;
  } catch (const vcm::domain_error& e) {
    std::cerr << "vcm: " << e.what() << '\n';
    return kUsage;
  } catch (const vcm::error& e) {
    std::cerr << "vcm: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
