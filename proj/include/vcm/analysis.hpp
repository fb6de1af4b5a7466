#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vcm/baselines.hpp"
#include "vcm/engine.hpp"

namespace vcm {

struct RankEntry {
  VertexId vertex;
  std::string label;
  double score{};
  int level{-1};  // BFS hops from the source before relocation, -1 if unreachable
};

// Columns are independent rankings, one per alpha.
struct SweepTable {
  std::vector<double> alphas;
  std::vector<std::vector<RankEntry>> columns;

  std::size_t row_count() const {
    std::size_t rows = 0;
    for (const auto& c : columns) rows = std::max(rows, c.size());
    return rows;
  }
};

// Score descending, then label ascending.
inline bool rank_before(const RankEntry& a, const RankEntry& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.label < b.label;
}

// Orders every vertex except s by `scores`, keeping only vertices at
// `level_filter` hops when one is given.
inline std::vector<RankEntry> rank_scores(const Graph& g, VertexId s,
                                          std::span<const double> scores,
                                          std::span<const int> levels, std::size_t top_k,
                                          std::optional<int> level_filter = std::nullopt) {
  std::vector<RankEntry> entries;
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
    VertexId v{i};
    if (v == s) continue;
    if (level_filter && levels[i] != *level_filter) continue;
    entries.push_back({v, g.label(v), scores[i], levels[i]});
  }
  std::sort(entries.begin(), entries.end(), rank_before);
  if (entries.size() > top_k) entries.resize(top_k);
  return entries;
}

inline std::vector<RankEntry> rank_from_source(const Graph& g, VertexId s, const VcmParams& params,
                                               std::size_t top_k,
                                               std::optional<int> level_filter = std::nullopt) {
  if (top_k < 1) throw domain_error("top_k must be at least 1");
  const ScoreVector scores = vcm_all_targets(g, s, params);
  const LevelGraph lg = build_level_graph(g, s);
  return rank_scores(g, s, scores, lg.level, top_k, level_filter);
}

inline SweepTable alpha_sweep(const Graph& g, VertexId s, std::span<const double> alphas,
                              const VcmParams& base, std::size_t top_k,
                              std::optional<int> level_filter = std::nullopt) {
  if (alphas.empty()) throw domain_error("alpha sweep needs at least one alpha");
  SweepTable table;
  for (double alpha : alphas) {
    VcmParams p = base;
    p.alpha = alpha;
    check_params(p);
    table.alphas.push_back(alpha);
    table.columns.push_back(rank_from_source(g, s, p, top_k, level_filter));
  }
  return table;
}

enum class Method { vcm, katz, communicability, maxflow, escape };

inline constexpr Method kAllMethods[] = {Method::vcm, Method::katz, Method::communicability,
                                         Method::maxflow, Method::escape};

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::vcm: return "vcm";
    case Method::katz: return "katz";
    case Method::communicability: return "communicability";
    case Method::maxflow: return "maxflow";
    case Method::escape: return "escape";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods)
    if (method_name(m) == name) return m;
  return std::nullopt;
}

struct CompareParams {
  VcmParams vcm;
  double katz_alpha{0.33};
  std::optional<int> katz_max_len;          // default: graph diameter
  std::optional<int> communicability_terms;  // default: truncation bound
  double escape_c{0.9};
  std::size_t dense_limit{kDenseVertexLimit};
  std::size_t overlap_k{10};
};

struct MethodResult {
  Method method;
  std::vector<RankEntry> ranking;
  std::optional<std::string> error;
};

struct RankOverlap {
  Method first;
  Method second;
  std::size_t shared;  // size of the intersection of both top-overlap_k sets
};

struct Comparison {
  std::vector<MethodResult> results;
  std::vector<RankOverlap> overlaps;
};

inline std::vector<double> method_scores(const Graph& g, VertexId s, Method m,
                                         const CompareParams& p) {
  switch (m) {
    case Method::vcm:
      return vcm_all_targets(g, s, p.vcm);
    case Method::katz: {
      detail::require_dense_scale(g, p.dense_limit, "katz");
      int len = p.katz_max_len ? *p.katz_max_len : std::max(1, graph_diameter(g));
      return katz_scores(g, s, p.katz_alpha, len, p.dense_limit);
    }
    case Method::communicability: {
      detail::require_dense_scale(g, p.dense_limit, "communicability");
      int terms = p.communicability_terms ? *p.communicability_terms
                                          : default_communicability_terms(g);
      return communicability_scores(g, s, terms, p.dense_limit);
    }
    case Method::maxflow:
      return max_flow_scores(g, s, p.dense_limit);
    case Method::escape:
      return escape_scores(g, s, p.escape_c, p.dense_limit);
  }
  return {};
}

// Runs each requested method from s. A method that fails (typically the dense
// size gate) records its error and the others still run.
inline Comparison compare_methods(const Graph& g, VertexId s, std::span<const Method> methods,
                                  const CompareParams& params, std::size_t top_k) {
  if (top_k < 1) throw domain_error("top_k must be at least 1");
  const LevelGraph lg = build_level_graph(g, s);
  Comparison out;
  std::vector<std::vector<RankEntry>> overlap_lists;
  for (Method m : methods) {
    MethodResult r{m, {}, std::nullopt};
    std::vector<RankEntry> head;
    try {
      auto scores = method_scores(g, s, m, params);
      auto full = rank_scores(g, s, scores, lg.level, std::max(top_k, params.overlap_k));
      head.assign(full.begin(), full.begin() + std::min(full.size(), params.overlap_k));
      full.resize(std::min(full.size(), top_k));
      r.ranking = std::move(full);
    } catch (const error& e) {
      r.error = e.what();
    }
    out.results.push_back(std::move(r));
    overlap_lists.push_back(std::move(head));
  }
  for (std::size_t i = 0; i < out.results.size(); ++i)
    for (std::size_t j = i + 1; j < out.results.size(); ++j) {
      if (out.results[i].error || out.results[j].error) continue;
      std::set<std::uint32_t> a;
      for (const auto& e : overlap_lists[i]) a.insert(e.vertex.value);
      std::size_t shared = 0;
      for (const auto& e : overlap_lists[j]) shared += a.count(e.vertex.value);
      out.overlaps.push_back({out.results[i].method, out.results[j].method, shared});
    }
  return out;
}

}  // namespace vcm
