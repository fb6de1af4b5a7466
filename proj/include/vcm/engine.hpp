#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcm/error.hpp"
#include "vcm/graph.hpp"

namespace vcm {

struct VcmParams {
  double alpha{1.0};         // attenuation per level, applied as alpha^j
  bool level_share{false};   // exchange scores along intra-level arcs
  bool input_max{false};     // combine forward inputs by max instead of sum
};

inline void check_params(const VcmParams& p) {
  if (!std::isfinite(p.alpha) || p.alpha < 0.0)
    throw domain_error("alpha must be finite and non-negative");
}

// BFS layering from a source, optionally with a relocated target.
struct LevelGraph {
  VertexId source;
  std::vector<int> level;                      // -1: unreachable
  std::vector<double> out_weight;              // W, over all out-arcs
  std::vector<std::vector<VertexId>> buckets;  // vertices per level, label order
  int max_level{0};                            // k, excluding a relocated target
  std::optional<VertexId> target;              // set by relocate_target

  bool reachable(VertexId v) const { return level[v.value] >= 0; }
};

using ScoreVector = std::vector<double>;

namespace detail {

inline void require_vertex(const Graph& g, VertexId v) {
  if (!g.contains(v)) throw unknown_vertex("#" + std::to_string(v.value));
}

// alpha^j with 0^0 = 1.
inline double level_attenuation(double alpha, int j) {
  return j == 0 ? 1.0 : std::pow(alpha, j);
}

}  // namespace detail

inline LevelGraph build_level_graph(const Graph& g, VertexId s) {
  detail::require_vertex(g, s);
  const std::size_t n = g.vertex_count();
  LevelGraph lg;
  lg.source = s;
  lg.level.assign(n, -1);
  lg.out_weight.assign(n, 0.0);

  std::vector<VertexId> queue;
  queue.reserve(n);
  queue.push_back(s);
  lg.level[s.value] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    lg.out_weight[v.value] = g.out_weight_total(v);
    for (const Arc& a : g.out_arcs(v)) {
      if (lg.level[a.target.value] < 0) {
        lg.level[a.target.value] = lg.level[v.value] + 1;
        queue.push_back(a.target);
      }
    }
  }
  lg.max_level = lg.level[queue.back().value];

  // Filling buckets in label order keeps every later pass input-order free.
  lg.buckets.resize(static_cast<std::size_t>(lg.max_level) + 1);
  for (VertexId v : g.canonical_order())
    if (lg.level[v.value] >= 0) lg.buckets[lg.level[v.value]].push_back(v);
  return lg;
}

// Moves t one level beyond every other reachable vertex.
inline LevelGraph relocate_target(LevelGraph lg, VertexId t) {
  if (t.value >= lg.level.size() || lg.level[t.value] < 0)
    throw domain_error("cannot relocate an unreachable target");
  if (t == lg.source) throw domain_error("cannot relocate the source");

  auto& bucket = lg.buckets[lg.level[t.value]];
  std::erase(bucket, t);
  while (lg.buckets.size() > 1 && lg.buckets.back().empty()) lg.buckets.pop_back();
  lg.max_level = static_cast<int>(lg.buckets.size()) - 1;
  lg.level[t.value] = lg.max_level + 1;
  lg.target = t;
  return lg;
}

// One simultaneous round of unattenuated transfers along arcs inside level j.
// Every transfer reads the scores held before the round started.
inline void exchange_within_level(std::span<double> scores, const LevelGraph& lg,
                                  const Graph& g, int j) {
  const auto& bucket = lg.buckets[j];
  std::vector<double> before(bucket.size());
  for (std::size_t i = 0; i < bucket.size(); ++i) before[i] = scores[bucket[i].value];

  for (std::size_t i = 0; i < bucket.size(); ++i) {
    VertexId v = bucket[i];
    if (before[i] == 0.0) continue;
    const double total = lg.out_weight[v.value];
    for (const Arc& a : g.out_arcs(v)) {
      if (a.target == v || lg.level[a.target.value] != j) continue;
      const double f = a.weight / total;
      scores[a.target.value] += f * before[i];
    }
  }
}

// Pushes level j's scores along arcs to strictly higher levels.
inline void propagate_forward(std::span<double> scores, const LevelGraph& lg, const Graph& g,
                              int j, const VcmParams& params) {
  const double attenuation = detail::level_attenuation(params.alpha, j);
  for (VertexId v : lg.buckets[j]) {
    const double value = scores[v.value];
    if (value == 0.0) continue;
    const double total = lg.out_weight[v.value];
    for (const Arc& a : g.out_arcs(v)) {
      if (lg.level[a.target.value] <= j) continue;
      const double f = attenuation * a.weight / total;
      double& into = scores[a.target.value];
      if (params.input_max)
        into = std::max(f * value, into);
      else
        into += f * value;
    }
  }
}

// Runs the level loop over an already relocated level graph.
inline double score_relocated(const LevelGraph& lg, const Graph& g, const VcmParams& params) {
  ScoreVector scores(g.vertex_count(), 0.0);
  scores[lg.source.value] = 1.0;
  for (int j = 0; j <= lg.max_level; ++j) {
    if (params.level_share) exchange_within_level(scores, lg, g, j);
    propagate_forward(scores, lg, g, j, params);
  }
  return scores[lg.target->value];
}

// Connectivity score from s to t.
inline double vcm(const Graph& g, VertexId s, VertexId t, const VcmParams& params) {
  detail::require_vertex(g, s);
  detail::require_vertex(g, t);
  check_params(params);
  if (s == t) return 1.0;
  LevelGraph lg = build_level_graph(g, s);
  if (!lg.reachable(t)) return 0.0;
  return score_relocated(relocate_target(std::move(lg), t), g, params);
}

inline double vcm(const Graph& g, std::string_view s, std::string_view t,
                  const VcmParams& params) {
  return vcm(g, g.resolve(s), g.resolve(t), params);
}

// Scores from s to every vertex, one independent relocated query per target.
// The BFS is shared; each per-target pass is the same computation vcm() does.
inline ScoreVector vcm_all_targets(const Graph& g, VertexId s, const VcmParams& params) {
  detail::require_vertex(g, s);
  check_params(params);
  ScoreVector out(g.vertex_count(), 0.0);
  const LevelGraph base = build_level_graph(g, s);
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
    VertexId t{i};
    if (t == s)
      out[i] = 1.0;
    else if (base.reachable(t))
      out[i] = score_relocated(relocate_target(base, t), g, params);
  }
  return out;
}

}  // namespace vcm
