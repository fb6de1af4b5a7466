#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vcm/error.hpp"
#include "vcm/graph.hpp"

// Comparison proximity measures: truncated Katz, communicability, max-flow and
// a decaying-walk escape probability. Katz and communicability ignore edge
// weights; max-flow and escape probability use them.

namespace vcm {

inline constexpr std::size_t kDenseVertexLimit = 5000;

namespace detail {

inline void require_dense_scale(const Graph& g, std::size_t limit, const char* method) {
  if (g.vertex_count() > limit)
    throw scale_error(std::string(method) + " not available at this scale (" +
                      std::to_string(g.vertex_count()) + " vertices > " +
                      std::to_string(limit) + ")");
}

// Row vector times unweighted adjacency: next[u] = sum over arcs v->u of x[v].
inline void step_walks(const Graph& g, const std::vector<double>& x, std::vector<double>& next) {
  std::fill(next.begin(), next.end(), 0.0);
  for (VertexId v : g.canonical_order()) {
    const double xv = x[v.value];
    if (xv == 0.0) continue;
    for (const Arc& a : g.out_arcs(v)) next[a.target.value] += xv;
  }
}

inline std::vector<int> bfs_distances(const Graph& g, VertexId s) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<VertexId> queue{s};
  dist[s.value] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    for (const Arc& a : g.out_arcs(v))
      if (dist[a.target.value] < 0) {
        dist[a.target.value] = dist[v.value] + 1;
        queue.push_back(a.target);
      }
  }
  return dist;
}

}  // namespace detail

// Largest finite hop distance over all ordered pairs.
inline int graph_diameter(const Graph& g) {
  if (g.vertex_count() == 0) throw domain_error("diameter of an empty graph");
  int diameter = 0;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    auto dist = detail::bfs_distances(g, VertexId{v});
    diameter = std::max(diameter, *std::max_element(dist.begin(), dist.end()));
  }
  return diameter;
}

// sum_{l=1..max_len} alpha^l * (#walks of length l from s to each vertex).
inline std::vector<double> katz_scores(const Graph& g, VertexId s, double alpha, int max_len,
                                       std::size_t dense_limit = kDenseVertexLimit) {
  detail::require_dense_scale(g, dense_limit, "katz");
  if (max_len < 1) throw domain_error("katz max_len must be >= 1");
  if (!std::isfinite(alpha) || alpha <= 0.0) throw domain_error("katz alpha must be positive");
  const std::size_t n = g.vertex_count();
  std::vector<double> walks(n, 0.0), next(n), score(n, 0.0);
  walks[s.value] = 1.0;
  double scale = 1.0;
  for (int len = 1; len <= max_len; ++len) {
    detail::step_walks(g, walks, next);
    walks.swap(next);
    scale *= alpha;
    for (std::size_t u = 0; u < n; ++u) score[u] += scale * walks[u];
  }
  return score;
}

inline double katz_score(const Graph& g, VertexId s, VertexId t, double alpha, int max_len) {
  return katz_scores(g, s, alpha, max_len)[t.value];
}

// Number of series terms after which the next term, bounded by
// max_out_degree^(l+1) / (l+1)!, drops below 1e-12.
inline int default_communicability_terms(const Graph& g) {
  std::size_t max_degree = 1;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    max_degree = std::max(max_degree, g.out_arcs(VertexId{v}).size());
  const double log_degree = std::log(static_cast<double>(max_degree));
  const double log_tol = std::log(1e-12);
  int terms = 1;
  while ((terms + 1) * log_degree - std::lgamma(terms + 2.0) >= log_tol) ++terms;
  return terms;
}

// Row s of the truncated matrix exponential: sum_{l=0..terms} (A^l)_{s,.} / l!.
inline std::vector<double> communicability_scores(const Graph& g, VertexId s, int terms,
                                                  std::size_t dense_limit = kDenseVertexLimit) {
  detail::require_dense_scale(g, dense_limit, "communicability");
  if (terms < 1) throw domain_error("communicability needs at least one term");
  const std::size_t n = g.vertex_count();
  std::vector<double> term(n, 0.0), next(n), total(n, 0.0);
  term[s.value] = 1.0;
  total[s.value] = 1.0;
  for (int len = 1; len <= terms; ++len) {
    detail::step_walks(g, term, next);
    for (std::size_t u = 0; u < n; ++u) {
      term[u] = next[u] / len;
      total[u] += term[u];
    }
  }
  return total;
}

inline double communicability(const Graph& g, VertexId s, VertexId t, int terms) {
  return communicability_scores(g, s, terms)[t.value];
}

inline double communicability(const Graph& g, VertexId s, VertexId t) {
  return communicability(g, s, t, default_communicability_terms(g));
}

// Residual network over the graph's arcs with capacity = weight.
class FlowNetwork {
 public:
  explicit FlowNetwork(const Graph& g) : head_(g.vertex_count()) {
    for (std::uint32_t u = 0; u < g.vertex_count(); ++u)
      for (const Arc& a : g.out_arcs(VertexId{u})) {
        if (a.target.value == u) continue;
        add_edge(u, a.target.value, a.weight);
        max_capacity_ = std::max(max_capacity_, a.weight);
      }
  }

  // Dinic: BFS level phases, blocking flow by DFS with per-vertex cursors.
  double max_flow(std::uint32_t s, std::uint32_t t) {
    const double eps = 1e-12 * max_capacity_;
    double flow = 0.0;
    while (build_levels(s, t, eps)) {
      cursor_.assign(head_.size(), 0);
      while (true) {
        double pushed = push(s, t, std::numeric_limits<double>::infinity(), eps);
        if (pushed <= eps) break;
        flow += pushed;
      }
    }
    return flow;
  }

 private:
  struct Edge {
    std::uint32_t to;
    double residual;
  };

  void add_edge(std::uint32_t u, std::uint32_t v, double capacity) {
    head_[u].push_back(edges_.size());
    edges_.push_back({v, capacity});
    head_[v].push_back(edges_.size());
    edges_.push_back({u, 0.0});
  }

  bool build_levels(std::uint32_t s, std::uint32_t t, double eps) {
    level_.assign(head_.size(), -1);
    std::vector<std::uint32_t> queue{s};
    level_[s] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::uint32_t v = queue[i];
      for (std::size_t e : head_[v]) {
        const Edge& edge = edges_[e];
        if (edge.residual > eps && level_[edge.to] < 0) {
          level_[edge.to] = level_[v] + 1;
          queue.push_back(edge.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double push(std::uint32_t v, std::uint32_t t, double limit, double eps) {
    if (v == t) return limit;
    for (std::size_t& i = cursor_[v]; i < head_[v].size(); ++i) {
      const std::size_t e = head_[v][i];
      Edge& edge = edges_[e];
      if (edge.residual <= eps || level_[edge.to] != level_[v] + 1) continue;
      double pushed = push(edge.to, t, std::min(limit, edge.residual), eps);
      if (pushed > eps) {
        edge.residual -= pushed;
        edges_[e ^ 1].residual += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> head_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  double max_capacity_{0.0};
};

inline double max_flow(const Graph& g, VertexId s, VertexId t) {
  if (s == t) throw domain_error("max-flow needs distinct source and sink");
  if (!g.contains(s) || !g.contains(t)) throw unknown_vertex("#" + std::to_string(std::max(s.value, t.value)));
  return FlowNetwork(g).max_flow(s.value, t.value);
}

// Max-flow from s to every other vertex; entry s is 0.
inline std::vector<double> max_flow_scores(const Graph& g, VertexId s,
                                           std::size_t dense_limit = kDenseVertexLimit) {
  detail::require_dense_scale(g, dense_limit, "maxflow");
  std::vector<double> out(g.vertex_count(), 0.0);
  for (std::uint32_t t = 0; t < g.vertex_count(); ++t)
    if (t != s.value) out[t] = max_flow(g, s, VertexId{t});
  return out;
}

// Probability that a walk from s, continuing each step with probability c and
// moving along arcs in proportion to weight, reaches t before returning to s
// or dying. Vertices without out-arcs absorb the walk.
inline double escape_probability(const Graph& g, VertexId s, VertexId t, double c,
                                 std::size_t dense_limit = kDenseVertexLimit) {
  detail::require_dense_scale(g, dense_limit, "escape");
  if (s == t) throw domain_error("escape probability needs distinct vertices");
  if (!(c > 0.0 && c <= 1.0)) throw domain_error("escape continuation c must lie in (0, 1]");
  const std::size_t n = g.vertex_count();

  // Unknowns: vertices reachable from s that can reach t, both avoiding s and t.
  std::vector<char> forward(n, 0), backward(n, 0);
  std::vector<std::uint32_t> queue{s.value};
  forward[s.value] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::uint32_t v = queue[i];
    if (v == t.value) continue;
    for (const Arc& a : g.out_arcs(VertexId{v}))
      if (!forward[a.target.value]) {
        forward[a.target.value] = 1;
        queue.push_back(a.target.value);
      }
  }
  if (!forward[t.value]) return 0.0;

  std::vector<std::vector<std::uint32_t>> in(n);
  for (std::uint32_t v = 0; v < n; ++v)
    for (const Arc& a : g.out_arcs(VertexId{v})) in[a.target.value].push_back(v);
  queue.assign(1, t.value);
  backward[t.value] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::uint32_t v = queue[i];
    if (v == s.value) continue;
    for (std::uint32_t u : in[v])
      if (!backward[u]) {
        backward[u] = 1;
        queue.push_back(u);
      }
  }

  std::vector<int> slot(n, -1);
  std::vector<std::uint32_t> unknowns;
  for (VertexId v : g.canonical_order())
    if (v != s && v != t && forward[v.value] && backward[v.value]) {
      slot[v.value] = static_cast<int>(unknowns.size());
      unknowns.push_back(v.value);
    }

  // h(v) - c * sum_{u in unknowns} P(v,u) h(u) = c * P(v,t)
  const auto m = static_cast<Eigen::Index>(unknowns.size());
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (Eigen::Index row = 0; row < m; ++row) {
    VertexId v{unknowns[row]};
    const double total = g.out_weight_total(v);
    for (const Arc& a : g.out_arcs(v)) {
      const double p = c * a.weight / total;
      if (a.target == t)
        rhs[row] += p;
      else if (slot[a.target.value] >= 0)
        system(row, slot[a.target.value]) -= p;
    }
  }
  Eigen::VectorXd h = m > 0 ? Eigen::VectorXd(system.partialPivLu().solve(rhs)) : Eigen::VectorXd();

  const double total = g.out_weight_total(s);
  double ep = 0.0;
  for (const Arc& a : g.out_arcs(s)) {
    const double p = c * a.weight / total;
    if (a.target == t)
      ep += p;
    else if (slot[a.target.value] >= 0)
      ep += p * h[slot[a.target.value]];
  }
  return std::clamp(ep, 0.0, 1.0);
}

inline std::vector<double> escape_scores(const Graph& g, VertexId s, double c,
                                         std::size_t dense_limit = kDenseVertexLimit) {
  detail::require_dense_scale(g, dense_limit, "escape");
  std::vector<double> out(g.vertex_count(), 0.0);
  for (std::uint32_t t = 0; t < g.vertex_count(); ++t)
    if (t != s.value) out[t] = escape_probability(g, s, VertexId{t}, c, dense_limit);
  return out;
}

}  // namespace vcm
