#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vcm/error.hpp"

namespace vcm {

// Dense vertex index into a Graph.
struct VertexId {
  std::uint32_t value{};

  friend constexpr auto operator<=>(VertexId, VertexId) = default;
};

// One input edge as it appears in a file or list.
struct EdgeRecord {
  std::string source;
  std::string target;
  double weight{};

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct Arc {
  VertexId target;
  double weight{};
};

class Graph;
Graph build_graph(std::span<const EdgeRecord> edges, bool undirected);

// Immutable weighted digraph in compressed adjacency form.
//
// Vertex ids follow first appearance in the edge list. Each adjacency list is
// ordered by the target's label, and all traversals in this library visit
// vertices in label order, so results do not depend on the order of the input
// lines.
class Graph {
 public:
  Graph() = default;

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  bool built_undirected() const noexcept { return undirected_; }

  bool contains(VertexId v) const noexcept { return v.value < labels_.size(); }

  const std::string& label(VertexId v) const { return labels_.at(v.value); }
  std::span<const std::string> labels() const noexcept { return labels_; }

  std::span<const Arc> out_arcs(VertexId v) const {
    return {arcs_.data() + offsets_[v.value], arcs_.data() + offsets_[v.value + 1]};
  }

  // Sum of every out-arc weight of v, self-loops included.
  double out_weight_total(VertexId v) const { return out_total_.at(v.value); }

  std::optional<VertexId> find(std::string_view label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return VertexId{it->second};
  }

  VertexId resolve(std::string_view label) const {
    if (auto v = find(label)) return *v;
    throw unknown_vertex(std::string(label));
  }

  // Position of v's label in sorted label order.
  std::uint32_t canonical_rank(VertexId v) const { return rank_.at(v.value); }

  // All vertices sorted by label.
  std::span<const VertexId> canonical_order() const noexcept { return by_rank_; }

  // Weight of arc u -> v, 0 when absent.
  double arc_weight(VertexId u, VertexId v) const {
    for (const Arc& a : out_arcs(u))
      if (a.target == v) return a.weight;
    return 0.0;
  }

 private:
  friend Graph build_graph(std::span<const EdgeRecord>, bool);

  std::vector<std::string> labels_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
  std::vector<std::uint32_t> rank_;
  std::vector<VertexId> by_rank_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
  std::vector<double> out_total_;
  bool undirected_{false};
};

inline VertexId resolve_label(const Graph& g, std::string_view label) {
  return g.resolve(label);
}

inline double out_weight_total(const Graph& g, VertexId v) {
  return g.out_weight_total(v);
}

inline void validate_edge(const EdgeRecord& e, std::size_t line) {
  if (e.source.empty() || e.target.empty())
    throw validation_error(line, "empty vertex label");
  if (!std::isfinite(e.weight) || !(e.weight > 0.0))
    throw validation_error(line, "edge weight must be positive and finite");
}

// Builds a graph. Parallel arcs are merged by summing their weights; with
// `undirected` each non-loop edge yields an arc in both directions carrying
// the full weight. Errors name the 1-based position of the offending edge.
inline Graph build_graph(std::span<const EdgeRecord> edges, bool undirected) {
  Graph g;
  g.undirected_ = undirected;

  auto intern = [&g](const std::string& label) {
    auto [it, inserted] =
        g.index_.try_emplace(label, static_cast<std::uint32_t>(g.labels_.size()));
    if (inserted) g.labels_.push_back(label);
    return it->second;
  };

  struct RawArc {
    std::uint32_t source;
    std::uint32_t target;
    double weight;
  };
  std::vector<RawArc> raw;
  raw.reserve(edges.size() * (undirected ? 2 : 1));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeRecord& e = edges[i];
    validate_edge(e, i + 1);
    std::uint32_t u = intern(e.source);
    std::uint32_t v = intern(e.target);
    raw.push_back({u, v, e.weight});
    if (undirected && u != v) raw.push_back({v, u, e.weight});
  }

  const std::size_t n = g.labels_.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return g.labels_[a] < g.labels_[b]; });
  g.rank_.resize(n);
  g.by_rank_.resize(n);
  for (std::uint32_t r = 0; r < n; ++r) {
    g.rank_[order[r]] = r;
    g.by_rank_[r] = VertexId{order[r]};
  }

  // Sorting parallel weights before summing makes the merged value
  // independent of input order down to the last bit.
  const auto& rank = g.rank_;
  std::sort(raw.begin(), raw.end(), [&](const RawArc& a, const RawArc& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return rank[a.target] < rank[b.target];
    return a.weight < b.weight;
  });

  g.offsets_.assign(n + 1, 0);
  g.arcs_.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i;
    double w = 0.0;
    for (; j < raw.size() && raw[j].source == raw[i].source && raw[j].target == raw[i].target; ++j)
      w += raw[j].weight;
    g.arcs_.push_back({VertexId{raw[i].target}, w});
    ++g.offsets_[raw[i].source + 1];
    i = j;
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

  g.out_total_.assign(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v)
    for (const Arc& a : g.out_arcs(VertexId{v})) g.out_total_[v] += a.weight;
  return g;
}

}  // namespace vcm
