#pragma once

#include <algorithm>
#include <cmath>

#include "vcm/engine.hpp"

namespace vcm {

inline constexpr std::size_t kOracleVertexLimit = 12;

// Closed form of the level loop without level sharing, by enumeration: every
// arc sequence from s to t that strictly climbs the relocated level graph
// contributes the product of alpha^level(v) * w(v,u) / W(v) along its arcs.
// Contributions are summed, or maximised when input_max is set.
inline double path_sum_oracle(const Graph& g, VertexId s, VertexId t, const VcmParams& params) {
  if (g.vertex_count() > kOracleVertexLimit)
    throw oracle_size_error("path oracle limited to " + std::to_string(kOracleVertexLimit) +
                            " vertices");
  if (params.level_share) throw domain_error("path oracle requires level_share = false");
  check_params(params);
  if (s == t) return 1.0;
  LevelGraph base = build_level_graph(g, s);
  if (!base.reachable(t)) return 0.0;
  const LevelGraph lg = relocate_target(std::move(base), t);

  double result = 0.0;
  auto walk = [&](auto&& self, VertexId v, double value) -> void {
    if (v == t) {
      result = params.input_max ? std::max(result, value) : result + value;
      return;
    }
    const int lv = lg.level[v.value];
    const double attenuation = lv == 0 ? 1.0 : std::pow(params.alpha, lv);
    for (const Arc& a : g.out_arcs(v)) {
      if (lg.level[a.target.value] <= lv) continue;
      self(self, a.target, value * (attenuation * a.weight / lg.out_weight[v.value]));
    }
  };
  walk(walk, s, 1.0);
  return result;
}

}  // namespace vcm
