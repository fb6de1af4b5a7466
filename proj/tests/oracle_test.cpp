#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace vcm {
namespace {

using testing::graph_of;
using testing::id;

TEST(PathSumOracle, Chain) {
  Graph g = graph_of({{"s", "a", 1}, {"a", "t", 1}});
  EXPECT_EQ(path_sum_oracle(g, id(g, "s"), id(g, "t"), {0.5, false, false}), 0.5);
}

TEST(PathSumOracle, DiamondSumAndMax) {
  Graph g = load_edge_list(testing::data_path("diamond.wel"), false);
  EXPECT_DOUBLE_EQ(path_sum_oracle(g, id(g, "s"), id(g, "t"), {1.0, false, false}), 1.0);
  EXPECT_DOUBLE_EQ(path_sum_oracle(g, id(g, "s"), id(g, "t"), {1.0, false, true}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(vcm(g, "s", "t", {1.0, false, false}), 1.0);
  EXPECT_DOUBLE_EQ(vcm(g, "s", "t", {1.0, false, true}), 2.0 / 3.0);
}

TEST(PathSumOracle, Guards) {
  std::vector<EdgeRecord> edges;
  for (int i = 0; i < 13; ++i) edges.push_back({"v" + std::to_string(i), "v" + std::to_string(i + 1), 1});
  Graph big = build_graph(edges, false);
  EXPECT_THROW(path_sum_oracle(big, VertexId{0}, VertexId{1}, {}), oracle_size_error);
  Graph g = graph_of({{"s", "t", 1}});
  EXPECT_THROW(path_sum_oracle(g, id(g, "s"), id(g, "t"), {1.0, true, false}), domain_error);
}

TEST(PathSumOracle, AgreesWithEngineOnRandomGraphs) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(2, 8);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = testing::random_graph(rng, size(rng), 0.35);
    for (bool input_max : {false, true})
      for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
        VcmParams p{alpha, false, input_max};
        for (std::uint32_t s = 0; s < g.vertex_count(); ++s)
          for (std::uint32_t t = 0; t < g.vertex_count(); ++t) {
            const double oracle = path_sum_oracle(g, VertexId{s}, VertexId{t}, p);
            EXPECT_NEAR(vcm(g, VertexId{s}, VertexId{t}, p), oracle, 1e-12);
          }
      }
  }
}

}  // namespace
}  // namespace vcm
