#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "vcm/vcm.hpp"

namespace vcm::testing {

inline std::string data_path(const std::string& name) {
  return std::string(VCM_DATA_DIR) + "/" + name;
}

// Directed graph on n labelled vertices: every ordered pair (self-loops
// included when asked) is an arc with probability p, weight uniform in [lo, hi].
inline std::vector<EdgeRecord> random_edges(std::mt19937_64& rng, int n, double p, double lo,
                                            double hi, bool self_loops = true) {
  std::bernoulli_distribution coin(p);
  std::uniform_real_distribution<double> weight(lo, hi);
  std::vector<EdgeRecord> edges;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v && !self_loops) continue;
      if (coin(rng)) edges.push_back({"v" + std::to_string(u), "v" + std::to_string(v), weight(rng)});
    }
  return edges;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p, double lo = 0.1,
                          double hi = 10.0) {
  return build_graph(random_edges(rng, n, p, lo, hi), false);
}

inline Graph graph_of(std::initializer_list<EdgeRecord> edges, bool undirected = false) {
  std::vector<EdgeRecord> list(edges);
  return build_graph(list, undirected);
}

inline VertexId id(const Graph& g, const std::string& label) { return g.resolve(label); }

// Temporary file removed on scope exit.
class TempFile {
 public:
  explicit TempFile(const std::string& stem) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("vcm_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" + stem);
  }
  TempFile(const std::string& stem, const std::string& contents) : TempFile(stem) {
    std::ofstream(path_, std::ios::binary) << contents;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

  std::string read() const {
    std::ifstream in(path_, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

 private:
  std::filesystem::path path_;
};

}  // namespace vcm::testing
