#include <gtest/gtest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"

namespace vcm {
namespace {

using testing::TempFile;
using json = nlohmann::json;

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(VCM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

class Cli : public ::testing::Test {
 protected:
  TempFile edge_{"edge.wel", "s\tt\t1\n"};
  TempFile star_{"star.wel", "s\ta\t2\ns\tb\t1\n"};
  std::string graph(const TempFile& f) { return "--graph " + quoted(f.str()); }
};

TEST_F(Cli, ScoreJson) {
  CliRun r = run(graph(edge_) + " score --source s --target t --alpha 0.5");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["score"], 1.0);
  EXPECT_EQ(j["alpha"], 0.5);
  EXPECT_EQ(j["command"], "score");
}

TEST_F(Cli, ScoreSourceEqualsTarget) {
  CliRun r = run(graph(edge_) + " score --source s --target s");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["score"], 1.0);
}

TEST_F(Cli, UnknownVertexExitsThree) {
  EXPECT_EQ(run(graph(edge_) + " score --source s --target nobody").code, 3);
}

TEST_F(Cli, UsageAndDataErrors) {
  EXPECT_EQ(run(graph(edge_) + " score --source s").code, 1);
  EXPECT_EQ(run(graph(edge_) + " score --source s --target t --alpha -1").code, 1);
  EXPECT_EQ(run(graph(edge_) + " frobnicate").code, 1);
  EXPECT_EQ(run("--graph /nonexistent/x.wel rank --source s").code, 2);
  TempFile bad("bad.wel", "s\tt\tzero\n");
  EXPECT_EQ(run(graph(bad) + " rank --source s").code, 2);
}

TEST_F(Cli, RankTopOne) {
  CliRun r = run(graph(star_) + " rank --source s --top 1");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  ASSERT_EQ(j["ranking"].size(), 1u);
  EXPECT_EQ(j["ranking"][0]["label"], "a");
  EXPECT_EQ(j["ranking"][0]["rank"], 1);
}

TEST_F(Cli, RankEmptyLevel) {
  CliRun r = run(graph(star_) + " rank --source s --level 99");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out)["ranking"].empty());
}

TEST_F(Cli, Sweep) {
  CliRun r = run(graph(star_) + " sweep --source s --alphas 1");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  ASSERT_EQ(j["columns"].size(), 1u);
  EXPECT_EQ(j["columns"][0]["ranking"][0]["label"], "a");
  EXPECT_EQ(run(graph(star_) + " sweep --source s --alphas 1,-0.5").code, 1);
  EXPECT_EQ(run(graph(star_) + " sweep --source s --alphas 1,,2").code, 1);
}

TEST_F(Cli, CompareVcmMatchesRank) {
  CliRun cmp = run(graph(star_) + " compare --source s --methods vcm");
  CliRun rank = run(graph(star_) + " rank --source s");
  ASSERT_EQ(cmp.code, 0);
  ASSERT_EQ(rank.code, 0);
  EXPECT_EQ(json::parse(cmp.out)["results"][0]["ranking"], json::parse(rank.out)["ranking"]);
  EXPECT_EQ(run(graph(star_) + " compare --source s --methods pagerank").code, 1);
}

TEST_F(Cli, CompareDenseGateIsReportedNotFatal) {
  CliRun r = run(graph(star_) + " compare --source s --methods vcm,katz --dense-limit 2");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_TRUE(j["results"][0].contains("ranking"));
  EXPECT_TRUE(j["results"][1].contains("error"));
  EXPECT_TRUE(j["overlap"].empty());
}

TEST_F(Cli, Ingest) {
  TempFile out("ingest.wel");
  CliRun r = run("ingest --pairs " + quoted(testing::data_path("sample_pairs.csv")) +
              " --src-col 1 --dst-col 2 --header --out " + quoted(out.str()));
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["events"], 8);
  EXPECT_EQ(j["edges"], aggregate_pairs(read_pair_log(testing::data_path("sample_pairs.csv"), 1, 2, true), false).size());
  EXPECT_NE(out.read().find("jeff.skilling\tsusan.m\t2\n"), std::string::npos);
}

TEST_F(Cli, IngestSmallAndEmpty) {
  TempFile csv("pairs.csv", "a,b\na,b\nb,c\n");
  TempFile out("small.wel");
  ASSERT_EQ(run("ingest --pairs " + quoted(csv.str()) + " --out " + quoted(out.str())).code, 0);
  EXPECT_EQ(out.read(), "a\tb\t2\nb\tc\t1\n");

  TempFile empty("empty.csv", "");
  TempFile empty_out("empty.wel");
  ASSERT_EQ(run("ingest --pairs " + quoted(empty.str()) + " --out " + quoted(empty_out.str())).code, 0);
  EXPECT_EQ(empty_out.read(), "");

  EXPECT_EQ(run("ingest --pairs " + quoted(csv.str())).code, 1);
  EXPECT_EQ(run("ingest --pairs /nonexistent.csv --out " + quoted(out.str())).code, 2);
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  const std::string args = "--undirected --graph " + quoted(testing::data_path("lesmis.wel")) +
                           " compare --source Valjean --top 10";
  CliRun a = run(args);
  CliRun b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, TsvFormat) {
  CliRun r = run("--format tsv " + graph(star_) + " rank --source s");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "rank\tlabel\tscore\tlevel\n1\ta\t0.666667\t1\n2\tb\t0.333333\t1\n");
  EXPECT_EQ(run("--format xml " + graph(star_) + " rank --source s").code, 1);
}

}  // namespace
}  // namespace vcm
