#include "cli.hpp"

#include "pebble/io.hpp"

#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args)
{
  args.insert(args.begin(), "pebbles");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = pebble::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("pebble_cli_" + std::to_string(::getpid())))
  {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const
  {
    std::ofstream(file(name)) << text;
    return file(name);
  }

private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path)
{
  return pebble::read_text_file(path);
}

} // namespace

TEST(Cli, UsageErrors)
{
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"analyze", "--lines", "x.json", "--kind", "grid"}).code, 2);
  EXPECT_EQ(run({"analyze", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"simulate", "--pebbles", "1,2,x"}).code, 2);
  EXPECT_EQ(run({"simulate", "--pebbles", "1,2"}).code, 2);
  EXPECT_EQ(run({"simulate", "--alice", "lazy"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MalformedFilesNameTheField)
{
  TempDir dir;
  const auto bad = dir.write("bad.json", R"({"lines": [{"a": "1", "b": "zero", "c": 0}]})");
  const auto r = run({"analyze", "--lines", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("lines[0].b"), std::string::npos) << r.err;

  const auto broken = dir.write("broken.json", "{\"lines\": [");
  EXPECT_EQ(run({"analyze", "--lines", broken}).code, 2);
  EXPECT_EQ(run({"analyze", "--lines", dir.file("missing.json")}).code, 2);
}

TEST(Cli, GenThenAnalyze)
{
  TempDir dir;
  const auto path = dir.file("lines.json");
  ASSERT_EQ(run({"gen", "--kind", "general_position", "--n", "5", "--seed", "3", "--out", path}).code, 0);
  const auto r = run({"analyze", "--lines", path, "--format", "json", "--polygons"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["R"], 16);
  EXPECT_EQ(j["cells"][0]["id"], 1);
  EXPECT_TRUE(j["cells"][0].contains("polygon"));
  const auto direct = run({"analyze", "--kind", "general_position", "--n", "5", "--seed", "3", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(direct.out)["f_value"], j["f_value"]);
}

TEST(Cli, TheoremOneDimensional)
{
  const auto r = run({"verify", "--suite", "theorem1-1d", "--n-max", "12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("claim: "), std::string::npos);
  EXPECT_NE(r.out.find("result: PASS (11/11 cases)"), std::string::npos);
}

TEST(Cli, FigureFiveLines)
{
  const auto r = run({"verify", "--suite", "fig-n5", "--seeds", "20", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"], "PASS");
  EXPECT_EQ(j["cases"].size(), 20u);
  EXPECT_GE(j["summary"]["min_f"].get<int>(), 46);
  EXPECT_LE(j["summary"]["max_f"].get<int>(), 49);
}

TEST(Cli, SimulateOneShortEndsWithBobWin)
{
  TempDir dir;
  const auto t1 = dir.file("t1.jsonl");
  const auto t2 = dir.file("t2.jsonl");
  const std::vector<std::string> args{"simulate", "--alice",  "autopilot", "--bob", "monovariant",
                                      "--pebbles", "total:deficit1", "--seed", "7"};
  auto a = args, b = args;
  a.insert(a.end(), {"--transcript", t1});
  b.insert(b.end(), {"--transcript", t2});
  const auto r1 = run(a);
  const auto r2 = run(b);
  ASSERT_EQ(r1.code, 0) << r1.err;
  EXPECT_NE(r1.out.find("result: BobWon"), std::string::npos) << r1.out;
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_EQ(slurp(t1), slurp(t2));
  EXPECT_FALSE(slurp(t1).empty());

  const auto json = run({"simulate", "--pebbles", "total:deficit1", "--seed", "7", "--format", "json"});
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["status"]["state"], "bob_won");
  EXPECT_EQ(j["total"].get<int>() + 1, j["f_value"].get<int>());
}

TEST(Cli, PebbleSources)
{
  TempDir dir;
  const auto file = dir.write("p.json", R"({"pebbles": [1, 2]})");
  const std::vector<std::string> one_line{"--kind", "parallel", "--n", "1"};
  auto with = [&](std::vector<std::string> args) {
    args.insert(args.end(), one_line.begin(), one_line.end());
    return run(args);
  };
  EXPECT_EQ(with({"simulate", "--bob", "random", "--pebbles", "file:" + file, "--max-rounds", "50"}).code, 0);
  EXPECT_EQ(with({"simulate", "--bob", "random", "--pebbles", "1,2", "--max-rounds", "50"}).code, 0);
  const auto total = with({"simulate", "--bob", "random", "--pebbles", "total:9", "--max-rounds", "5",
                           "--format", "json"});
  ASSERT_EQ(total.code, 0) << total.err;
  EXPECT_EQ(nlohmann::json::parse(total.out)["total"], 9);
  // Monovariant refuses a distribution that is not short.
  EXPECT_EQ(with({"simulate", "--bob", "monovariant", "--pebbles", "optimal"}).code, 2);
}

TEST(Cli, OracleAndCertification)
{
  const auto win = run({"oracle", "--kind", "parallel", "--n", "1", "--pebbles", "1,1", "--depth", "3",
                        "--format", "json"});
  ASSERT_EQ(win.code, 0) << win.err;
  EXPECT_EQ(nlohmann::json::parse(win.out)["verdict"], "bob_forces_win");

  const auto cert = run({"oracle", "--kind", "parallel", "--n", "2", "--certify", "--format", "json"});
  ASSERT_EQ(cert.code, 0) << cert.err;
  const auto j = nlohmann::json::parse(cert.out);
  EXPECT_EQ(j["result"], "certified");
  EXPECT_EQ(j["f"], 5);

  // Too shallow a schedule cannot certify two crossing lines.
  EXPECT_EQ(run({"oracle", "--kind", "general_position", "--n", "2", "--certify", "--schedule", "1"}).code, 1);
}

TEST(Cli, ReportsAreIndependentOfThreadCount)
{
  const std::vector<std::string> base{"verify", "--suite", "lemma1", "--n-max", "3", "--sequences", "20",
                                      "--length", "50", "--format", "json"};
  auto one = base, four = base;
  one.insert(one.end(), {"--jobs", "1"});
  four.insert(four.end(), {"--jobs", "4"});
  const auto a = run(one);
  const auto b = run(four);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OtherSuitesPass)
{
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "--suite", "smallpair"},
           {"verify", "--suite", "distance", "--n-max", "4"},
           {"verify", "--suite", "ball-bound", "--n-max", "7", "--seeds", "2"},
           {"verify", "--suite", "claim6", "--n-max", "3", "--distributions", "10"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << args[2] << "\n" << r.out << r.err;
    EXPECT_NE(r.out.find("result: PASS"), std::string::npos);
  }
}
