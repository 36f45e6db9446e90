#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace leafspec;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("leafspec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

Json parse(const std::string& text) { return Json::parse(text); }

}  // namespace

TEST_F(Cli, SpectrumOfSingleEdge) {
  const auto r = run({"spectrum", file("edge.txt", "2\n0 1\n")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_EQ(j["spectrum"], Json::array({0, 1}));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"procedure", "n", "leaf_count", "max_degree", "diameter", "spectrum",
                                            "spectrum_size"}));
}

TEST_F(Cli, ConstructThenSpectrum) {
  const auto built = run({"construct", "extremal", "--delta", "3", "--d", "2"});
  ASSERT_EQ(built.code, 0) << built.err;
  const auto r = run({"spectrum", file("e.txt", built.out)});
  EXPECT_EQ(parse(r.out)["spectrum"], Json::array({0, 2, 4}));
}

TEST_F(Cli, SpectrumWitnessAndRange) {
  const auto e = file("e.txt", run({"construct", "extremal", "--delta", "3", "--d", "3"}).out);
  const auto r = run({"spectrum", e, "--witness", "21", "--max-len", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_EQ(j["spectrum"], Json::array({0, 2, 4}));
  EXPECT_EQ(j["witness"]["lengths"], Json::array({0, 2, 4}));
  EXPECT_EQ(run({"spectrum", e, "--witness", "0"}).code, 1);
}

TEST_F(Cli, EveryConstructionRoundTrips) {
  const auto seq = file("seq.txt", "# a\n1\n2\n3\n");
  const std::vector<std::vector<std::string>> commands{
      {"construct", "extremal", "--delta", "4", "--d", "2"},
      {"construct", "trimmed", "--delta", "3", "--d", "3", "--leaves", "9"},
      {"construct", "star", "--n", "10", "--delta", "4"},
      {"construct", "binary", "--layers", "4"},
      {"construct", "sparse", "--N", "27", "--n", "100"},
      {"construct", "from-seq", "--seq", seq, "--repeats", "2"},
  };
  for (auto args : commands) {
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << args[1] << ": " << r.err;
    EXPECT_NO_THROW(parse_tree(r.out)) << args[1];
    args.insert(args.begin() + 1, {"--out", path("t.txt")});
    const auto w = run(args);
    ASSERT_EQ(w.code, 0) << w.err;
    std::ifstream in(path("t.txt"));
    EXPECT_NO_THROW(parse_tree(in));
    EXPECT_TRUE(fs::exists(path("t.txt.json")));
    EXPECT_EQ(parse(w.out), Json::parse(std::ifstream(path("t.txt.json"))));
  }
}

TEST_F(Cli, SparseWitnessParams) {
  const auto r = run({"construct", "--params", "sparse", "--N", "27", "--n", "40"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_EQ(j["m"], 3);
  EXPECT_EQ(j["a"], Json::array({2, 1, 3, 5, 4, 6, 8, 7, 9}));
  EXPECT_EQ(j["t"], 4);
  EXPECT_EQ(j["L"], 23);
  EXPECT_EQ(j["S"], 48);
}

TEST_F(Cli, Closure) {
  const auto r = run({"construct", "closure", file("k13.txt", "4\n0 1\n0 2\n0 3\n")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  int n = 0;
  in >> n;
  EXPECT_EQ(n, 6);
  int lines = 0;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) lines += !line.empty();
  EXPECT_EQ(lines, 10);
}

TEST_F(Cli, Witnesses) {
  const auto e = file("e.txt", run({"construct", "extremal", "--delta", "3", "--d", "2"}).out);
  const auto eq = parse(run({"witness", "equal-depth", e, "--root", "0", "--delta", "3"}).out);
  EXPECT_EQ(eq["size"], 3);
  EXPECT_TRUE(eq["bound_holds"].get<bool>());
  const auto cert = parse(run({"witness", "spectrum", e}).out);
  EXPECT_EQ(cert["pairs"], 3);
  EXPECT_EQ(cert["entries"].size(), 3u);
  const auto cat = file("c.txt", run({"construct", "from-seq", "--seq", file("s.txt", "1\n"), "--repeats", "12"}).out);
  const auto sp = parse(run({"witness", "short-path", cat, "--N", "10"}).out);
  EXPECT_EQ(sp["branch"], "shallow");
  EXPECT_EQ(run({"witness", "short-path", e, "--N", "10"}).code, 1);
}

TEST_F(Cli, Sequences) {
  const auto seq = file("s.txt", "3\n1\n2\n0\n4\n");
  const auto es = parse(run({"es", "--seq", seq}).out);
  EXPECT_GE(es["length"].get<int>(), 3);
  const auto shift = parse(run({"shift-set", "--seq", seq, "--m", "4"}).out);
  EXPECT_GE(shift["size"].get<int>(), shift["guarantee"].get<int>());
  EXPECT_EQ(run({"shift-set", "--seq", seq, "--m", "2"}).code, 1);
}

TEST_F(Cli, EnumerateAndAudit) {
  const auto counts = parse(run({"enumerate", "--n", "12"}).out);
  EXPECT_EQ(counts["rows"].back()["class_count"], 2);
  const auto audit = run({"enumerate", "--n", "10", "--audit"});
  ASSERT_EQ(audit.code, 0) << audit.err;
  const auto j = parse(audit.out);
  EXPECT_EQ(j["total_violations"], 0);
  EXPECT_EQ(j["rows"].back()["min_spectrum_size"], 3);
  const auto csv = run({"enumerate", "--n", "6", "--audit", "--format", "csv"});
  EXPECT_EQ(csv.out, "n,class_count,min_spectrum_size,bound\n2,1,2,1\n4,1,2,2\n6,1,3,2\n");
  ASSERT_EQ(run({"enumerate", "--n", "14", "--out-dir", path("trees")}).code, 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(path("trees"))) {
    ++files;
    std::ifstream in(entry.path());
    EXPECT_NO_THROW(parse_tree(in));
  }
  EXPECT_EQ(files, 4);
  EXPECT_EQ(run({"enumerate", "--n", "7"}).code, 1);
}

TEST_F(Cli, Conjectures) {
  const auto v = parse(run({"conjecture", "pair-count", "--seq", file("z.txt", "0\n0\n0\n0\n0\n")}).out);
  EXPECT_EQ(v["value"], 4);
  const auto m = parse(run({"conjecture", "pair-min", "--n", "6", "--cap", "2"}).out);
  EXPECT_EQ(m["value"], 3);
  EXPECT_EQ(m["argmin"], Json::array({0, 1, 0, 1, 0, 1}));
  const auto e = file("e.txt", run({"construct", "extremal", "--delta", "3", "--d", "3"}).out);
  const auto b = parse(run({"conjecture", "short-spectrum", e, "--N", "6"}).out);
  EXPECT_EQ(b["count"], 4);
  EXPECT_EQ(run({"conjecture", "pair-min", "--n", "30", "--cap", "9"}).code, 1);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"spectrum", path("missing.txt")}).code, 1);
  EXPECT_EQ(run({"spectrum", file("bad.txt", "4\n0 1\n2 3\n")}).code, 1);
  EXPECT_EQ(run({"construct", "star", "--n", "4", "--delta", "3"}).code, 1);
  EXPECT_EQ(run({"--work-limit", "5", "spectrum", file("e.txt", "4\n0 1\n0 2\n0 3\n")}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, DeterministicAcrossWorkers) {
  const auto e = file("e.txt", run({"construct", "extremal", "--delta", "3", "--d", "4"}).out);
  const std::vector<std::vector<std::string>> commands{
      {"spectrum", e},
      {"enumerate", "--n", "14", "--audit"},
      {"conjecture", "pair-min", "--n", "20", "--cap", "5", "--mode", "random", "--budget", "10000", "--seed", "3"},
      {"conjecture", "short-spectrum", e, "--N", "5"},
  };
  for (const auto& args : commands) {
    const auto first = run(args);
    ASSERT_EQ(first.code, 0) << first.err;
    for (const char* w : {"1", "2", "7"}) {
      auto more = args;
      more.insert(more.begin(), {"--workers", w});
      EXPECT_EQ(run(more).out, first.out) << args[0] << " workers " << w;
    }
  }
}

TEST(CliBinary, ExitStatus) {
  const std::string bin = LEAFSPEC_CLI_PATH;
  EXPECT_EQ(std::system((bin + " construct binary --layers 3 > /dev/null").c_str()), 0);
  const int bad = std::system((bin + " spectrum /nonexistent 2> /dev/null").c_str());
  EXPECT_TRUE(WIFEXITED(bad));
  EXPECT_EQ(WEXITSTATUS(bad), 1);
}
