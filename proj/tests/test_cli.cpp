#include <gtest/gtest.h>
#include <sys/wait.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code = -1;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("classnum_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args) {
    const fs::path out = dir_ / "stdout", err = dir_ / "stderr";
    const std::string env = "CLASSNUM_CACHE_DIR=" + (dir_ / "cache").string() + " ";
    const std::string cmd = env + CLASSNUM_CLI " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

const std::string kCorpus = CLASSNUM_DATA_DIR "/corpus.yaml";

}  // namespace

TEST_F(Cli, AnalyzeCorpus) {
  const auto r = run("analyze --corpus " + kCorpus);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["schema"], "classnum.analysis");
  bool found = false;
  for (const auto& c : doc["curves"]) {
    EXPECT_EQ(c["status"], "ok") << c["name"];
    EXPECT_TRUE(c["checks_pass"].get<bool>()) << c["name"];
    if (c["name"] != "as_g2_f2") continue;
    found = true;
    EXPECT_EQ(c["h"], "5");
    EXPECT_EQ(c["S"], "6");
    EXPECT_EQ(c["R"], "6/5");
    EXPECT_EQ(c["bounds"]["best_value"], "1");
    EXPECT_TRUE(c["bounds"]["all_dominance_ok"].get<bool>());
  }
  EXPECT_TRUE(found);
}

TEST_F(Cli, EmptyCorpus) {
  const auto r = run("analyze --corpus " + write("empty.yaml", "# no curves\n"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["curves"].empty());
}

TEST_F(Cli, InconsistentCurveIsNamed) {
  const auto r = run("analyze --corpus " CLASSNUM_DATA_DIR "/bad_corpus.yaml");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("half_place"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("InconsistentCounts"), std::string::npos) << r.err;
  const auto doc = Json::parse(r.out);
  ASSERT_EQ(doc["curves"].size(), 2u);
  EXPECT_EQ(doc["curves"][0]["status"], "ok");
  EXPECT_EQ(doc["curves"][1]["status"], "error");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("analyze").code, 2);
  EXPECT_EQ(run("analyze --corpus " + kCorpus + " --format xml").code, 2);
  EXPECT_EQ(run("analyze --corpus " + (dir_ / "missing.yaml").string()).code, 2);
  EXPECT_EQ(run("analyze --corpus " + write("broken.yaml", "name: c\np: 2\ngenus: 2\nmodel: cubic\n")).code, 2);
  EXPECT_EQ(run("verify --suite nonsense").code, 2);
  EXPECT_EQ(run("analyze --corpus " + kCorpus + " --r 99").code, 2);
}

TEST_F(Cli, OutputIsDeterministic) {
  for (const std::string fmt : {"json", "csv", "table"}) {
    const auto a = run("analyze --no-cache --format " + fmt + " --corpus " + kCorpus);
    const auto b = run("analyze --no-cache --format " + fmt + " --corpus " + kCorpus);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << fmt;
  }
}

TEST_F(Cli, CacheDoesNotChangeOutput) {
  const auto cold = run("analyze --corpus " + kCorpus);
  const auto warm = run("analyze --corpus " + kCorpus);
  const auto none = run("analyze --no-cache --corpus " + kCorpus);
  EXPECT_TRUE(fs::exists(dir_ / "cache"));
  EXPECT_EQ(cold.out, warm.out);
  EXPECT_EQ(cold.out, none.out);
  const auto jobs = run("analyze --jobs 3 --no-cache --corpus " + kCorpus);
  EXPECT_EQ(jobs.out, none.out);
}

TEST_F(Cli, OutFile) {
  const auto path = (dir_ / "report.json").string();
  const auto r = run("analyze --no-cache --corpus " + kCorpus + " --out " + path);
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path), run("analyze --no-cache --corpus " + kCorpus).out);
}

TEST_F(Cli, VerifySingleSuite) {
  const auto r = run("verify --suite qr");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = Json::parse(r.out);
  ASSERT_EQ(doc["suites"].size(), 1u);
  EXPECT_EQ(doc["suites"][0]["suite"], "qr");
  EXPECT_GT(doc["suites"][0]["cases"].get<long>(), 0);
}

TEST_F(Cli, VerifyAllSuites) {
  const auto r = run("verify --corpus " + kCorpus);
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(Json::parse(r.out)["passed"].get<bool>());
}

TEST_F(Cli, InjectedFaultIsCaught) {
  const auto r = run("verify --inject-fault binomial-off-by-one --corpus " + kCorpus);
  EXPECT_EQ(r.code, 1);
  const auto doc = Json::parse(r.out);
  EXPECT_FALSE(doc["passed"].get<bool>());
  int with_example = 0;
  for (const auto& s : doc["suites"])
    if (!s["passed"].get<bool>() && !s["counterexample"].is_null()) ++with_example;
  EXPECT_GT(with_example, 0);
}

TEST_F(Cli, Towers) {
  auto r = run("towers --family gs --q 2 --r 2 --levels 3");
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(r.out);
  ASSERT_EQ(doc["rows"].size(), 3u);
  EXPECT_EQ(doc["rows"][2]["genus"], "5");
  EXPECT_EQ(doc["rows"][2]["genus_printed"], "57");
  r = run("towers --family catalog --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
  EXPECT_EQ(run("towers --family fermat --l 4 --r 1").code, 0);
  EXPECT_EQ(run("towers --family fermat --l 3 --r 1").code, 2);
  EXPECT_EQ(run("towers --family gs --q 2 --r 1").code, 2);
  EXPECT_EQ(run("towers --family spiral").code, 2);
}

TEST_F(Cli, Oracle) {
  auto r = run("oracle --B 3,1 --n 2");
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["series"], "7");
  EXPECT_TRUE(doc["agree"].get<bool>());
  r = run("oracle --corpus " + kCorpus + " --curve as_g2_f2 --n 5");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["agree"].get<bool>());
  EXPECT_EQ(run("oracle --corpus " + kCorpus + " --curve nobody --n 2").code, 2);
  EXPECT_EQ(run("oracle --B 3,-1 --n 2").code, 2);
}
