#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = FIXOPT_CLI_PATH;

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const fs::path log = fs::temp_directory_path() / ("fixopt_cli_" + std::to_string(::getpid()) + ".log");
  const std::string cmd = "'" + kCli + "' " + args + " > '" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(log);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fixopt_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p;
  }

  fs::path dir_;
};

const char* kSmall = R"({"iterations": 30, "samplings": 2, "I": 3, "J": 3, "seed": 5,
                         "algorithms": ["CSD", "DAD1"]})";

}  // namespace

TEST_F(Cli, Presets) {
  const Result r = run("presets");
  EXPECT_EQ(r.code, 0);
  for (const char* name : {"CSD", "CAG", "CAM1", "CAM2", "CAD1", "CAD2", "DSD", "DAG", "DAM1", "DAM2", "DAD1", "DAD2"}) {
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
  }
}

TEST_F(Cli, ValidateOkAndErrors) {
  EXPECT_EQ(run("validate --config '" + write_config("ok.json", kSmall).string() + "'").code, 0);
  EXPECT_EQ(run("validate --config '" + write_config("bad.json", R"({"iterationz": 3})").string() + "'").code, 2);
  EXPECT_EQ(run("validate --config '" + write_config("broken.json", "{").string() + "'").code, 2);
  const Result unknown = run("validate --config '" + write_config("p.json", R"({"algorithms": ["XYZ"]})").string() + "'");
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.out.find("DAD2"), std::string::npos);
  EXPECT_EQ(run("validate --config '" + (dir_ / "missing.json").string() + "'").code, 3);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("run").code, 2);
}

TEST_F(Cli, RunWritesArtifacts) {
  const fs::path cfg = write_config("c.json", kSmall);
  const fs::path out = dir_ / "out";
  const Result r = run("run --config '" + cfg.string() + "' --out-dir '" + out.string() + "' --svg --bounds");
  ASSERT_EQ(r.code, 0) << r.out;
  for (const char* f : {"raw.csv", "aggregate.csv", "summary.json", "D_n.svg", "F_n.svg", "bounds.csv"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_EQ(slurp(out / "aggregate.csv").substr(0, 20), "algorithm,n,D_n,F_n\n");
  EXPECT_NE(r.out.find("checks hold"), std::string::npos);
}

TEST_F(Cli, DeterministicAcrossInvocations) {
  const fs::path cfg = write_config("c.json", kSmall);
  ASSERT_EQ(run("run --config '" + cfg.string() + "' --out-dir '" + (dir_ / "a").string() + "'").code, 0);
  ASSERT_EQ(run("run --config '" + cfg.string() + "' --out-dir '" + (dir_ / "b").string() + "'").code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "raw.csv"), slurp(dir_ / "b" / "raw.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "aggregate.csv"), slurp(dir_ / "b" / "aggregate.csv"));
  ASSERT_EQ(run("run --config '" + cfg.string() + "' --seed 6 --out-dir '" + (dir_ / "c").string() + "'").code, 0);
  EXPECT_NE(slurp(dir_ / "a" / "raw.csv"), slurp(dir_ / "c" / "raw.csv"));
}

TEST_F(Cli, UnwritableOutputIsIoError) {
  const fs::path cfg = write_config("c.json", kSmall);
  const fs::path blocker = dir_ / "file";
  std::ofstream(blocker) << "x";
  const Result r = run("run --config '" + cfg.string() + "' --out-dir '" + (blocker / "sub").string() + "'");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find((blocker / "sub").string()), std::string::npos);
}
