#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "feascirc/generating_sequence.hpp"
#include "feascirc/tsp.hpp"

namespace fs = std::filesystem;
using namespace feascirc;

namespace {

struct Outcome {
  int code;
  std::string out;
};

fs::path scratch() {
  auto dir = fs::temp_directory_path() / ("feascirc_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const std::string cmd = std::string(FEASCIRC_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

}  // namespace

TEST(Cli, GenInstanceIsDeterministic) {
  const auto a = cli("gen-instance --n 6 --seed 4");
  const auto b = cli("gen-instance --n 6 --seed 4");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, serialize(random_instance(6, 4, 1, 10)));
  EXPECT_NE(a.out, cli("gen-instance --n 6 --seed 5").out);

  const auto file = scratch() / "inst.txt";
  ASSERT_EQ(cli("gen-instance --n 6 --seed 4 --out " + file.string()).code, 0);
  EXPECT_EQ(slurp(file), a.out);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("frobnicate").code, 1);
  EXPECT_EQ(cli("gen-instance --n 5 --lo 0").code, 1);
  EXPECT_EQ(cli("run --n 5 --method bubble --qaoa-layers 2").code, 1);
  EXPECT_EQ(cli("run --n 5 --method simplex").code, 1);
  EXPECT_EQ(cli("solve-exact --instance /nonexistent/file").code, 1);
  EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, SizeCap) {
  EXPECT_EQ(cli("run --n 14 --method bubble --max-iters 1").code, 3);
  EXPECT_EQ(cli("solve-exact --n 14 --no-reduced").code, 3);
}

TEST(Cli, SolveExactFormat) {
  const auto inst = random_instance(7, 3, 1, 10);
  const auto file = scratch() / "seven.txt";
  save_instance(inst, file);
  const auto res = cli("solve-exact --instance " + file.string());
  ASSERT_EQ(res.code, 0);
  std::istringstream line(res.out);
  double cost = 0.0;
  std::string perm;
  line >> cost >> perm;
  const auto opt = optimum(inst, true);
  EXPECT_DOUBLE_EQ(cost, opt.cost);
  EXPECT_EQ(perm, to_string(opt.perm));
}

TEST(Cli, RunWritesTraceAndParams) {
  const auto dir = scratch();
  const auto trace = dir / "trace.csv";
  const auto probs = dir / "probs.csv";
  const auto res = cli("run --n 5 --seed 2 --method binary-insertion --max-iters 15 --dump-params --out " +
                       trace.string() + " --probs " + probs.string() + " --top 3");
  ASSERT_EQ(res.code, 0);
  const auto text = slurp(trace);
  EXPECT_EQ(text.rfind("iteration,objective,ratio,theta_1", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 16);
  EXPECT_NE(res.out.find("final_ratio: "), std::string::npos);
  const auto table = slurp(probs);
  EXPECT_EQ(table.rfind("probability,permutation\n", 0), 0u);
  EXPECT_LE(std::count(table.begin(), table.end(), '\n'), 4);
}

TEST(Cli, ReachFindsOptimum) {
  const auto res = cli("reach --n 7 --seed 3 --method bubble");
  ASSERT_EQ(res.code, 0);
  EXPECT_NE(res.out.find("fidelity: 1.000000000"), std::string::npos) << res.out;
  EXPECT_NE(res.out.find("(optimal)"), std::string::npos);
}

TEST(Cli, VerifyPassesAndDetectsTampering) {
  const auto ok = cli("verify");
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);

  auto seq = bubble_sequence(4);
  seq.elements[1] = Permutation::from_one_line({2, 3, 1, 4});
  const auto file = scratch() / "bad.seq";
  std::ofstream(file) << serialize(seq);
  const auto bad = cli("verify --sequence " + file.string());
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("FAIL involutions"), std::string::npos) << bad.out;
}
