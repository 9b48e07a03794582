#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("ldint_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
};

int cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" LDINT_CLI_PATH "' " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> rows(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    out.push_back(cells);
  }
  return out;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  ADD_FAILURE() << "missing column " << name;
  return 0;
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  Scratch s("usage");
  EXPECT_EQ(cli("frobnicate --out " + s.dir.string()), 2);
  EXPECT_EQ(cli("run --system kepler --out " + s.dir.string()), 2);
  EXPECT_EQ(cli("sho --method rk7 --out " + s.dir.string()), 2);
  EXPECT_EQ(cli("sho --dt -1 --out " + s.dir.string()), 2);
  EXPECT_TRUE(fs::is_empty(s.dir));
}

TEST(Cli, ShoLd2MachinePrecision) {
  Scratch s("sho");
  ASSERT_EQ(cli("sho --method ld2 --dt 0.1 --steps 62832 --stride 16 --out " + s.dir.string()), 0);
  const auto r = rows(s.dir / "sho_ld2.csv");
  ASSERT_GT(r.size(), 3000u);
  const auto col = column(r[0], "dE_rel");
  double worst = 0;
  for (std::size_t i = 1; i < r.size(); ++i) worst = std::max(worst, std::stod(r[i][col]));
  EXPECT_LT(worst, 1e-12);
  EXPECT_TRUE(fs::exists(s.dir / "sho.gp"));
}

TEST(Cli, DeterministicOutput) {
  Scratch a("det_a"), b("det_b");
  const std::string args = "pendulum --method ld4 --dt 0.2 --steps 500 --jacobian --out ";
  ASSERT_EQ(cli(args + a.dir.string()), 0);
  ASSERT_EQ(cli(args + b.dir.string()), 0);
  for (const auto& e : fs::directory_iterator(a.dir)) {
    EXPECT_EQ(slurp(e.path()), slurp(b.dir / e.path().filename())) << e.path().filename();
  }
}

TEST(Cli, StabilityLdStableOnLeftHalfPlane) {
  Scratch s("stab");
  ASSERT_EQ(cli("stability --kind ld --n 3 --points 81 --out " + s.dir.string()), 0);
  fs::path csv;
  for (const auto& e : fs::directory_iterator(s.dir))
    if (e.path().extension() == ".csv") csv = e.path();
  ASSERT_FALSE(csv.empty());
  const auto r = rows(csv);
  ASSERT_EQ(r[0], (std::vector<std::string>{"re", "im", "abs_zeta", "stable"}));
  std::size_t left = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (std::stod(r[i][0]) <= 0) {
      ++left;
      EXPECT_EQ(r[i][3], "1") << r[i][0] << ',' << r[i][1];
    }
  }
  EXPECT_GT(left, 1000u);
}

TEST(Cli, QuadCompareDefaultsAndExactMode) {
  Scratch s("quad");
  ASSERT_EQ(cli("quad-compare --function gaussian --out " + s.dir.string()), 0);
  EXPECT_EQ(rows(s.dir / "quad_compare.csv").size(), 17u);
  ASSERT_EQ(cli("quad-compare --function cubic --a 0 --b 1 --orders 2 --exact-rational --out " + s.dir.string()), 0);
  const auto r = rows(s.dir / "quad_compare.csv");
  EXPECT_EQ(std::stod(r[1][column(r[0], "ld_error")]), 0.0);
  ASSERT_EQ(cli("quad-compare --function sin --a 0.3 --b 0.3 --out " + s.dir.string()), 0);
  const auto z = rows(s.dir / "quad_compare.csv");
  for (std::size_t i = 1; i < z.size(); ++i) EXPECT_EQ(std::stod(z[i][column(z[0], "ld_error")]), 0.0);
}

TEST(Cli, ConfigFileAndPrecedence) {
  Scratch s("cfg");
  {
    std::ofstream cfg(s.dir / "run.cfg");
    cfg << "# comment\nmethod = euler\nsteps = 7\ndt = 0.25\n";
  }
  const fs::path out = s.dir / "o";
  fs::create_directories(out);
  ASSERT_EQ(cli("sho --config " + (s.dir / "run.cfg").string() + " --steps 3 --out " + out.string()), 0);
  const auto r = rows(out / "sho_euler.csv");
  ASSERT_EQ(r.size(), 5u);  // header + nu 0..3: command line wins for steps
  EXPECT_EQ(std::stod(r.back()[1]), 0.75);
  {
    std::ofstream bad(s.dir / "bad.cfg");
    bad << "nonsense = 1\n";
  }
  EXPECT_EQ(cli("sho --config " + (s.dir / "bad.cfg").string() + " --out " + out.string()), 2);
}

TEST(Cli, EnvironmentOutputDirectory) {
  Scratch s("env");
  ASSERT_EQ(cli("sho --steps 5", "LDINT_OUT_DIR='" + s.dir.string() + "'"), 0);
  EXPECT_FALSE(fs::is_empty(s.dir));
}

TEST(Cli, NumericFailureRemovesOutputs) {
  Scratch s("fail");
  EXPECT_EQ(cli("pendulum --method ld2 --dt 5 --steps 50 --q0 3 --out " + s.dir.string()), 1);
  EXPECT_TRUE(fs::is_empty(s.dir));
}
