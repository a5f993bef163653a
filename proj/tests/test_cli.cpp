#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "kickosc/config_io.hpp"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(KICKOSC_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::vector<std::string>> data_rows(const std::string& csv, std::string* header = nullptr) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  bool first = true;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    if (first) {
      if (header) *header = line;
      first = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

constexpr const char* kSingleKick = "--kappa 0.5 --tau 1.5707963267948966 --n-kicks 1";

TEST(Cli, SimulateColumnsAndRows) {
  const auto r = run(std::string("simulate ") + kSingleKick + " --t-end 6.283185307179586 --samples 5");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("# tool: kickosc", 0), 0u);
  EXPECT_NE(r.out.find("# config: omega0=1 gamma=0 kappa=0.5 tau=1.5707963267948966 n_kicks=1 hbar=1 mass=1"),
            std::string::npos);
  std::string header;
  const auto rows = data_rows(r.out, &header);
  EXPECT_EQ(header, "t,re_eps,im_eps,k_coeff,sigma_x");
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"0", "1", "0", "1", "0.5"}));
  EXPECT_NEAR(std::stod(rows[2][0]), 3.141592653589793, 1e-15);
  EXPECT_NEAR(std::stod(rows[2][3]), 2.0, 1e-9);
  EXPECT_NEAR(std::stod(rows[4][0]), 6.283185307179586, 0.0);
}

TEST(Cli, SimulateFreeOscillatorUnitK) {
  const auto r = run("simulate --t-end 50 --samples 101");
  ASSERT_EQ(r.status, 0);
  for (const auto& row : data_rows(r.out)) EXPECT_NEAR(std::stod(row[3]), 1.0, 1e-12);
}

TEST(Cli, ConfigFileAndOverride) {
  const auto path = std::filesystem::temp_directory_path() / "kickosc_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "# test\nkappa=0.1\ntau=1.5707963267948966\nn_kicks=1\n";
  }
  const auto r = run("simulate --config " + path.string() + " --kappa 0.5 --t-end 3.141592653589793 --samples 2");
  ASSERT_EQ(r.status, 0);
  const auto rows = data_rows(r.out);
  EXPECT_NEAR(std::stod(rows[1][3]), 2.0, 1e-9);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("simulate --gamma -0.1").status, 1);
  EXPECT_EQ(run("simulate --gamma 1").status, 1);
  EXPECT_EQ(run("simulate --samples 1").status, 1);
  EXPECT_EQ(run("simulate --config /nonexistent/kickosc.cfg").status, 3);
  EXPECT_EQ(run("simulate --out /nonexistent/dir/out.csv").status, 3);
  EXPECT_EQ(run("bogus").status, 1);
}

TEST(Cli, VerifySingleKick) {
  const auto out = std::filesystem::temp_directory_path() / "kickosc_verify.csv";
  const auto r = run(std::string("verify ") + kSingleKick + " --t-end 6.283185307179586 --samples 201 --out " +
                     out.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("canonical_vs_oracle_status: PASS"), std::string::npos);
  EXPECT_NE(r.out.find("printed_form: undamped"), std::string::npos);
  EXPECT_NE(r.out.find("probe: t=3.141592653589793 k_canonical="), std::string::npos);
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string header;
  const auto rows = data_rows(ss.str(), &header);
  EXPECT_EQ(header, "t,k_canonical,k_oracle,abs_canonical_oracle,k_printed,abs_printed_canonical,wronskian_residual");
  EXPECT_GT(rows.size(), 100u);
  std::filesystem::remove(out);
}

TEST(Cli, VerifyFailureExitCode) {
  // 100 steps per interval over tau = 10 at omega0 = 3 is far too coarse
  const auto r = run("verify --omega0 3 --tau 10 --n-kicks 5 --t-end 60 --samples 50 --steps-per-interval 100");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("canonical_vs_oracle_status: FAIL"), std::string::npos);
}

TEST(Cli, StabilityMap) {
  const auto r = run("stability-map --x omega0_tau:1.5707963267948966:3.141592653589793:2 --y kappa_over_omega0:0:0.2:2");
  ASSERT_EQ(r.status, 0);
  std::string header;
  const auto rows = data_rows(r.out, &header);
  EXPECT_EQ(header, "omega0_tau,kappa_over_omega0,re_chi_half,im_chi_half,class");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][4], "Elliptic");
  EXPECT_NEAR(std::stod(rows[1][2]), 0.2, 1e-15);
  EXPECT_EQ(rows[2][4], "Parabolic");
  EXPECT_EQ(rows[0][4], "Elliptic");
}

TEST(Cli, StabilityMapDefaultGridKickFreeColumn) {
  const auto r = run("stability-map --threads 3");
  ASSERT_EQ(r.status, 0);
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 400u * 200u);
  for (const auto& row : rows)
    if (row[1] == "0") EXPECT_NE(row[4], "Hyperbolic");
}

TEST(Cli, SweepAndClosedForms) {
  auto r = run("sweep --x gamma:0:1:3 --y kappa:0:0.5:2 --t-end 2 --samples 3 --threads 2");
  ASSERT_EQ(r.status, 0);
  std::string header;
  auto rows = data_rows(r.out, &header);
  EXPECT_EQ(header, "gamma,kappa,t,k_coeff,error");
  EXPECT_EQ(rows.size(), 3u * 2u * 3u);
  EXPECT_EQ(rows.back()[3], "nan");  // gamma = 1 = omega0

  r = run("closed-forms --gamma 0.1 --kappa 0.4 --t-end 5 --samples 11");
  ASSERT_EQ(r.status, 0);
  rows = data_rows(r.out, &header);
  EXPECT_EQ(header, "t,n,k_canonical,k_printed,k_single_kick_printed,k_single_kick_canonical");
  EXPECT_EQ(rows.size(), 11u);
}

}  // namespace
