#include <gtest/gtest.h>

#include <sstream>

#include "kickosc/verify.hpp"
#include "support.hpp"

namespace {

using namespace kickosc;
using kickosc::testing::pi;

TEST(Verify, FreeOscillatorResidualsTiny) {
  OscillatorConfig c;
  VerifyOptions o;
  o.t_end = 10.0;
  o.samples = 201;
  const auto r = verify(c, o);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.max_abs_canonical_vs_oracle, 1e-8);
  EXPECT_LE(r.max_wronskian_residual, 1e-8);
  EXPECT_LE(r.max_pell_residual, 1e-8);
  EXPECT_LE(r.max_step_det_residual, 1e-8);
  EXPECT_LE(r.product_det_residual, 1e-8);
}

TEST(Verify, SingleKickRecordsPrintedDeviation) {
  OscillatorConfig c;
  c.kappa = 0.5;
  c.tau = pi / 2;
  c.n_kicks = 1;
  VerifyOptions o;
  o.t_end = 2 * pi;
  o.samples = 401;
  const auto r = verify(c, o);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.canonical_vs_oracle, 1e-6);
  EXPECT_EQ(r.printed_form, "undamped");
  ASSERT_GE(r.probes.size(), 2u);
  const auto& at_pi = r.probes[1];
  EXPECT_NEAR(at_pi.t, pi, 1e-15);
  EXPECT_NEAR(at_pi.k_canonical, 2.0, 1e-9);
  EXPECT_NEAR(at_pi.k_oracle, 2.0, 1e-6);
  EXPECT_NEAR(at_pi.k_printed, 1.0, 1e-9);
  EXPECT_GE(r.max_printed_vs_canonical, 1.0 - 1e-9);
  EXPECT_LE(r.printed_s_vs_free_times_product, 1e-12);
  EXPECT_GT(r.printed_s_vs_product, 0.1);

  bool shifted_exact = false;
  for (const auto& cand : r.offset_scan)
    if (cand.index_offset == 0 && cand.shift == 1.0) shifted_exact = cand.max_deviation < 1e-9;
  EXPECT_TRUE(shifted_exact);

  std::ostringstream text;
  write_verify_text(text, r);
  EXPECT_NE(text.str().find("canonical_vs_oracle_status: PASS"), std::string::npos);
  EXPECT_NE(text.str().find("probe: t=3.141592653589793 k_canonical="), std::string::npos);
}

TEST(Verify, WeakKickFreeReportsPrintedForm) {
  OscillatorConfig c;
  c.gamma = 0.6;
  VerifyOptions o;
  o.t_end = 5.0;
  o.samples = 101;
  const auto r = verify(c, o);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.printed_form, "weak");
  EXPECT_FALSE(std::isnan(r.max_printed_vs_canonical));
  EXPECT_FALSE(std::isnan(r.single_kick_printed_vs_canonical));
  EXPECT_LE(r.single_kick_canonical_vs_oracle, 1e-6);
}

TEST(Verify, StrongHasNoPrintedForm) {
  OscillatorConfig c;
  c.omega0 = 0.6;
  c.gamma = 1.0;
  c.kappa = -0.2;
  c.n_kicks = 3;
  VerifyOptions o;
  o.t_end = 5.0;
  const auto r = verify(c, o);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.printed_form, "none");
  EXPECT_TRUE(std::isnan(r.max_printed_vs_canonical));
  EXPECT_TRUE(r.offset_scan.empty());
}

TEST(Verify, CoarseTimeEndOffGrid) {
  OscillatorConfig c;
  c.kappa = 0.2;
  c.tau = 0.7;
  c.n_kicks = 4;
  VerifyOptions o;
  o.t_end = 3.333;
  o.samples = 57;
  o.steps_per_interval = 2000;
  const auto r = verify(c, o);
  EXPECT_NEAR(r.rows.back().t, 3.333, 1e-15);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.probes.size(), 4u);  // 0.7 .. 2.8; 3.5 lies past t_end
}

TEST(ClosedFormTable, Columns) {
  OscillatorConfig c;
  c.gamma = 0.1;
  c.kappa = 0.4;
  c.n_kicks = 2;
  const std::vector<double> grid{0.0, 1.0, 2.5};
  const auto rows = closed_form_table(c, grid);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2].n, 3u);
  EXPECT_NEAR(rows[0].k_single_kick_printed, 1.0, 1e-15);
  EXPECT_NEAR(rows[0].k_single_kick_canonical, 1.0, 1e-15);
  std::ostringstream os;
  write_closed_form_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')),
            "t,n,k_canonical,k_printed,k_single_kick_printed,k_single_kick_canonical");
}

}  // namespace
