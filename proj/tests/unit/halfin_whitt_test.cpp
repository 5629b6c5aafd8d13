#include <gtest/gtest.h>

#include <cmath>

#include "hwstaff/erlang.hpp"
#include "hwstaff/errors.hpp"
#include "hwstaff/halfin_whitt.hpp"
#include "hwstaff/numerics.hpp"
#include "unit/test_support.hpp"

namespace hw = hwstaff::halfin_whitt;
using hwstaff::testing::Gen;
using hwstaff::testing::rel_err;

namespace {

TEST(HwLimit, MatchesReferenceValues) {
  EXPECT_LT(rel_err(hw::hw_limit(1.0), 0.22336127479826074025), 1e-14);
  EXPECT_LT(rel_err(hw::hw_limit(3.0), 0.0014770946446142932501), 1e-13);
  EXPECT_LT(rel_err(hw::hw_limit(0.1), 0.88028708333081154927), 1e-14);
  EXPECT_LT(rel_err(hw::hw_limit(8.0), 6.3153388544211153e-16), 1e-12);
}

TEST(HwLimit, Boundary) {
  EXPECT_EQ(hw::hw_limit(0.0), 1.0);
  EXPECT_TRUE(hw::is_hw_boundary(0.0));
  EXPECT_FALSE(hw::is_hw_boundary(0.5));
  EXPECT_THROW(hw::hw_limit(-0.1), hwstaff::DomainError);
}

TEST(HwLimit, DecreasingAndInUnitInterval) {
  double prev = 1.0;
  for (double beta = 0.01; beta < 30.0; beta *= 1.1) {
    const double c = hw::hw_limit(beta);
    EXPECT_GT(c, 0.0);
    EXPECT_LT(c, prev) << "beta = " << beta;
    prev = c;
  }
  EXPECT_GT(hw::hw_limit(35.0), 0.0);
}

TEST(HwLimit, IsLimitOfErlangC) {
  for (double beta : {0.5, 1.0, 2.0}) {
    const double a = 1e6;
    const double c = hwstaff::erlang::erlang_c_real(hw::staffing(a, beta), a).value;
    EXPECT_NEAR(c, hw::hw_limit(beta), 2e-3) << "beta = " << beta;
  }
}

TEST(Staffing, Formulas) {
  EXPECT_DOUBLE_EQ(hw::staffing(100.0, 2.0), 120.0);
  EXPECT_DOUBLE_EQ(hw::inverse_load(100.0, 2.0), 80.0);
  EXPECT_THROW(hw::staffing(100.0, 0.0), hwstaff::DomainError);
  EXPECT_THROW(hw::staffing(0.0, 1.0), hwstaff::DomainError);
  EXPECT_THROW(hw::inverse_load(4.0, 2.0), hwstaff::DomainError);
  EXPECT_THROW(hw::inverse_load(10.0, 0.0), hwstaff::DomainError);
}

TEST(BetaForTarget, ReferenceAndRoundTrip) {
  EXPECT_LT(rel_err(hw::beta_for_target(0.5), 0.50605446898918076324), 1e-12);
  for (double beta = 0.05; beta <= 6.0; beta += 0.05) {
    EXPECT_NEAR(hw::beta_for_target(hw::hw_limit(beta)), beta, 1e-9) << "beta = " << beta;
  }
  EXPECT_THROW(hw::beta_for_target(0.0), hwstaff::DomainError);
  EXPECT_THROW(hw::beta_for_target(1.0), hwstaff::DomainError);
}

TEST(Grid, LinearAndLog) {
  const auto lin = hw::make_grid(0.0, 1.0, 5, false);
  ASSERT_EQ(lin.size(), 5u);
  EXPECT_EQ(lin.front(), 0.0);
  EXPECT_EQ(lin.back(), 1.0);
  EXPECT_DOUBLE_EQ(lin[2], 0.5);

  const auto lg = hw::make_grid(0.01, 1e4, 40, true);
  ASSERT_EQ(lg.size(), 40u);
  EXPECT_EQ(lg.front(), 0.01);
  EXPECT_EQ(lg.back(), 1e4);
  for (std::size_t i = 1; i < lg.size(); ++i) {
    EXPECT_NEAR(lg[i] / lg[i - 1], lg[1] / lg[0], 1e-12);
  }
  EXPECT_EQ(hw::make_grid(3.0, 3.0 + 1, 1, false).size(), 1u);
  EXPECT_THROW(hw::make_grid(1.0, 0.5, 4, false), hwstaff::DomainError);
  EXPECT_THROW(hw::make_grid(0.0, 1.0, 4, true), hwstaff::DomainError);
  EXPECT_THROW(hw::make_grid(0.0, 1.0, 0, false), hwstaff::DomainError);
}

TEST(HwSweep, StrictlyDecreasingAboveLimit) {
  const auto grid = hw::make_grid(0.01, 1e4, 40, true);
  for (double beta : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    const auto sweep = hw::hw_sweep(beta, grid);
    EXPECT_EQ(sweep.regime, hw::Regime::LoadParametrized);
    EXPECT_EQ(sweep.failed_rows(), 0u);
    EXPECT_TRUE(sweep.verified) << "beta = " << beta;
    ASSERT_TRUE(sweep.min_decrement_margin.has_value());
    EXPECT_GT(*sweep.min_decrement_margin, 0.0);
    ASSERT_TRUE(sweep.min_gap_margin.has_value());
    EXPECT_GT(*sweep.min_gap_margin, 0.0);
    for (const auto& row : sweep.rows) {
      EXPECT_DOUBLE_EQ(row.s, hw::staffing(row.a, beta));
      ASSERT_TRUE(row.c_star.has_value());
      EXPECT_NEAR(*row.gap, row.c_value - *row.c_star, 1e-15);
    }
  }
}

TEST(HwSweep, RejectsBadInput) {
  const std::vector<double> grid{1.0, 2.0};
  EXPECT_THROW(hw::hw_sweep(0.0, grid), hwstaff::DomainError);
  const std::vector<double> unsorted{2.0, 1.0};
  EXPECT_THROW(hw::hw_sweep(1.0, unsorted), hwstaff::DomainError);
  const std::vector<double> nonpositive{0.0, 1.0};
  EXPECT_THROW(hw::hw_sweep(1.0, nonpositive), hwstaff::DomainError);
}

TEST(HwSweep, NumericalFailuresStayInTheirRow) {
  hwstaff::numerics::QuadratureConfig cfg;
  cfg.rel_tol = 1e-16;
  cfg.max_refinements = 1;
  const std::vector<double> grid{2.5, 7.5};  // non-integer s forces quadrature
  const auto sweep = hw::hw_sweep(0.7, grid, cfg);
  EXPECT_EQ(sweep.rows.size(), 2u);
  EXPECT_EQ(sweep.failed_rows(), 2u);
  EXPECT_FALSE(sweep.verified);
  EXPECT_TRUE(sweep.rows[0].error.has_value());
}

TEST(InverseSweep, RowsAndBoundary) {
  const std::vector<double> grid{0.5, 1.0, 4.0, 9.0, 100.0};
  const auto sweep = hw::inverse_sweep(2.0, grid);
  EXPECT_EQ(sweep.regime, hw::Regime::ServerParametrized);
  ASSERT_EQ(sweep.rows.size(), 5u);
  EXPECT_EQ(sweep.failed_rows(), 3u);  // s <= beta^2
  EXPECT_FALSE(sweep.rows[2].ok());
  EXPECT_TRUE(sweep.rows[3].ok());
  EXPECT_DOUBLE_EQ(sweep.rows[3].a, 3.0);
  EXPECT_LT(rel_err(sweep.rows[3].c_value, hwstaff::erlang::erlang_c_integer(9, 3.0).value), 1e-12);
  EXPECT_FALSE(sweep.verified);
}

TEST(InverseSweep, DefaultFiguresHaveNoFailures) {
  for (double beta : {0.1, 3.0}) {
    const double from = beta * beta + std::max(0.01, beta * beta / 18.0);
    const double to = beta <= 1.0 ? 50.0 : 500.0;
    const auto sweep = hw::inverse_sweep(beta, hw::make_grid(from, to, 200, false));
    EXPECT_EQ(sweep.failed_rows(), 0u);
    for (const auto& r : sweep.rows) {
      EXPECT_GT(r.c_value, 0.0);
      EXPECT_LT(r.c_value, 1.0);
    }
  }
}

TEST(InverseSweep, ClampedBoundaryStillEvaluates) {
  const std::vector<double> grid{4.0 * (1.0 + 1e-9), 5.0};
  const auto sweep = hw::inverse_sweep(2.0, grid);
  EXPECT_EQ(sweep.failed_rows(), 0u);
  EXPECT_GT(sweep.rows[0].c_value, 0.0);
}

}  // namespace
