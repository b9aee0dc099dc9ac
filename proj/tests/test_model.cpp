#include <gtest/gtest.h>

#include <random>

#include "ceslab/errors.hpp"
#include "ceslab/model.hpp"
#include "ceslab/steady_state.hpp"
#include "oracles.hpp"

using namespace ceslab;

namespace {
const ModelParams kCase1 = benchmark_params(0.25, -0.10);
const ModelParams kCase2 = benchmark_params(-0.10, -0.15);
}  // namespace

TEST(Params, BenchmarkIsValid) { EXPECT_NO_THROW(validate(kCase1)); }

TEST(Params, RejectsEachInvariant) {
  auto expect_field = [](ModelParams p, const char* field) {
    try {
      validate(p);
      ADD_FAILURE() << "no error for " << field;
    } catch (const ValidationError& e) {
      EXPECT_EQ(e.field(), field);
    }
  };
  ModelParams p = kCase1;
  p.eps = 1.0;
  expect_field(p, "eps");
  p = kCase1;
  p.alpha1 = 1.0;
  expect_field(p, "alpha1");
  p = kCase1;
  p.psi2 = 1e-10;
  expect_field(p, "psi2");
  p = kCase1;
  p.psi1 = 1.0;
  expect_field(p, "psi1");
  p = kCase1;
  p.A2 = 0.0;
  expect_field(p, "A2");
  p = kCase1;
  p.rho = 0.0;
  expect_field(p, "rho");
  p = kCase1;
  p.delta_h = -0.01;
  expect_field(p, "delta_h");
}

TEST(Params, StateConstructionRejectsCornerAllocations) {
  EXPECT_THROW(ReducedState::make(1.0, 0.1, 1.0, 0.5), ValidationError);
  EXPECT_THROW(ReducedState::make(1.0, 0.1, 0.5, 0.0), ValidationError);
  EXPECT_THROW(ReducedState::make(-1.0, 0.1, 0.5, 0.4), ValidationError);
  EXPECT_NO_THROW(ReducedState::make(1.0, 0.1, 0.5, 0.4));
}

TEST(Model, W) {
  EXPECT_NEAR(w_of({10.73, 0.24, 0.882, 0.866}), 10.535, 5e-4);
  EXPECT_DOUBLE_EQ(w_of({1.0, 0.2, 0.5, 0.5}), 1.0);
  EXPECT_NEAR(w_of({5.18, 0.27, 0.874, 0.759}), 4.498, 5e-4);
}

TEST(Model, Tau) {
  EXPECT_DOUBLE_EQ(tau_of(0.5, 0.5), 1.0);
  EXPECT_NEAR(tau_of(0.8821, 0.8665), 0.8675276, 1e-6);
  EXPECT_NEAR(tau_of(0.6, 0.3), 0.2857143, 1e-6);
  EXPECT_THROW(tau_of(0.0, 0.5), ValidationError);
  EXPECT_THROW(tau_of(0.5, 1.0), ValidationError);
}

TEST(Model, Theta) {
  EXPECT_DOUBLE_EQ(theta_of(0.6, 0.8), 0.375);
  EXPECT_DOUBLE_EQ(theta_of(0.5, 0.5), 1.0);
  EXPECT_NEAR(theta_of(0.8, 0.6), 8.0 / 3.0, 4e-15);
}

TEST(Model, P1) {
  ModelParams p = kCase1;
  EXPECT_DOUBLE_EQ(p1_of(1.0, p), 1.0);
  EXPECT_NEAR(p1_of(10.535, p), 1.4809607, 1e-7);
  EXPECT_NEAR(p1_of(4.498, kCase2), 0.9162372, 1e-7);
}

TEST(Model, P2) {
  EXPECT_NEAR(p2_of(10.535, kCase1), 0.8232187, 1e-7);
  ModelParams sym = kCase1;
  sym.alpha1 = sym.alpha2 = 0.8;  // theta = 1
  EXPECT_NEAR(p2_of(1.0, sym), 1.0, 1e-15);
  const oracle::LongDoubleModel ld(kCase2);
  EXPECT_NEAR(p2_of(4.498, kCase2), static_cast<double>(ld.P2(4.498L)), 1e-14);
}

TEST(Model, DegenerateCesIsLinear) {
  ModelParams p = kCase1;
  p.alpha1 = 1.0;
  EXPECT_NEAR(y1_of(3.0, 2.0, 0.4, 0.7, p), p.A1 * 3.0 * 0.7, 1e-13);
  p = kCase1;
  p.alpha2 = 1.0;
  EXPECT_NEAR(y2_of(3.0, 2.0, 0.4, 0.7, p), p.A2 * 3.0 * 0.3, 1e-14);
}

TEST(Model, OutputsAtLevelPoint) {
  const double k = 32.18;
  const double h = k / 10.7255;
  EXPECT_NEAR(y1_of(k, h, 0.8821, 0.8665, kCase1), 13.37, 0.02);
  EXPECT_NEAR(y2_of(k, h, 0.8821, 0.8665, kCase1), 0.49, 0.01);
}

TEST(Model, HomogeneityRandomized) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.05, 0.95), K(0.1, 100.0), S(0.1, 10.0), Psi(-2.0, 0.9);
  for (int i = 0; i < 2000; ++i) {
    ModelParams p = kCase1;
    p.alpha1 = U(rng);
    p.alpha2 = U(rng);
    p.psi1 = Psi(rng);
    p.psi2 = Psi(rng);
    if (std::abs(p.psi1) < 1e-3 || std::abs(p.psi2) < 1e-3) continue;
    const double k = K(rng), h = K(rng), u = U(rng), v = U(rng), s = S(rng);
    EXPECT_LT(oracle::rel_err(y1_of(s * k, s * h, u, v, p), s * y1_of(k, h, u, v, p)), 1e-12);
    EXPECT_LT(oracle::rel_err(y2_of(s * k, s * h, u, v, p), s * y2_of(k, h, u, v, p)), 1e-12);
  }
}

TEST(Model, PPolynomialsPositive) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.01, 0.99), Psi(-3.0, 0.95), LogW(-10.0, 10.0);
  for (int i = 0; i < 2000; ++i) {
    ModelParams p = kCase1;
    p.alpha1 = U(rng);
    p.alpha2 = U(rng);
    p.psi1 = Psi(rng);
    p.psi2 = Psi(rng);
    const double w = std::exp(LogW(rng));
    EXPECT_GT(p1_of(w, p), 0.0);
    EXPECT_GT(p2_of(w, p), 0.0);
  }
}

TEST(Model, AuxBundleAtCase1SteadyState) {
  const SteadyState s = steady_state(kCase1);
  const AuxBundle a = aux_of(s.reduced(), kCase1);
  EXPECT_NEAR(a.P, 0.0, 1e-8);
  EXPECT_NEAR(a.D + s.q_star, 0.0, 1e-8);
  EXPECT_DOUBLE_EQ(a.Q, a.P1 * a.P2);
  EXPECT_DOUBLE_EQ(a.R, (1.0 - kCase1.psi1) * (1.0 - kCase1.psi2) * a.T);
  EXPECT_FALSE(a.singular());
}

TEST(Model, CommonPsiCollapse) {
  ModelParams p = benchmark_params(0.3, 0.3);
  const ReducedState s{4.0, 0.2, 0.7, 0.6};
  const AuxBundle a = aux_of(s, p);
  EXPECT_DOUBLE_EQ(a.G1, 1.0 - 0.3);
  EXPECT_DOUBLE_EQ(a.G2, 1.0 - 0.3);
  // With a common psi the optimality relation theta w^(psi1-psi2) = tau^(1-psi2)
  // reduces to theta = tau^(1-psi) at the steady state.
  const SteadyState ss = steady_state(p);
  const double tau = tau_of(ss.u_star, ss.v_star);
  EXPECT_NEAR(theta_of(p.alpha1, p.alpha2), std::pow(tau, 1.0 - 0.3), 1e-12);
}

TEST(Model, CostateRatio) {
  ModelParams sym = kCase1;
  sym.alpha1 = sym.alpha2 = 0.6;
  sym.A2 = sym.A1;
  EXPECT_NEAR(costate_ratio(1.0, sym), 1.0, 1e-14);
  EXPECT_NEAR(costate_ratio(10.535, kCase1), 4.0131680, 1e-6);
  ModelParams twice = kCase1;
  twice.A1 *= 2.0;
  EXPECT_NEAR(costate_ratio(7.0, twice), 2.0 * costate_ratio(7.0, kCase1), 1e-13);
}

TEST(Model, RhsFullAtSteadyState) {
  const SteadyState s = steady_state(kCase1);
  const double h = 2.0;
  const double k = s.z_star * h;
  const GrowthRates g = rhs_full({k, h, s.q_star * k, s.u_star, s.v_star}, kCase1);
  EXPECT_NEAR(g.u, 0.0, 1e-6);
  EXPECT_NEAR(g.v, 0.0, 1e-6);
  EXPECT_NEAR(g.k, s.r_star, 1e-6);
  EXPECT_NEAR(g.h, s.r_star, 1e-6);
  EXPECT_NEAR(g.c, s.r_star, 1e-6);
  EXPECT_NEAR(g.c, 0.1150, 5e-4);
}

TEST(Model, RhsFullWithoutEducation) {
  ModelParams p = kCase1;
  p.A2 = 0.0;
  p.delta_h = 0.0;
  const GrowthRates g = rhs_full({10.0, 2.0, 2.0, 0.7, 0.6}, p);
  EXPECT_EQ(g.h, 0.0);
}

TEST(Model, RhsFullSingular) {
  EXPECT_THROW(rhs_full({10.0, 2.0, 2.0, 0.6, 0.6}, kCase1), Error);
}

TEST(Model, RhsFullGrowthDifferenceIdentity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.05, 0.95), K(0.5, 50.0);
  for (int i = 0; i < 500; ++i) {
    const LevelState s{K(rng), K(rng), 0.2 * K(rng), U(rng), U(rng)};
    if (std::abs(s.u - s.v) < 1e-3) continue;
    const GrowthRates g = rhs_full(s, kCase1);
    const AuxBundle a = aux_of({s.k / s.h, s.c / s.k, s.u, s.v}, kCase1);
    EXPECT_NEAR(g.k - g.h, -(a.D + s.c / s.k), 1e-10);
  }
}
