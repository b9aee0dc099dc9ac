#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cases.hpp"
#include "ceslab/errors.hpp"
#include "ceslab/model.hpp"
#include "ceslab/normalization.hpp"
#include "oracles.hpp"

using namespace ceslab;
using oracle::rel_err;

namespace {

const ModelParams kE1 = benchmark_params(0.25, -0.10);
const ModelParams kE2 = benchmark_params(0.20, -0.15);
const ModelParams kAlt2E1 = benchmark_params(-0.10, -0.15);
const ModelParams kAlt2E2 = benchmark_params(-0.15, -0.20);

// Common human-capital anchor that reproduces the published level values.
double level_h_bar() { return 32.18 / steady_state(kE1).z_star; }

// Arbitrary abstract baseline; no economy needs to generate it.
struct RandomBaseline {
  std::mt19937_64 rng;
  explicit RandomBaseline(unsigned seed) : rng(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  Baseline next() {
    return Baseline::from_point(std::exp(uniform(-1, 4)), std::exp(uniform(-1, 2)), uniform(0.1, 0.9),
                                uniform(0.1, 0.9), std::exp(uniform(-2, 2)), std::exp(uniform(-2, 3)),
                                std::exp(uniform(-3, 1)));
  }
  // psi in (-1.5, 0.8) away from zero.
  double psi() {
    for (;;) {
      const double p = uniform(-1.5, 0.8);
      if (std::abs(p) > 0.05) return p;
    }
  }
};

}  // namespace

TEST(Mrs, Case1SteadyStateValue) {
  const double w_bar = 10.535;
  const double m_oracle = 3.8983842691565628;
  // tau_bar chosen so the sector-2 value equals the oracle as well.
  const double tau_bar = w_bar / std::pow(m_oracle * 0.8 / 0.2, 1.0 / 1.1);
  const MrsPair m = mrs_from_params(kE1, w_bar, tau_bar);
  EXPECT_NEAR(m.m1, m_oracle, 1e-12);
  EXPECT_NEAR(m.m1, 3.900, 0.002);
  EXPECT_LT(rel_err(m.m1, m.m2), 1e-12);
}

TEST(Mrs, SymmetricUnit) {
  ModelParams p = kE1;
  p.alpha1 = p.alpha2 = 0.5;
  const MrsPair m = mrs_from_params(p, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(m.m1, 1.0);
  EXPECT_DOUBLE_EQ(m.m2, 1.0);
}

TEST(Mrs, SectorsAgreeAtSteadyState) {
  for (const auto& c : fixtures::kCases) {
    const ModelParams p = fixtures::case_params(c);
    const SteadyState s = steady_state(p);
    const MrsPair m = mrs_from_params(p, s.w_star, s.tau0);
    EXPECT_LT(rel_err(m.m1, m.m2), 1e-6);
  }
}

TEST(Mrs, MismatchOffOptimum) {
  try {
    mrs_from_params(kE1, 10.535, 0.5);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::mrs_mismatch);
  }
}

TEST(Normalization, RoundTripAtGeneratingSigma) {
  const Baseline b = reference_baseline(kE1);
  EXPECT_NEAR(b.m, 3.8985, 1e-3);
  EXPECT_NEAR(b.w_bar / b.tau_bar, 12.148, 2e-3);
  EXPECT_NEAR(alpha_of_sigma(kE1.sigma1(), b, Sector::goods), 0.6, 1e-12);
  EXPECT_NEAR(alpha_of_sigma(kE1.sigma2(), b, Sector::education), 0.8, 1e-12);
  EXPECT_NEAR(A_of_sigma(kE1.sigma1(), b, Sector::goods), 1.05, 1e-9);
  EXPECT_NEAR(A_of_sigma(kE1.sigma2(), b, Sector::education), 0.2, 1e-9);
}

TEST(Normalization, EqualTermsGiveHalf) {
  Baseline b = reference_baseline(kE1);
  const double sigma = 1.25, psi = 0.2;
  b.m = std::pow(b.w_bar, 1.0 - psi);
  EXPECT_NEAR(alpha_of_sigma(sigma, b, Sector::goods), 0.5, 1e-15);
  const double w = std::pow(b.m / std::pow(b.w_bar, 1.0 - psi), 1.0 / psi);
  EXPECT_NEAR(share_pi(sigma, b, Sector::goods, w, b.tau_bar), 0.5, 1e-14);
}

TEST(Normalization, UnitSigmaRejected) {
  const Baseline b = reference_baseline(kE1);
  EXPECT_THROW(alpha_of_sigma(1.0, b, Sector::goods), ValidationError);
  EXPECT_THROW(A_of_sigma(1.0, b, Sector::education), ValidationError);
}

TEST(Normalization, AScalesWithBaselineOutput) {
  Baseline b = reference_baseline(kE1);
  const double a = A_of_sigma(1.6, b, Sector::goods);
  b.y1_bar *= 2.0;
  EXPECT_NEAR(A_of_sigma(1.6, b, Sector::goods), 2.0 * a, 1e-13);
}

TEST(Normalization, RoundTripRandomEconomies) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-0.4, 0.4), D(-0.1, 0.1);
  int done = 0;
  for (int i = 0; i < 400 && done < 200; ++i) {
    ModelParams p = kE1;
    p.psi1 = U(rng);
    p.psi2 = U(rng);
    p.alpha1 += D(rng);
    p.alpha2 += D(rng);
    if (std::abs(p.psi1) < 0.02 || std::abs(p.psi2) < 0.02) continue;
    Baseline b;
    try {
      b = reference_baseline(p, 2.0);
    } catch (const Error&) {
      continue;
    }
    ++done;
    EXPECT_NEAR(alpha_of_sigma(p.sigma1(), b, Sector::goods), p.alpha1, 1e-9);
    EXPECT_NEAR(alpha_of_sigma(p.sigma2(), b, Sector::education), p.alpha2, 1e-9);
    EXPECT_NEAR(A_of_sigma(p.sigma1(), b, Sector::goods), p.A1, 1e-9);
    EXPECT_NEAR(A_of_sigma(p.sigma2(), b, Sector::education), p.A2, 1e-9);
  }
  EXPECT_GE(done, 100);
}

TEST(Shares, BaselineSharesMatchPublished) {
  const Baseline b = reference_baseline(kE1);
  EXPECT_NEAR(share_pi(1.7, b, Sector::goods, b.w_bar, b.tau_bar), 0.730, 2e-3);
  EXPECT_NEAR(share_pi(0.6, b, Sector::education, b.w_bar, b.tau_bar), 0.757, 2e-3);
  EXPECT_NEAR(baseline_share(b, Sector::goods), steady_state(kE1).pi1k, 1e-12);
  EXPECT_NEAR(baseline_share(b, Sector::education), steady_state(kE1).pi2k, 1e-12);
}

TEST(Shares, BoundsAndDerivativeSign) {
  RandomBaseline gen(3);
  for (int i = 0; i < 2000; ++i) {
    const Baseline b = gen.next();
    const double sigma = sigma_from_psi(gen.psi());
    const double w = b.w_bar * std::exp(gen.uniform(-3, 3));
    const double tau = b.tau_bar * std::exp(gen.uniform(-1, 1));
    for (Sector s : {Sector::goods, Sector::education}) {
      const double pi = share_pi(sigma, b, s, w, tau);
      EXPECT_GT(pi, 0.0);
      EXPECT_LT(pi, 1.0);
    }
    const double d1 = dpi_dpsi(sigma, b, Sector::goods, w, tau);
    const double d2 = dpi_dpsi(sigma, b, Sector::education, w, tau);
    EXPECT_EQ(d1 > 0.0, std::log(w / b.w_bar) > 0.0);
    EXPECT_EQ(d2 > 0.0, std::log(w * b.tau_bar / (b.w_bar * tau)) > 0.0);
  }
}

TEST(Shares, DpiDpsiArithmetic) {
  Baseline b = reference_baseline(kE1);
  const double psi = 0.25, sigma = sigma_from_psi(psi);
  // m such that pi = 1/2 at w = 2 w_bar.
  b.m = std::pow(b.w_bar, 1.0 - psi) * std::pow(2.0 * b.w_bar, psi);
  EXPECT_NEAR(dpi_dpsi(sigma, b, Sector::goods, 2.0 * b.w_bar, b.tau_bar), 0.17328679513998633, 1e-14);
  EXPECT_EQ(dpi_dpsi(sigma, b, Sector::goods, b.w_bar, b.tau_bar), 0.0);
}

TEST(NormalizedOutput, PublishedLevelPoint) {
  const Baseline b = reference_baseline(kE1, level_h_bar());
  EXPECT_NEAR(b.k_bar, 32.18, 1e-12);
  EXPECT_NEAR(normalized_y(kE1.sigma1(), b, Sector::goods, b.k_bar, b.h_bar, b.u_bar, b.v_bar), 13.37, 0.02);
  EXPECT_NEAR(normalized_y(kE1.sigma2(), b, Sector::education, b.k_bar, b.h_bar, b.u_bar, b.v_bar), 0.49, 0.01);
}

TEST(NormalizedOutput, FixedPointOverSigmaGrid) {
  const Baseline b = reference_baseline(kE1, 3.0);
  for (int i = 0; i <= 400; ++i) {
    const double sigma = 0.2 + 4.8 * i / 400.0;
    if (std::abs(sigma - 1.0) < kSigmaGuard || sigma <= 0.2 || sigma >= 5.0) continue;
    EXPECT_LT(rel_err(normalized_y(sigma, b, Sector::goods, b.k_bar, b.h_bar, b.u_bar, b.v_bar), b.y1_bar), 1e-10);
    EXPECT_LT(rel_err(normalized_y(sigma, b, Sector::education, b.k_bar, b.h_bar, b.u_bar, b.v_bar), b.y2_bar),
              1e-10);
  }
}

TEST(NormalizedOutput, AgreesWithDirectCes) {
  RandomBaseline gen(8);
  for (int i = 0; i < 2000; ++i) {
    const Baseline b = gen.next();
    const double s1 = sigma_from_psi(gen.psi()), s2 = sigma_from_psi(gen.psi());
    const ModelParams np = normalized_params(b, s1, s2, kE1);
    const double k = b.k_bar * std::exp(gen.uniform(-1, 1)), h = b.h_bar * std::exp(gen.uniform(-1, 1));
    const double u = gen.uniform(0.05, 0.95), v = gen.uniform(0.05, 0.95);
    EXPECT_LT(rel_err(normalized_y(s1, b, Sector::goods, k, h, u, v), y1_of(k, h, u, v, np)), 1e-10);
    EXPECT_LT(rel_err(normalized_y(s2, b, Sector::education, k, h, u, v), y2_of(k, h, u, v, np)), 1e-10);
  }
}

TEST(NormalizedOutput, IncreasingInSigma) {
  const Baseline b = reference_baseline(kE1, 3.0);
  const double k = 0.7 * b.k_bar, h = 1.3 * b.h_bar, u = 0.6, v = 0.5;
  for (Sector s : {Sector::goods, Sector::education}) {
    double prev = -1.0;
    for (int i = 0; i < 60; ++i) {
      const double sigma = 0.3 + 3.0 * i / 59.0;
      if (std::abs(sigma - 1.0) < 0.01) continue;
      const double y = normalized_y(sigma, b, s, k, h, u, v);
      EXPECT_GT(y, prev) << sigma;
      prev = y;
    }
  }
}

TEST(Identity, RandomizedBothSectors) {
  RandomBaseline gen(21);
  for (int i = 0; i < 2000; ++i) {
    const Baseline b = gen.next();
    const double sigma = sigma_from_psi(gen.psi());
    const double w = b.w_bar * std::exp(gen.uniform(-2, 2));
    const double tau = b.tau_bar * std::exp(gen.uniform(-1, 1));
    for (Sector s : {Sector::goods, Sector::education}) {
      const IdentityResiduals r = identity_wwb(sigma, b, s, w, tau);
      EXPECT_LT(std::abs(r.residual()), 1e-12 * std::max(1.0, r.lhs));
    }
  }
  const Baseline b = gen.next();
  const IdentityResiduals at_bar = identity_wwb(1.5, b, Sector::goods, b.w_bar, b.tau_bar);
  EXPECT_DOUBLE_EQ(at_bar.lhs, 1.0);
  EXPECT_NEAR(at_bar.residual(), 0.0, 1e-15);
}

TEST(Derivatives, DpiAgainstFiniteDifference) {
  RandomBaseline gen(31);
  for (int i = 0; i < 1000; ++i) {
    const Baseline b = gen.next();
    const double psi = gen.psi();
    const double tau = b.tau_bar * std::exp(gen.uniform(-1, 1));
    double w;
    do w = b.w_bar * std::exp(gen.uniform(-2, 2));
    while (std::abs(std::log(w / b.w_bar)) < 0.05 || std::abs(std::log(w * b.tau_bar / (tau * b.w_bar))) < 0.05);
    for (Sector s : {Sector::goods, Sector::education}) {
      auto f = [&](double ps) { return share_pi(sigma_from_psi(ps), b, s, w, tau); };
      const double fd = oracle::richardson_difference(f, psi, 1e-3);
      EXPECT_LT(rel_err(dpi_dpsi(sigma_from_psi(psi), b, s, w, tau), fd), 1e-8);
    }
  }
}

TEST(Derivatives, DyAgainstFiniteDifferenceAndSign) {
  RandomBaseline gen(41);
  for (int i = 0; i < 1000; ++i) {
    const Baseline b = gen.next();
    const double psi = gen.psi();
    const double h = b.h_bar * std::exp(gen.uniform(-0.5, 0.5)), u = gen.uniform(0.1, 0.9), v = gen.uniform(0.1, 0.9);
    double k;
    do k = b.k_bar * std::exp(gen.uniform(-2, 2));
    while (std::abs(std::log(k * v / (h * u) / b.w_bar)) < 0.1 ||
           std::abs(std::log(k * (1 - v) / (h * (1 - u)) / (b.w_bar / b.tau_bar))) < 0.1);
    for (Sector s : {Sector::goods, Sector::education}) {
      auto f = [&](double ps) { return normalized_y(sigma_from_psi(ps), b, s, k, h, u, v); };
      const double fd = oracle::richardson_difference(f, psi, 1e-3);
      const double d = dy_dpsi(sigma_from_psi(psi), b, s, k, h, u, v);
      EXPECT_LT(rel_err(d, fd), 1e-7) << d << " " << fd;
      EXPECT_GT(d, 0.0);
    }
  }
  const Baseline b = gen.next();
  EXPECT_NEAR(dy_dpsi(1.4, b, Sector::goods, b.k_bar, b.h_bar, b.u_bar, b.v_bar), 0.0, 1e-14);
}

TEST(Derivatives, DrAgainstFiniteDifference) {
  RandomBaseline gen(51);
  for (int i = 0; i < 1000; ++i) {
    const Baseline b = gen.next();
    const double psi = gen.psi();
    double w;
    do w = b.w_bar * std::exp(gen.uniform(-2, 2));
    while (std::abs(std::log(w / b.w_bar)) < 0.05);
    const ModelParams& p = kE1;
    // Closed-form r* with the share evaluated at the fixed intensity w.
    const oracle::LongDoubleGrowth f{b.y1_bar, b.k_bar, b.v_bar, b.w_bar, b.m, w, p.rho, p.delta_k, p.eps};
    EXPECT_LT(rel_err(dr_dpsi(sigma_from_psi(psi), b, p, w), f.derivative(psi, 1e-3)), 1e-7);
    // Same expression through the library in double precision.
    auto g = [&](double ps) {
      const double s = sigma_from_psi(ps);
      return r_star_closed_form(s, b, p, share_pi(s, b, Sector::goods, w, b.tau_bar));
    };
    EXPECT_LT(rel_err(dr_dpsi(sigma_from_psi(psi), b, p, w), oracle::richardson_difference(g, psi, 1e-3)), 1e-6);
  }
}

TEST(Derivatives, DrVanishesAtBaselineShareAndIsPositiveAbove) {
  const Baseline b = reference_baseline(kE1);
  EXPECT_NEAR(dr_dpsi(kE1.sigma1(), b, kE1, b.w_bar), 0.0, 1e-15);
  EXPECT_NEAR(dr_dpsi(kE1.sigma1(), b, kE1), 0.0, 1e-9);
  EXPECT_GT(dr_dpsi(kE1.sigma1(), b, kE1, 1.5 * b.w_bar), 0.0);
  EXPECT_GT(share_pi(kE1.sigma1(), b, Sector::goods, 1.5 * b.w_bar, b.tau_bar), baseline_share(b, Sector::goods));
}

TEST(GrowthRate, Case1BaselineAtGeneratingSigma) {
  const Baseline b = reference_baseline(kE1);
  EXPECT_NEAR(r_star_of_sigma(kE1.sigma1(), b, kE1), 0.1150, 5e-4);
  EXPECT_NEAR(r_star_of_sigma(kE1.sigma1(), b, kE1), steady_state(kE1).r_star, 1e-12);
  const double pi_bar = baseline_share(b, Sector::goods);
  const double want = (b.y1_bar * pi_bar / (b.k_bar * b.v_bar) - kE1.rho - kE1.delta_k) / kE1.eps;
  EXPECT_NEAR(r_star_closed_form(kE1.sigma1(), b, kE1, pi_bar), want, 1e-15);
}

TEST(GrowthRate, E2AtItsOwnBaseline) {
  const Baseline b = reference_baseline(kE2);
  EXPECT_NEAR(r_star_of_sigma(kE2.sigma1(), b, kE2), 0.1102, 5e-4);
}

// A family normalized at a balanced-growth point keeps that point balanced:
// marginal products there do not depend on sigma.
TEST(GrowthRate, NormalizedAtSteadyStateIsSigmaInvariant) {
  const Baseline b = reference_baseline(kE1);
  const ModelParams e2 = normalized_params(b, kE2.sigma1(), kE2.sigma2(), kE1);
  const SteadyState s = steady_state(e2);
  EXPECT_NEAR(s.r_star, steady_state(kE1).r_star, 1e-9);
  EXPECT_NEAR(s.w_star, b.w_bar, 1e-7 * b.w_bar);
  EXPECT_NEAR(dr_dpsi_total_numeric(1.2, b, kE1), 0.0, 1e-6);
}

TEST(Compare, Alternative1) {
  const Baseline b = reference_baseline(kE1, level_h_bar());
  const ComparisonTable t = compare_economies(kE1, kE2, b);
  EXPECT_TRUE(t.first_dominates);
  EXPECT_FALSE(t.all_equal);
  EXPECT_NEAR(t.first.steady.r_star, 0.1150, 5e-4);
  EXPECT_NEAR(t.second.steady.r_star, 0.1102, 5e-4);
  EXPECT_NEAR(t.second.steady.u_star, 0.8723, 1e-3);
  EXPECT_NEAR(t.second.steady.v_star, 0.8506, 1e-3);
  EXPECT_NEAR(t.second.steady.pi1k, 0.700, 2e-3);
  EXPECT_NEAR(t.second.steady.pi2k, 0.737, 2e-3);
  EXPECT_NEAR(t.first.k_star, 32.18, 1e-9);
  EXPECT_NEAR(t.second.k_star, 27.90, 0.05);
  EXPECT_NEAR(t.second.y1_star, 11.54, 0.02);
  EXPECT_NEAR(t.second.y2_star, 0.48, 0.01);
  for (const auto& row : t.rows)
    if (row.in_verdict) EXPECT_EQ(row.order, 1) << row.name;
}

TEST(Compare, Alternative2) {
  const Baseline b = reference_baseline(kAlt2E1, level_h_bar());
  const ComparisonTable t = compare_economies(kAlt2E1, kAlt2E2, b);
  EXPECT_TRUE(t.first_dominates);
  EXPECT_NEAR(t.first.steady.r_star, 0.0976, 5e-4);
  EXPECT_NEAR(t.second.steady.r_star, 0.0949, 5e-4);
  EXPECT_NEAR(t.first.steady.pi1k, 0.563, 2e-3);
  EXPECT_NEAR(t.second.steady.pi1k, 0.547, 2e-3);
  EXPECT_NEAR(t.second.steady.u_star, 0.8647, 1e-3);
  EXPECT_NEAR(t.second.steady.v_star, 0.7499, 1e-3);
  EXPECT_NEAR(t.first.k_star, 15.56, 0.05);
  EXPECT_NEAR(t.first.y1_star, 6.61, 0.02);
  EXPECT_NEAR(t.second.y1_star, 6.25, 0.02);
}

TEST(Compare, IdenticalEconomies) {
  const Baseline b = reference_baseline(kE1);
  const ComparisonTable t = compare_economies(kE1, kE1, b);
  EXPECT_TRUE(t.all_equal);
  EXPECT_FALSE(t.first_dominates);
}

TEST(Compare, MismatchedParameters) {
  ModelParams other = kE2;
  other.rho = 0.05;
  try {
    compare_economies(kE1, other, reference_baseline(kE1));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::baseline_mismatch);
  }
}
