#pragma once

#include <cmath>

namespace ceslab {

/// Structural parameters of the two-sector economy.
///
/// Both technologies are CES in effective physical capital and effective
/// human capital: the goods sector uses (k v, h u), the education sector
/// uses (k (1-v), h (1-u)). Rates (delta_k, delta_h, rho) are per unit time;
/// everything else is dimensionless.
struct ModelParams {
  double A1 = 0.0;       // goods-sector efficiency
  double A2 = 0.0;       // education-sector efficiency
  double alpha1 = 0.0;   // goods-sector distribution parameter, (0,1)
  double alpha2 = 0.0;   // education-sector distribution parameter, (0,1)
  double psi1 = 0.0;     // goods-sector substitution parameter, < 1 and != 0
  double psi2 = 0.0;     // education-sector substitution parameter
  double delta_k = 0.0;  // physical-capital depreciation
  double delta_h = 0.0;  // human-capital depreciation
  double eps = 0.0;      // inverse intertemporal elasticity, > 1
  double rho = 0.0;      // time preference

  double sigma1() const { return 1.0 / (1.0 - psi1); }
  double sigma2() const { return 1.0 / (1.0 - psi2); }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Smallest admissible |psi|; the Cobb-Douglas limit is not modelled.
inline constexpr double kPsiGuard = 1e-9;

double psi_from_sigma(double sigma);
double sigma_from_psi(double psi);

/// Throws ValidationError naming the first field that breaks an invariant.
void validate(const ModelParams& p);

/// A1=1.05, A2=0.20, alpha1=0.6, alpha2=0.8, delta_k=0.06, delta_h=0.05,
/// eps=2, rho=0.06 with the given substitution parameters.
ModelParams benchmark_params(double psi1, double psi2);

/// Stationary coordinates of the balanced-growth system.
struct ReducedState {
  double z = 0.0;  // k/h
  double q = 0.0;  // c/k, per unit time
  double u = 0.0;  // human-capital fraction in the goods sector
  double v = 0.0;  // physical-capital fraction in the goods sector

  /// Validating constructor: z, q > 0 and u, v strictly inside (0,1).
  static ReducedState make(double z, double q, double u, double v);
};

void validate(const ReducedState& s);

/// Level variables of the economy.
struct LevelState {
  double k = 0.0;
  double h = 0.0;
  double c = 0.0;
  double u = 0.0;
  double v = 0.0;

  static LevelState make(double k, double h, double c, double u, double v);
};

void validate(const LevelState& s);

/// x^a for x > 0, evaluated as exp(a log x).
inline double pow_pos(double base, double exponent) {
  return std::exp(exponent * std::log(base));
}

}  // namespace ceslab
