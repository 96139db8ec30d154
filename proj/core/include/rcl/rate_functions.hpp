#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rcl/renewal_law.hpp"

namespace rcl {

// Lower-tail rate function of the renewal count, in bits per renewal:
//   Lambda*(a) = lim_m -log2 P[T_1 + ... + T_m <= m a] / m   (a >= 1).
// Two routes are provided. The dynamic program gives certified upper bounds
// b_m = -log2 P[S_m <= floor(ma)]/m (superadditivity makes every b_m an
// upper bound); the convex dual gives the sharp value from below the bounds:
//   Lambda*(a) = sup_{t in [0,1]} log2( t^a / F(t) ),  F(t) = sum f_n t^n.

struct DpBounds {
  std::vector<double> bounds;   // b_1..b_m_max, +inf where P underflows to 0
  double best = 0.0;            // min over m (certified upper bound)
  double extrapolated = 0.0;    // intercept of b_m ~ L + C/m over the tail
  int m_max = 0;
};

DpBounds lambda_star_dp(const RenewalLaw& law, double a, int m_max);

struct DualValue {
  double value = 0.0;           // bits; +inf for a < 1
  double t_opt = 0.0;           // maximizing t = 2^{-lambda}
  bool defective_endpoint = false;  // max attained at t=1 with sum f < 1
};

DualValue lambda_star_dual(const RenewalLaw& law, double a);

struct PsiResult {
  double psi = 0.0;
  double xi0 = 0.0;  // smallest maximizer of psi_hat(phi, .)
};

// Rate-function evaluator bound to one law. Caches the xi-grid of dual
// Lambda* values that every psi evaluation scans, so grids of phi are cheap.
// Holds a reference: the law must outlive the machine.
class RateMachine {
 public:
  explicit RateMachine(const RenewalLaw& law, int xi_grid = 512);

  double lambda_dual(double a) const { return dual(a).value; }
  DualValue dual(double a) const;

  // psi(phi) = sup_{0 < xi <= 1} xi (phi - Lambda*(1/xi)), phi in (0,1].
  PsiResult psi(double phi) const;

  // Bisection inverse of the strictly increasing psi on (0,1];
  // OutOfRange when y is not attained.
  double psi_inverse(double y) const;

  double psi_at_one() const;

  const RenewalLaw& law() const { return law_; }

 private:
  void ensure_grid() const;

  const RenewalLaw& law_;
  int grid_size_;
  mutable std::vector<double> grid_lambda_;  // Lambda*(1/xi_j), xi_j = j/K
};

// Convenience single-shot wrappers (each builds a machine).
PsiResult psi_eval(const RenewalLaw& law, double phi);
double psi_inverse(const RenewalLaw& law, double y);

struct ReconstructionConstants {
  double zeta = 0.0;             // max(1, (1-gamma)/(1-psi(phi)))
  double theta_threshold = 0.0;  // 2^{psi^{-1}(gamma)} - 1; +inf if unattained
  double cntex_bound = 0.0;      // 2^gamma / max_i u_i - 1
};

// Requires gamma in (1/2,1); DegenerateZeta when psi(phi) >= 1.
ReconstructionConstants reconstruction_constants(const RenewalLaw& law,
                                                 double gamma, double phi);

// Gridded tables for serialization.
struct RateTables {
  std::vector<double> a_grid;
  std::vector<double> lambda_dual;
  std::vector<double> lambda_dp_min;
  int dp_depth = 0;
  std::vector<double> phi_grid;
  std::vector<double> psi;
  std::vector<double> xi0;
};

RateTables build_rate_tables(const RenewalLaw& law,
                             const std::vector<double>& a_grid,
                             const std::vector<double>& phi_grid, int m_max);

}  // namespace rcl
