#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcl/errors.hpp"

namespace rcl {

// Optional description of how u_n behaves beyond the stored horizon.
// power_law means u_n ~ constant * n^{-exponent}.
struct TailModel {
  enum class Kind { none, power_law };
  Kind kind = Kind::none;
  double exponent = 0.0;
  double constant = 0.0;

  static TailModel power(double exponent, double constant) {
    return TailModel{Kind::power_law, exponent, constant};
  }
};

// A renewal law truncated to a finite horizon H: the inter-arrival pmf
// f_1..f_H and the matching renewal sequence u_0..u_H. Both arrays are
// index-aligned (f[0] is unused and kept at 0, u[0] = 1). Defective pmfs
// (sum f < 1) are allowed and mean "with positive probability no further
// renewal".
struct RenewalLaw {
  std::string label;
  std::int64_t horizon = 0;
  std::vector<double> f;  // size horizon+1, f[0] == 0
  std::vector<double> u;  // size horizon+1, u[0] == 1
  TailModel tail;

  double inter_arrival_mass() const;       // sum of f_1..f_H
  double max_u() const;                    // max over u_1..u_H
  bool defective(double tol = 1e-12) const {
    return inter_arrival_mass() < 1.0 - tol;
  }
};

// --- f <-> u conversion -----------------------------------------------------
//
// The renewal identity u_n = sum_{k=1..n} f_k u_{n-k} determines each array
// from the other. Small horizons use the exact O(H^2) recursion; large ones
// go through Newton power-series inversion of U(s) (1-F)(s) = 1, which is
// O(H log H) and accurate to ~1e-14 in the coefficients.

std::vector<double> u_from_f(std::span<const double> f, std::int64_t horizon);

// Throws NotARenewalSequence at the first index where the implied f_n drops
// below -tol; values in [-tol, 0) are clamped to 0.
std::vector<double> f_from_u(std::span<const double> u, double tol = 1e-10);

// --- constructors and transforms --------------------------------------------

RenewalLaw make_law_from_f(std::string label, std::vector<double> f,
                           std::int64_t horizon, TailModel tail = {});
RenewalLaw make_law_from_u(std::string label, std::vector<double> u,
                           TailModel tail = {});

// Log-convex power-law constructor: u_n = c n^{-gamma}. Requires
// gamma in (0,1) and c <= 2^{-gamma} (the k=1 log-convexity constraint;
// k >= 2 then holds automatically), else KaluzaViolation.
RenewalLaw kaluza_power_law(double gamma, double c, std::int64_t horizon);

// Adds a hold probability p at the origin: f'_1 = p + (1-p) f_1,
// f'_n = (1-p) f_n. Requires p in [0,1).
RenewalLaw delay_law(const RenewalLaw& law, double p);

// Truncated generating-function composition F3 = F_a o F_b. discarded_mass
// bounds the pmf mass lost to degree truncation; grow the horizon until it
// is negligible for downstream work.
struct ComposedLaw {
  RenewalLaw law;
  double discarded_mass = 0.0;
};
ComposedLaw compose_laws(const RenewalLaw& a, const RenewalLaw& b,
                         std::int64_t horizon);

// Catalog of named laws. Accepted names: "walk-line", "geometric-stay(r)",
// "kaluza(gamma,c)", "walk-line-composed", "loglog"; parameter lists may be
// omitted for the defaults geometric-stay(0.5) and kaluza(0.75, 2^-0.75).
RenewalLaw builtin_law(const std::string& name, std::int64_t horizon);

// --- diagnostics -------------------------------------------------------------

struct SlopeFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;
  std::int64_t fit_lo = 0, fit_hi = 0;
  int points = 0;
};

// OLS fit of log(series[n]) against log(n) over geometrically spaced n in
// [lo, hi]; nonpositive values are skipped.
SlopeFit fit_log_log(std::span<const double> series, std::int64_t lo,
                     std::int64_t hi, int points = 48);

struct SquareSumVerdict {
  enum class Kind { divergent, convergent, undetermined };
  Kind kind = Kind::undetermined;
  double total = 0.0;  // estimate of sum_{n>=0} u_n^2 when convergent
  std::string note;
};

struct LawStats {
  std::vector<double> U;  // U_n = sum_{k<=n} u_k
  std::vector<double> w;  // w_n = sum_{k<=n} u_k^2
  SquareSumVerdict square_sum;
  double theta_s = 0.0;  // (sum_{n>=1} u_n^2)^{-1/2} ∧ 1, or 0 if divergent
  SlopeFit tail_slope;   // log-log fit of u over the tail window
};

LawStats law_stats(const RenewalLaw& law);

// Largest relative residual of the renewal identity over 1 <= n <= H,
// computed with compensated summation. Construction keeps this at the
// rounding floor; serialization bugs or hand-edited laws do not.
double max_identity_residual(const RenewalLaw& law);

// Slack in the partial-sum domination inequality
//   sum_{j<=m} u_{r+jk}  <=  sum_{j<=m} u_{jk},
// i.e. rhs - lhs; nonnegative (within rounding) for every renewal sequence.
double renewal_dominance_gap(std::span<const double> u, std::int64_t r,
                             std::int64_t k, std::int64_t m);

// Kaluza log-convexity check u_{k-1} u_{k+1} >= u_k^2 with relative slack.
bool is_log_convex(std::span<const double> u, double rel_slack = 1e-12);

// Throws Error if any structural invariant fails (sizes, u_0, pmf bounds,
// identity residual above rel_tol).
void validate_law(const RenewalLaw& law, double rel_tol = 1e-12);

}  // namespace rcl
