#pragma once

#include <cstdint>
#include <vector>

#include "rcl/renewal_law.hpp"
#include "rcl/rng.hpp"

namespace rcl {

// One realized window Delta_0..Delta_N of a renewal process. Delta_0 = 1 by
// convention. renewal_times is the sorted list of indices with Delta_n = 1;
// censored is true when the final inter-arrival draw fell beyond the stored
// pmf horizon, i.e. its exact length is unknown (it is > H, hence beyond the
// window whenever H >= N).
struct SamplePath {
  std::int64_t window = 0;  // N
  std::vector<std::int64_t> renewal_times;
  bool censored = false;

  bool delta(std::int64_t n) const;  // binary search over renewal_times
};

// Draws inter-arrivals by inverse CDF over f_1..f_H. Exact within the window
// when H >= N. When H < N: with a power-law tail model (exponent < 1) draws
// beyond the horizon follow the model's conditional tail; otherwise
// HorizonTooShort unless the truncated mass is negligible.
//
// Reuse one sampler for replicate loops; it holds the CDF.
class PathSampler {
 public:
  explicit PathSampler(const RenewalLaw& law);
  SamplePath operator()(std::int64_t window, RngStream& rng) const;

 private:
  const RenewalLaw& law_;
  std::vector<double> cdf_;  // cdf_[n] = P[T <= n]
};

SamplePath sample_path(const RenewalLaw& law, std::int64_t window,
                       RngStream& rng);

// |{n <= N : Delta_n = Delta'_n = 1}|; windows must agree (WindowMismatch).
// Always >= 1 since index 0 is a joint renewal.
std::int64_t joint_renewals(const SamplePath& a, const SamplePath& b);

// Monte Carlo estimate of q_n = P[J >= n | Delta] with the conditioning path
// held fixed and fresh independent paths drawn per trial.
struct QuenchedQ {
  double q_hat = 0.0;
  double wilson_lo = 0.0, wilson_hi = 0.0;  // 95% interval
  std::int64_t trials = 0;
  std::int64_t window = 0;  // the finite-window proxy for the conditioning
};

QuenchedQ quenched_q(const SamplePath& path, const RenewalLaw& law,
                     std::int64_t n, std::int64_t trials, RngStream& rng);

}  // namespace rcl
