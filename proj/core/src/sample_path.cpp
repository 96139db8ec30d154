#include "rcl/sample_path.hpp"

#include <algorithm>
#include <cmath>

namespace rcl {

bool SamplePath::delta(std::int64_t n) const {
  return std::binary_search(renewal_times.begin(), renewal_times.end(), n);
}

PathSampler::PathSampler(const RenewalLaw& law) : law_(law) {
  cdf_.resize(law.f.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < law.f.size(); ++n) {
    acc += law.f[n];
    cdf_[n] = acc;
  }
}

SamplePath PathSampler::operator()(std::int64_t window, RngStream& rng) const {
  if (window < 0) throw Error("sample_path: negative window");
  if (window > (std::int64_t{1} << 40))
    throw Error("sample_path: window exceeds memory budget");

  const std::int64_t horizon = law_.horizon;
  const double mass = cdf_.back();
  const bool tail_extendable =
      law_.tail.kind == TailModel::Kind::power_law && law_.tail.exponent < 1.0;
  if (horizon < window && 1.0 - mass > 1e-12 && !tail_extendable)
    throw HorizonTooShort(
        "sample_path: window " + std::to_string(window) + " exceeds horizon " +
        std::to_string(horizon) + " with unmodeled tail mass " +
        std::to_string(1.0 - mass));

  SamplePath path;
  path.window = window;
  path.renewal_times.push_back(0);

  std::int64_t pos = 0;
  while (true) {
    const double v = rng.next_double();
    std::int64_t gap;
    if (v <= mass) {
      const auto it = std::lower_bound(cdf_.begin() + 1, cdf_.end(), v);
      gap = static_cast<std::int64_t>(it - cdf_.begin());
    } else if (tail_extendable && horizon < window) {
      // Conditional power-law tail: P[T > t | T > H] = (t/H)^(exponent-1).
      const double q = (v - mass) / (1.0 - mass);
      const double t = static_cast<double>(horizon) *
                       std::pow(1.0 - q, 1.0 / (law_.tail.exponent - 1.0));
      gap = t > 4e18 ? (std::int64_t{1} << 62)
                     : static_cast<std::int64_t>(std::ceil(t));
    } else {
      // Gap longer than the horizon, hence beyond the window when H >= N.
      path.censored = true;
      break;
    }
    pos += gap;
    if (pos > window) break;
    path.renewal_times.push_back(pos);
  }
  return path;
}

SamplePath sample_path(const RenewalLaw& law, std::int64_t window,
                       RngStream& rng) {
  return PathSampler(law)(window, rng);
}

std::int64_t joint_renewals(const SamplePath& a, const SamplePath& b) {
  if (a.window != b.window)
    throw WindowMismatch("joint_renewals: windows " + std::to_string(a.window) +
                         " and " + std::to_string(b.window) + " differ");
  std::int64_t count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.renewal_times.size() && j < b.renewal_times.size()) {
    const std::int64_t x = a.renewal_times[i], y = b.renewal_times[j];
    if (x == y) {
      ++count;
      ++i;
      ++j;
    } else if (x < y) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

QuenchedQ quenched_q(const SamplePath& path, const RenewalLaw& law,
                     std::int64_t n, std::int64_t trials, RngStream& rng) {
  if (trials <= 0) throw NoTrials("quenched_q: trials must be positive");
  PathSampler sampler(law);
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const SamplePath other = sampler(path.window, rng);
    if (joint_renewals(path, other) >= n) ++hits;
  }
  QuenchedQ q;
  q.trials = trials;
  q.window = path.window;
  q.q_hat = static_cast<double>(hits) / static_cast<double>(trials);
  const double z = 1.959963984540054;  // 95%
  const double nn = static_cast<double>(trials);
  const double center = (q.q_hat + z * z / (2 * nn)) / (1 + z * z / nn);
  const double half = z / (1 + z * z / nn) *
                      std::sqrt(q.q_hat * (1 - q.q_hat) / nn +
                                z * z / (4 * nn * nn));
  q.wilson_lo = std::max(0.0, center - half);
  q.wilson_hi = std::min(1.0, center + half);
  return q;
}

}  // namespace rcl
