#include "rcl/observation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace rcl {

void DiscreteDistribution::validate() const {
  if (symbols.size() != probs.size() || symbols.empty())
    throw Error("discrete distribution: symbols/probs size mismatch");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw Error("discrete distribution: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw Error("discrete distribution: probabilities sum to " +
                std::to_string(sum));
  std::map<std::string, int> seen;
  for (const auto& s : symbols)
    if (++seen[s] > 1) throw Error("discrete distribution: duplicate symbol " + s);
}

double r_statistic(const DiscreteDistribution& alpha,
                   const DiscreteDistribution& eta) {
  alpha.validate();
  eta.validate();
  std::map<std::string, double> ea;
  for (std::size_t i = 0; i < alpha.symbols.size(); ++i)
    ea[alpha.symbols[i]] = alpha.probs[i];
  double r = 0.0;
  for (std::size_t i = 0; i < eta.symbols.size(); ++i) {
    const auto it = ea.find(eta.symbols[i]);
    const double pa = it == ea.end() ? 0.0 : it->second;
    const double pe = eta.probs[i];
    if (pe > 0.0 && pa == 0.0)
      throw NotMutuallyAC("r_statistic: eta charges symbol '" + eta.symbols[i] +
                          "' with alpha mass 0");
    if (pa > 0.0) r += pe * pe / pa;
  }
  return r;
}

std::vector<ObservationPath> observe_coin(const SamplePath& path,
                                          const std::vector<double>& thetas,
                                          RngStream& rng,
                                          bool retain_uniforms) {
  for (double t : thetas)
    if (!(t >= 0.0 && t <= 1.0))
      throw InvalidBias("observe_coin: theta " + std::to_string(t) +
                        " outside [0,1]; negative biases are obtained by "
                        "flipping the signs of X");
  const std::int64_t n = path.window;
  std::vector<ObservationPath> out(thetas.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    out[k].window = n;
    out[k].theta = thetas[k];
    out[k].x.assign(static_cast<std::size_t>(n) + 1, 0);
    if (retain_uniforms)
      out[k].uniforms.emplace(static_cast<std::size_t>(n) + 1, 0.0);
  }
  // Walk renewal times alongside the index sweep; shared V_i across thetas.
  std::size_t ri = 0;
  const auto& times = path.renewal_times;
  while (ri < times.size() && times[ri] < 1) ++ri;
  for (std::int64_t i = 1; i <= n; ++i) {
    const double v = rng.next_double();
    bool renewal = false;
    if (ri < times.size() && times[ri] == i) {
      renewal = true;
      ++ri;
    }
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      const double head = renewal ? 0.5 * (1.0 + thetas[k]) : 0.5;
      out[k].x[static_cast<std::size_t>(i)] = v <= head ? 1 : -1;
      if (retain_uniforms) (*out[k].uniforms)[static_cast<std::size_t>(i)] = v;
    }
  }
  return out;
}

ObservationPath observe_coin_single(const SamplePath& path, double theta,
                                    RngStream& rng, bool retain_uniforms) {
  return observe_coin(path, {theta}, rng, retain_uniforms).front();
}

ObservationPath observe_general(const SamplePath& path,
                                const DiscreteDistribution& alpha,
                                const DiscreteDistribution& eta,
                                RngStream& rng) {
  alpha.validate();
  eta.validate();
  // Mutual absolute continuity on a finite alphabet: identical supports.
  std::map<std::string, double> pe;
  for (std::size_t i = 0; i < eta.symbols.size(); ++i)
    pe[eta.symbols[i]] = eta.probs[i];
  std::vector<double> eta_aligned(alpha.symbols.size(), 0.0);
  for (std::size_t i = 0; i < alpha.symbols.size(); ++i) {
    const auto it = pe.find(alpha.symbols[i]);
    const double pa = alpha.probs[i];
    const double pb = it == pe.end() ? 0.0 : it->second;
    if ((pa > 0.0) != (pb > 0.0))
      throw NotMutuallyAC("observe_general: supports differ at symbol '" +
                          alpha.symbols[i] + "'");
    eta_aligned[i] = pb;
    if (it != pe.end()) pe.erase(it);
  }
  for (const auto& [sym, p] : pe)
    if (p > 0.0)
      throw NotMutuallyAC("observe_general: eta charges unknown symbol '" +
                          sym + "'");

  std::vector<double> cdf_a(alpha.probs.size()), cdf_e(alpha.probs.size());
  std::partial_sum(alpha.probs.begin(), alpha.probs.end(), cdf_a.begin());
  std::partial_sum(eta_aligned.begin(), eta_aligned.end(), cdf_e.begin());

  ObservationPath obs;
  obs.window = path.window;
  obs.alphabet = alpha.symbols;
  obs.symbol_idx.assign(static_cast<std::size_t>(path.window) + 1, 0);
  std::size_t ri = 0;
  const auto& times = path.renewal_times;
  while (ri < times.size() && times[ri] < 1) ++ri;
  for (std::int64_t i = 1; i <= path.window; ++i) {
    const double v = rng.next_double();
    bool renewal = false;
    if (ri < times.size() && times[ri] == i) {
      renewal = true;
      ++ri;
    }
    const auto& cdf = renewal ? cdf_e : cdf_a;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), v);
    obs.symbol_idx[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(),
                                 static_cast<std::ptrdiff_t>(cdf.size()) - 1));
  }
  return obs;
}

}  // namespace rcl
