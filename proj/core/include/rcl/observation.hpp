#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcl/sample_path.hpp"
#include "rcl/rng.hpp"

namespace rcl {

// Finite discrete distribution over named symbols.
struct DiscreteDistribution {
  std::vector<std::string> symbols;
  std::vector<double> probs;

  void validate() const;  // sizes match, probs >= 0, sum == 1 (1e-12)
};

// sum_i eta_i^2 / alpha_i over the shared support; the second-moment
// constant of the density d(eta)/d(alpha).
double r_statistic(const DiscreteDistribution& alpha,
                   const DiscreteDistribution& eta);

// The visible sequence X_1..X_N. Coin case: x holds ±1 (index 0 unused).
// General case: symbol_idx holds indices into alphabet. The hidden renewal
// indicator is deliberately absent: estimators consume this type and cannot
// see Delta.
struct ObservationPath {
  std::int64_t window = 0;  // N
  double theta = 0.0;       // coin case only

  std::vector<std::int8_t> x;             // coin: size N+1, x[0] = 0
  std::vector<std::uint32_t> symbol_idx;  // general: size N+1, [0] unused
  std::vector<std::string> alphabet;

  std::optional<std::vector<double>> uniforms;  // V_1..V_N at [1..N] if kept

  bool is_coin() const { return alphabet.empty(); }
};

// Coupled coin observations: one path per theta, all driven by the same
// uniforms V_n, so X^{theta1} <= X^{theta2} pointwise whenever
// theta1 <= theta2. Biases must lie in [0,1]; negative biases are handled by
// flipping signs of the output (the model is symmetric under X -> -X), not
// simulated directly.
std::vector<ObservationPath> observe_coin(const SamplePath& path,
                                          const std::vector<double>& thetas,
                                          RngStream& rng,
                                          bool retain_uniforms = false);

ObservationPath observe_coin_single(const SamplePath& path, double theta,
                                    RngStream& rng,
                                    bool retain_uniforms = false);

// X_n ~ eta at renewal times, ~ alpha elsewhere, independently given Delta.
// alpha and eta must share support (NotMutuallyAC otherwise).
ObservationPath observe_general(const SamplePath& path,
                                const DiscreteDistribution& alpha,
                                const DiscreteDistribution& eta,
                                RngStream& rng);

}  // namespace rcl
