#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace vnfscale {

enum class DistributionFamily { kExponential, kDeterministic, kErlang, kUniform, kTruncatedNormal, kPareto };

// A sampling law for one of the simulator's random durations.
//
// `shape` is family-specific: Erlang phase count (integer >= 1), uniform
// relative half-width in (0, 1] (support mean*(1 -+ shape)), truncated-normal
// coefficient of variation (> 0, of the untruncated normal, resampled at
// <= 0), Pareto tail index (> 1). Unused for exponential and deterministic.
// `mean` overrides the rate-implied mean the simulator would otherwise use.
struct DistributionSpec {
  DistributionFamily family = DistributionFamily::kExponential;
  double shape = 0.0;
  std::optional<double> mean;

  static DistributionSpec exponential() { return {}; }
};

// "exponential", "deterministic", "erlang:5", "uniform:0.5",
// "truncated-normal:0.3", "pareto:2.5". A family without ":<shape>" gets its
// default shape (erlang 2, uniform 1, truncated-normal 0.5, pareto 2.5).
// Throws ValidationError.
DistributionSpec parse_distribution(std::string_view text);
std::string to_string(const DistributionSpec& spec);

// Throws ValidationError if the spec cannot produce a positive finite mean.
void validate(const DistributionSpec& spec);

// Draws durations with the requested mean.
class DurationSampler {
 public:
  DurationSampler(const DistributionSpec& spec, double default_mean);

  double mean() const noexcept { return mean_; }
  bool is_exponential() const noexcept { return spec_.family == DistributionFamily::kExponential; }

  template <typename Engine>
  double operator()(Engine& rng) {
    switch (spec_.family) {
      case DistributionFamily::kExponential: return exponential_(rng);
      case DistributionFamily::kDeterministic: return mean_;
      case DistributionFamily::kErlang: return gamma_(rng);
      case DistributionFamily::kUniform: return uniform_(rng);
      case DistributionFamily::kTruncatedNormal: {
        double x = 0.0;
        do {
          x = normal_(rng);
        } while (x <= 0.0);
        return x;
      }
      case DistributionFamily::kPareto: {
        // Inverse transform on 1 - U in (0, 1].
        const double u = 1.0 - unit_(rng);
        return pareto_scale_ / std::pow(u, 1.0 / spec_.shape);
      }
    }
    return mean_;
  }

 private:
  DistributionSpec spec_;
  double mean_;
  double pareto_scale_ = 0.0;
  std::exponential_distribution<double> exponential_;
  std::gamma_distribution<double> gamma_;
  std::uniform_real_distribution<double> uniform_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> unit_;
};

}  // namespace vnfscale
