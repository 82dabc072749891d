#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gepc::numerics {

struct GibbsPriors {
  double mu0 = 0.0;
  double tau0_sq = 1.0;    // prior variance of mu
  double delta0 = 0.0;
  double gamma0_sq = 1.0;  // prior variance of delta
  double nu0 = 1.0;
  double sigma0_sq = 1.0;
};

struct GibbsConfig {
  std::size_t n_samples = 2000;
  std::size_t burn_in = 500;
  std::uint64_t seed = 0;
  std::optional<GibbsPriors> priors;  // data-derived defaults when unset
};

struct PosteriorSamples {
  std::vector<double> delta_draws;
  double p_delta_neg = 0.0;
  double delta_mean = 0.0;
  GibbsPriors priors;
};

/// Weakly informative priors from the pooled sample: mu0 = grand mean,
/// tau0_sq = gamma0_sq = 10 * variance, delta0 = 0, nu0 = 1, sigma0_sq = variance.
/// A pooled variance of zero (or a single observation) falls back to 1.
GibbsPriors default_priors(std::span<const double> x, std::span<const double> y);

/// Two-group normal model x ~ N(mu + delta, s2), y ~ N(mu - delta, s2) with
/// conjugate full conditionals, sampled in the order s2, mu, delta.
PosteriorSamples gibbs_two_group(std::span<const double> x, std::span<const double> y, const GibbsConfig& cfg);

}  // namespace gepc::numerics
