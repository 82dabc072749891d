#include "gepc/gibbs.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gepc/rng.hpp"

namespace gepc::numerics {

GibbsPriors default_priors(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size() + y.size());
  const double sum = std::accumulate(x.begin(), x.end(), 0.0) + std::accumulate(y.begin(), y.end(), 0.0);
  const double mean = n > 0 ? sum / n : 0.0;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  for (double v : y) ss += (v - mean) * (v - mean);
  double var = n > 1 ? ss / (n - 1) : 0.0;
  if (!(var > 0.0)) var = 1.0;
  return {mean, 10.0 * var, 0.0, 10.0 * var, 1.0, var};
}

PosteriorSamples gibbs_two_group(std::span<const double> x, std::span<const double> y, const GibbsConfig& cfg) {
  if (x.empty() || y.empty()) throw std::invalid_argument("gibbs_two_group: both groups need observations");
  if (cfg.n_samples == 0) throw std::invalid_argument("gibbs_two_group: n_samples must be positive");
  const GibbsPriors pr = cfg.priors.value_or(default_priors(x, y));
  if (!(pr.tau0_sq > 0.0 && pr.gamma0_sq > 0.0 && pr.sigma0_sq > 0.0 && pr.nu0 > 0.0))
    throw std::invalid_argument("gibbs_two_group: prior variances must be positive");

  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  const double sum_x = std::accumulate(x.begin(), x.end(), 0.0);
  const double sum_y = std::accumulate(y.begin(), y.end(), 0.0);
  double mu = (sum_x / n1 + sum_y / n2) / 2.0;
  double delta = (sum_x / n1 - sum_y / n2) / 2.0;

  Rng rng(cfg.seed);
  PosteriorSamples out;
  out.priors = pr;
  out.delta_draws.reserve(cfg.n_samples);
  const double shape = (pr.nu0 + n1 + n2) / 2.0;
  const std::size_t total = cfg.burn_in + cfg.n_samples;
  std::size_t negative = 0;
  double delta_sum = 0.0;
  for (std::size_t it = 0; it < total; ++it) {
    double ss = 0.0;
    for (double v : x) ss += (v - mu - delta) * (v - mu - delta);
    for (double v : y) ss += (v - mu + delta) * (v - mu + delta);
    const double rate = (pr.nu0 * pr.sigma0_sq + ss) / 2.0;
    const double s2 = rate / rng.gamma(shape);

    const double mu_var = 1.0 / (1.0 / pr.tau0_sq + (n1 + n2) / s2);
    const double mu_mean = mu_var * (pr.mu0 / pr.tau0_sq + (sum_x - n1 * delta + sum_y + n2 * delta) / s2);
    mu = rng.normal(mu_mean, std::sqrt(mu_var));

    const double delta_var = 1.0 / (1.0 / pr.gamma0_sq + (n1 + n2) / s2);
    const double delta_mean = delta_var * (pr.delta0 / pr.gamma0_sq + (sum_x - n1 * mu - (sum_y - n2 * mu)) / s2);
    delta = rng.normal(delta_mean, std::sqrt(delta_var));

    if (it >= cfg.burn_in) {
      out.delta_draws.push_back(delta);
      negative += delta < 0.0 ? 1 : 0;
      delta_sum += delta;
    }
  }
  out.p_delta_neg = static_cast<double>(negative) / static_cast<double>(cfg.n_samples);
  out.delta_mean = delta_sum / static_cast<double>(cfg.n_samples);
  return out;
}

}  // namespace gepc::numerics
