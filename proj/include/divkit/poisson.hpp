#pragma once

#include "divkit/bounds.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace divkit {

/// e^-rate rate^k / k!, via the saddle-point form (Stirling error plus a
/// deviance term), which keeps full relative accuracy for large k.
double poisson_pmf(double rate, std::int64_t k);
double poisson_log_pmf(double rate, std::int64_t k);

/// ceil(m + 20 sqrt(m) + 30) with m = max(mu, lambda).
std::int64_t poisson_truncation_index(double mu, double lambda);

/// Mass of P_rate strictly above k, summed directly.
double poisson_upper_tail(double rate, std::int64_t k);

struct PoissonDivergences
{
  double kl;    // D(P_mu || P_lambda), nats
  double chi2;  // chi^2(P_mu || P_lambda)
};

PoissonDivergences poisson_divergences(double mu, double lambda);

/// floor((mu - lambda + ln((1 - omega)/omega)) / ln(mu/lambda)): the last k
/// with omega P_mu[k] <= (1 - omega) P_lambda[k]. Needs mu > lambda. The
/// result is clamped below at -1, meaning no such k.
std::int64_t poisson_k0(double lambda, double mu, double omega);

/// I_omega(P_mu || P_lambda) from the threshold split at k0. The head and
/// tail of the min-sum are regrouped so that only non-negative terms are
/// added, which keeps relative accuracy when the value is far below 1e-16.
/// mu < lambda swaps roles and priors; mu = lambda gives 0.
double poisson_degroot_exact(double mu, double lambda, double omega);

/// min(w, 1-w) - sum_{k<=K} min(w P_mu[k], (1-w) P_lambda[k]) with K from
/// poisson_truncation_index. Accurate to the truncated mass in absolute terms.
double poisson_degroot_truncated(double mu, double lambda, double omega);

struct PoissonReport
{
  double mu;
  double lambda;
  double omega;
  PoissonDivergences forward;   // P_mu || P_lambda
  PoissonDivergences backward;  // P_lambda || P_mu
  std::optional<std::int64_t> k0;  // present when mu > lambda
  double exact_degroot;
  double truncated_degroot;
  std::int64_t truncation_index;
  double truncation_epsilon;  // larger of the two tails beyond truncation_index
  std::vector<BoundReport> bounds;  // chi2, kl_line, kl_bh, certified against the exact value
};

PoissonReport poisson_bound_report(double mu, double lambda, double omega);

}  // namespace divkit
