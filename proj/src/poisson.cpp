#include "divkit/poisson.hpp"

#include "divkit/error.hpp"
#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace divkit {

namespace {

constexpr double kLnSqrt2Pi = 0.91893853320467274178;
constexpr std::int64_t kMaxTailTerms = 100'000'000;

void require_rate(double rate, const char *what)
{
  if (!(rate > 0.0) || !std::isfinite(rate))
  {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void require_prior(double omega)
{
  if (!(omega > 0.0 && omega < 1.0))
  {
    throw DomainError("omega must lie in (0, 1)");
  }
}

// ln k! - [(k + 1/2) ln k - k + ln sqrt(2 pi)].
double stirling_error(std::int64_t k)
{
  const double n = static_cast<double>(k);
  if (k <= 15)
  {
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kLnSqrt2Pi;
  }
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  const double nn = n * n;
  if (k > 500)
  {
    return (s0 - s1 / nn) / n;
  }
  if (k > 80)
  {
    return (s0 - (s1 - s2 / nn) / nn) / n;
  }
  if (k > 35)
  {
    return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  }
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x ln(x/m) + m - x, with a series near x = m where the closed form cancels.
double deviance(double x, double m)
{
  if (std::abs(x - m) < 0.1 * (x + m))
  {
    double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double term = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j)
    {
      term *= v;
      const double next = s + term / (2 * j + 1);
      if (next == s)
      {
        return next;
      }
      s = next;
    }
    return s;
  }
  return x * std::log(x / m) + m - x;
}

// Sum of term(k) for k = first, first + 1, ... until past `mode` and the
// terms stop contributing.
template <class Term>
double sum_upward(std::int64_t first, double mode, Term term)
{
  detail::CompensatedSum acc;
  for (std::int64_t k = first; k < first + kMaxTailTerms; ++k)
  {
    const double t = term(k);
    acc += t;
    if (static_cast<double>(k) > mode && !(t > 1e-18 * acc.value()))
    {
      break;
    }
  }
  return acc.value();
}

}  // namespace

double poisson_log_pmf(double rate, std::int64_t k)
{
  require_rate(rate, "Poisson rate");
  if (k < 0)
  {
    throw DomainError("Poisson index must be non-negative");
  }
  if (k == 0)
  {
    return -rate;
  }
  const double n = static_cast<double>(k);
  return -stirling_error(k) - deviance(n, rate) - 0.5 * std::log(2.0 * std::numbers::pi * n);
}

double poisson_pmf(double rate, std::int64_t k)
{
  return std::exp(poisson_log_pmf(rate, k));
}

std::int64_t poisson_truncation_index(double mu, double lambda)
{
  require_rate(mu, "mu");
  require_rate(lambda, "lambda");
  const double m = std::max(mu, lambda);
  return static_cast<std::int64_t>(std::ceil(m + 20.0 * std::sqrt(m) + 30.0));
}

double poisson_upper_tail(double rate, std::int64_t k)
{
  require_rate(rate, "Poisson rate");
  return sum_upward(std::max<std::int64_t>(k + 1, 0), rate,
                    [rate](std::int64_t j) { return poisson_pmf(rate, j); });
}

PoissonDivergences poisson_divergences(double mu, double lambda)
{
  require_rate(mu, "mu");
  require_rate(lambda, "lambda");
  const double diff = mu - lambda;
  return {deviance(mu, lambda), std::expm1(diff * diff / lambda)};
}

std::int64_t poisson_k0(double lambda, double mu, double omega)
{
  require_rate(lambda, "lambda");
  require_rate(mu, "mu");
  require_prior(omega);
  if (!(mu > lambda))
  {
    throw DomainError("k0 needs mu > lambda; swap the hypotheses");
  }
  const double x = std::floor((mu - lambda + std::log((1.0 - omega) / omega)) / std::log(mu / lambda));
  return x < 0.0 ? -1 : static_cast<std::int64_t>(x);
}

double poisson_degroot_exact(double mu, double lambda, double omega)
{
  require_rate(mu, "mu");
  require_rate(lambda, "lambda");
  require_prior(omega);
  if (mu == lambda)
  {
    return 0.0;
  }
  if (mu < lambda)
  {
    return poisson_degroot_exact(lambda, mu, 1.0 - omega);
  }

  const std::int64_t k0 = poisson_k0(lambda, mu, omega);
  const double log_w = std::log(omega);
  const double log_v = std::log1p(-omega);
  // Positive part of a - b for a = e^la, b = e^lb.
  const auto excess = [](double la, double lb) {
    return la > lb ? -std::exp(la) * std::expm1(lb - la) : 0.0;
  };

  if (omega <= 0.5)
  {
    // w - sum min = sum_{k > k0} (w p_k - (1-w) q_k).
    const double tail = sum_upward(k0 + 1, mu, [&](std::int64_t k) {
      return excess(log_w + poisson_log_pmf(mu, k), log_v + poisson_log_pmf(lambda, k));
    });
    return std::min(tail, omega);
  }
  // (1-w) - sum min = sum_{k <= k0} ((1-w) q_k - w p_k).
  detail::CompensatedSum acc;
  for (std::int64_t k = 0; k <= k0; ++k)
  {
    acc += excess(log_v + poisson_log_pmf(lambda, k), log_w + poisson_log_pmf(mu, k));
  }
  return std::min(acc.value(), 1.0 - omega);
}

double poisson_degroot_truncated(double mu, double lambda, double omega)
{
  require_prior(omega);
  const std::int64_t kmax = poisson_truncation_index(mu, lambda);
  detail::CompensatedSum acc;
  for (std::int64_t k = 0; k <= kmax; ++k)
  {
    acc += std::min(omega * poisson_pmf(mu, k), (1.0 - omega) * poisson_pmf(lambda, k));
  }
  return std::min(omega, 1.0 - omega) - acc.value();
}

PoissonReport poisson_bound_report(double mu, double lambda, double omega)
{
  PoissonReport r;
  r.mu = mu;
  r.lambda = lambda;
  r.omega = omega;
  r.forward = poisson_divergences(mu, lambda);
  r.backward = poisson_divergences(lambda, mu);
  require_prior(omega);
  if (mu > lambda)
  {
    r.k0 = poisson_k0(lambda, mu, omega);
  }
  r.exact_degroot = poisson_degroot_exact(mu, lambda, omega);
  r.truncated_degroot = poisson_degroot_truncated(mu, lambda, omega);
  r.truncation_index = poisson_truncation_index(mu, lambda);
  r.truncation_epsilon = std::max(poisson_upper_tail(mu, r.truncation_index),
                                  poisson_upper_tail(lambda, r.truncation_index));

  const std::pair<const char *, DegrootUpperKind> kinds[] = {
    {"degroot_upper_chi2", DegrootUpperKind::chi2},
    {"degroot_upper_kl_line", DegrootUpperKind::kl_line},
    {"degroot_upper_kl_bh", DegrootUpperKind::kl_bh}};
  for (const auto &[name, kind] : kinds)
  {
    BoundReport b;
    b.name = name;
    b.direction = Direction::upper;
    b.bound_value = degroot_upper(kind, omega, r.forward.kl, r.backward.kl, r.forward.chi2,
                                  r.backward.chi2);
    b.certified_quantity = r.exact_degroot;
    b.slack = b.bound_value - r.exact_degroot;
    r.bounds.push_back(b);
  }
  return r;
}

}  // namespace divkit
