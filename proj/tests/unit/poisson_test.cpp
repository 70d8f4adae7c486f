#include "divkit/error.hpp"
#include "divkit/poisson.hpp"

#include <boost/math/distributions/poisson.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace divkit;

TEST(PoissonPmf, Examples)
{
  EXPECT_DOUBLE_EQ(poisson_pmf(1.0, 0), std::exp(-1.0));
  EXPECT_NEAR(poisson_pmf(1.0, 1), std::exp(-1.0), 1e-16);
  EXPECT_THROW(poisson_pmf(0.0, 1), DomainError);
  EXPECT_THROW(poisson_pmf(1.0, -1), DomainError);
}

TEST(PoissonPmf, MatchesBoost)
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_rate(-2.0, 6.0);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int i = 0; i < 3000; ++i)
  {
    const double rate = std::pow(10.0, log_rate(rng));
    const double centre = rate + 3.0 * std::sqrt(rate) * z(rng);
    const auto k = static_cast<std::int64_t>(std::clamp(std::round(centre), 0.0, 1e6));
    const double ref =
      boost::math::pdf(boost::math::poisson_distribution<double>(rate), static_cast<double>(k));
    if (ref < 1e-300)
    {
      continue;
    }
    EXPECT_NEAR(poisson_pmf(rate, k) / ref, 1.0, 1e-12) << rate << " " << k;
  }
}

TEST(PoissonPmf, NormalizesWithinTruncation)
{
  for (double rate : {0.3, 1.0, 12.5, 99.0, 101.0, 1000.0, 1e4})
  {
    const std::int64_t kmax = poisson_truncation_index(rate, rate);
    double head = 0.0;
    for (std::int64_t k = 0; k <= kmax; ++k)
    {
      head += poisson_pmf(rate, k);
    }
    EXPECT_GE(head, 1.0 - 1e-12) << rate;
    EXPECT_LT(poisson_upper_tail(rate, kmax), 1e-12) << rate;
  }
}

TEST(PoissonDivergences, Examples)
{
  const auto same = poisson_divergences(5.0, 5.0);
  EXPECT_EQ(same.kl, 0.0);
  EXPECT_EQ(same.chi2, 0.0);
  const auto fwd = poisson_divergences(101.0, 99.0);
  EXPECT_NEAR(fwd.kl, 0.020067337373621927, 1e-15);
  EXPECT_NEAR(fwd.chi2, 0.041231388765041402, 1e-15);
  EXPECT_NEAR(poisson_divergences(99.0, 101.0).kl, 0.019933996039717121, 1e-15);
}

TEST(PoissonDivergences, MatchTruncatedSums)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.5, 200.0);
  for (int i = 0; i < 60; ++i)
  {
    const double mu = u(rng);
    const double lambda = u(rng);
    const std::int64_t kmax = poisson_truncation_index(mu, lambda) + 200;
    double kl = 0.0;
    double chi = 0.0;
    for (std::int64_t k = 0; k <= kmax; ++k)
    {
      const double lp = poisson_log_pmf(mu, k);
      const double lq = poisson_log_pmf(lambda, k);
      kl += std::exp(lp) * (lp - lq);
      chi += std::exp(2.0 * lp - lq);
    }
    chi -= 1.0;
    const auto closed = poisson_divergences(mu, lambda);
    EXPECT_NEAR(kl, closed.kl, 1e-9 * std::max(1.0, closed.kl)) << mu << " " << lambda;
    // chi^2 grows like exp((mu-lambda)^2/lambda); skip the pairs whose sum
    // is dominated by atoms beyond any sensible truncation.
    if (closed.chi2 < 1e6)
    {
      EXPECT_NEAR(chi / closed.chi2, 1.0, 1e-9) << mu << " " << lambda;
    }
  }
}

TEST(PoissonK0, Examples)
{
  EXPECT_EQ(poisson_k0(99.0, 101.0, 0.1), 209);
  EXPECT_EQ(poisson_k0(1.0, std::exp(1.0), 0.5), 1);
  EXPECT_EQ(poisson_k0(99.0, 101.0, 0.5), 99);  // 2 / ln(101/99) = 99.997
  EXPECT_EQ(poisson_k0(1.0, 2.0, 1.0 - 1e-9), -1);
  EXPECT_THROW(poisson_k0(2.0, 2.0, 0.5), DomainError);
  EXPECT_THROW(poisson_k0(2.0, 1.0, 0.5), DomainError);
  EXPECT_THROW(poisson_k0(1.0, 2.0, 1.0), DomainError);
}

TEST(PoissonK0, SplitsTheLikelihoodComparison)
{
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> rate(0.5, 300.0);
  std::uniform_real_distribution<double> prior(0.01, 0.99);
  int checked = 0;
  while (checked < 100)
  {
    double lambda = rate(rng);
    double mu = rate(rng);
    if (mu == lambda)
    {
      continue;
    }
    if (mu < lambda)
    {
      std::swap(mu, lambda);
    }
    const double w = prior(rng);
    const std::int64_t k0 = poisson_k0(lambda, mu, w);
    const auto favours_h1 = [&](std::int64_t k) {
      return std::log(w) + poisson_log_pmf(mu, k) <= std::log1p(-w) + poisson_log_pmf(lambda, k);
    };
    if (k0 >= 0)
    {
      EXPECT_TRUE(favours_h1(k0)) << lambda << " " << mu << " " << w;
    }
    EXPECT_FALSE(favours_h1(k0 + 1)) << lambda << " " << mu << " " << w;
    ++checked;
  }
}

TEST(PoissonDegroot, Examples)
{
  EXPECT_EQ(poisson_degroot_exact(7.0, 7.0, 0.3), 0.0);

  const double ex1 = poisson_degroot_exact(101.0, 99.0, 0.1);
  EXPECT_NEAR(ex1 / 4.0824100341659866e-24, 1.0, 1e-10);
  EXPECT_LE(ex1, 4.6164e-4);

  // I_{1/2} = |P - Q| / 4, with the TV summed directly.
  double tv = 0.0;
  for (std::int64_t k = 0; k <= 200; ++k)
  {
    tv += std::abs(poisson_pmf(4.0, k) - poisson_pmf(1.0, k));
  }
  EXPECT_NEAR(poisson_degroot_exact(4.0, 1.0, 0.5), tv / 4.0, 1e-14);
  EXPECT_NEAR(tv / 4.0, 0.34079764868753073, 1e-14);
}

TEST(PoissonDegroot, TwoRoutesAgreeAndStayInRange)
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> rate(0.5, 150.0);
  std::uniform_real_distribution<double> prior(0.01, 0.99);
  for (int i = 0; i < 200; ++i)
  {
    const double mu = rate(rng);
    const double lambda = rate(rng);
    const double w = prior(rng);
    const double exact = poisson_degroot_exact(mu, lambda, w);
    EXPECT_GE(exact, 0.0);
    EXPECT_LE(exact, std::min(w, 1.0 - w));
    EXPECT_NEAR(exact, poisson_degroot_truncated(mu, lambda, w), 1e-11)
      << mu << " " << lambda << " " << w;
    // Swapping hypotheses and priors leaves the value unchanged.
    EXPECT_NEAR(exact, poisson_degroot_exact(lambda, mu, 1.0 - w), 1e-15);
  }
}

TEST(PoissonReport, ExampleOne)
{
  const PoissonReport r = poisson_bound_report(101.0, 99.0, 0.1);
  ASSERT_TRUE(r.k0.has_value());
  EXPECT_EQ(*r.k0, 209);
  ASSERT_EQ(r.bounds.size(), 3u);
  EXPECT_EQ(r.bounds[0].name, "degroot_upper_chi2");
  EXPECT_NEAR(r.bounds[0].bound_value, 4.6168e-4, 1e-8);
  EXPECT_NEAR(r.bounds[1].bound_value, 5.7764e-4, 1e-8);
  EXPECT_NEAR(r.bounds[2].bound_value, 2.2289e-3, 1e-7);
  for (const auto &b : r.bounds)
  {
    EXPECT_EQ(b.direction, Direction::upper);
    EXPECT_GE(*b.slack, 0.0);
  }
  EXPECT_LT(r.truncation_epsilon, 1e-12);
}

TEST(PoissonReport, IdenticalRates)
{
  const PoissonReport r = poisson_bound_report(3.0, 3.0, 0.5);
  EXPECT_FALSE(r.k0.has_value());
  EXPECT_EQ(r.exact_degroot, 0.0);
  for (const auto &b : r.bounds)
  {
    EXPECT_GE(b.bound_value, 0.0);
  }
}
