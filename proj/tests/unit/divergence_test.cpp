#include "divkit/divergence.hpp"
#include "divkit/error.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace divkit;
using divkit::testing::fixture_p;
using divkit::testing::fixture_q;

namespace {

double div(const char *spec, const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  return divergence(parse_divergence(spec), p, q);
}

// Straight sum of p ln(p/q), written independently of the generator code.
double kl_oracle(const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    if (p[i] > 0.0)
    {
      s += p[i] * std::log(p[i] / q[i]);
    }
  }
  return s;
}

double egamma_brute_force(double gamma, const DiscreteDistribution &p,
                          const DiscreteDistribution &q)
{
  const std::size_t n = p.size();
  double best = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask)
  {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      if (mask & (1u << i))
      {
        v += p[i] - gamma * q[i];
      }
    }
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

TEST(FDivergence, Examples)
{
  const auto kl = generator(Family::kl);
  EXPECT_NEAR(f_divergence(kl, fixture_p(), fixture_q()), 0.082283, 1e-6);
  EXPECT_DOUBLE_EQ(f_divergence(kl, fixture_p(), fixture_q()),
                   0.7 * std::log(1.4) + 0.3 * std::log(0.6));
  EXPECT_EQ(f_divergence(kl, fixture_q(), fixture_q()), 0.0);
  const auto point = make_distribution({1, 0});
  EXPECT_DOUBLE_EQ(f_divergence(kl, point, fixture_q()), std::log(2.0));
  EXPECT_EQ(f_divergence(kl, fixture_q(), point), std::numeric_limits<double>::infinity());
}

TEST(FDivergence, ZeroOnIdenticalMeasures)
{
  std::mt19937_64 rng(1);
  for (auto fam : {Family::kl, Family::jeffreys, Family::triangular, Family::chi_squared,
                   Family::jensen_shannon, Family::total_variation})
  {
    const auto p = divkit::testing::random_pmf(rng, 5);
    EXPECT_NEAR(f_divergence(generator(fam), p, p), 0.0, 1e-15);
  }
}

TEST(FDivergence, SingularPartsUseLimits)
{
  const auto p = make_distribution({0.5, 0.5, 0});
  const auto q = make_distribution({0.25, 0.25, 0.5});
  // Q(p = 0) f(0) with f(0) = 1 for the triangular generator.
  EXPECT_DOUBLE_EQ(div("triangular", p, q),
                   f_divergence(generator(Family::triangular), p, q));
  EXPECT_DOUBLE_EQ(div("tv", p, q), 1.0);
  EXPECT_DOUBLE_EQ(f_divergence(generator(Family::total_variation), p, q), 1.0);
  EXPECT_EQ(div("chi2", q, p), std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(div("kl", p, q), std::log(2.0));
  EXPECT_EQ(div("jeffreys", p, q), std::numeric_limits<double>::infinity());
  // 0 * inf = 0: f*(0) = inf is never touched when P(q = 0) = 0.
  EXPECT_TRUE(std::isfinite(f_divergence(generator(Family::chi_squared), p, q)));
}

TEST(Divergence, BernoulliExamples)
{
  const auto &p = fixture_p();
  const auto &q = fixture_q();
  EXPECT_NEAR(div("tv", p, q), 0.4, 1e-15);
  EXPECT_NEAR(div("chi2", p, q), 0.16, 1e-15);
  EXPECT_NEAR(div("triangular", p, q), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(div("js", p, q), 0.021006, 1e-6);
  EXPECT_NEAR(div("e_gamma:1.2", p, q), 0.1, 1e-15);
  EXPECT_NEAR(div("degroot:0.45", p, q), 0.04, 1e-15);
  EXPECT_NEAR(div("jeffreys", p, q), 0.169460, 1e-6);
  EXPECT_NEAR(div("sq_hellinger", p, q), 0.021094, 1e-6);
  EXPECT_NEAR(div("bhattacharyya", p, q), 0.021320, 1e-6);
  EXPECT_NEAR(div("renyi:2", p, q), std::log(1.16), 1e-14);
  EXPECT_NEAR(div("renyi:1", p, q), 0.082283, 1e-6);
  EXPECT_EQ(div("renyi:0.5", q, q), 0.0);
  EXPECT_NEAR(div("chi_s:3", p, q), 0.064, 1e-15);
  EXPECT_NEAR(div("alpha:2", p, q), 0.08, 1e-15);
}

TEST(Divergence, MatchesGeneratorRoute)
{
  std::mt19937_64 rng(2);
  const char *kinds[] = {"kl",          "jeffreys",  "hellinger:0.5", "hellinger:2",
                         "chi2",        "sq_hellinger", "alpha:0.7",  "chi_s:1",
                         "chi_s:2.5",   "tv",        "triangular",    "lin:0.3",
                         "js",          "e_gamma:1", "e_gamma:1.7",   "degroot:0.2",
                         "degroot:0.5", "degroot:0.9"};
  for (int trial = 0; trial < 100; ++trial)
  {
    auto [p, q] = divkit::testing::random_pair(rng, 2, 8);
    for (const char *k : kinds)
    {
      const auto spec = parse_divergence(k);
      const double direct = f_divergence(generator_for(spec), p, q);
      const double named = divergence(spec, p, q);
      EXPECT_NEAR(named, direct, 1e-12 * std::max(1.0, direct)) << k;
      EXPECT_GE(named, 0.0) << k;
    }
  }
}

TEST(Divergence, KlAgainstDirectSum)
{
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial)
  {
    auto [p, q] = divkit::testing::random_pair(rng, 2, 8);
    EXPECT_NEAR(div("kl", p, q), kl_oracle(p, q), 1e-13);
  }
}

TEST(Divergence, Relations)
{
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial)
  {
    auto [p, q] = divkit::testing::random_pair(rng, 2, 8);
    EXPECT_NEAR(div("e_gamma:1", p, q), 0.5 * div("tv", p, q), 1e-15);

    const auto half = mixture(p, q, 0.5);
    EXPECT_NEAR(0.5 * div("triangular", p, q), div("chi2", p, half), 1e-12);
    EXPECT_NEAR(0.5 * div("triangular", p, q), div("chi2", q, half), 1e-12);

    for (double theta : {0.2, 0.5, 0.85})
    {
      const auto m = mixture(p, q, theta);
      const double lin = divergence({DivergenceKind::lin, theta}, p, q);
      EXPECT_NEAR(lin, theta * kl_oracle(p, m) + (1 - theta) * kl_oracle(q, m), 1e-12);
    }
    EXPECT_NEAR(div("js", p, q), div("lin:0.5", p, q), 1e-15);
    EXPECT_NEAR(div("jeffreys", p, q), kl_oracle(p, q) + kl_oracle(q, p), 1e-12);

    double bc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
      bc += std::sqrt(p[i] * q[i]);
    }
    EXPECT_NEAR(div("sq_hellinger", p, q), 1.0 - bc, 1e-12);
    EXPECT_NEAR(div("sq_hellinger", p, q), 0.5 * div("hellinger:0.5", p, q), 1e-12);
    EXPECT_NEAR(div("bhattacharyya", p, q), -std::log(bc), 1e-12);
  }
}

TEST(Divergence, EgammaIsSetMaximum)
{
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial)
  {
    auto [p, q] = divkit::testing::random_pair(rng, 2, 12);
    for (double gamma : {1.0, 1.3, 2.0, 5.0})
    {
      const double brute = egamma_brute_force(gamma, p, q);
      EXPECT_NEAR(e_gamma(gamma, p, q), brute, 1e-15 * (1 + brute));
    }
  }
}

TEST(Divergence, AffineShiftInvariance)
{
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> cd(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial)
  {
    auto [p, q] = divkit::testing::random_pair(rng, 2, 8);
    for (auto fam : {Family::kl, Family::triangular, Family::jensen_shannon})
    {
      const auto f = generator(fam);
      const double a = f_divergence(f, p, q);
      EXPECT_NEAR(f_divergence(affine_shift(f, cd(rng)), p, q), a, 1e-12 * std::max(1.0, a));
    }
  }
}

TEST(Divergence, ConjugateSwapsArguments)
{
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial)
  {
    auto [p, q] = divkit::testing::random_pair(rng, 2, 3);
    for (auto fam : {Family::kl, Family::jeffreys, Family::triangular, Family::chi_squared,
                     Family::jensen_shannon})
    {
      const auto f = generator(fam);
      const double a = f_divergence(f, p, q);
      EXPECT_NEAR(f_divergence(conjugate(f), q, p), a, 1e-12 * std::max(1.0, a));
    }
  }
}

TEST(Renyi, MonotoneInOrder)
{
  std::mt19937_64 rng(14);
  const double orders[] = {0.1, 0.3, 0.5, 0.8, 1.0, 1.2, 2.0, 3.0, 6.0};
  for (int trial = 0; trial < 100; ++trial)
  {
    auto [p, q] = divkit::testing::random_pair(rng, 2, 8);
    double prev = 0.0;
    for (double a : orders)
    {
      const double v = renyi(a, p, q);
      EXPECT_GE(v, prev - 1e-12) << "alpha=" << a;
      prev = v;
    }
  }
  EXPECT_THROW(renyi(0.0, fixture_p(), fixture_q()), DomainError);
  EXPECT_THROW(renyi(-1.0, fixture_p(), fixture_q()), DomainError);
}

TEST(Renyi, DisjointSupports)
{
  const auto p = make_distribution({1, 0});
  const auto q = make_distribution({0, 1});
  EXPECT_EQ(renyi(0.5, p, q), std::numeric_limits<double>::infinity());
  EXPECT_EQ(renyi(2.0, p, q), std::numeric_limits<double>::infinity());
}

TEST(DegrootFromEgamma, Examples)
{
  EXPECT_NEAR(degroot_from_egamma(0.45, fixture_p(), fixture_q()), 0.04, 1e-15);
  EXPECT_NEAR(degroot_from_egamma(0.5, fixture_p(), fixture_q()), 0.1, 1e-15);
  EXPECT_EQ(degroot_from_egamma(0.3, fixture_p(), fixture_q()), 0.0);
  EXPECT_THROW(degroot_from_egamma(1.0, fixture_p(), fixture_q()), DomainError);
}

TEST(DegrootFromEgamma, MatchesDirect)
{
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 200; ++trial)
  {
    auto [p, q] = divkit::testing::random_pair(rng, 2, 8);
    for (double w : {0.05, 0.2, 0.45, 0.5, 0.55, 0.8, 0.97})
    {
      EXPECT_NEAR(degroot_from_egamma(w, p, q), degroot(w, p, q), 1e-12);
      EXPECT_NEAR(degroot(w, p, q), degroot(1 - w, q, p), 1e-15);
    }
    EXPECT_NEAR(degroot(0.5, p, q), 0.25 * total_variation(p, q), 1e-15);
  }
}

TEST(Slopes, MatchFiniteDifferences)
{
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 50; ++trial)
  {
    auto [p, q] = divkit::testing::random_pair(rng, 2, 6);
    for (double gamma : {1.1, 1.9, 3.3})
    {
      const double h = 1e-7;
      const double fd = (e_gamma(gamma + h, p, q) - e_gamma(gamma, p, q)) / h;
      EXPECT_NEAR(e_gamma_slope(gamma, p, q, Side::right), fd, 1e-6);
      EXPECT_LE(e_gamma_slope(gamma, p, q, Side::right), 0.0);
    }
    for (double w : {0.15, 0.4, 0.6, 0.9})
    {
      const double h = 1e-7;
      const double fd = (degroot(w, p, q) - degroot(w - h, p, q)) / h;
      EXPECT_NEAR(degroot_slope(w, p, q, Side::left), fd, 1e-6);
    }
  }
  // At the atom gamma = 1.4 of the fixture the two slopes differ by q = 0.5.
  EXPECT_DOUBLE_EQ(e_gamma_slope(1.4, fixture_p(), fixture_q(), Side::left), -0.5);
  EXPECT_EQ(e_gamma_slope(1.4 * (1 + 1e-15), fixture_p(), fixture_q(), Side::right), 0.0);
}

TEST(Divergence, ParseAndDispatch)
{
  EXPECT_EQ(parse_divergence("renyi:2").kind, DivergenceKind::renyi);
  EXPECT_EQ(to_string(parse_divergence("hellinger:0.5")), "hellinger:0.5");
  EXPECT_EQ(to_string(parse_divergence("kl")), "kl");
  EXPECT_THROW(parse_divergence("nope"), DispatchError);
  EXPECT_THROW(parse_divergence("renyi"), ValidationError);
  EXPECT_THROW(parse_divergence("tv:1"), ValidationError);
  EXPECT_THROW(generator_for(parse_divergence("renyi:2")), DispatchError);
  EXPECT_THROW(div("kl", fixture_p(), make_distribution({1, 1, 1})), ValidationError);
}
