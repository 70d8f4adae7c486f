#include "divkit/bounds.hpp"
#include "divkit/divergence.hpp"
#include "divkit/error.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace divkit;
using divkit::testing::fixture_p;
using divkit::testing::fixture_q;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Independent route to t_gamma: the root t > gamma of gamma ln t = t - 1.
double t_gamma_by_bisection(double gamma)
{
  auto h = [gamma](double t) { return gamma * std::log(t) - (t - 1.0); };
  double lo = gamma;
  double hi = 2.0 * gamma;
  while (h(hi) > 0.0)
  {
    hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i)
  {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(FdivLowerViaEgamma, Examples)
{
  EXPECT_NEAR(fdiv_lower_via_egamma(generator(Family::kl), 0.2, 1.0), -std::log(0.96), 1e-15);
  EXPECT_NEAR(fdiv_lower_via_egamma(generator(Family::chi_squared), 0.2, 1.0), 1.0 / 12.0, 1e-15);
  EXPECT_EQ(fdiv_lower_via_egamma(generator(Family::jensen_shannon), 0.0, 1.0), 0.0);
  EXPECT_EQ(fdiv_lower_via_egamma(generator(Family::kl), 1.0, 2.0), kInf);
  EXPECT_THROW(fdiv_lower_via_egamma(generator(Family::kl), 0.2, 0.5), DomainError);
  EXPECT_THROW(fdiv_lower_via_egamma(generator(Family::kl), -0.1, 1.0), DomainError);
}

TEST(FdivLowerViaEgamma, BretagnolleHuberAtGammaOne)
{
  for (double tv = 0.0; tv < 1.99; tv += 0.01)
  {
    EXPECT_NEAR(fdiv_lower_via_egamma(generator(Family::kl), tv / 2.0, 1.0),
                tv_kl_frontier(Frontier::bh_lb_kl, tv), 1e-12);
  }
}

TEST(EgammaUpper, Examples)
{
  EXPECT_EQ(egamma_upper(EgammaUpperKind::kl, 1.0, 0.0), 0.0);
  EXPECT_EQ(egamma_upper(EgammaUpperKind::kl, 1.0, kInf), 1.0);
  EXPECT_EQ(egamma_upper(EgammaUpperKind::chi2, 3.0, kInf), 1.0);
  // gamma = 1 halves the Bretagnolle-Huber TV bound.
  EXPECT_NEAR(egamma_upper(EgammaUpperKind::kl, 1.0, 0.3),
              0.5 * tv_kl_frontier(Frontier::bh_ub_tv, 0.3), 1e-15);
  const double printed =
    0.5 * (1.0 - 9.0 + std::sqrt(64.0 + 36.0 * 0.0412314 / (10.0 + 0.0412314)));
  EXPECT_NEAR(egamma_upper(EgammaUpperKind::chi2, 9.0, 0.0412314), printed, 1e-15);
}

TEST(HellingerRenyiLower, Examples)
{
  EXPECT_NEAR(hellinger_renyi_lower(HellingerRenyi::renyi, 1.0, 1.0, 0.2), -std::log(0.96), 1e-15);
  EXPECT_EQ(hellinger_renyi_lower(HellingerRenyi::hellinger, 2.0, 1.0, 0.0), 0.0);
  EXPECT_NEAR(hellinger_renyi_lower(HellingerRenyi::renyi, 2.0, 1.0, 0.2), std::log(1.0 / 1.2 + 0.25),
              1e-15);
  EXPECT_NEAR(hellinger_renyi_lower(HellingerRenyi::renyi, 2.0, 1.0, 0.2), 0.080043, 1e-6);
}

TEST(HellingerRenyiLower, HellingerMatchesTheoremFive)
{
  for (double alpha : {0.3, 0.5, 2.0, 3.5})
  {
    for (double gamma : {1.0, 1.2, 2.0, 5.0})
    {
      for (double e = 0.0; e < 0.95; e += 0.05)
      {
        const double direct = fdiv_lower_via_egamma(generator(Family::hellinger, alpha), e, gamma);
        EXPECT_NEAR(hellinger_renyi_lower(HellingerRenyi::hellinger, alpha, gamma, e), direct,
                    1e-12 * std::max(1.0, std::abs(direct)));
      }
    }
  }
}

TEST(TvKlFrontier, Examples)
{
  EXPECT_NEAR(tv_kl_frontier(Frontier::pinsker_lb_kl, 0.4), 0.08, 1e-15);
  EXPECT_NEAR(tv_kl_frontier(Frontier::bh_lb_kl, 0.4), 0.040822, 1e-6);
  EXPECT_NEAR(tv_kl_frontier(Frontier::vajda_lb_kl, 1.0), std::log(3.0) - 2.0 / 3.0, 1e-15);
  EXPECT_EQ(tv_kl_frontier(Frontier::bh_ub_tv, 0.0), 0.0);
  EXPECT_NEAR(tv_kl_frontier(Frontier::vajda_ub_tv, 0.0), 0.0, 1e-7);
  EXPECT_NEAR(tv_kl_frontier(Frontier::bh_ub_tv, 4.0), 1.982, 5e-4);
  EXPECT_NEAR(tv_kl_frontier(Frontier::vajda_ub_tv, 4.0), 1.973, 5e-4);
  EXPECT_EQ(tv_kl_frontier(Frontier::bh_ub_tv, kInf), 2.0);
  EXPECT_THROW(tv_kl_frontier(Frontier::pinsker_lb_kl, 2.0), DomainError);
  EXPECT_THROW(tv_kl_frontier(Frontier::bh_ub_tv, -1.0), DomainError);
}

TEST(TvKlFrontier, VajdaInvertsItsLowerBound)
{
  for (double tv = 0.01; tv < 1.99; tv += 0.01)
  {
    const double d = tv_kl_frontier(Frontier::vajda_lb_kl, tv);
    EXPECT_NEAR(tv_kl_frontier(Frontier::vajda_ub_tv, d), tv, 1e-7 + 1e-9 / tv);
    EXPECT_GE(d, tv_kl_frontier(Frontier::bh_lb_kl, tv));
  }
}

TEST(CGamma, Values)
{
  EXPECT_NEAR(t_gamma(2.0), 3.512862417, 1e-9);
  EXPECT_NEAR(c_gamma(2.0), 0.795905095, 1e-9);
  for (double g : {1.01, 1.1, 2.0, 4.0, 9.0, 100.0})
  {
    const double t = t_gamma(g);
    EXPECT_NEAR(t, t_gamma_by_bisection(g), 1e-12 * t) << g;
    EXPECT_NEAR((t / g) * std::exp(-t / g), (1.0 / g) * std::exp(-1.0 / g),
                1e-12 * std::exp(-1.0 / g) / g);
    EXPECT_GT(c_gamma(g), 0.0);
  }
  // c_gamma decreases in gamma and blows up as gamma -> 1.
  double prev = kInf;
  for (double g : {1.001, 1.01, 1.1, 2.0, 4.0, 8.0, 16.0})
  {
    EXPECT_LT(c_gamma(g), prev);
    prev = c_gamma(g);
  }
  EXPECT_GT(c_gamma(1.001), 100.0);
  EXPECT_THROW(c_gamma(1.0), DomainError);
  EXPECT_EQ(straight_line_egamma_ub(3.0, 0.0), 0.0);
  EXPECT_NEAR(straight_line_egamma_ub(2.0, 1.0), 0.7959, 1e-4);
}

TEST(DegrootUpper, ExampleOne)
{
  const double d = 101.0 * std::log(101.0 / 99.0) - 2.0;
  const double chi = std::expm1(4.0 / 99.0);
  EXPECT_NEAR(degroot_upper(DegrootUpperKind::chi2, 0.1, d, 0, chi, 0),
              -0.4 + std::sqrt(0.25 - 0.09 / (1.0 + 0.1 * chi)), 1e-15);
  EXPECT_NEAR(degroot_upper(DegrootUpperKind::chi2, 0.1, d, 0, chi, 0), 4.6168e-4, 1e-8);
  EXPECT_NEAR(degroot_upper(DegrootUpperKind::kl_line, 0.1, d, 0, chi, 0), 5.7764e-4, 1e-8);
  EXPECT_NEAR(degroot_upper(DegrootUpperKind::kl_bh, 0.1, d, 0, chi, 0), 2.2289e-3, 1e-7);
  EXPECT_NEAR(degroot_upper(DegrootUpperKind::kl_line, 0.5, 0.08, 0.08, 0, 0), 0.1, 1e-15);
  EXPECT_THROW(degroot_upper(DegrootUpperKind::chi2, 1.0, 0, 0, 0, 0), DomainError);
}

TEST(DegrootUpper, SaturatesAtPriorError)
{
  for (double w : {0.1, 0.3, 0.5, 0.7, 0.95})
  {
    const double cap = std::min(w, 1.0 - w);
    EXPECT_NEAR(degroot_upper(DegrootUpperKind::chi2, w, 0, 0, kInf, kInf), cap, 1e-15);
    EXPECT_NEAR(degroot_upper(DegrootUpperKind::kl_bh, w, kInf, kInf, 0, 0), cap, 1e-15);
    EXPECT_NEAR(degroot_upper(DegrootUpperKind::chi2, w, 0, 0, 1e12, 1e12), cap, 1e-9);
  }
}

TEST(DegrootUpper, HalfMatchesBretagnolleHuber)
{
  for (double d : {0.01, 0.3, 1.0, 4.0})
  {
    EXPECT_NEAR(4.0 * degroot_upper(DegrootUpperKind::kl_bh, 0.5, d, d, 0, 0),
                tv_kl_frontier(Frontier::bh_ub_tv, d), 1e-14);
  }
}

TEST(FdivLowerViaDegroot, Examples)
{
  EXPECT_EQ(fdiv_lower_via_degroot(generator(Family::kl), 0.3, 0.0), 0.0);
  EXPECT_NEAR(fdiv_lower_via_degroot(generator(Family::kl), 0.45, 0.04),
              fdiv_lower_via_egamma(generator(Family::kl), 0.04 / 0.45, 11.0 / 9.0), 1e-14);
  EXPECT_NEAR(fdiv_lower_via_degroot(generator(Family::kl), 0.5, 0.1), -std::log(0.96), 1e-15);
  EXPECT_NEAR(fdiv_lower_via_degroot(generator(Family::kl), 0.8, 0.05),
              fdiv_lower_via_egamma(generator(Family::kl), 0.05 / 0.2, 4.0), 1e-14);
  EXPECT_THROW(fdiv_lower_via_degroot(generator(Family::kl), 0.3, 0.31), DomainError);
}

TEST(Chi2LowerFromTv, Examples)
{
  EXPECT_NEAR(chi2_lower_from_tv(Chi2TvKind::tight, 0.4), 0.16, 1e-15);
  EXPECT_NEAR(chi2_lower_from_tv(Chi2TvKind::jensen, 0.4), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(chi2_lower_from_tv(Chi2TvKind::tight, 1.5), 3.0, 1e-15);
  for (double tv = 0.01; tv < 2.0; tv += 0.01)
  {
    const double tight = chi2_lower_from_tv(Chi2TvKind::tight, tv);
    const double jensen = chi2_lower_from_tv(Chi2TvKind::jensen, tv);
    EXPECT_GE(tight, jensen);
    EXPECT_LE(tight / jensen, tv < 1.0 ? 2.0 : 1.5 + 1e-12);
    // gamma = 1 in the chi^2 E_gamma bound gives the Jensen form.
    EXPECT_NEAR(egamma_upper(EgammaUpperKind::chi2, 1.0, jensen), tv / 2.0, 1e-12);
  }
}

TEST(KlUpperLogChi2, Examples)
{
  EXPECT_EQ(kl_upper_log_chi2(0.0), 0.0);
  EXPECT_NEAR(kl_upper_log_chi2(0.16), 0.148420, 1e-6);
  EXPECT_NEAR(kl_upper_log_chi2(std::exp(1.0) - 1.0), 1.0, 1e-15);
}

TEST(Crossover, FigureValues)
{
  EXPECT_NEAR(crossover_d(1.1), 0.0196026, 1e-6);
  EXPECT_NEAR(crossover_d(2.0), 0.8606605, 1e-6);
  EXPECT_NEAR(crossover_d(3.0), 1.6053881, 1e-6);
  EXPECT_NEAR(crossover_d(4.0), 2.1040437, 1e-6);
  double prev = 0.0;
  for (double g = 1.05; g < 10.0; g += 0.25)
  {
    const double d = crossover_d(g);
    EXPECT_GT(d, prev);
    prev = d;
  }
  EXPECT_NEAR(pinsker_bh_switch(), 1.5936243, 1e-6);
}

TEST(BoundCatalog, CertifiesRandomPairs)
{
  std::mt19937_64 rng(43);
  const BoundArgs params[] = {{{"f", "kl"}, {"gamma", "1.2"}},
                              {{"gamma", "2"}},
                              {{"alpha", "0.5"}, {"gamma", "1"}},
                              {{"omega", "0.3"}},
                              {{"omega", "0.7"}},
                              {{"f", "js"}, {"omega", "0.6"}},
                              {}};
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial)
  {
    auto [p, q] = divkit::testing::random_pair(rng, 2, 6, 0.0);
    for (const auto &entry : bound_catalog())
    {
      for (const auto &args : params)
      {
        BoundArgs use;
        bool fits = true;
        for (const auto &key : entry.params)
        {
          const auto it = args.find(key);
          if (it == args.end())
          {
            fits = false;
            break;
          }
          use[key] = it->second;
        }
        if (!fits || use.size() != args.size())
        {
          continue;
        }
        const auto report = evaluate_bound(entry.name, use, &p, &q);
        ASSERT_TRUE(report.slack.has_value());
        EXPECT_GE(*report.slack, -1e-10) << entry.name;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 300 * 15);
}

TEST(BoundCatalog, ScalarEvaluation)
{
  const auto r = evaluate_bound("pinsker_lb_kl", {{"tv", "0.4"}});
  EXPECT_NEAR(r.bound_value, 0.08, 1e-15);
  EXPECT_FALSE(r.certified_quantity.has_value());
  EXPECT_EQ(r.direction, Direction::lower);

  const auto s = evaluate_bound("kl_upper_log_chi2", {}, &fixture_p(), &fixture_q());
  EXPECT_NEAR(s.bound_value, std::log(1.16), 1e-15);
  EXPECT_NEAR(*s.certified_quantity, 0.082283, 1e-6);
  EXPECT_GT(*s.slack, 0.0);

  EXPECT_THROW(evaluate_bound("nope", {}), DispatchError);
  EXPECT_THROW(evaluate_bound("pinsker_lb_kl", {}), ValidationError);
  EXPECT_THROW(evaluate_bound("pinsker_lb_kl", {{"tv", "abc"}}), ValidationError);
  EXPECT_THROW(evaluate_bound("pinsker_lb_kl", {{"tv", "0.1"}, {"zz", "1"}}), ValidationError);
  EXPECT_THROW(evaluate_bound("pinsker_lb_kl", {{"tv", "2.5"}}), DomainError);
}
