#pragma once

#include "divkit/distribution.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace divkit::testing {

inline DiscreteDistribution bern(double p0)
{
  return DiscreteDistribution({p0, 1.0 - p0});
}

// P = (0.7, 0.3), Q = (0.5, 0.5): the two-atom fixture used throughout.
inline const DiscreteDistribution &fixture_p()
{
  static const DiscreteDistribution p = bern(0.7);
  return p;
}

inline const DiscreteDistribution &fixture_q()
{
  static const DiscreteDistribution q = bern(0.5);
  return q;
}

// Random pmf on n atoms with every mass >= floor.
inline DiscreteDistribution random_pmf(std::mt19937_64 &rng, std::size_t n, double floor = 1e-3)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto &x : w)
  {
    // Cubing spreads the likelihood ratios over a few decades.
    const double v = u(rng);
    x = v * v * v + 1e-12;
    total += x;
  }
  const double free_mass = 1.0 - static_cast<double>(n) * floor;
  for (auto &x : w)
  {
    x = floor + free_mass * x / total;
  }
  return DiscreteDistribution(std::move(w));
}

inline std::pair<DiscreteDistribution, DiscreteDistribution>
random_pair(std::mt19937_64 &rng, std::size_t min_n, std::size_t max_n, double floor = 1e-3)
{
  std::uniform_int_distribution<std::size_t> size(min_n, max_n);
  const std::size_t n = size(rng);
  auto p = random_pmf(rng, n, floor);
  auto q = random_pmf(rng, n, floor);
  return {std::move(p), std::move(q)};
}

}  // namespace divkit::testing
