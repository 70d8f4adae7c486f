#include "divkit/distribution.hpp"

#include "divkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace divkit {

DiscreteDistribution::DiscreteDistribution(std::vector<double> weights)
  : masses_(std::move(weights))
{
  if (masses_.empty())
  {
    throw ValidationError("distribution: no weights given");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < masses_.size(); ++i)
  {
    const double w = masses_[i];
    if (!std::isfinite(w))
    {
      throw ValidationError("distribution: weight " + std::to_string(i) + " is not finite");
    }
    if (w < 0.0)
    {
      throw ValidationError("distribution: weight " + std::to_string(i) + " is negative");
    }
    total += w;
  }
  if (!(total > 0.0))
  {
    throw ValidationError("distribution: all weights are zero");
  }
  for (auto &m : masses_)
  {
    m /= total;
  }
}

DiscreteDistribution::DiscreteDistribution(AlreadyNormalized, std::vector<double> masses)
  : masses_(std::move(masses))
{}

DiscreteDistribution make_distribution(std::vector<double> weights)
{
  return DiscreteDistribution(std::move(weights));
}

void require_shared_alphabet(const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  if (p.size() != q.size())
  {
    throw ValidationError("alphabet mismatch: " + std::to_string(p.size()) + " vs " +
                          std::to_string(q.size()) + " atoms");
  }
}

double relative_information(const DiscreteDistribution &p, const DiscreteDistribution &q,
                            std::size_t atom)
{
  require_shared_alphabet(p, q);
  if (atom >= p.size())
  {
    throw DomainError("relative_information: atom index out of range");
  }
  const double pa = p[atom];
  const double qa = q[atom];
  if (pa == 0.0 && qa == 0.0)
  {
    throw UndefinedAtomError("relative_information: p = q = 0 at atom " + std::to_string(atom));
  }
  if (qa == 0.0)
  {
    return std::numeric_limits<double>::infinity();
  }
  if (pa == 0.0)
  {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log(pa) - std::log(qa);
}

SpectrumFunction spectrum(const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  require_shared_alphabet(p, q);

  SpectrumFunction out;
  std::vector<std::pair<double, double>> atoms;  // (log ratio, p mass)
  atoms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    const double pi = p[i];
    const double qi = q[i];
    if (pi > 0.0 && qi > 0.0)
    {
      atoms.emplace_back(std::log(pi) - std::log(qi), pi);
    }
    else if (pi > 0.0)
    {
      out.singular_mass_p += pi;
    }
    else if (qi > 0.0)
    {
      out.singular_mass_q += qi;
    }
  }
  std::sort(atoms.begin(), atoms.end());

  double cum = 0.0;
  for (const auto &[x, mass] : atoms)
  {
    cum += mass;
    if (!out.breakpoints.empty() && out.breakpoints.back() == x)
    {
      out.cum_masses.back() = cum;
    }
    else
    {
      out.breakpoints.push_back(x);
      out.cum_masses.push_back(cum);
    }
  }
  // Absorb summation drift so the top of the finite part is exactly 1 - P(q=0).
  if (!out.cum_masses.empty() && out.singular_mass_p == 0.0)
  {
    out.cum_masses.back() = 1.0;
  }
  return out;
}

double spectrum_eval(const SpectrumFunction &f, double x)
{
  const auto it = std::upper_bound(f.breakpoints.begin(), f.breakpoints.end(), x);
  if (it == f.breakpoints.begin())
  {
    return 0.0;
  }
  return f.cum_masses[static_cast<std::size_t>(it - f.breakpoints.begin()) - 1];
}

double g_big(const SpectrumFunction &f, double beta)
{
  if (!(beta > 0.0))
  {
    throw DomainError("G: beta must be positive");
  }
  const double cdf = spectrum_eval(f, std::log(beta));
  return beta >= 1.0 ? 1.0 - cdf : cdf;
}

double g_big(const DiscreteDistribution &p, const DiscreteDistribution &q, double beta)
{
  return g_big(spectrum(p, q), beta);
}

DiscreteDistribution mixture(const DiscreteDistribution &p, const DiscreteDistribution &q,
                             double lambda)
{
  require_shared_alphabet(p, q);
  if (!(lambda >= 0.0 && lambda <= 1.0))
  {
    throw DomainError("mixture: lambda must lie in [0, 1]");
  }
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < m.size(); ++i)
  {
    m[i] = lambda * p[i] + (1.0 - lambda) * q[i];
  }
  return DiscreteDistribution(DiscreteDistribution::AlreadyNormalized{}, std::move(m));
}

}  // namespace divkit
