#include "divkit/local.hpp"

#include "divkit/divergence.hpp"
#include "divkit/error.hpp"
#include "summation.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace divkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_lambda(double lambda)
{
  if (!(lambda >= 0.0 && lambda <= 1.0))
  {
    throw DomainError("lambda must lie in [0, 1]");
  }
}

// Throws `E` when p has mass on an atom where q has none.
template <class E>
void require_dominated(const DiscreteDistribution &p, const DiscreteDistribution &q,
                       const char *what)
{
  require_shared_alphabet(p, q);
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    if (p[i] > 0.0 && q[i] == 0.0)
    {
      throw E(std::string(what) + ": atom " + std::to_string(i) + " lies outside the support");
    }
  }
}

double second_at_one(const GeneratorFunction &f)
{
  const auto d2 = f.second_at_one();
  if (!d2)
  {
    throw CapabilityError("generator " + f.name() + " has no second derivative at 1");
  }
  return *d2;
}

// Limit of r(lambda) = L + a lambda + ... from r at lambda and lambda / 10.
double richardson(double coarse, double fine)
{
  return (10.0 * fine - coarse) / 9.0;
}

template <class Ratio>
LocalLimitEstimate estimate(std::vector<double> lambdas, double target, Ratio ratio)
{
  LocalLimitEstimate e;
  e.lambdas = std::move(lambdas);
  for (double l : e.lambdas)
  {
    e.ratios.push_back(ratio(l));
  }
  const std::size_t n = e.ratios.size();
  e.extrapolated = richardson(e.ratios[n - 2], e.ratios[n - 1]);
  e.residual = std::abs(e.extrapolated - richardson(e.ratios[n - 3], e.ratios[n - 2]));
  e.target = target;
  e.error = std::abs(e.extrapolated - target);
  return e;
}

const std::vector<double> kLocalGrid = {1e-1, 1e-2, 1e-3, 1e-4};
const std::vector<double> kRatioGrid = {1e-2, 1e-3, 1e-4};

}  // namespace

double chi2_mixture_scaling(const DiscreteDistribution &p, const DiscreteDistribution &q,
                            double lambda)
{
  return chis_mixture_scaling(p, q, 2.0, lambda);
}

double chis_mixture_scaling(const DiscreteDistribution &p, const DiscreteDistribution &q,
                            double s, double lambda)
{
  require_lambda(lambda);
  if (!(s >= 1.0) || !std::isfinite(s))
  {
    throw DomainError("chi^s order must be >= 1");
  }
  require_dominated<ContinuityError>(p, q, "chi^s mixture");
  const DiscreteDistribution m = mixture(p, q, lambda);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < m.size(); ++i)
  {
    if (q[i] > 0.0)
    {
      acc += std::pow(std::abs(m[i] - q[i]), s) / std::pow(q[i], s - 1.0);
    }
  }
  return acc.value();
}

ThreeMeasureChi2 chi2_mixture_three(const DiscreteDistribution &p, const DiscreteDistribution &q,
                                    const DiscreteDistribution &r, double lambda)
{
  require_lambda(lambda);
  require_dominated<ContinuityError>(p, r, "three-measure chi^2");
  require_dominated<ContinuityError>(q, r, "three-measure chi^2");
  const DiscreteDistribution m = mixture(p, q, lambda);
  detail::CompensatedSum value;
  detail::CompensatedSum c;
  for (std::size_t i = 0; i < r.size(); ++i)
  {
    if (r[i] > 0.0)
    {
      const double d = m[i] - r[i];
      value += d * d / r[i];
      c += (p[i] - q[i]) * q[i] / r[i];
    }
  }
  return {value.value(), c.value()};
}

double chi2_three_identity_rhs(double chi2_pr, double chi2_qr, double c_coeff, double lambda)
{
  return 2.0 * c_coeff * lambda + (chi2_pr - chi2_qr - 2.0 * c_coeff) * lambda * lambda;
}

LocalLimitEstimate local_limit_estimate(const GeneratorFunction &f, const DiscreteDistribution &p,
                                        const DiscreteDistribution &q,
                                        MixtureDirection direction)
{
  const double d2 = second_at_one(f);
  require_dominated<DomainError>(p, q, "local limit");
  const double target = 0.5 * d2 * chi2_divergence(p, q);
  return estimate(kLocalGrid, target, [&](double l) {
    const DiscreteDistribution m = mixture(p, q, l);
    const double d = direction == MixtureDirection::mixture_first ? f_divergence(f, m, q)
                                                                  : f_divergence(f, q, m);
    return d / (l * l);
  });
}

LocalLimitEstimate renyi_local_estimate(double alpha, const DiscreteDistribution &p,
                                        const DiscreteDistribution &q)
{
  if (!(alpha >= 0.0))
  {
    throw DomainError("Renyi order must be >= 0");
  }
  require_dominated<DomainError>(p, q, "Renyi local limit");
  const double chi2 = chi2_divergence(p, q);

  if (alpha == 0.0)
  {
    // The mixture charges every atom of Q, so D_0 = -ln Q(m > 0) = 0.
    return estimate(kLocalGrid, 0.0, [](double) { return 0.0; });
  }
  if (std::isinf(alpha))
  {
    auto e = estimate(kLocalGrid, chi2 > 0.0 ? kInf : 0.0, [&](double l) {
      const DiscreteDistribution m = mixture(p, q, l);
      double top = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i)
      {
        if (q[i] > 0.0)
        {
          top = std::max(top, (m[i] - q[i]) / q[i]);
        }
      }
      return std::log1p(top) / (l * l);
    });
    if (chi2 > 0.0)
    {
      e.extrapolated = kInf;
      e.residual = 0.0;
      e.error = 0.0;
    }
    return e;
  }
  return estimate(kLocalGrid, 0.5 * alpha * chi2, [&](double l) {
    return renyi(alpha, mixture(p, q, l), q) / (l * l);
  });
}

LocalLimitEstimate ratio_limit_pair(const GeneratorFunction &f, const GeneratorFunction &g,
                                    const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  const double f2 = second_at_one(f);
  const double g2 = second_at_one(g);
  if (!(g2 > 0.0))
  {
    throw DomainError("ratio limit needs g''(1) > 0");
  }
  require_dominated<DomainError>(p, q, "ratio limit");
  if (p == q)
  {
    throw DomainError("ratio limit needs P != Q");
  }
  return estimate(kRatioGrid, f2 / g2, [&](double l) {
    const DiscreteDistribution m = mixture(p, q, l);
    return f_divergence(f, m, q) / f_divergence(g, m, q);
  });
}

}  // namespace divkit
