#pragma once

#include "divkit/distribution.hpp"
#include "divkit/generator.hpp"

#include <vector>

namespace divkit {

/// chi^2(lambda P + (1-lambda) Q || Q), evaluated on the mixture masses.
/// Equals lambda^2 chi^2(P||Q) exactly. Throws ContinuityError unless P << Q.
double chi2_mixture_scaling(const DiscreteDistribution &p, const DiscreteDistribution &q,
                            double lambda);

/// chi^s(lambda P + (1-lambda) Q || Q) = sum |m - q|^s / q^(s-1), s >= 1.
/// Equals lambda^s chi^s(P||Q).
double chis_mixture_scaling(const DiscreteDistribution &p, const DiscreteDistribution &q,
                            double s, double lambda);

struct ThreeMeasureChi2
{
  double value;    // chi^2(lambda P + (1-lambda) Q || R)
  double c_coeff;  // sum (p - q) q / r
};

/// Mixture chi^2 against a third measure. With c = c_coeff,
///   value - chi^2(Q||R) = 2c lambda + [chi^2(P||R) - chi^2(Q||R) - 2c] lambda^2.
/// Throws ContinuityError if r = 0 on an atom where p > 0 or q > 0.
ThreeMeasureChi2 chi2_mixture_three(const DiscreteDistribution &p, const DiscreteDistribution &q,
                                    const DiscreteDistribution &r, double lambda);

/// Right-hand side of the identity above, from the three chi^2 inputs.
double chi2_three_identity_rhs(double chi2_pr, double chi2_qr, double c_coeff, double lambda);

enum class MixtureDirection
{
  mixture_first,   // D_f(lambda P + (1-lambda) Q || Q)
  mixture_second,  // D_f(Q || lambda P + (1-lambda) Q)
};

/// Ratios D(mixture)/lambda^2 on a decreasing lambda grid, extrapolated to
/// lambda -> 0 from the last two grid points.
struct LocalLimitEstimate
{
  std::vector<double> lambdas;
  std::vector<double> ratios;
  double extrapolated = 0.0;
  double residual = 0.0;  // |extrapolation from the last pair - from the pair before|
  double target = 0.0;
  double error = 0.0;     // |extrapolated - target|
};

/// Grid {1e-1, 1e-2, 1e-3, 1e-4}; target f''(1) chi^2(P||Q) / 2.
/// Throws CapabilityError when f has no second derivative at 1 and
/// DomainError when P has an atom outside the support of Q.
LocalLimitEstimate local_limit_estimate(const GeneratorFunction &f, const DiscreteDistribution &p,
                                        const DiscreteDistribution &q,
                                        MixtureDirection direction);

/// D_alpha(lambda P + (1-lambda) Q || Q) / lambda^2, target alpha chi^2 / 2.
/// alpha = 0 gives identically 0 and alpha = inf (the max-ratio divergence)
/// grows without bound, so its target and extrapolation are +inf unless P = Q.
LocalLimitEstimate renyi_local_estimate(double alpha, const DiscreteDistribution &p,
                                        const DiscreteDistribution &q);

/// D_f/D_g along the mixture path on {1e-2, 1e-3, 1e-4}; target
/// f''(1)/g''(1). Throws DomainError unless g''(1) > 0.
LocalLimitEstimate ratio_limit_pair(const GeneratorFunction &f, const GeneratorFunction &g,
                                    const DiscreteDistribution &p, const DiscreteDistribution &q);

}  // namespace divkit
