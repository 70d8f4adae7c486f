#pragma once

#include "divkit/distribution.hpp"
#include "divkit/generator.hpp"

#include <string>
#include <string_view>

namespace divkit {

enum class DivergenceKind
{
  kl,
  jeffreys,
  hellinger,      // param: alpha
  chi2,
  sq_hellinger,
  bhattacharyya,
  alpha,          // param: alpha; (1/alpha) * Hellinger of the same order
  renyi,          // param: alpha
  chi_s,          // param: s
  tv,
  triangular,
  lin,            // param: theta
  js,
  e_gamma,        // param: gamma
  degroot,        // param: omega
};

struct DivergenceSpec
{
  DivergenceKind kind;
  double param = 0.0;
};

bool takes_param(DivergenceKind kind) noexcept;

/// "kl", "hellinger:0.5", "renyi:2", "e_gamma:1.5", ... Throws DispatchError
/// for an unknown name and ValidationError for a missing or malformed parameter.
DivergenceSpec parse_divergence(std::string_view text);
std::string kind_name(DivergenceKind kind);
std::string to_string(const DivergenceSpec &spec);

/// Generator whose f-divergence is the named quantity. Throws DispatchError
/// for kinds that are transforms of an f-divergence rather than one
/// (bhattacharyya, renyi).
GeneratorFunction generator_for(const DivergenceSpec &spec);

/// sum_{p,q>0} q f(p/q) + Q(p=0) f(0) + P(q=0) f*(0), with 0 * inf = 0.
/// Infinite results are returned as +inf.
double f_divergence(const GeneratorFunction &f, const DiscreteDistribution &p,
                    const DiscreteDistribution &q);

/// Named divergence in nats. Parameter ranges as for the generators; order 1
/// of hellinger, alpha and renyi is taken as the KL limit.
double divergence(const DivergenceSpec &spec, const DiscreteDistribution &p,
                  const DiscreteDistribution &q);

double kl_divergence(const DiscreteDistribution &p, const DiscreteDistribution &q);
double chi2_divergence(const DiscreteDistribution &p, const DiscreteDistribution &q);
double total_variation(const DiscreteDistribution &p, const DiscreteDistribution &q);

/// Rényi divergence of order alpha > 0; alpha = 1 gives KL.
double renyi(double alpha, const DiscreteDistribution &p, const DiscreteDistribution &q);

/// E_gamma(P||Q) = sum (p - gamma q)^+, gamma >= 1.
double e_gamma(double gamma, const DiscreteDistribution &p, const DiscreteDistribution &q);

/// I_omega(P||Q) = min{omega, 1-omega} - sum min{omega p, (1-omega) q}.
double degroot(double omega, const DiscreteDistribution &p, const DiscreteDistribution &q);

/// I_omega computed as omega E_{(1-omega)/omega}(P||Q) for omega <= 1/2 and
/// (1-omega) E_{omega/(1-omega)}(Q||P) otherwise.
double degroot_from_egamma(double omega, const DiscreteDistribution &p,
                           const DiscreteDistribution &q);

enum class Side
{
  left,
  right,
};

/// One-sided derivative of the piecewise-linear map gamma -> E_gamma(P||Q).
/// Valid for any gamma > 0 (the sum formula extends below 1).
double e_gamma_slope(double gamma, const DiscreteDistribution &p, const DiscreteDistribution &q,
                     Side side);

/// One-sided derivative of the piecewise-linear map omega -> I_omega(P||Q).
double degroot_slope(double omega, const DiscreteDistribution &p, const DiscreteDistribution &q,
                     Side side);

}  // namespace divkit
