#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace divkit {

/// Probability mass function over the alphabet {0, ..., n-1}.
///
/// Masses are non-negative, at least one is positive, and they are stored
/// normalized by their total. Values are immutable after construction.
class DiscreteDistribution
{
public:
  /// Normalizes `weights` by their sum. Throws ValidationError on an empty
  /// vector, a negative or non-finite weight, or an all-zero vector.
  explicit DiscreteDistribution(std::vector<double> weights);

  std::span<const double> masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i]; }

  bool operator==(const DiscreteDistribution &) const = default;

private:
  struct AlreadyNormalized {};
  DiscreteDistribution(AlreadyNormalized, std::vector<double> masses);

  friend DiscreteDistribution mixture(const DiscreteDistribution &, const DiscreteDistribution &,
                                      double);

  std::vector<double> masses_;
};

DiscreteDistribution make_distribution(std::vector<double> weights);

/// Throws ValidationError unless both distributions live on the same alphabet.
void require_shared_alphabet(const DiscreteDistribution &p, const DiscreteDistribution &q);

/// ln(p/q) at `atom`, evaluated as ln p - ln q so that swapping the arguments
/// negates the result bit for bit. +inf when q = 0 < p, -inf when p = 0 < q.
double relative_information(const DiscreteDistribution &p, const DiscreteDistribution &q,
                            std::size_t atom);

/// Relative information spectrum: the CDF of ln(dP/dQ)(X) for X ~ P, stored
/// as a right-continuous step function.
///
/// `breakpoints` are the distinct finite log-likelihood ratios over atoms with
/// p > 0 and q > 0, sorted ascending; `cum_masses[j]` is the value of the CDF
/// on [breakpoints[j], breakpoints[j+1]). Atoms with q = 0 < p never enter the
/// finite part, so the CDF tops out at 1 - singular_mass_p.
struct SpectrumFunction
{
  std::vector<double> breakpoints;
  std::vector<double> cum_masses;
  double singular_mass_p = 0.0;  // P(q = 0)
  double singular_mass_q = 0.0;  // Q(p = 0)

  bool mutually_continuous() const noexcept
  {
    return singular_mass_p == 0.0 && singular_mass_q == 0.0;
  }
};

SpectrumFunction spectrum(const DiscreteDistribution &p, const DiscreteDistribution &q);

/// F(x) for finite x; 0 below the first breakpoint.
double spectrum_eval(const SpectrumFunction &f, double x);

/// G(beta) = 1 - F(ln beta) for beta >= 1 and F(ln beta) for 0 < beta < 1.
double g_big(const SpectrumFunction &f, double beta);
double g_big(const DiscreteDistribution &p, const DiscreteDistribution &q, double beta);

/// Atomwise lambda * p + (1 - lambda) * q, lambda in [0, 1].
DiscreteDistribution mixture(const DiscreteDistribution &p, const DiscreteDistribution &q,
                             double lambda);

}  // namespace divkit
