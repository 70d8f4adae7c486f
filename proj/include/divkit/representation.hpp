#pragma once

#include "divkit/distribution.hpp"
#include "divkit/divergence.hpp"
#include "divkit/generator.hpp"

#include <functional>
#include <vector>

namespace divkit {

/// Piece of the step function G_{P||Q}: constant value `g` on [lo, hi).
struct Segment
{
  double lo;
  double hi;
  double g;
};

/// w(beta) * G(beta) with G stored as its constant pieces. The pieces cover
/// [beta_min, beta_max] (the extreme likelihood ratios) and are split at 1.
struct SegmentedIntegrand
{
  std::vector<Segment> segments;
  std::function<double(double)> weight;

  /// Sum over pieces of g * integral of the weight, in segment order.
  double integrate(double rel_tol = 1e-10) const;
};

/// Pieces of G_{P||Q} for a mutually absolutely continuous pair. Throws
/// ContinuityError otherwise.
std::vector<Segment> g_segments(const SpectrumFunction &spectrum);

/// <w~_{f,c}, G_{P||Q}> by quadrature on each piece of G. Needs P <<>> Q and a
/// generator that is differentiable on (0, inf).
double represent_general(const GeneratorFunction &f, const DiscreteDistribution &p,
                         const DiscreteDistribution &q, double c = 0.0);

/// int_0^a [1 - F(l1(t))] dt + int_0^b F(l2(t)) dt with l1, l2 the two
/// inverses of g. Needs P <<>> Q.
double represent_lemma2(const GeneratorFunction &f, const DiscreteDistribution &p,
                        const DiscreteDistribution &q);

/// Closed integral formula of the named divergence in terms of the spectrum.
/// e_gamma and degroot with omega <= 1/2 need only P << Q; every other kind
/// needs P <<>> Q.
double represent_named(const DivergenceSpec &spec, const DiscreteDistribution &p,
                       const DiscreteDistribution &q);

enum class TvForm
{
  upper_tail,  // 2 int_1^inf (1 - F(ln b)) / b^2 db
  lower_tail,  // 2 int_0^1 F(ln b) / b^2 db
};

double represent_tv(const DiscreteDistribution &p, const DiscreteDistribution &q, TvForm form);

/// int_0^inf F(ln b) / b^2 db, integrated exactly piece by piece. Needs P << Q.
/// The result is Q(p > 0), which is 1 once Q << P as well.
double spectrum_identity(const DiscreteDistribution &p, const DiscreteDistribution &q);

/// F_{P||Q}(x) rebuilt from the E_gamma curve: 1 - E_g + g E'_g(P||Q) at
/// g = e^x for x >= 0 (right slope), -E'_g(Q||P) at g = e^-x for x < 0 (left
/// slope). Both give the right-continuous value, atoms included.
double spectrum_from_egamma(const DiscreteDistribution &p, const DiscreteDistribution &q,
                            double x);

/// F_{P||Q}(x) rebuilt from the DeGroot curve at omega = 1/(1 + e^x), using
/// the left slope in omega.
double spectrum_from_degroot(const DiscreteDistribution &p, const DiscreteDistribution &q,
                             double x);

/// int_0^1 I_w(P||Q) w^-3 f''((1-w)/w) dw, split where I_w changes slope.
/// Needs P <<>> Q and a family that supplies f''.
double represent_degroot_weight(const GeneratorFunction &f, const DiscreteDistribution &p,
                                const DiscreteDistribution &q);

}  // namespace divkit
