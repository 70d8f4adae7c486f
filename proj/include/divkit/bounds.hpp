#pragma once

#include "divkit/distribution.hpp"
#include "divkit/generator.hpp"
#include "divkit/lambert_w.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace divkit {

enum class Direction
{
  lower,
  upper,
};

/// Outcome of one inequality. `certified_quantity` is the divergence the
/// bound is about, when a pair of distributions was supplied; `slack` is
/// positive when the bound holds.
struct BoundReport
{
  std::string name;
  double bound_value = 0.0;
  std::optional<double> certified_quantity;
  Direction direction = Direction::lower;
  std::optional<double> slack;
};

/// Lower bound on D_f(P||Q) from E_gamma(P||Q):
///   f*(1 + E/g) + f*((1 - E)/g) - f*(1/g).
/// e_val in [0, 1]; e_val = 1 makes the middle argument 0 and uses f*(0).
double fdiv_lower_via_egamma(const GeneratorFunction &f, double e_val, double gamma);

enum class EgammaUpperKind
{
  chi2,
  kl,
};

/// Upper bound on E_gamma(P||Q) from chi^2(P||Q) or D(P||Q) in nats.
double egamma_upper(EgammaUpperKind kind, double gamma, double value);

enum class HellingerRenyi
{
  hellinger,
  renyi,
};

/// Lower bounds on H_alpha(P||Q) or D_alpha(P||Q) from E_gamma(P||Q).
double hellinger_renyi_lower(HellingerRenyi kind, double alpha, double gamma, double e_val);

enum class Frontier
{
  pinsker_lb_kl,  // tv -> D lower bound
  bh_lb_kl,       // tv -> D lower bound
  vajda_lb_kl,    // tv -> D lower bound
  bh_ub_tv,       // D -> tv upper bound
  vajda_ub_tv,    // D -> tv upper bound, via W_0
};

double tv_kl_frontier(Frontier kind, double value);

/// t_gamma = -gamma W_-1(-e^{-1/gamma} / gamma), gamma > 1.
double t_gamma(double gamma);

/// sup E_gamma / D over P << Q, in nats^-1. gamma > 1.
double c_gamma(double gamma);

/// c_gamma * D.
double straight_line_egamma_ub(double gamma, double d);

enum class DegrootUpperKind
{
  chi2,
  kl_line,
  kl_bh,
};

/// Upper bounds on I_omega(P||Q). Branches with omega <= 1/2 read the P||Q
/// values and branches with omega > 1/2 read the Q||P values; kl_line at
/// omega = 1/2 uses min(d_pq, d_qp).
double degroot_upper(DegrootUpperKind kind, double omega, double d_pq, double d_qp,
                     double chi_pq, double chi_qp);

/// Lower bound on D_f(P||Q) from DeGroot information. For omega <= 1/2,
/// i_val is I_omega(P||Q); for omega > 1/2 it is I_omega(Q||P).
double fdiv_lower_via_degroot(const GeneratorFunction &f, double omega, double i_val);

enum class Chi2TvKind
{
  tight,
  jensen,
};

/// Lower bound on chi^2(P||Q) from |P - Q| in [0, 2).
double chi2_lower_from_tv(Chi2TvKind kind, double tv);

/// ln(1 + chi^2), an upper bound on D(P||Q).
double kl_upper_log_chi2(double chi2);

/// The D > 0 where c_gamma D meets the E_gamma upper bound from D, by
/// bisection on [1e-6, 50].
double crossover_d(double gamma);

/// The D where Pinsker's TV bound sqrt(2D) meets the Bretagnolle-Huber bound
/// 2 sqrt(1 - e^-D).
double pinsker_bh_switch();

/// Named inequality with string arguments, as used by the command line.
struct BoundEntry
{
  std::string name;
  Direction direction;
  std::string certifies;            // the quantity being bounded
  std::vector<std::string> params;  // fixed arguments, always supplied
  std::vector<std::string> inputs;  // measured arguments, derivable from a pair
};

using BoundArgs = std::map<std::string, std::string>;

const std::vector<BoundEntry> &bound_catalog();

/// Evaluates a catalog bound. With a pair, missing inputs are measured from
/// it and the report carries the certified quantity and slack.
BoundReport evaluate_bound(const std::string &name, const BoundArgs &args,
                           const DiscreteDistribution *p = nullptr,
                           const DiscreteDistribution *q = nullptr);

}  // namespace divkit
