#include "divkit/representation.hpp"

#include "divkit/error.hpp"
#include "divkit/quadrature.hpp"
#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace divkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-10;

// Integral of h over [a, b]; b may be +inf.
using Piece = std::function<double(double, double)>;

void require_mutual(const SpectrumFunction &s, const char *what)
{
  if (!s.mutually_continuous())
  {
    throw ContinuityError(std::string(what) + ": P and Q must be mutually absolutely continuous");
  }
}

void require_p_ll_q(const SpectrumFunction &s, const char *what)
{
  if (s.singular_mass_p != 0.0)
  {
    throw ContinuityError(std::string(what) + ": P must be absolutely continuous w.r.t. Q");
  }
}

template <class A>
Piece antiderivative(A a)
{
  return [a](double lo, double hi) { return a(hi) - a(lo); };
}

Piece quadrature(std::function<double(double)> h, Piece tail = {})
{
  return [h = std::move(h), tail = std::move(tail)](double lo, double hi) {
    if (std::isinf(hi))
    {
      if (!tail)
      {
        throw DomainError("integrand has no closed-form tail");
      }
      return tail(lo, hi);
    }
    return integrate(h, lo, hi, kRelTol);
  };
}

// int_lo^hi h(b) v(b) db where v(b) = F(ln b), or 1 - F(ln b) if `complement`.
// F is constant on [0, b_1), [b_1, b_2), ..., [b_m, inf); pieces where v
// vanishes are skipped, so h is never evaluated there.
double integrate_steps(const SpectrumFunction &s, double lo, double hi, bool complement,
                       const Piece &piece)
{
  detail::CompensatedSum total;
  const std::size_t m = s.breakpoints.size();
  for (std::size_t k = 0; k <= m; ++k)
  {
    const double cdf = k == 0 ? 0.0 : s.cum_masses[k - 1];
    const double v = complement ? 1.0 - cdf : cdf;
    const double a = std::max(k == 0 ? 0.0 : std::exp(s.breakpoints[k - 1]), lo);
    const double b = std::min(k == m ? kInf : std::exp(s.breakpoints[k]), hi);
    if (v == 0.0 || !(a < b))
    {
      continue;
    }
    total += v * piece(a, b);
  }
  return total.value();
}

// int_1^inf h (1 - F) + sign * int_0^1 h F.
double two_tails(const SpectrumFunction &s, const Piece &piece, double sign)
{
  return integrate_steps(s, 1.0, kInf, true, piece) +
         sign * integrate_steps(s, 0.0, 1.0, false, piece);
}

double binary_entropy(double theta)
{
  return -theta * std::log(theta) - (1.0 - theta) * std::log1p(-theta);
}

// int ln(1 + k b) / b^2 db on finite pieces by quadrature; the tail to
// infinity uses the antiderivative -ln(1 + k b)/b + k ln(b / (1 + k b)).
Piece lin_piece(double k)
{
  auto antider = [k](double b) {
    if (std::isinf(b))
    {
      return -k * std::log(k);
    }
    return -std::log1p(k * b) / b + k * std::log(b / (1.0 + k * b));
  };
  return quadrature([k](double b) { return std::log1p(k * b) / (b * b); },
                    antiderivative(antider));
}

// Hellinger-type integral: int_0^inf b^(alpha-2) F for alpha < 1 and
// int_0^inf b^(alpha-2) (1 - F) for alpha > 1.
double power_integral(const SpectrumFunction &s, double alpha)
{
  auto antider = [alpha](double b) { return std::pow(b, alpha - 1.0) / (alpha - 1.0); };
  return integrate_steps(s, 0.0, kInf, alpha > 1.0, antiderivative(antider));
}

double hellinger_rep(const SpectrumFunction &s, double alpha)
{
  const double integral = power_integral(s, alpha);
  return alpha < 1.0 ? 1.0 / (1.0 - alpha) - integral : integral - 1.0 / (alpha - 1.0);
}

double kl_rep(const SpectrumFunction &s)
{
  return two_tails(s, antiderivative([](double b) { return std::log(b); }), -1.0);
}

double inverse_square_root_integral(const SpectrumFunction &s)
{
  return integrate_steps(s, 0.0, kInf, false,
                         antiderivative([](double b) { return -2.0 / std::sqrt(b); }));
}

const auto kInverseSquare = antiderivative([](double b) { return -1.0 / b; });

void check_alpha(double alpha)
{
  if (!(alpha > 0.0) || !std::isfinite(alpha))
  {
    throw DomainError("order must be positive and finite");
  }
}

}  // namespace

double SegmentedIntegrand::integrate(double rel_tol) const
{
  detail::CompensatedSum total;
  for (const auto &seg : segments)
  {
    total += seg.g * divkit::integrate(weight, seg.lo, seg.hi, rel_tol);
  }
  return total.value();
}

std::vector<Segment> g_segments(const SpectrumFunction &s)
{
  require_mutual(s, "G segments");
  std::vector<Segment> out;
  const std::size_t m = s.breakpoints.size();
  for (std::size_t k = 1; k < m; ++k)
  {
    const double a = std::exp(s.breakpoints[k - 1]);
    const double b = std::exp(s.breakpoints[k]);
    const double cdf = s.cum_masses[k - 1];
    if (b <= 1.0)
    {
      out.push_back({a, b, cdf});
    }
    else if (a >= 1.0)
    {
      out.push_back({a, b, 1.0 - cdf});
    }
    else
    {
      out.push_back({a, 1.0, cdf});
      out.push_back({1.0, b, 1.0 - cdf});
    }
  }
  std::erase_if(out, [](const Segment &seg) { return seg.g == 0.0 || !(seg.lo < seg.hi); });
  return out;
}

double represent_general(const GeneratorFunction &f, const DiscreteDistribution &p,
                         const DiscreteDistribution &q, double c)
{
  const SpectrumFunction s = spectrum(p, q);
  require_mutual(s, "represent_general");
  if (f.kink())
  {
    throw KinkError("represent_general: '" + f.name() +
                    "' is not differentiable; use the named representation");
  }
  SegmentedIntegrand integrand{g_segments(s), [&f, c](double b) { return weight(f, b, c); }};
  return integrand.integrate(kRelTol);
}

double represent_lemma2(const GeneratorFunction &f, const DiscreteDistribution &p,
                        const DiscreteDistribution &q)
{
  const SpectrumFunction s = spectrum(p, q);
  require_mutual(s, "represent_lemma2");
  const auto &xs = s.breakpoints;
  detail::CompensatedSum total;

  auto sweep = [&](std::vector<double> knots, Branch branch) {
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    double lo = 0.0;
    for (const double hi : knots)
    {
      // Between consecutive knots l(t) stays inside one step of F, so the
      // integrand is constant there; probing at an endpoint would hit the jump.
      const double cdf = spectrum_eval(s, g_inverse(f, 0.5 * (lo + hi), branch));
      total += (hi - lo) * (branch == Branch::positive ? 1.0 - cdf : cdf);
      lo = hi;
    }
  };

  // 1 - F(l1(t)) vanishes once l1(t) passes the largest ratio, and F(l2(t))
  // once l2(t) drops below the smallest, so both t-ranges end at a knot.
  std::vector<double> pos;
  std::vector<double> neg;
  for (const double x : xs)
  {
    if (x > 0.0)
    {
      pos.push_back(g_eval(f, x));
    }
    else if (x < 0.0)
    {
      neg.push_back(g_eval(f, x));
    }
  }
  sweep(std::move(pos), Branch::positive);
  sweep(std::move(neg), Branch::negative);
  return total.value();
}

double represent_tv(const DiscreteDistribution &p, const DiscreteDistribution &q, TvForm form)
{
  const SpectrumFunction s = spectrum(p, q);
  if (form == TvForm::upper_tail)
  {
    require_p_ll_q(s, "represent_tv");
    return 2.0 * integrate_steps(s, 1.0, kInf, true, kInverseSquare);
  }
  require_mutual(s, "represent_tv");
  return 2.0 * integrate_steps(s, 0.0, 1.0, false, kInverseSquare);
}

double represent_named(const DivergenceSpec &spec, const DiscreteDistribution &p,
                       const DiscreteDistribution &q)
{
  const SpectrumFunction s = spectrum(p, q);
  const double param = spec.param;

  if (spec.kind == DivergenceKind::e_gamma)
  {
    if (!(param >= 1.0) || !std::isfinite(param))
    {
      throw DomainError("e_gamma: gamma must be >= 1");
    }
    require_p_ll_q(s, "represent_named");
    return param * integrate_steps(s, param, kInf, true, kInverseSquare);
  }
  if (spec.kind == DivergenceKind::degroot)
  {
    if (!(param > 0.0 && param < 1.0))
    {
      throw DomainError("degroot: omega must lie in (0, 1)");
    }
    const double knot = (1.0 - param) / param;
    if (param <= 0.5)
    {
      require_p_ll_q(s, "represent_named");
      return (1.0 - param) * integrate_steps(s, knot, kInf, true, kInverseSquare);
    }
    require_mutual(s, "represent_named");
    return (1.0 - param) * integrate_steps(s, 0.0, knot, false, kInverseSquare);
  }

  require_mutual(s, "represent_named");
  switch (spec.kind)
  {
  case DivergenceKind::kl:
    return kl_rep(s);
  case DivergenceKind::hellinger:
    check_alpha(param);
    return param == 1.0 ? kl_rep(s) : hellinger_rep(s, param);
  case DivergenceKind::alpha:
    check_alpha(param);
    return param == 1.0 ? kl_rep(s) : hellinger_rep(s, param) / param;
  case DivergenceKind::chi2:
    return integrate_steps(s, 0.0, kInf, true, antiderivative([](double b) { return b; })) - 1.0;
  case DivergenceKind::sq_hellinger:
    return 1.0 - 0.5 * inverse_square_root_integral(s);
  case DivergenceKind::bhattacharyya:
    return std::numbers::ln2 - std::log(inverse_square_root_integral(s));
  case DivergenceKind::renyi: {
    check_alpha(param);
    if (param == 1.0)
    {
      return kl_rep(s);
    }
    const double scale = param < 1.0 ? 1.0 - param : param - 1.0;
    return std::log(scale * power_integral(s, param)) / (param - 1.0);
  }
  case DivergenceKind::chi_s: {
    if (!(param >= 1.0) || !std::isfinite(param))
    {
      throw DomainError("chi_s: s must be >= 1");
    }
    auto antider = [sv = param](double b) {
      return std::copysign(std::pow(std::abs(b - 1.0), sv), b - 1.0) / b;
    };
    return two_tails(s, antiderivative(antider), 1.0);
  }
  case DivergenceKind::tv:
    return 2.0 * integrate_steps(s, 1.0, kInf, true, kInverseSquare);
  case DivergenceKind::triangular:
    return 4.0 * integrate_steps(s, 0.0, kInf, true,
                                 antiderivative([](double b) { return -1.0 / (b + 1.0); })) -
           2.0;
  case DivergenceKind::lin: {
    if (!(param > 0.0 && param < 1.0))
    {
      throw DomainError("lin: theta must lie in (0, 1)");
    }
    const double k = param / (1.0 - param);
    return binary_entropy(param) -
           (1.0 - param) * integrate_steps(s, 0.0, kInf, false, lin_piece(k));
  }
  case DivergenceKind::js:
    return std::numbers::ln2 - 0.5 * integrate_steps(s, 0.0, kInf, false, lin_piece(1.0));
  case DivergenceKind::jeffreys: {
    const Piece piece = quadrature([](double b) { return 1.0 / b + std::log(b) / (b * b); });
    return two_tails(s, piece, -1.0);
  }
  case DivergenceKind::e_gamma:
  case DivergenceKind::degroot:
    break;
  }
  throw DispatchError("represent_named: no representation for '" + kind_name(spec.kind) + "'");
}

double spectrum_identity(const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  const SpectrumFunction s = spectrum(p, q);
  require_p_ll_q(s, "spectrum_identity");
  return integrate_steps(s, 0.0, kInf, false, kInverseSquare);
}

double spectrum_from_egamma(const DiscreteDistribution &p, const DiscreteDistribution &q,
                            double x)
{
  require_mutual(spectrum(p, q), "spectrum_from_egamma");
  if (!std::isfinite(x))
  {
    throw DomainError("spectrum_from_egamma: x must be finite");
  }
  if (x >= 0.0)
  {
    const double gamma = std::exp(x);
    if (std::isinf(gamma))
    {
      throw DomainError("spectrum_from_egamma: x is too large");
    }
    return 1.0 - e_gamma(gamma, p, q) + gamma * e_gamma_slope(gamma, p, q, Side::right);
  }
  const double gamma = std::exp(-x);
  if (std::isinf(gamma))
  {
    throw DomainError("spectrum_from_egamma: x is too small");
  }
  return -e_gamma_slope(gamma, q, p, Side::left);
}

double spectrum_from_degroot(const DiscreteDistribution &p, const DiscreteDistribution &q,
                             double x)
{
  require_mutual(spectrum(p, q), "spectrum_from_degroot");
  const double omega = 1.0 / (1.0 + std::exp(x));
  if (!(omega > 0.0 && omega < 1.0))
  {
    throw DomainError("spectrum_from_degroot: x is out of range");
  }
  const double info = degroot(omega, p, q);
  const double slope = degroot_slope(omega, p, q, Side::left);
  if (x >= 0.0)
  {
    return 1.0 - info - (1.0 - omega) * slope;
  }
  return -info - (1.0 - omega) * slope;
}

double represent_degroot_weight(const GeneratorFunction &f, const DiscreteDistribution &p,
                                const DiscreteDistribution &q)
{
  if (!f.has_second_derivative())
  {
    throw CapabilityError("represent_degroot_weight: '" + f.name() +
                          "' has no second derivative");
  }
  require_mutual(spectrum(p, q), "represent_degroot_weight");

  // I_w is piecewise linear with knots at q_i / (p_i + q_i) and at 1/2, and
  // vanishes outside the outermost atom knots.
  std::vector<double> knots;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    if (p[i] > 0.0)
    {
      knots.push_back(q[i] / (p[i] + q[i]));
    }
  }
  std::sort(knots.begin(), knots.end());
  if (knots.front() < 0.5 && 0.5 < knots.back())
  {
    knots.push_back(0.5);
    std::sort(knots.begin(), knots.end());
  }
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  auto integrand = [&](double w) {
    const double t = (1.0 - w) / w;
    return degroot(w, p, q) * f.second_derivative(t) / (w * w * w);
  };
  detail::CompensatedSum total;
  for (std::size_t k = 1; k < knots.size(); ++k)
  {
    total += integrate(integrand, knots[k - 1], knots[k], kRelTol);
  }
  return total.value();
}

}  // namespace divkit
