#include "divkit/generator.hpp"

#include "divkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <memory>
#include <string>
#include <utility>

namespace divkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_param(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string with_param(const char *base, double v)
{
  return std::string(base) + ":" + format_param(v);
}

GeneratorFunction make_kl()
{
  GeneratorFunction::Parts p;
  p.name = "kl";
  p.family = Family::kl;
  p.f = [](double t) { return t * std::log(t); };
  p.df = [](double t) { return std::log(t) + 1.0; };
  p.d2f = [](double t) { return 1.0 / t; };
  p.f_at_zero = 0.0;
  p.fstar_at_zero = kInf;
  p.right_deriv_at_one = p.left_deriv_at_one = 1.0;
  p.second_at_one = 1.0;
  return GeneratorFunction(std::move(p));
}

GeneratorFunction make_jeffreys()
{
  GeneratorFunction::Parts p;
  p.name = "jeffreys";
  p.family = Family::jeffreys;
  p.f = [](double t) { return (t - 1.0) * std::log(t); };
  p.df = [](double t) { return std::log(t) + 1.0 - 1.0 / t; };
  p.d2f = [](double t) { return 1.0 / t + 1.0 / (t * t); };
  p.f_at_zero = kInf;
  p.fstar_at_zero = kInf;
  p.right_deriv_at_one = p.left_deriv_at_one = 0.0;
  p.second_at_one = 2.0;
  return GeneratorFunction(std::move(p));
}

GeneratorFunction make_hellinger(double alpha)
{
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha))
  {
    throw DomainError("hellinger: alpha must lie in (0,1) u (1,inf)");
  }
  GeneratorFunction::Parts p;
  p.name = with_param("hellinger", alpha);
  p.family = Family::hellinger;
  p.param = alpha;
  p.f = [alpha](double t) { return std::expm1(alpha * std::log(t)) / (alpha - 1.0); };
  p.df = [alpha](double t) { return alpha * std::pow(t, alpha - 1.0) / (alpha - 1.0); };
  p.d2f = [alpha](double t) { return alpha * std::pow(t, alpha - 2.0); };
  p.f_at_zero = -1.0 / (alpha - 1.0);
  p.fstar_at_zero = alpha > 1.0 ? kInf : 0.0;
  p.right_deriv_at_one = p.left_deriv_at_one = alpha / (alpha - 1.0);
  p.second_at_one = alpha;
  return GeneratorFunction(std::move(p));
}

GeneratorFunction make_abs_power(double s, Family family, std::string name)
{
  GeneratorFunction::Parts p;
  p.name = std::move(name);
  p.family = family;
  p.param = s;
  p.f_at_zero = 1.0;
  if (s == 1.0)
  {
    p.f = [](double t) { return std::abs(t - 1.0); };
    p.df = [](double t) { return t > 1.0 ? 1.0 : -1.0; };
    p.fstar_at_zero = 1.0;
    p.right_deriv_at_one = 1.0;
    p.left_deriv_at_one = -1.0;
    p.kink = 1.0;
    return GeneratorFunction(std::move(p));
  }
  p.f = [s](double t) { return std::pow(std::abs(t - 1.0), s); };
  p.df = [s](double t) {
    const double d = t - 1.0;
    if (d == 0.0)
    {
      return 0.0;
    }
    return std::copysign(s * std::pow(std::abs(d), s - 1.0), d);
  };
  p.d2f = [s](double t) {
    const double d = std::abs(t - 1.0);
    if (d == 0.0 && s < 2.0)
    {
      return kInf;
    }
    return s * (s - 1.0) * std::pow(d, s - 2.0);
  };
  p.fstar_at_zero = kInf;
  p.right_deriv_at_one = p.left_deriv_at_one = 0.0;
  if (s == 2.0)
  {
    p.second_at_one = 2.0;
  }
  else if (s > 2.0)
  {
    p.second_at_one = 0.0;
  }
  return GeneratorFunction(std::move(p));
}

GeneratorFunction make_chi_s(double s)
{
  if (!(s >= 1.0) || !std::isfinite(s))
  {
    throw DomainError("chi_s: s must be >= 1");
  }
  return make_abs_power(s, Family::chi_s, with_param("chi_s", s));
}

GeneratorFunction make_triangular()
{
  GeneratorFunction::Parts p;
  p.name = "triangular";
  p.family = Family::triangular;
  p.f = [](double t) { return (t - 1.0) * (t - 1.0) / (t + 1.0); };
  p.df = [](double t) { return (t - 1.0) * (t + 3.0) / ((t + 1.0) * (t + 1.0)); };
  p.d2f = [](double t) { return 8.0 / ((t + 1.0) * (t + 1.0) * (t + 1.0)); };
  p.f_at_zero = 1.0;
  p.fstar_at_zero = 1.0;
  p.right_deriv_at_one = p.left_deriv_at_one = 0.0;
  p.second_at_one = 1.0;
  return GeneratorFunction(std::move(p));
}

GeneratorFunction make_lin(double theta, Family family, std::string name)
{
  if (!(theta > 0.0 && theta < 1.0))
  {
    throw DomainError("lin: theta must lie in (0, 1)");
  }
  GeneratorFunction::Parts p;
  p.name = std::move(name);
  p.family = family;
  p.param = theta;
  p.f = [theta](double t) {
    const double m = theta * t + 1.0 - theta;
    return theta * t * std::log(t) - m * std::log(m);
  };
  p.df = [theta](double t) { return theta * std::log(t / (theta * t + 1.0 - theta)); };
  p.d2f = [theta](double t) { return theta * (1.0 - theta) / (t * (theta * t + 1.0 - theta)); };
  p.f_at_zero = -(1.0 - theta) * std::log(1.0 - theta);
  p.fstar_at_zero = -theta * std::log(theta);
  p.right_deriv_at_one = p.left_deriv_at_one = 0.0;
  p.second_at_one = theta * (1.0 - theta);
  return GeneratorFunction(std::move(p));
}

GeneratorFunction make_e_gamma(double gamma)
{
  if (!(gamma >= 1.0) || !std::isfinite(gamma))
  {
    throw DomainError("e_gamma: gamma must be >= 1");
  }
  GeneratorFunction::Parts p;
  p.name = with_param("e_gamma", gamma);
  p.family = Family::e_gamma;
  p.param = gamma;
  p.f = [gamma](double t) { return std::max(t - gamma, 0.0); };
  p.df = [gamma](double t) { return t > gamma ? 1.0 : 0.0; };
  p.f_at_zero = 0.0;
  p.fstar_at_zero = 1.0;
  p.right_deriv_at_one = gamma == 1.0 ? 1.0 : 0.0;
  p.left_deriv_at_one = 0.0;
  if (gamma > 1.0)
  {
    p.second_at_one = 0.0;
  }
  p.kink = gamma;
  return GeneratorFunction(std::move(p));
}

GeneratorFunction make_degroot(double omega)
{
  if (!(omega > 0.0 && omega < 1.0))
  {
    throw DomainError("degroot: omega must lie in (0, 1)");
  }
  const double floor_value = std::min(omega, 1.0 - omega);
  const double knot = (1.0 - omega) / omega;
  GeneratorFunction::Parts p;
  p.name = with_param("degroot", omega);
  p.family = Family::degroot;
  p.param = omega;
  p.f = [omega, floor_value](double t) {
    return floor_value - std::min(omega * t, 1.0 - omega);
  };
  p.df = [omega, knot](double t) { return t < knot ? -omega : 0.0; };
  p.f_at_zero = floor_value;
  p.fstar_at_zero = 0.0;
  p.right_deriv_at_one = knot > 1.0 ? -omega : 0.0;
  p.left_deriv_at_one = knot >= 1.0 ? -omega : 0.0;
  if (knot != 1.0)
  {
    p.second_at_one = 0.0;
  }
  p.kink = knot;
  return GeneratorFunction(std::move(p));
}

GeneratorFunction make_chi_squared()
{
  GeneratorFunction::Parts p;
  p.name = "chi2";
  p.family = Family::chi_squared;
  p.f = [](double t) { return (t - 1.0) * (t - 1.0); };
  p.df = [](double t) { return 2.0 * (t - 1.0); };
  p.d2f = [](double) { return 2.0; };
  p.f_at_zero = 1.0;
  p.fstar_at_zero = kInf;
  p.right_deriv_at_one = p.left_deriv_at_one = 0.0;
  p.second_at_one = 2.0;
  return GeneratorFunction(std::move(p));
}

double parse_param(std::string_view name, std::string_view text)
{
  const std::string s(text);
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
  {
    throw ValidationError("generator '" + std::string(name) + "': bad parameter '" + s + "'");
  }
  return v;
}

}  // namespace

GeneratorFunction::GeneratorFunction(Parts parts) : parts_(std::move(parts))
{
  if (!parts_.f || !parts_.df)
  {
    throw ValidationError("generator '" + parts_.name + "': f and f' are required");
  }
}

double GeneratorFunction::derivative(double t) const
{
  if (parts_.kink && t == *parts_.kink)
  {
    throw KinkError("generator '" + parts_.name + "' is not differentiable at t = " +
                    format_param(t));
  }
  return parts_.df(t);
}

double GeneratorFunction::second_derivative(double t) const
{
  if (!parts_.d2f)
  {
    throw CapabilityError("generator '" + parts_.name + "' has no second derivative");
  }
  return parts_.d2f(t);
}

GeneratorFunction generator(Family family, double param)
{
  switch (family)
  {
  case Family::kl:
    return make_kl();
  case Family::jeffreys:
    return make_jeffreys();
  case Family::hellinger:
    return make_hellinger(param);
  case Family::chi_s:
    return make_chi_s(param);
  case Family::total_variation:
    return make_abs_power(1.0, Family::total_variation, "tv");
  case Family::triangular:
    return make_triangular();
  case Family::lin:
    return make_lin(param, Family::lin, with_param("lin", param));
  case Family::jensen_shannon:
    return make_lin(0.5, Family::jensen_shannon, "js");
  case Family::e_gamma:
    return make_e_gamma(param);
  case Family::degroot:
    return make_degroot(param);
  case Family::chi_squared:
    return make_chi_squared();
  case Family::custom:
    break;
  }
  throw DispatchError("generator: custom generators are built from GeneratorFunction::Parts");
}

GeneratorFunction parse_generator(std::string_view spec)
{
  const auto colon = spec.find(':');
  const std::string_view base = spec.substr(0, colon);
  const bool has_param = colon != std::string_view::npos;
  auto param = [&] {
    if (!has_param)
    {
      throw ValidationError("generator '" + std::string(base) + "' needs a parameter, e.g. " +
                            std::string(base) + ":0.5");
    }
    return parse_param(base, spec.substr(colon + 1));
  };
  auto plain = [&](Family fam) {
    if (has_param)
    {
      throw ValidationError("generator '" + std::string(base) + "' takes no parameter");
    }
    return generator(fam);
  };

  if (base == "kl")
    return plain(Family::kl);
  if (base == "jeffreys")
    return plain(Family::jeffreys);
  if (base == "hellinger")
    return generator(Family::hellinger, param());
  if (base == "chi_s")
    return generator(Family::chi_s, param());
  if (base == "tv" || base == "total_variation")
    return plain(Family::total_variation);
  if (base == "triangular")
    return plain(Family::triangular);
  if (base == "lin")
    return generator(Family::lin, param());
  if (base == "js")
    return plain(Family::jensen_shannon);
  if (base == "e_gamma")
    return generator(Family::e_gamma, param());
  if (base == "degroot")
    return generator(Family::degroot, param());
  if (base == "chi2")
    return plain(Family::chi_squared);
  throw DispatchError("unknown generator family '" + std::string(base) + "'");
}

GeneratorFunction conjugate(const GeneratorFunction &f)
{
  auto src = std::make_shared<const GeneratorFunction>(f);
  GeneratorFunction::Parts p;
  p.name = "conj(" + f.name() + ")";
  p.f = [src](double t) { return t * src->eval(1.0 / t); };
  p.df = [src](double t) {
    const double u = 1.0 / t;
    return src->eval(u) - src->derivative(u) * u;
  };
  if (f.has_second_derivative())
  {
    p.d2f = [src](double t) {
      const double u = 1.0 / t;
      return src->second_derivative(u) * u * u * u;
    };
  }
  p.f_at_zero = f.fstar_at_zero();
  p.fstar_at_zero = f.f_at_zero();
  // (f*)'(1) = f(1) - f'(1) with the one-sided derivatives trading places.
  p.right_deriv_at_one = -f.left_deriv_at_one();
  p.left_deriv_at_one = -f.right_deriv_at_one();
  p.second_at_one = f.second_at_one();
  if (f.kink())
  {
    p.kink = 1.0 / *f.kink();
  }
  return GeneratorFunction(std::move(p));
}

GeneratorFunction affine_shift(const GeneratorFunction &f, double c)
{
  auto src = std::make_shared<const GeneratorFunction>(f);
  GeneratorFunction::Parts p;
  p.name = f.name() + "+" + format_param(c) + "(t-1)";
  p.f = [src, c](double t) { return src->eval(t) + c * (t - 1.0); };
  p.df = [src, c](double t) { return src->derivative(t) + c; };
  if (f.has_second_derivative())
  {
    p.d2f = [src](double t) { return src->second_derivative(t); };
  }
  p.f_at_zero = f.f_at_zero() - c;
  p.fstar_at_zero = f.fstar_at_zero() + c;
  p.right_deriv_at_one = f.right_deriv_at_one() + c;
  p.left_deriv_at_one = f.left_deriv_at_one() + c;
  p.second_at_one = f.second_at_one();
  p.kink = f.kink();
  return GeneratorFunction(std::move(p));
}

double weight(const GeneratorFunction &f, double beta, std::optional<double> c)
{
  if (!(beta > 0.0))
  {
    throw DomainError("weight: beta must be positive");
  }
  if (f.kink() && *f.kink() == 1.0)
  {
    throw KinkError("weight: '" + f.name() + "' has no derivative at 1");
  }
  const double d1 = f.right_deriv_at_one();
  const double w = std::abs(f.derivative(beta) - (f.eval(beta) + d1) / beta) / beta;
  if (!c)
  {
    return w;
  }
  const double sign = beta >= 1.0 ? 1.0 : -1.0;
  return w + sign * *c / (beta * beta);
}

double g_eval(const GeneratorFunction &f, double x)
{
  return std::exp(-x) * f.eval(std::exp(x)) + f.right_deriv_at_one() * std::expm1(-x);
}

GRange g_range(const GeneratorFunction &f)
{
  const double d1 = f.right_deriv_at_one();
  GRange r;
  r.a = f.fstar_at_zero() - d1;
  // Strict convexity at 1 puts f(0) strictly above the tangent at 1, which
  // makes e^{-x}(f(e^x) + f'(1)) blow up as x -> -inf.
  r.b = f.f_at_zero() + d1 > 0.0 ? kInf : 0.0;
  return r;
}

double g_inverse(const GeneratorFunction &f, double t, Branch branch)
{
  if (!(t >= 0.0))
  {
    throw RangeError("g_inverse: t must be non-negative");
  }
  const GRange range = g_range(f);
  const double limit = branch == Branch::positive ? range.a : range.b;
  if (!(t < limit))
  {
    throw RangeError("g_inverse: t = " + format_param(t) + " is outside the branch range [0, " +
                     format_param(limit) + ")");
  }
  if (t == 0.0)
  {
    return 0.0;
  }
  const double sign = branch == Branch::positive ? 1.0 : -1.0;
  if (f.family() == Family::chi_squared)
  {
    // g(x) = 4 sinh^2(x/2)
    return sign * 2.0 * std::asinh(std::sqrt(t) / 2.0);
  }

  // Bracket in |x|, then bisect; g is strictly monotone on each branch.
  constexpr double kMaxAbs = 700.0;
  double lo = 0.0;
  double hi = 1.0;
  while (g_eval(f, sign * hi) < t)
  {
    lo = hi;
    hi *= 2.0;
    if (hi > kMaxAbs)
    {
      throw RangeError("g_inverse: failed to bracket t = " + format_param(t));
    }
  }
  for (int iter = 0; iter < 200; ++iter)
  {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
    {
      break;
    }
    if (g_eval(f, sign * mid) < t)
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  return sign * 0.5 * (lo + hi);
}

}  // namespace divkit
