#include "divkit/divergence.hpp"

#include "divkit/error.hpp"
#include "summation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <memory>
#include <utility>

namespace divkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KindEntry
{
  const char *name;
  DivergenceKind kind;
  bool param;
};

constexpr std::array kKinds{
  KindEntry{"kl", DivergenceKind::kl, false},
  KindEntry{"jeffreys", DivergenceKind::jeffreys, false},
  KindEntry{"hellinger", DivergenceKind::hellinger, true},
  KindEntry{"chi2", DivergenceKind::chi2, false},
  KindEntry{"sq_hellinger", DivergenceKind::sq_hellinger, false},
  KindEntry{"bhattacharyya", DivergenceKind::bhattacharyya, false},
  KindEntry{"alpha", DivergenceKind::alpha, true},
  KindEntry{"renyi", DivergenceKind::renyi, true},
  KindEntry{"chi_s", DivergenceKind::chi_s, true},
  KindEntry{"tv", DivergenceKind::tv, false},
  KindEntry{"triangular", DivergenceKind::triangular, false},
  KindEntry{"lin", DivergenceKind::lin, true},
  KindEntry{"js", DivergenceKind::js, false},
  KindEntry{"e_gamma", DivergenceKind::e_gamma, true},
  KindEntry{"degroot", DivergenceKind::degroot, true},
};

const KindEntry &entry(DivergenceKind kind)
{
  for (const auto &e : kKinds)
  {
    if (e.kind == kind)
    {
      return e;
    }
  }
  throw DispatchError("unknown divergence kind");
}

void require_positive_order(double alpha, const char *what)
{
  if (!(alpha > 0.0) || !std::isfinite(alpha))
  {
    throw DomainError(std::string(what) + ": order must be positive and finite");
  }
}

GeneratorFunction scaled(const GeneratorFunction &f, double k, std::string name)
{
  auto src = std::make_shared<const GeneratorFunction>(f);
  GeneratorFunction::Parts p;
  p.name = std::move(name);
  p.f = [src, k](double t) { return k * src->eval(t); };
  p.df = [src, k](double t) { return k * src->derivative(t); };
  if (f.has_second_derivative())
  {
    p.d2f = [src, k](double t) { return k * src->second_derivative(t); };
  }
  p.f_at_zero = k * f.f_at_zero();
  p.fstar_at_zero = k * f.fstar_at_zero();
  p.right_deriv_at_one = k * f.right_deriv_at_one();
  p.left_deriv_at_one = k * f.left_deriv_at_one();
  if (f.second_at_one())
  {
    p.second_at_one = k * *f.second_at_one();
  }
  p.kink = f.kink();
  return GeneratorFunction(std::move(p));
}

GeneratorFunction sq_hellinger_generator()
{
  GeneratorFunction::Parts p;
  p.name = "sq_hellinger";
  p.f = [](double t) {
    const double d = std::sqrt(t) - 1.0;
    return 0.5 * d * d;
  };
  p.df = [](double t) { return 0.5 - 0.5 / std::sqrt(t); };
  p.d2f = [](double t) { return 0.25 / (t * std::sqrt(t)); };
  p.f_at_zero = 0.5;
  p.fstar_at_zero = 0.5;
  p.right_deriv_at_one = p.left_deriv_at_one = 0.0;
  p.second_at_one = 0.25;
  return GeneratorFunction(std::move(p));
}

double sq_hellinger(const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    s += d * d;
  }
  return 0.5 * s.value();
}

double triangular(const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    const double m = p[i] + q[i];
    if (m > 0.0)
    {
      const double d = p[i] - q[i];
      s += d * d / m;
    }
  }
  return s.value();
}

double hellinger(double alpha, const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  require_positive_order(alpha, "hellinger");
  if (alpha == 1.0)
  {
    return kl_divergence(p, q);
  }
  return f_divergence(generator(Family::hellinger, alpha), p, q);
}

}  // namespace

bool takes_param(DivergenceKind kind) noexcept
{
  for (const auto &e : kKinds)
  {
    if (e.kind == kind)
    {
      return e.param;
    }
  }
  return false;
}

std::string kind_name(DivergenceKind kind)
{
  return entry(kind).name;
}

std::string to_string(const DivergenceSpec &spec)
{
  std::string out = kind_name(spec.kind);
  if (takes_param(spec.kind))
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, ":%g", spec.param);
    out += buf;
  }
  return out;
}

DivergenceSpec parse_divergence(std::string_view text)
{
  const auto colon = text.find(':');
  const std::string_view base = text.substr(0, colon);
  for (const auto &e : kKinds)
  {
    if (base != e.name)
    {
      continue;
    }
    DivergenceSpec spec{e.kind, 0.0};
    if (!e.param)
    {
      if (colon != std::string_view::npos)
      {
        throw ValidationError("divergence '" + std::string(base) + "' takes no parameter");
      }
      return spec;
    }
    if (colon == std::string_view::npos)
    {
      throw ValidationError("divergence '" + std::string(base) + "' needs a parameter, e.g. " +
                            std::string(base) + ":2");
    }
    const std::string num(text.substr(colon + 1));
    char *end = nullptr;
    spec.param = std::strtod(num.c_str(), &end);
    if (num.empty() || end != num.c_str() + num.size() || !std::isfinite(spec.param))
    {
      throw ValidationError("divergence '" + std::string(base) + "': bad parameter '" + num + "'");
    }
    return spec;
  }
  throw DispatchError("unknown divergence kind '" + std::string(base) + "'");
}

GeneratorFunction generator_for(const DivergenceSpec &spec)
{
  switch (spec.kind)
  {
  case DivergenceKind::kl:
    return generator(Family::kl);
  case DivergenceKind::jeffreys:
    return generator(Family::jeffreys);
  case DivergenceKind::hellinger:
    require_positive_order(spec.param, "hellinger");
    return spec.param == 1.0 ? generator(Family::kl) : generator(Family::hellinger, spec.param);
  case DivergenceKind::chi2:
    return generator(Family::chi_squared);
  case DivergenceKind::sq_hellinger:
    return sq_hellinger_generator();
  case DivergenceKind::alpha:
    require_positive_order(spec.param, "alpha");
    if (spec.param == 1.0)
    {
      return generator(Family::kl);
    }
    return scaled(generator(Family::hellinger, spec.param), 1.0 / spec.param, to_string(spec));
  case DivergenceKind::chi_s:
    return generator(Family::chi_s, spec.param);
  case DivergenceKind::tv:
    return generator(Family::total_variation);
  case DivergenceKind::triangular:
    return generator(Family::triangular);
  case DivergenceKind::lin:
    return generator(Family::lin, spec.param);
  case DivergenceKind::js:
    return generator(Family::jensen_shannon);
  case DivergenceKind::e_gamma:
    return generator(Family::e_gamma, spec.param);
  case DivergenceKind::degroot:
    return generator(Family::degroot, spec.param);
  case DivergenceKind::bhattacharyya:
  case DivergenceKind::renyi:
    break;
  }
  throw DispatchError("'" + kind_name(spec.kind) + "' is not an f-divergence");
}

double f_divergence(const GeneratorFunction &f, const DiscreteDistribution &p,
                    const DiscreteDistribution &q)
{
  require_shared_alphabet(p, q);
  detail::CompensatedSum sum;
  double mass_p_only = 0.0;
  double mass_q_only = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    const double pi = p[i];
    const double qi = q[i];
    if (pi > 0.0 && qi > 0.0)
    {
      sum += qi * f(pi / qi);
    }
    else if (pi > 0.0)
    {
      mass_p_only += pi;
    }
    else if (qi > 0.0)
    {
      mass_q_only += qi;
    }
  }
  double singular = 0.0;
  if (mass_q_only > 0.0)
  {
    singular += mass_q_only * f.f_at_zero();
  }
  if (mass_p_only > 0.0)
  {
    singular += mass_p_only * f.fstar_at_zero();
  }
  if (std::isinf(singular))
  {
    return singular;
  }
  sum += singular;
  return sum.value();
}

double kl_divergence(const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  return f_divergence(generator(Family::kl), p, q);
}

double chi2_divergence(const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  require_shared_alphabet(p, q);
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    if (q[i] == 0.0)
    {
      if (p[i] > 0.0)
      {
        return kInf;
      }
      continue;
    }
    const double d = p[i] - q[i];
    s += d * d / q[i];
  }
  return s.value();
}

double total_variation(const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  require_shared_alphabet(p, q);
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    s += std::abs(p[i] - q[i]);
  }
  return s.value();
}

double renyi(double alpha, const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  require_positive_order(alpha, "renyi");
  if (alpha == 1.0)
  {
    return kl_divergence(p, q);
  }
  const double h = hellinger(alpha, p, q);
  if (std::isinf(h))
  {
    return kInf;
  }
  // For alpha < 1 and disjoint supports log1p(-1) = -inf, giving +inf.
  return std::log1p((alpha - 1.0) * h) / (alpha - 1.0);
}

double e_gamma(double gamma, const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  require_shared_alphabet(p, q);
  if (!(gamma >= 1.0) || !std::isfinite(gamma))
  {
    throw DomainError("e_gamma: gamma must be >= 1");
  }
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    const double d = p[i] - gamma * q[i];
    if (d > 0.0)
    {
      s += d;
    }
  }
  return s.value();
}

double degroot(double omega, const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  require_shared_alphabet(p, q);
  if (!(omega > 0.0 && omega < 1.0))
  {
    throw DomainError("degroot: omega must lie in (0, 1)");
  }
  detail::CompensatedSum s;
  s += std::min(omega, 1.0 - omega);
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    s += -std::min(omega * p[i], (1.0 - omega) * q[i]);
  }
  return std::max(s.value(), 0.0);
}

double degroot_from_egamma(double omega, const DiscreteDistribution &p,
                           const DiscreteDistribution &q)
{
  if (!(omega > 0.0 && omega < 1.0))
  {
    throw DomainError("degroot: omega must lie in (0, 1)");
  }
  if (omega <= 0.5)
  {
    return omega * e_gamma((1.0 - omega) / omega, p, q);
  }
  return (1.0 - omega) * e_gamma(omega / (1.0 - omega), q, p);
}

double e_gamma_slope(double gamma, const DiscreteDistribution &p, const DiscreteDistribution &q,
                     Side side)
{
  require_shared_alphabet(p, q);
  if (!(gamma > 0.0))
  {
    throw DomainError("e_gamma_slope: gamma must be positive");
  }
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    const bool active = side == Side::right ? p[i] > gamma * q[i] : p[i] >= gamma * q[i];
    if (active)
    {
      s += -q[i];
    }
  }
  return s.value();
}

double degroot_slope(double omega, const DiscreteDistribution &p, const DiscreteDistribution &q,
                     Side side)
{
  require_shared_alphabet(p, q);
  if (!(omega > 0.0 && omega < 1.0))
  {
    throw DomainError("degroot_slope: omega must lie in (0, 1)");
  }
  detail::CompensatedSum s;
  const bool below_half = side == Side::left ? omega <= 0.5 : omega < 0.5;
  s += below_half ? 1.0 : -1.0;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    // min{omega p, (1-omega) q} has slope p on its first piece and -q on its second.
    const double a = omega * p[i];
    const double b = (1.0 - omega) * q[i];
    const bool first = side == Side::left ? a <= b : a < b;
    s += first ? -p[i] : q[i];
  }
  return s.value();
}

double divergence(const DivergenceSpec &spec, const DiscreteDistribution &p,
                  const DiscreteDistribution &q)
{
  require_shared_alphabet(p, q);
  switch (spec.kind)
  {
  case DivergenceKind::kl:
    return kl_divergence(p, q);
  case DivergenceKind::jeffreys: {
    const double a = kl_divergence(p, q);
    const double b = kl_divergence(q, p);
    return a + b;
  }
  case DivergenceKind::hellinger:
    return hellinger(spec.param, p, q);
  case DivergenceKind::chi2:
    return chi2_divergence(p, q);
  case DivergenceKind::sq_hellinger:
    return sq_hellinger(p, q);
  case DivergenceKind::bhattacharyya:
    return -std::log1p(-sq_hellinger(p, q));
  case DivergenceKind::alpha:
    return hellinger(spec.param, p, q) / (spec.param == 1.0 ? 1.0 : spec.param);
  case DivergenceKind::renyi:
    return renyi(spec.param, p, q);
  case DivergenceKind::chi_s:
    return f_divergence(generator(Family::chi_s, spec.param), p, q);
  case DivergenceKind::tv:
    return total_variation(p, q);
  case DivergenceKind::triangular:
    return triangular(p, q);
  case DivergenceKind::lin:
    return f_divergence(generator(Family::lin, spec.param), p, q);
  case DivergenceKind::js:
    return f_divergence(generator(Family::jensen_shannon), p, q);
  case DivergenceKind::e_gamma:
    return e_gamma(spec.param, p, q);
  case DivergenceKind::degroot:
    return degroot(spec.param, p, q);
  }
  throw DispatchError("unknown divergence kind");
}

}  // namespace divkit
