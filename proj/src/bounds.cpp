#include "divkit/bounds.hpp"

#include "divkit/divergence.hpp"
#include "divkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace divkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_gamma(double gamma, bool strict)
{
  const bool ok = strict ? gamma > 1.0 : gamma >= 1.0;
  if (!ok || !std::isfinite(gamma))
  {
    throw DomainError(std::string("gamma must be ") + (strict ? "> 1" : ">= 1") + " and finite");
  }
}

void require_omega(double omega)
{
  if (!(omega > 0.0 && omega < 1.0))
  {
    throw DomainError("omega must lie in (0, 1)");
  }
}

void require_tv(double tv)
{
  if (!(tv >= 0.0 && tv < 2.0))
  {
    throw DomainError("total variation must lie in [0, 2)");
  }
}

void require_nonnegative(double v, const char *what)
{
  if (!(v >= 0.0))
  {
    throw DomainError(std::string(what) + " must be non-negative");
  }
}

// f*(u) = u f(1/u), with the limit at u = 0.
double conjugate_at(const GeneratorFunction &f, double u)
{
  return u == 0.0 ? f.fstar_at_zero() : u * f.eval(1.0 / u);
}

double three_point(const GeneratorFunction &f, double a, double b, double c)
{
  const double v = conjugate_at(f, a) + conjugate_at(f, b) - conjugate_at(f, c);
  if (std::isnan(v))
  {
    throw CapabilityError("conjugate of '" + f.name() + "' is not finite at the bound arguments");
  }
  return v;
}

// sqrt(a^2 + t) - a for a >= 0, t >= 0 without cancellation.
double root_excess(double a, double t)
{
  if (t == 0.0)
  {
    return 0.0;
  }
  return t / (std::sqrt(a * a + t) + a);
}

// Bisection to adjacent doubles; h(lo) < 0 < h(hi).
double bisect(const std::function<double(double)> &h, double lo, double hi, const char *what)
{
  double hlo = h(lo);
  const double hhi = h(hi);
  if (!(hlo < 0.0 && hhi > 0.0))
  {
    throw RootError(std::string(what) + ": no sign change on the bracket");
  }
  for (int i = 0; i < 200; ++i)
  {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi))
    {
      break;
    }
    const double hm = h(mid);
    if (hm < 0.0)
    {
      lo = mid;
      hlo = hm;
    }
    else
    {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double fdiv_lower_via_egamma(const GeneratorFunction &f, double e_val, double gamma)
{
  require_gamma(gamma, false);
  if (!(e_val >= 0.0 && e_val <= 1.0))
  {
    throw DomainError("E_gamma value must lie in [0, 1]");
  }
  return three_point(f, 1.0 + e_val / gamma, (1.0 - e_val) / gamma, 1.0 / gamma);
}

double egamma_upper(EgammaUpperKind kind, double gamma, double value)
{
  require_gamma(gamma, false);
  require_nonnegative(value, "divergence value");
  double t = 0.0;
  if (kind == EgammaUpperKind::chi2)
  {
    t = std::isinf(value) ? 4.0 * gamma : 4.0 * gamma * value / (1.0 + gamma + value);
  }
  else
  {
    t = -4.0 * gamma * std::expm1(-value);
  }
  return 0.5 * root_excess(gamma - 1.0, t);
}

double hellinger_renyi_lower(HellingerRenyi kind, double alpha, double gamma, double e_val)
{
  if (!(alpha > 0.0) || !std::isfinite(alpha))
  {
    throw DomainError("alpha must be positive and finite");
  }
  require_gamma(gamma, false);
  if (!(e_val >= 0.0 && e_val <= 1.0))
  {
    throw DomainError("E_gamma value must lie in [0, 1]");
  }
  if (alpha == 1.0)
  {
    return -(std::log1p(e_val / gamma) + std::log1p(-e_val));
  }
  const double a = std::pow(1.0 + e_val / gamma, 1.0 - alpha);
  if (kind == HellingerRenyi::hellinger)
  {
    const double b = std::pow((1.0 - e_val) / gamma, 1.0 - alpha);
    return (a + b - 1.0 - std::pow(gamma, alpha - 1.0)) / (alpha - 1.0);
  }
  const double inner = a + std::pow(gamma, alpha - 1.0) * (std::pow(1.0 - e_val, 1.0 - alpha) - 1.0);
  return std::log(inner) / (alpha - 1.0);
}

double tv_kl_frontier(Frontier kind, double value)
{
  switch (kind)
  {
  case Frontier::pinsker_lb_kl:
    require_tv(value);
    return 0.5 * value * value;
  case Frontier::bh_lb_kl:
    require_tv(value);
    return -std::log1p(-0.25 * value * value);
  case Frontier::vajda_lb_kl:
    require_tv(value);
    return std::log1p(2.0 * value / (2.0 - value)) - 2.0 * value / (2.0 + value);
  case Frontier::bh_ub_tv:
    require_nonnegative(value, "relative entropy");
    return 2.0 * std::sqrt(-std::expm1(-value));
  case Frontier::vajda_ub_tv:
  {
    require_nonnegative(value, "relative entropy");
    const double z = -std::exp(-1.0 - value);
    const double w = lambert_w(LambertBranch::principal, z).w;
    return 2.0 * (1.0 + w) / (1.0 - w);
  }
  }
  throw DispatchError("unknown frontier kind");
}

double t_gamma(double gamma)
{
  require_gamma(gamma, true);
  const double u = 1.0 / gamma;
  return -gamma * lambert_w(LambertBranch::secondary, -u * std::exp(-u)).w;
}

double c_gamma(double gamma)
{
  const double t = t_gamma(gamma);
  return (t - gamma) / (t * std::log(t) + 1.0 - t);
}

double straight_line_egamma_ub(double gamma, double d)
{
  require_nonnegative(d, "relative entropy");
  const double c = c_gamma(gamma);
  return d == 0.0 ? 0.0 : c * d;
}

double degroot_upper(DegrootUpperKind kind, double omega, double d_pq, double d_qp,
                     double chi_pq, double chi_qp)
{
  require_omega(omega);
  const bool low = omega <= 0.5;
  const double spread = std::abs(0.5 - omega);
  const double prior = omega * (1.0 - omega);

  switch (kind)
  {
  case DegrootUpperKind::chi2:
  {
    // 1/4 - w(1-w)/(1 + w chi) = spread^2 + w(1-w) * w chi / (1 + w chi).
    const double chi = low ? chi_pq : chi_qp;
    require_nonnegative(chi, "chi^2 divergence");
    const double frac = std::isinf(chi) ? 1.0 : omega * chi / (1.0 + omega * chi);
    return root_excess(spread, prior * frac);
  }
  case DegrootUpperKind::kl_bh:
  {
    const double d = low ? d_pq : d_qp;
    require_nonnegative(d, "relative entropy");
    return root_excess(spread, -prior * std::expm1(-d));
  }
  case DegrootUpperKind::kl_line:
    if (omega == 0.5)
    {
      require_nonnegative(d_pq, "relative entropy");
      require_nonnegative(d_qp, "relative entropy");
      return std::sqrt(std::min(d_pq, d_qp) / 8.0);
    }
    if (low)
    {
      return omega * straight_line_egamma_ub((1.0 - omega) / omega, d_pq);
    }
    return (1.0 - omega) * straight_line_egamma_ub(omega / (1.0 - omega), d_qp);
  }
  throw DispatchError("unknown DeGroot bound kind");
}

double fdiv_lower_via_degroot(const GeneratorFunction &f, double omega, double i_val)
{
  require_omega(omega);
  const double cap = std::min(omega, 1.0 - omega);
  if (!(i_val >= 0.0 && i_val <= cap))
  {
    throw DomainError("DeGroot value must lie in [0, min(omega, 1 - omega)]");
  }
  if (omega <= 0.5)
  {
    const double s = 1.0 - omega;
    return three_point(f, 1.0 + i_val / s, (omega - i_val) / s, omega / s);
  }
  return three_point(f, 1.0 + i_val / omega, (1.0 - omega - i_val) / omega, (1.0 - omega) / omega);
}

double chi2_lower_from_tv(Chi2TvKind kind, double tv)
{
  require_tv(tv);
  if (kind == Chi2TvKind::jensen)
  {
    return 2.0 * tv * tv / (4.0 - tv * tv);
  }
  return tv < 1.0 ? tv * tv : tv / (2.0 - tv);
}

double kl_upper_log_chi2(double chi2)
{
  require_nonnegative(chi2, "chi^2 divergence");
  return std::log1p(chi2);
}

double crossover_d(double gamma)
{
  require_gamma(gamma, true);
  const double c = c_gamma(gamma);
  return bisect(
    [&](double d) { return c * d - egamma_upper(EgammaUpperKind::kl, gamma, d); }, 1e-6, 50.0,
    "crossover_d");
}

double pinsker_bh_switch()
{
  return bisect([](double d) { return d + 2.0 * std::expm1(-d); }, 0.5, 5.0, "pinsker_bh_switch");
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

using Values = std::map<std::string, double>;

struct Measured
{
  Values inputs;
  double certified;
};

struct Implementation
{
  BoundEntry entry;
  std::function<double(const BoundArgs &, const Values &)> bound;
  std::function<Measured(const BoundArgs &, const DiscreteDistribution &,
                         const DiscreteDistribution &)>
    measure;
};

double number(const BoundArgs &args, const std::string &key)
{
  const auto it = args.find(key);
  if (it == args.end())
  {
    throw ValidationError("missing argument '" + key + "'");
  }
  const std::string &text = it->second;
  if (text == "inf")
  {
    return kInf;
  }
  std::size_t used = 0;
  double v = 0.0;
  try
  {
    v = std::stod(text, &used);
  }
  catch (const std::exception &)
  {
    used = 0;
  }
  if (used == 0 || used != text.size())
  {
    throw ValidationError("argument '" + key + "' is not a number: '" + text + "'");
  }
  return v;
}

GeneratorFunction generator_arg(const BoundArgs &args)
{
  const auto it = args.find("f");
  if (it == args.end())
  {
    throw ValidationError("missing argument 'f'");
  }
  return parse_generator(it->second);
}

double hellinger_value(double alpha, const DiscreteDistribution &p, const DiscreteDistribution &q)
{
  return divergence({DivergenceKind::hellinger, alpha}, p, q);
}

std::vector<Implementation> build_catalog()
{
  using D = const DiscreteDistribution &;
  std::vector<Implementation> c;

  c.push_back({{"fdiv_lower_via_egamma", Direction::lower, "D_f(P||Q)", {"f", "gamma"}, {"e_gamma"}},
               [](const BoundArgs &a, const Values &v) {
                 return fdiv_lower_via_egamma(generator_arg(a), v.at("e_gamma"), number(a, "gamma"));
               },
               [](const BoundArgs &a, D p, D q) {
                 return Measured{{{"e_gamma", e_gamma(number(a, "gamma"), p, q)}},
                                 f_divergence(generator_arg(a), p, q)};
               }});

  c.push_back({{"egamma_upper_chi2", Direction::upper, "E_gamma(P||Q)", {"gamma"}, {"chi2"}},
               [](const BoundArgs &a, const Values &v) {
                 return egamma_upper(EgammaUpperKind::chi2, number(a, "gamma"), v.at("chi2"));
               },
               [](const BoundArgs &a, D p, D q) {
                 return Measured{{{"chi2", chi2_divergence(p, q)}}, e_gamma(number(a, "gamma"), p, q)};
               }});

  c.push_back({{"egamma_upper_kl", Direction::upper, "E_gamma(P||Q)", {"gamma"}, {"kl"}},
               [](const BoundArgs &a, const Values &v) {
                 return egamma_upper(EgammaUpperKind::kl, number(a, "gamma"), v.at("kl"));
               },
               [](const BoundArgs &a, D p, D q) {
                 return Measured{{{"kl", kl_divergence(p, q)}}, e_gamma(number(a, "gamma"), p, q)};
               }});

  c.push_back({{"hellinger_lower", Direction::lower, "H_alpha(P||Q)", {"alpha", "gamma"}, {"e_gamma"}},
               [](const BoundArgs &a, const Values &v) {
                 return hellinger_renyi_lower(HellingerRenyi::hellinger, number(a, "alpha"),
                                              number(a, "gamma"), v.at("e_gamma"));
               },
               [](const BoundArgs &a, D p, D q) {
                 return Measured{{{"e_gamma", e_gamma(number(a, "gamma"), p, q)}},
                                 hellinger_value(number(a, "alpha"), p, q)};
               }});

  c.push_back({{"renyi_lower", Direction::lower, "D_alpha(P||Q)", {"alpha", "gamma"}, {"e_gamma"}},
               [](const BoundArgs &a, const Values &v) {
                 return hellinger_renyi_lower(HellingerRenyi::renyi, number(a, "alpha"),
                                              number(a, "gamma"), v.at("e_gamma"));
               },
               [](const BoundArgs &a, D p, D q) {
                 return Measured{{{"e_gamma", e_gamma(number(a, "gamma"), p, q)}},
                                 renyi(number(a, "alpha"), p, q)};
               }});

  const std::pair<const char *, Frontier> tv_to_kl[] = {{"pinsker_lb_kl", Frontier::pinsker_lb_kl},
                                                       {"bh_lb_kl", Frontier::bh_lb_kl},
                                                       {"vajda_lb_kl", Frontier::vajda_lb_kl}};
  for (const auto &[name, kind] : tv_to_kl)
  {
    const Frontier k = kind;
    c.push_back({{name, Direction::lower, "D(P||Q)", {}, {"tv"}},
                 [k](const BoundArgs &, const Values &v) { return tv_kl_frontier(k, v.at("tv")); },
                 [](const BoundArgs &, D p, D q) {
                   return Measured{{{"tv", total_variation(p, q)}}, kl_divergence(p, q)};
                 }});
  }
  const std::pair<const char *, Frontier> kl_to_tv[] = {{"bh_ub_tv", Frontier::bh_ub_tv},
                                                       {"vajda_ub_tv", Frontier::vajda_ub_tv}};
  for (const auto &[name, kind] : kl_to_tv)
  {
    const Frontier k = kind;
    c.push_back({{name, Direction::upper, "|P-Q|", {}, {"kl"}},
                 [k](const BoundArgs &, const Values &v) { return tv_kl_frontier(k, v.at("kl")); },
                 [](const BoundArgs &, D p, D q) {
                   return Measured{{{"kl", kl_divergence(p, q)}}, total_variation(p, q)};
                 }});
  }

  c.push_back({{"straight_line_egamma_ub", Direction::upper, "E_gamma(P||Q)", {"gamma"}, {"kl"}},
               [](const BoundArgs &a, const Values &v) {
                 return straight_line_egamma_ub(number(a, "gamma"), v.at("kl"));
               },
               [](const BoundArgs &a, D p, D q) {
                 return Measured{{{"kl", kl_divergence(p, q)}}, e_gamma(number(a, "gamma"), p, q)};
               }});

  c.push_back({{"degroot_upper_chi2", Direction::upper, "I_omega(P||Q)", {"omega"},
                {"chi2_pq", "chi2_qp"}},
               [](const BoundArgs &a, const Values &v) {
                 return degroot_upper(DegrootUpperKind::chi2, number(a, "omega"), 0.0, 0.0,
                                      v.at("chi2_pq"), v.at("chi2_qp"));
               },
               [](const BoundArgs &a, D p, D q) {
                 return Measured{{{"chi2_pq", chi2_divergence(p, q)}, {"chi2_qp", chi2_divergence(q, p)}},
                                 degroot(number(a, "omega"), p, q)};
               }});

  const std::pair<const char *, DegrootUpperKind> dg_kl[] = {
    {"degroot_upper_kl_line", DegrootUpperKind::kl_line},
    {"degroot_upper_kl_bh", DegrootUpperKind::kl_bh}};
  for (const auto &[name, kind] : dg_kl)
  {
    const DegrootUpperKind k = kind;
    c.push_back({{name, Direction::upper, "I_omega(P||Q)", {"omega"}, {"kl_pq", "kl_qp"}},
                 [k](const BoundArgs &a, const Values &v) {
                   return degroot_upper(k, number(a, "omega"), v.at("kl_pq"), v.at("kl_qp"), 0.0,
                                        0.0);
                 },
                 [](const BoundArgs &a, D p, D q) {
                   return Measured{{{"kl_pq", kl_divergence(p, q)}, {"kl_qp", kl_divergence(q, p)}},
                                   degroot(number(a, "omega"), p, q)};
                 }});
  }

  c.push_back({{"fdiv_lower_via_degroot", Direction::lower, "D_f(P||Q)", {"f", "omega"}, {"degroot"}},
               [](const BoundArgs &a, const Values &v) {
                 return fdiv_lower_via_degroot(generator_arg(a), number(a, "omega"), v.at("degroot"));
               },
               [](const BoundArgs &a, D p, D q) {
                 const double w = number(a, "omega");
                 const double i = w <= 0.5 ? degroot(w, p, q) : degroot(w, q, p);
                 return Measured{{{"degroot", i}}, f_divergence(generator_arg(a), p, q)};
               }});

  const std::pair<const char *, Chi2TvKind> chi_tv[] = {{"chi2_lower_tight", Chi2TvKind::tight},
                                                        {"chi2_lower_jensen", Chi2TvKind::jensen}};
  for (const auto &[name, kind] : chi_tv)
  {
    const Chi2TvKind k = kind;
    c.push_back({{name, Direction::lower, "chi^2(P||Q)", {}, {"tv"}},
                 [k](const BoundArgs &, const Values &v) { return chi2_lower_from_tv(k, v.at("tv")); },
                 [](const BoundArgs &, D p, D q) {
                   return Measured{{{"tv", total_variation(p, q)}}, chi2_divergence(p, q)};
                 }});
  }

  c.push_back({{"kl_upper_log_chi2", Direction::upper, "D(P||Q)", {}, {"chi2"}},
               [](const BoundArgs &, const Values &v) { return kl_upper_log_chi2(v.at("chi2")); },
               [](const BoundArgs &, D p, D q) {
                 return Measured{{{"chi2", chi2_divergence(p, q)}}, kl_divergence(p, q)};
               }});
  return c;
}

const std::vector<Implementation> &implementations()
{
  static const std::vector<Implementation> catalog = build_catalog();
  return catalog;
}

}  // namespace

const std::vector<BoundEntry> &bound_catalog()
{
  static const std::vector<BoundEntry> entries = [] {
    std::vector<BoundEntry> out;
    for (const auto &impl : implementations())
    {
      out.push_back(impl.entry);
    }
    return out;
  }();
  return entries;
}

BoundReport evaluate_bound(const std::string &name, const BoundArgs &args,
                           const DiscreteDistribution *p, const DiscreteDistribution *q)
{
  const auto &all = implementations();
  const auto it = std::find_if(all.begin(), all.end(),
                               [&](const Implementation &impl) { return impl.entry.name == name; });
  if (it == all.end())
  {
    throw DispatchError("unknown bound '" + name + "'");
  }
  const BoundEntry &entry = it->entry;
  for (const auto &[key, value] : args)
  {
    const bool known =
      std::find(entry.params.begin(), entry.params.end(), key) != entry.params.end() ||
      std::find(entry.inputs.begin(), entry.inputs.end(), key) != entry.inputs.end();
    if (!known)
    {
      throw ValidationError("bound '" + name + "' takes no argument '" + key + "'");
    }
  }
  if ((p == nullptr) != (q == nullptr))
  {
    throw ValidationError("bound '" + name + "': supply both distributions or neither");
  }

  BoundReport report;
  report.name = name;
  report.direction = entry.direction;

  Values inputs;
  if (p != nullptr)
  {
    require_shared_alphabet(*p, *q);
    Measured m = it->measure(args, *p, *q);
    inputs = std::move(m.inputs);
    report.certified_quantity = m.certified;
  }
  for (const auto &key : entry.inputs)
  {
    if (args.count(key) != 0)
    {
      inputs[key] = number(args, key);
    }
    else if (inputs.count(key) == 0)
    {
      throw ValidationError("bound '" + name + "': missing argument '" + key +
                            "' (or supply a distribution pair)");
    }
  }

  report.bound_value = it->bound(args, inputs);
  if (report.certified_quantity)
  {
    const double cert = *report.certified_quantity;
    const double b = report.bound_value;
    if (std::isinf(cert) && std::isinf(b) && (cert > 0) == (b > 0))
    {
      report.slack = 0.0;
    }
    else
    {
      report.slack = entry.direction == Direction::lower ? cert - b : b - cert;
    }
  }
  return report;
}

}  // namespace divkit
