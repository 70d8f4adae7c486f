#include "cli.hpp"

#include "format.hpp"
#include "input.hpp"

#include "divkit/bounds.hpp"
#include "divkit/divergence.hpp"
#include "divkit/error.hpp"
#include "divkit/local.hpp"
#include "divkit/poisson.hpp"
#include "divkit/representation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>

namespace divkit::cli {

namespace {

const char *param_name(DivergenceKind kind)
{
  switch (kind)
  {
  case DivergenceKind::hellinger:
  case DivergenceKind::alpha:
  case DivergenceKind::renyi:
    return "alpha";
  case DivergenceKind::chi_s:
    return "s";
  case DivergenceKind::lin:
    return "theta";
  case DivergenceKind::e_gamma:
    return "gamma";
  case DivergenceKind::degroot:
    return "omega";
  default:
    return nullptr;
  }
}

const char *direction_name(Direction d)
{
  return d == Direction::lower ? "lower" : "upper";
}

Json report_json(const BoundReport &r)
{
  Json j;
  j["name"] = r.name;
  j["direction"] = direction_name(r.direction);
  j["bound_value"] = number(r.bound_value);
  if (r.certified_quantity)
  {
    j["certified_quantity"] = number(*r.certified_quantity);
  }
  if (r.slack)
  {
    j["slack"] = number(*r.slack);
  }
  return j;
}

Json estimate_json(const LocalLimitEstimate &e)
{
  Json j;
  j["lambdas"] = Json::array();
  j["ratios"] = Json::array();
  for (std::size_t i = 0; i < e.lambdas.size(); ++i)
  {
    j["lambdas"].push_back(number(e.lambdas[i]));
    j["ratios"].push_back(number(e.ratios[i]));
  }
  j["extrapolated"] = number(e.extrapolated);
  j["residual"] = number(e.residual);
  j["target"] = number(e.target);
  j["error"] = number(e.error);
  return j;
}

Table estimate_table(const LocalLimitEstimate &e)
{
  Table t{{"lambda", "ratio"}, {}};
  for (std::size_t i = 0; i < e.lambdas.size(); ++i)
  {
    t.rows.push_back({number(e.lambdas[i]), number(e.ratios[i])});
  }
  return t;
}

BoundArgs parse_bound_args(const std::string &text)
{
  BoundArgs args;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
  {
    if (item.empty())
    {
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
    {
      throw ValidationError("--args: expected key=value, got \"" + item + "\"");
    }
    args[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return args;
}

struct Pair
{
  DiscreteDistribution p;
  DiscreteDistribution q;
};

Pair load_pair(const std::string &p_path, const std::string &q_path)
{
  Pair pair{load_distribution(p_path), load_distribution(q_path)};
  require_shared_alphabet(pair.p, pair.q);
  return pair;
}

// Built-in checks for `selftest`.
struct Check
{
  std::string name;
  double value;
  double reference;
  double tolerance;
};

std::vector<Check> self_checks()
{
  const DiscreteDistribution p({0.7, 0.3});
  const DiscreteDistribution q({0.5, 0.5});
  const DiscreteDistribution p3({0.2, 0.5, 0.3});
  const DiscreteDistribution q3({0.4, 0.4, 0.2});
  const DiscreteDistribution one_sided({0.5, 0.5, 0.0});
  const DiscreteDistribution wide({0.25, 0.25, 0.5});

  std::vector<Check> out;
  out.push_back({"spectrum_identity(bernoulli)", spectrum_identity(p, q), 1.0, 1e-12});
  out.push_back({"spectrum_identity(three_atoms)", spectrum_identity(p3, q3), 1.0, 1e-12});
  out.push_back({"spectrum_identity(p_ll_q)", spectrum_identity(one_sided, wide), 0.5, 1e-12});

  for (const char *name : {"kl", "hellinger:0.5", "js", "triangular", "chi_s:3", "lin:0.3"})
  {
    const auto f = parse_generator(name);
    out.push_back({std::string("conjugate(") + name + ")", f_divergence(conjugate(f), q3, p3),
                   f_divergence(f, p3, q3), 1e-12});
  }

  for (const char *name : {"kl", "tv", "hellinger:2", "js", "e_gamma:1.2", "degroot:0.45"})
  {
    const auto spec = parse_divergence(name);
    out.push_back({std::string("represent_named(") + name + ")", represent_named(spec, p3, q3),
                   divergence(spec, p3, q3), 1e-8});
  }
  for (const char *name : {"kl", "jeffreys", "hellinger:0.5"})
  {
    const auto f = parse_generator(name);
    const double direct = f_divergence(f, p3, q3);
    out.push_back({std::string("represent_general(") + name + ")", represent_general(f, p3, q3, 1.0),
                   direct, 1e-8});
    out.push_back({std::string("represent_lemma2(") + name + ")", represent_lemma2(f, p3, q3),
                   direct, 1e-8});
  }
  return out;
}

struct Options
{
  std::string format;
  std::string kind;
  std::string f;
  std::string p;
  std::string q;
  std::string engine = "named";
  double c = 0.0;
  std::vector<double> xs;
  bool list = false;
  std::string name;
  std::string args;
  std::vector<double> gammas = {1.1, 2.0, 3.0, 4.0};
  double d_max = 5.0;
  int steps = 500;
  double mu = 0.0;
  double lambda = 0.0;
  double omega = 0.0;
  std::string direction = "mixture_first";
  std::optional<double> alpha;
};

Output cmd_div(const Options &o)
{
  const auto spec = parse_divergence(o.kind);
  const auto [p, q] = load_pair(o.p, o.q);
  const double v = divergence(spec, p, q);
  Output r;
  r.doc["kind"] = kind_name(spec.kind);
  r.doc["params"] = Json::object();
  if (const char *pn = param_name(spec.kind))
  {
    r.doc["params"][pn] = number(spec.param);
  }
  r.doc["value"] = number(v);
  r.doc["value_nats"] = number(v);
  return r;
}

Output cmd_represent(const Options &o)
{
  const auto spec = parse_divergence(o.kind);
  const auto [p, q] = load_pair(o.p, o.q);
  double value = 0.0;
  if (o.engine == "named")
  {
    value = represent_named(spec, p, q);
  }
  else if (o.engine == "general")
  {
    value = represent_general(generator_for(spec), p, q, o.c);
  }
  else if (o.engine == "lemma2")
  {
    value = represent_lemma2(generator_for(spec), p, q);
  }
  else if (o.engine == "degroot-weight")
  {
    value = represent_degroot_weight(generator_for(spec), p, q);
  }
  else
  {
    throw ValidationError("--engine must be general, lemma2, named or degroot-weight");
  }
  const double direct = divergence(spec, p, q);
  Output r;
  r.doc["kind"] = to_string(spec);
  r.doc["engine"] = o.engine;
  r.doc["value"] = number(value);
  r.doc["direct_value"] = number(direct);
  r.doc["abs_diff"] = number(std::abs(value - direct));
  return r;
}

Output cmd_spectrum(const Options &o)
{
  const auto [p, q] = load_pair(o.p, o.q);
  const SpectrumFunction s = spectrum(p, q);
  Output r;
  r.doc["breakpoints"] = Json::array();
  r.doc["cum_masses"] = Json::array();
  Table t{{"breakpoint", "cum_mass"}, {}};
  for (std::size_t i = 0; i < s.breakpoints.size(); ++i)
  {
    r.doc["breakpoints"].push_back(number(s.breakpoints[i]));
    r.doc["cum_masses"].push_back(number(s.cum_masses[i]));
    t.rows.push_back({number(s.breakpoints[i]), number(s.cum_masses[i])});
  }
  r.doc["singular_mass_p"] = number(s.singular_mass_p);
  r.doc["singular_mass_q"] = number(s.singular_mass_q);
  if (s.singular_mass_p == 0.0)
  {
    r.doc["identity"] = number(spectrum_identity(p, q));
  }
  if (!o.xs.empty())
  {
    r.doc["evaluations"] = Json::array();
    t = Table{{"x", "spectrum", "from_egamma", "from_degroot"}, {}};
    for (double x : o.xs)
    {
      Json e;
      e["x"] = number(x);
      e["spectrum"] = number(spectrum_eval(s, x));
      e["from_egamma"] = number(spectrum_from_egamma(p, q, x));
      e["from_degroot"] = number(spectrum_from_degroot(p, q, x));
      t.rows.push_back({e["x"], e["spectrum"], e["from_egamma"], e["from_degroot"]});
      r.doc["evaluations"].push_back(std::move(e));
    }
  }
  r.table = std::move(t);
  return r;
}

Output cmd_bounds(const Options &o)
{
  Output r;
  if (o.list)
  {
    if (!o.name.empty())
    {
      throw ValidationError("--list and --name are exclusive");
    }
    r.doc["bounds"] = Json::array();
    Table t{{"name", "direction", "certifies", "params", "inputs"}, {}};
    for (const auto &e : bound_catalog())
    {
      Json j;
      j["name"] = e.name;
      j["direction"] = direction_name(e.direction);
      j["certifies"] = e.certifies;
      j["params"] = e.params;
      j["inputs"] = e.inputs;
      const auto join = [](const std::vector<std::string> &v) {
        std::string s;
        for (const auto &x : v)
        {
          s += (s.empty() ? "" : ";") + x;
        }
        return s;
      };
      t.rows.push_back({e.name, j["direction"], e.certifies, join(e.params), join(e.inputs)});
      r.doc["bounds"].push_back(std::move(j));
    }
    r.table = std::move(t);
    return r;
  }
  if (o.name.empty())
  {
    throw ValidationError("bounds: give --list or --name");
  }
  const BoundArgs args = parse_bound_args(o.args);
  if (o.p.empty() != o.q.empty())
  {
    throw ValidationError("bounds: give both --p and --q or neither");
  }
  if (o.p.empty())
  {
    r.doc = report_json(evaluate_bound(o.name, args));
  }
  else
  {
    const auto [p, q] = load_pair(o.p, o.q);
    r.doc = report_json(evaluate_bound(o.name, args, &p, &q));
  }
  return r;
}

Output cmd_figure1(const Options &o)
{
  if (o.steps < 1 || !(o.d_max > 0.0))
  {
    throw ValidationError("figure1: --steps must be >= 1 and --d-max > 0");
  }
  Output r;
  Table t{{"D", "gamma", "straight_line", "bh_curve"}, {}};
  r.doc["crossovers"] = Json::array();
  r.doc["rows"] = Json::array();
  for (double g : o.gammas)
  {
    if (!(g > 1.0) || !std::isfinite(g))
    {
      throw ValidationError("figure1: every gamma must be > 1");
    }
    Json c;
    c["gamma"] = number(g);
    c["c_gamma"] = number(c_gamma(g));
    c["crossover_d"] = number(crossover_d(g));
    r.doc["crossovers"].push_back(std::move(c));
    for (int i = 0; i <= o.steps; ++i)
    {
      const double d = o.d_max * i / o.steps;
      std::vector<Json> row = {number(d), number(g), number(straight_line_egamma_ub(g, d)),
                               number(egamma_upper(EgammaUpperKind::kl, g, d))};
      Json j;
      for (std::size_t k = 0; k < row.size(); ++k)
      {
        j[t.header[k]] = row[k];
      }
      r.doc["rows"].push_back(std::move(j));
      t.rows.push_back(std::move(row));
    }
  }
  r.table = std::move(t);
  return r;
}

Output cmd_poisson(const Options &o)
{
  const PoissonReport rep = poisson_bound_report(o.mu, o.lambda, o.omega);
  Output r;
  r.doc["mu"] = number(rep.mu);
  r.doc["lambda"] = number(rep.lambda);
  r.doc["omega"] = number(rep.omega);
  r.doc["kl"] = number(rep.forward.kl);
  r.doc["chi2"] = number(rep.forward.chi2);
  r.doc["kl_reverse"] = number(rep.backward.kl);
  r.doc["chi2_reverse"] = number(rep.backward.chi2);
  r.doc["k0"] = rep.k0 ? Json(*rep.k0) : Json(nullptr);
  r.doc["exact_degroot"] = number(rep.exact_degroot);
  r.doc["truncated_degroot"] = number(rep.truncated_degroot);
  r.doc["truncation_index"] = rep.truncation_index;
  r.doc["truncation_epsilon"] = number(rep.truncation_epsilon);
  r.doc["bounds"] = Json::array();
  for (const auto &b : rep.bounds)
  {
    Json j = report_json(b);
    j["bound_value_2sf"] = number(round_significant(b.bound_value, 2));
    r.doc["bounds"].push_back(std::move(j));
  }
  return r;
}

Output cmd_local(const Options &o)
{
  const auto [p, q] = load_pair(o.p, o.q);
  Output r;
  if (o.alpha)
  {
    if (!o.f.empty())
    {
      throw ValidationError("local: --f and --alpha are exclusive");
    }
    const auto e = renyi_local_estimate(*o.alpha, p, q);
    r.doc["renyi_order"] = number(*o.alpha);
    r.doc.update(estimate_json(e));
    r.table = estimate_table(e);
    return r;
  }
  if (o.f.empty())
  {
    throw ValidationError("local: give --f or --alpha");
  }
  MixtureDirection dir;
  if (o.direction == "mixture_first")
  {
    dir = MixtureDirection::mixture_first;
  }
  else if (o.direction == "mixture_second")
  {
    dir = MixtureDirection::mixture_second;
  }
  else
  {
    throw ValidationError("--direction must be mixture_first or mixture_second");
  }
  const auto e = local_limit_estimate(parse_generator(o.f), p, q, dir);
  r.doc["f"] = o.f;
  r.doc["direction"] = o.direction;
  r.doc.update(estimate_json(e));
  r.table = estimate_table(e);
  return r;
}

Output cmd_selftest(bool &passed)
{
  Output r;
  Table t{{"name", "value", "reference", "abs_diff", "pass"}, {}};
  r.doc["checks"] = Json::array();
  passed = true;
  for (const auto &c : self_checks())
  {
    const double diff = std::abs(c.value - c.reference);
    const bool ok = diff <= c.tolerance;
    passed = passed && ok;
    Json j;
    j["name"] = c.name;
    j["value"] = number(c.value);
    j["reference"] = number(c.reference);
    j["abs_diff"] = number(diff);
    j["pass"] = ok;
    t.rows.push_back({c.name, j["value"], j["reference"], j["abs_diff"], ok});
    r.doc["checks"].push_back(std::move(j));
  }
  r.doc["pass"] = passed;
  r.table = std::move(t);
  return r;
}

Format resolve_format(const std::string &flag, Format fallback)
{
  std::string chosen = flag;
  if (const char *env = std::getenv("DIVKIT_FORMAT"); env && *env)
  {
    chosen = env;
  }
  if (chosen.empty())
  {
    return fallback;
  }
  if (chosen == "json")
  {
    return Format::json;
  }
  if (chosen == "csv")
  {
    return Format::csv;
  }
  throw ValidationError("format must be json or csv, got \"" + chosen + "\"");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream &out, std::ostream &err)
{
  Options o;
  CLI::App app{"f-divergence toolkit", "divkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format: json or csv (DIVKIT_FORMAT overrides)");

  const auto pair_options = [&o](CLI::App *sub) {
    sub->add_option("--p", o.p, "First distribution (JSON or CSV file)")->required();
    sub->add_option("--q", o.q, "Second distribution (JSON or CSV file)")->required();
  };

  auto *div = app.add_subcommand("div", "Evaluate a named divergence");
  div->add_option("--kind", o.kind, "kl, tv, hellinger:0.5, renyi:2, e_gamma:1.5, ...")->required();
  pair_options(div);

  auto *rep = app.add_subcommand("represent", "Evaluate a divergence through its spectrum representation");
  rep->add_option("--kind", o.kind, "Divergence name")->required();
  rep->add_option("--c", o.c, "Shift of the general weight function");
  rep->add_option("--engine", o.engine, "general, lemma2, named or degroot-weight");
  pair_options(rep);

  auto *spec = app.add_subcommand("spectrum", "Relative information spectrum of a pair");
  spec->add_option("--x", o.xs, "Abscissae to evaluate, comma separated")->delimiter(',');
  pair_options(spec);

  auto *bounds = app.add_subcommand("bounds", "List or evaluate catalog inequalities");
  bounds->add_flag("--list", o.list, "List the catalog");
  bounds->add_option("--name", o.name, "Bound to evaluate");
  bounds->add_option("--args", o.args, "Arguments as key=value,...");
  bounds->add_option("--p", o.p, "Measure inputs from this pair (first)");
  bounds->add_option("--q", o.q, "Measure inputs from this pair (second)");

  auto *fig = app.add_subcommand("figure1", "E_gamma upper bounds from relative entropy, as plot data");
  fig->add_option("--gammas", o.gammas, "Values of gamma > 1")->delimiter(',');
  fig->add_option("--d-max", o.d_max, "Largest relative entropy (nats)");
  fig->add_option("--steps", o.steps, "Grid intervals per gamma");

  auto *poi = app.add_subcommand("poisson", "Bayesian test between two Poisson models");
  poi->add_option("--mu", o.mu, "Rate under the first hypothesis")->required();
  poi->add_option("--lambda", o.lambda, "Rate under the second hypothesis")->required();
  poi->add_option("--omega", o.omega, "Prior weight of the first hypothesis")->required();

  auto *loc = app.add_subcommand("local", "lambda^2 scaling of D along the mixture path");
  loc->add_option("--f", o.f, "Generator name");
  loc->add_option("--alpha", o.alpha, "Renyi order instead of a generator (0 to inf)");
  loc->add_option("--direction", o.direction, "mixture_first or mixture_second");
  pair_options(loc);

  auto *self = app.add_subcommand("selftest", "Run built-in consistency checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::CallForHelp &)
  {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 0;
  }
  catch (const CLI::CallForAllHelp &)
  {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  }
  catch (const CLI::ParseError &e)
  {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try
  {
    const CLI::App *chosen = app.get_subcommands().front();
    // figure1 is plot data and defaults to CSV.
    const Format format = resolve_format(o.format, chosen == fig ? Format::csv : Format::json);
    Output result;
    int status = 0;
    if (chosen == div)
    {
      result = cmd_div(o);
    }
    else if (chosen == rep)
    {
      result = cmd_represent(o);
    }
    else if (chosen == spec)
    {
      result = cmd_spectrum(o);
    }
    else if (chosen == bounds)
    {
      result = cmd_bounds(o);
    }
    else if (chosen == fig)
    {
      result = cmd_figure1(o);
    }
    else if (chosen == poi)
    {
      result = cmd_poisson(o);
    }
    else if (chosen == loc)
    {
      result = cmd_local(o);
    }
    else if (chosen == self)
    {
      bool passed = false;
      result = cmd_selftest(passed);
      status = passed ? 0 : 1;
    }
    write(out, result, format);
    return status;
  }
  catch (const Error &e)
  {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  catch (const std::exception &e)
  {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace divkit::cli
