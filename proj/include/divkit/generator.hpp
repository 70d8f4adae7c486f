#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace divkit {

enum class Family
{
  kl,
  jeffreys,
  hellinger,        // param: alpha in (0,1) u (1,inf)
  chi_s,            // param: s >= 1
  total_variation,
  triangular,
  lin,              // param: theta in (0,1)
  jensen_shannon,
  e_gamma,          // param: gamma >= 1
  degroot,          // param: omega in (0,1)
  chi_squared,
  custom,
};

/// A convex function f on (0, inf) with f(1) = 0, together with the analytic
/// data the divergence engines need: f', f'' (when it exists), the limits
/// f(0) = lim_{t->0} f(t) and f*(0) = lim_{u->inf} f(u)/u, and the one-sided
/// derivatives at 1.
///
/// Generators with a kink (total variation, E_gamma, DeGroot, chi_s with
/// s = 1) report it through kink(); derivative() throws KinkError there.
class GeneratorFunction
{
public:
  using Fn = std::function<double(double)>;

  /// Everything needed to describe a generator. Used directly for custom
  /// generators; the catalog fills it in per family.
  struct Parts
  {
    std::string name;
    Family family = Family::custom;
    double param = 0.0;
    Fn f;
    Fn df;
    Fn d2f;                             // empty when f'' is not supplied
    double f_at_zero = 0.0;             // may be +inf
    double fstar_at_zero = 0.0;         // may be +inf
    double right_deriv_at_one = 0.0;
    double left_deriv_at_one = 0.0;
    std::optional<double> second_at_one;
    std::optional<double> kink;
  };

  explicit GeneratorFunction(Parts parts);

  const std::string &name() const noexcept { return parts_.name; }
  Family family() const noexcept { return parts_.family; }
  double param() const noexcept { return parts_.param; }

  double eval(double t) const { return parts_.f(t); }
  double operator()(double t) const { return parts_.f(t); }

  /// f'(t); throws KinkError at the kink abscissa.
  double derivative(double t) const;

  bool has_second_derivative() const noexcept { return static_cast<bool>(parts_.d2f); }
  /// f''(t); throws CapabilityError when the family supplies none.
  double second_derivative(double t) const;

  double f_at_zero() const noexcept { return parts_.f_at_zero; }
  double fstar_at_zero() const noexcept { return parts_.fstar_at_zero; }
  double right_deriv_at_one() const noexcept { return parts_.right_deriv_at_one; }
  double left_deriv_at_one() const noexcept { return parts_.left_deriv_at_one; }
  std::optional<double> second_at_one() const noexcept { return parts_.second_at_one; }
  std::optional<double> kink() const noexcept { return parts_.kink; }
  bool differentiable() const noexcept { return !parts_.kink.has_value(); }

  const Parts &parts() const noexcept { return parts_; }

private:
  Parts parts_;
};

/// Catalog generator. `param` is ignored for parameter-free families.
/// Throws DomainError for an out-of-range parameter and DispatchError for
/// Family::custom (build those from Parts instead).
GeneratorFunction generator(Family family, double param = 0.0);

/// Parses CLI names such as "kl", "hellinger:0.5", "chi_s:3", "tv", "lin:0.5",
/// "js", "e_gamma:2", "degroot:0.25", "chi2".
GeneratorFunction parse_generator(std::string_view spec);

/// f*(t) = t f(1/t).
GeneratorFunction conjugate(const GeneratorFunction &f);

/// t -> f(t) + c (t - 1); defines the same divergence as f.
GeneratorFunction affine_shift(const GeneratorFunction &f, double c);

/// Weight function of the spectrum representation,
///   w_f(beta) = |f'(beta) - (f(beta) + f'(1)) / beta| / beta,
/// and with `c` the modified weight w_f(beta) + c/beta^2 * (+1 if beta >= 1,
/// -1 otherwise). Throws KinkError if f is not differentiable at beta or at 1.
double weight(const GeneratorFunction &f, double beta, std::optional<double> c = std::nullopt);

/// g(x) = e^{-x} f(e^x) - f'_+(1) (1 - e^{-x}).
double g_eval(const GeneratorFunction &f, double x);

enum class Branch
{
  positive,
  negative,
};

struct GRange
{
  double a;  // lim_{x->+inf} g(x)
  double b;  // lim_{x->-inf} g(x)
};

/// Ranges of the two monotone pieces of g, assuming f is strictly convex at 1.
GRange g_range(const GeneratorFunction &f);

/// Inverse of g restricted to [0, inf) (positive) or (-inf, 0] (negative).
/// Closed form for chi_squared; bisection with a doubling bracket otherwise.
/// Throws RangeError for t < 0 or t beyond the branch range.
double g_inverse(const GeneratorFunction &f, double t, Branch branch);

}  // namespace divkit
