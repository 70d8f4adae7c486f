#include "divkit/lambert_w.hpp"

#include "divkit/error.hpp"

#include <cmath>
#include <string>

namespace divkit {

namespace {

// 1/e split into a double and its rounding error.
constexpr double kInvEHi = 0.36787944117144233;
constexpr double kInvELo = -1.2428753672788363e-17;
constexpr double kE = 2.718281828459045;

constexpr int kMaxIterations = 100;

// Series of W around the branch point in p = +-sqrt(2 (e x + 1)).
double branch_series(double p)
{
  constexpr double c[] = {-1.0,
                          1.0,
                          -1.0 / 3.0,
                          11.0 / 72.0,
                          -43.0 / 540.0,
                          769.0 / 17280.0,
                          -221.0 / 8505.0,
                          680863.0 / 43545600.0};
  double w = 0.0;
  for (int k = 7; k >= 0; --k)
  {
    w = w * p + c[k];
  }
  return w;
}

// x e^{-w}, evaluated through logs so that neither factor overflows.
double x_exp_minus_w(double x, double w)
{
  if (x == 0.0)
  {
    return 0.0;
  }
  const double m = std::exp(std::log(std::abs(x)) - w);
  return x < 0.0 ? -m : m;
}

// Halley on h(w) = w - x e^{-w}, which has the same roots as w e^w - x.
double halley(double x, double w)
{
  for (int i = 0; i < kMaxIterations; ++i)
  {
    const double t = x_exp_minus_w(x, w);
    const double h = w - t;
    const double h1 = 1.0 + t;
    const double h2 = -t;
    const double denom = 2.0 * h1 * h1 - h * h2;
    if (denom == 0.0)
    {
      break;
    }
    const double step = 2.0 * h * h1 / denom;
    w -= step;
    if (!(std::abs(step) > 1e-15 * (1.0 + std::abs(w))))
    {
      break;
    }
  }
  return w;
}

}  // namespace

LambertBranchValue lambert_w(LambertBranch branch, double x)
{
  if (std::isnan(x))
  {
    throw DomainError("lambert_w: argument is NaN");
  }
  // Distance to the branch point, with the low part of 1/e folded back in.
  // A couple of ulps below -1/e still counts as the branch point.
  const double delta = (x + kInvEHi) + kInvELo;
  if (delta < -1e-16 || (branch == LambertBranch::secondary && !(x < 0.0)))
  {
    throw DomainError("lambert_w: " + std::to_string(x) + " is outside the branch domain");
  }
  if (branch == LambertBranch::principal && std::isinf(x))
  {
    return {branch, x};
  }
  if (delta <= 0.0)
  {
    return {branch, -1.0};
  }

  const double sign = branch == LambertBranch::principal ? 1.0 : -1.0;
  const double p = sign * std::sqrt(2.0 * kE * delta);
  if (std::abs(p) < 1e-4)
  {
    return {branch, branch_series(p)};
  }

  double seed = 0.0;
  if (std::abs(p) < 0.5)
  {
    seed = branch_series(p);
  }
  else if (branch == LambertBranch::principal)
  {
    if (x < kE)
    {
      seed = std::log1p(x);
    }
    else
    {
      const double l1 = std::log(x);
      const double l2 = std::log(l1);
      seed = l1 - l2 + l2 / l1;
    }
  }
  else
  {
    const double l1 = std::log(-x);
    seed = l1 - std::log(-l1);
  }
  return {branch, halley(x, seed)};
}

}  // namespace divkit
