#include "divkit/quadrature.hpp"

#include "divkit/error.hpp"
#include "summation.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace divkit {

namespace {

struct Panel
{
  double a;
  double b;
  double value;
  double error;
  double l1;

  bool operator<(const Panel &other) const { return error < other.error; }
};

Panel gk21(const std::function<double(double)> &f, double a, double b)
{
  Panel p{a, b, 0.0, 0.0, 0.0};
  p.value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &p.error,
                                                                          &p.l1);
  return p;
}

}  // namespace

double integrate(const std::function<double(double)> &f, double a, double b, double rel_tol)
{
  if (a == b)
  {
    return 0.0;
  }
  if (!std::isfinite(a) || !std::isfinite(b))
  {
    throw DomainError("integrate: interval must be finite");
  }

  // Global bisection of the worst panel. The floor on the target is relative
  // to the integral of |f| so that integrals which cancel to ~0 still stop.
  constexpr int kMaxPanels = 4000;
  constexpr double kNoiseFloor = 64.0 * std::numeric_limits<double>::epsilon();

  std::priority_queue<Panel> panels;
  const Panel first = gk21(f, a, b);
  double value = first.value;
  double error = first.error;
  double l1 = first.l1;
  panels.push(first);

  for (int n = 1; n < kMaxPanels; ++n)
  {
    if (error <= std::max(rel_tol * std::abs(value), kNoiseFloor * l1))
    {
      break;
    }
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
    {
      break;
    }
    panels.pop();
    const Panel left = gk21(f, worst.a, mid);
    const Panel right = gk21(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum in interval order to drop the drift of the running updates.
  std::vector<Panel> parts;
  parts.reserve(panels.size());
  while (!panels.empty())
  {
    parts.push_back(panels.top());
    panels.pop();
  }
  std::sort(parts.begin(), parts.end(), [](const Panel &x, const Panel &y) { return x.a < y.a; });
  detail::CompensatedSum total;
  for (const Panel &p : parts)
  {
    total += p.value;
  }
  return total.value();
}

}  // namespace divkit
