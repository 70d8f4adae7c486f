#pragma once

namespace divkit {

enum class LambertBranch
{
  principal,  // W_0, w >= -1, x >= -1/e
  secondary,  // W_-1, w <= -1, -1/e <= x < 0
};

struct LambertBranchValue
{
  LambertBranch branch;
  double w;
};

/// Real solution of w e^w = x on the requested branch, by Halley iteration.
/// Throws DomainError outside the branch domain.
LambertBranchValue lambert_w(LambertBranch branch, double x);

}  // namespace divkit
