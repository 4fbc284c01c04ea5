#pragma once

#include <functional>
#include <memory>
#include <string>

namespace infodesign::numerics {

// Concave valuation of monetary transfers: strictly increasing on [0, inf),
// v(0) = 0, sublinear at infinity (v(z)/z -> 0).  Derivatives may diverge at
// z = 0; solvers never evaluate derivative(0) directly.
class ValueFunction {
 public:
  virtual ~ValueFunction() = default;

  virtual double eval(double z) const = 0;
  virtual double inverse(double y) const = 0;
  /// First derivative; may return +infinity at z = 0.
  virtual double derivative(double z) const = 0;
  /// Solves v'(z) = w for z > 0.
  virtual double derivative_inverse(double w) const = 0;
  /// Right-hand derivative at 0 (possibly +infinity).
  virtual double derivative_at_zero() const = 0;
  virtual std::string describe() const = 0;
};

// v(z) = beta * z^alpha with alpha in (0,1), beta > 0.
class PowerValue final : public ValueFunction {
 public:
  PowerValue(double alpha, double beta);

  double eval(double z) const override;
  double inverse(double y) const override;
  double derivative(double z) const override;
  double derivative_inverse(double w) const override;
  double derivative_at_zero() const override;
  std::string describe() const override;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  double alpha_;
  double beta_;
};

std::shared_ptr<const ValueFunction> make_power(double alpha, double beta);

/// Default residual tolerance for the scalar solvers.
inline constexpr double kSolverTol = 1e-10;
inline constexpr int kSolverMaxIterations = 200;

// Bracketed root of a monotone scalar function.  f(lo) and f(hi) must have
// opposite signs, or one endpoint must already be within tol of zero.
// Bisection, at most kSolverMaxIterations halvings; deterministic.
double solve_increasing(const std::function<double(double)>& f, double lo,
                        double hi, double tol = kSolverTol);

// Unique z > 0 with v(z)/z = target.  Requires 0 < target < v'(0+); the
// bracket is found by doubling outward from z = 1.
double solve_v_ratio(const ValueFunction& v, double target,
                     double tol = kSolverTol);

// Unique x in [0, r] with v(r - x) - x * v'(r - x) = c, i.e. the point where
// the line of slope c through the origin region is tangent to x * v(r - x).
// Requires r - v^{-1}(c) >= 0.
double solve_tangent_np(const ValueFunction& v, double r, double c,
                        double tol = kSolverTol);

// Unique x >= 0 with x = v(r - x) - c (left side increasing, right side
// decreasing).  Requires v(r) - c >= 0.
double solve_equal_split(const ValueFunction& v, double r, double c,
                         double tol = kSolverTol);

}  // namespace infodesign::numerics
