#include "infodesign/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace infodesign::numerics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

PowerValue::PowerValue(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("PowerValue: alpha must lie in (0, 1)");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("PowerValue: beta must be positive");
  }
}

double PowerValue::eval(double z) const {
  if (z < 0.0) {
    throw std::domain_error("PowerValue::eval: negative argument");
  }
  return beta_ * std::pow(z, alpha_);
}

double PowerValue::inverse(double y) const {
  if (y < 0.0) {
    throw std::domain_error("PowerValue::inverse: negative argument");
  }
  return std::pow(y / beta_, 1.0 / alpha_);
}

double PowerValue::derivative(double z) const {
  if (z < 0.0) {
    throw std::domain_error("PowerValue::derivative: negative argument");
  }
  if (z == 0.0) return kInf;
  return alpha_ * beta_ * std::pow(z, alpha_ - 1.0);
}

double PowerValue::derivative_inverse(double w) const {
  if (!(w > 0.0)) {
    throw std::domain_error("PowerValue::derivative_inverse: slope must be positive");
  }
  if (std::isinf(w)) return 0.0;
  // v'(z) = alpha*beta*z^(alpha-1) = w  =>  z = (alpha*beta/w)^(1/(1-alpha))
  return std::pow(alpha_ * beta_ / w, 1.0 / (1.0 - alpha_));
}

double PowerValue::derivative_at_zero() const { return kInf; }

std::string PowerValue::describe() const {
  return "power(alpha=" + std::to_string(alpha_) + ", beta=" + std::to_string(beta_) + ")";
}

std::shared_ptr<const ValueFunction> make_power(double alpha, double beta) {
  return std::make_shared<PowerValue>(alpha, beta);
}

double solve_increasing(const std::function<double(double)>& f, double lo,
                        double hi, double tol) {
  if (!(lo <= hi)) throw std::invalid_argument("solve_increasing: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (std::isnan(flo) || std::isnan(fhi)) {
    throw std::domain_error("solve_increasing: non-finite evaluation at bracket endpoint");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    // No sign change; accept an endpoint already at the root within tol.
    if (std::abs(flo) <= tol && std::abs(flo) <= std::abs(fhi)) return lo;
    if (std::abs(fhi) <= tol) return hi;
    throw std::domain_error("solve_increasing: no sign change in bracket");
  }
  // Bisect down to floating-point resolution; downstream identities need the
  // root itself accurate, not merely a small residual.
  for (int it = 0; it < kSolverMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating point resolution
    const double fmid = f(mid);
    if (std::isnan(fmid)) {
      throw std::domain_error("solve_increasing: non-finite evaluation");
    }
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  // Both endpoints bracket the root; pick the smaller residual.
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

double solve_v_ratio(const ValueFunction& v, double target, double tol) {
  if (!(target > 0.0)) {
    throw std::invalid_argument("solve_v_ratio: target must be positive");
  }
  const double d0 = v.derivative_at_zero();
  if (std::isfinite(d0) && target >= d0) {
    throw std::domain_error("solve_v_ratio: target at or above the slope at zero");
  }
  // f(z) = v(z) - target*z is positive on (0, z*) and negative beyond.
  const auto f = [&](double z) { return v.eval(z) - target * z; };
  double lo = 1.0;
  double hi = 1.0;
  int guard = 0;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (++guard > 1024 || !std::isfinite(hi)) {
      throw std::domain_error("solve_v_ratio: failed to bracket above");
    }
  }
  guard = 0;
  while (f(lo) < 0.0) {
    lo *= 0.5;
    if (++guard > 1024 || lo == 0.0) {
      throw std::domain_error("solve_v_ratio: failed to bracket below");
    }
  }
  if (lo == hi) return lo;
  return solve_increasing(f, lo, hi, tol);
}

double solve_tangent_np(const ValueFunction& v, double r, double c, double tol) {
  require_finite(r, "r");
  require_finite(c, "c");
  if (r < 0.0 || c < 0.0) {
    throw std::invalid_argument("solve_tangent_np: r and c must be nonnegative");
  }
  const double slack = v.eval(r) - c;  // equals v(r) - c; >= 0 iff r >= v^{-1}(c)
  if (slack < -1e-9 * (1.0 + c)) {
    throw std::domain_error("solve_tangent_np: requires r - v^{-1}(c) >= 0");
  }
  if (r == 0.0 || slack <= 0.0) return 0.0;
  const auto h = [&](double x) {
    const double z = r - x;
    return v.eval(z) - x * v.derivative(z) - c;
  };
  // h(0) = v(r) - c >= 0 and h decreases without bound toward x = r.
  return solve_increasing(h, 0.0, r, tol);
}

double solve_equal_split(const ValueFunction& v, double r, double c, double tol) {
  require_finite(r, "r");
  require_finite(c, "c");
  if (r < 0.0 || c < 0.0) {
    throw std::invalid_argument("solve_equal_split: r and c must be nonnegative");
  }
  const double at_zero = v.eval(r) - c;
  if (at_zero < -1e-9 * (1.0 + c)) {
    throw std::domain_error("solve_equal_split: v(r) - c < 0, no nonnegative crossing");
  }
  if (at_zero <= 0.0) return 0.0;
  const auto g = [&](double x) { return v.eval(r - x) - c - x; };
  return solve_increasing(g, 0.0, r, tol);
}

}  // namespace infodesign::numerics
