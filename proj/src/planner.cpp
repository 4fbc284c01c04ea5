#include "infodesign/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace infodesign::planner {

namespace {

using model::Instance;
using model::kEpsTol;
using model::RiskAttitude;
using model::UtilityProfile;

double midpoint_or_corner_x(double surplus, double floor) {
  const double mid = 0.5 * surplus;
  return mid >= floor ? mid : floor;
}

// Optimal profile on a risk-neutral action line x + y = surplus with
// x >= floor, y >= 0.  The egalitarian midpoint when implementable, the
// corner (floor, surplus - floor) otherwise.  This single rule covers the
// Nash product, egalitarian, and fairness objectives; USF shares the
// representative by convention.
UtilityProfile neutral_preferred_profile(double surplus, double floor) {
  const double x = midpoint_or_corner_x(surplus, floor);
  return UtilityProfile{x, surplus - x};
}

struct AverseContext {
  const numerics::ValueFunction* v = nullptr;
  double floor = 0.0;     // max{0, r_hat - v^{-1}(c_hat)}
  double raw_floor = 0.0; // r_hat - v^{-1}(c_hat), may be negative
};

// Boundary height v(r - x) - c, clamping the rounding dust that borderline
// implementable actions leave in r - x.
double boundary_y(const numerics::ValueFunction& v, double r, double c, double x) {
  return v.eval(std::max(0.0, r - x)) - c;
}

UtilityProfile averse_usf_profile(const Instance& instance, const AverseContext& ctx,
                                  int a) {
  const numerics::ValueFunction& v = *ctx.v;
  const double r = instance.reward(a);
  const double c = instance.cost(a);
  const double x1 = ctx.raw_floor;
  // x + y on the boundary increases while v'(r - x) < 1; the four cases pick
  // the point where the slope-(-1) contour leaves the feasible slice.
  if (v.derivative(v.inverse(c)) <= 1.0) {
    return UtilityProfile{r - v.inverse(c), 0.0};
  }
  if (x1 >= 0.0 && v.derivative(std::max(0.0, r - x1)) > 1.0) {
    return UtilityProfile{x1, boundary_y(v, r, c, x1)};
  }
  if (x1 < 0.0 && v.derivative(r) > 1.0) {
    return UtilityProfile{0.0, v.eval(r) - c};
  }
  const double z_unit = v.derivative_inverse(1.0);
  return UtilityProfile{r - z_unit, v.eval(z_unit) - c};
}

UtilityProfile averse_np_profile(const Instance& instance, const AverseContext& ctx,
                                 int a) {
  const numerics::ValueFunction& v = *ctx.v;
  const double r = instance.reward(a);
  const double c = instance.cost(a);
  const double xa = numerics::solve_tangent_np(v, r, c);
  if (xa >= ctx.floor) {
    return UtilityProfile{xa, boundary_y(v, r, c, xa)};
  }
  const double x1 = ctx.floor;  // fallback only reachable with a positive floor
  return UtilityProfile{x1, boundary_y(v, r, c, x1)};
}

UtilityProfile averse_esf_profile(const Instance& instance, const AverseContext& ctx,
                                  int a) {
  const numerics::ValueFunction& v = *ctx.v;
  const double r = instance.reward(a);
  const double c = instance.cost(a);
  const double xa = numerics::solve_equal_split(v, r, c);
  if (xa >= ctx.floor) {
    return UtilityProfile{xa, xa};
  }
  const double x1 = ctx.floor;
  return UtilityProfile{x1, boundary_y(v, r, c, x1)};
}

}  // namespace

double evaluate_welfare(SocialUtility kind, const UtilityProfile& p) {
  switch (kind) {
    case SocialUtility::kUsf:
      return p.x + p.y;
    case SocialUtility::kNashProduct:
      return p.x * p.y;
    case SocialUtility::kEsf:
      return std::min(p.x, p.y);
    case SocialUtility::kApproxFairness: {
      const double d = p.x - p.y;
      return -0.25 * d * d;
    }
  }
  throw std::logic_error("evaluate_welfare: unknown social utility");
}

std::optional<std::pair<UtilityProfile, double>> plan_action(
    const Instance& instance, const RiskAttitude& attitude, SocialUtility kind,
    int a) {
  if (a < 1 || a > instance.n()) {
    throw std::out_of_range("plan_action: action index out of range");
  }
  if (!model::is_action_implementable(instance, attitude, a)) {
    return std::nullopt;
  }
  const double floor = model::principal_floor(instance, attitude);
  UtilityProfile profile;
  if (!attitude.is_averse()) {
    profile = neutral_preferred_profile(instance.reward(a) - instance.cost(a), floor);
  } else {
    AverseContext ctx{&attitude.value_function(), floor,
                      model::action_surplus(instance, attitude, hat_action(instance))};
    switch (kind) {
      case SocialUtility::kUsf:
        profile = averse_usf_profile(instance, ctx, a);
        break;
      case SocialUtility::kNashProduct:
        profile = averse_np_profile(instance, ctx, a);
        break;
      case SocialUtility::kEsf:
      case SocialUtility::kApproxFairness:
        profile = averse_esf_profile(instance, ctx, a);
        break;
    }
  }
  return std::make_pair(profile, evaluate_welfare(kind, profile));
}

PlanResult plan(const Instance& instance, const RiskAttitude& attitude,
                SocialUtility kind) {
  std::vector<int> implementable;
  for (int a = 1; a <= instance.n(); ++a) {
    if (model::is_action_implementable(instance, attitude, a)) {
      implementable.push_back(a);
    }
  }
  if (implementable.empty()) {
    PlanResult result;
    result.target_action = 0;
    result.profile = UtilityProfile{0.0, 0.0};
    result.welfare_value = evaluate_welfare(kind, result.profile);
    return result;
  }

  const double floor = model::principal_floor(instance, attitude);
  PlanResult result;

  if (!attitude.is_averse()) {
    // The per-action optimum is monotone in the surplus for every kind, so
    // the winning action maximizes r_a - c_a; ties go to the lowest index.
    int best = implementable.front();
    double best_surplus = instance.reward(best) - instance.cost(best);
    for (int a : implementable) {
      const double s = instance.reward(a) - instance.cost(a);
      if (s > best_surplus) {
        best = a;
        best_surplus = s;
      }
    }
    result.target_action = best;
    result.profile = neutral_preferred_profile(best_surplus, floor);
    result.welfare_value = evaluate_welfare(kind, result.profile);

    if (kind == SocialUtility::kUsf) {
      // Every point of the line segment attains the same USF.
      if (best_surplus - floor > kEpsTol) {
        result.unique = false;
        result.segment = Segment{floor, best_surplus};
      }
    } else if (kind == SocialUtility::kApproxFairness) {
      // All implementable midpoints attain fairness 0; the optimum is unique
      // only when they coincide (or when no midpoint is implementable).
      if (0.5 * best_surplus >= floor) {
        bool multiple = false;
        for (int a : implementable) {
          const double s = instance.reward(a) - instance.cost(a);
          if (0.5 * s >= floor && std::abs(s - best_surplus) > kEpsTol) {
            multiple = true;
            break;
          }
        }
        if (multiple) {
          result.unique = false;
          result.segment = Segment{result.profile.x, result.profile.x};
        }
      }
    }
    return result;
  }

  const numerics::ValueFunction& v = attitude.value_function();
  const double raw_floor =
      model::action_surplus(instance, attitude, model::hat_action(instance));
  AverseContext ctx{&v, floor, raw_floor};

  if (kind == SocialUtility::kEsf || kind == SocialUtility::kApproxFairness) {
    // Equal-split crossings per action, then either the best implementable
    // crossing or the common fallback on the floor line.
    int best_cross = -1;
    double best_xa = -1.0;
    for (int a : implementable) {
      const double xa =
          numerics::solve_equal_split(v, instance.reward(a), instance.cost(a));
      if (xa >= floor && xa > best_xa + kEpsTol) {
        best_cross = a;
        best_xa = xa;
      }
    }
    if (best_cross >= 0) {
      result.target_action = best_cross;
      result.profile = UtilityProfile{best_xa, best_xa};
      result.welfare_value = evaluate_welfare(kind, result.profile);
      if (kind == SocialUtility::kApproxFairness && best_xa - floor > kEpsTol) {
        result.unique = false;
        result.segment = Segment{floor, best_xa};
      }
      return result;
    }
    int best = -1;
    double best_y = 0.0;
    for (int a : implementable) {
      const double y = boundary_y(v, instance.reward(a), instance.cost(a), floor);
      if (best < 0 || y > best_y + kEpsTol) {
        best = a;
        best_y = y;
      }
    }
    result.target_action = best;
    result.profile = UtilityProfile{floor, best_y};
    result.welfare_value = evaluate_welfare(kind, result.profile);
    return result;
  }

  std::vector<std::pair<UtilityProfile, double>> candidates;
  candidates.reserve(implementable.size());
  for (int a : implementable) {
    const UtilityProfile profile = kind == SocialUtility::kUsf
                                       ? averse_usf_profile(instance, ctx, a)
                                       : averse_np_profile(instance, ctx, a);
    candidates.emplace_back(profile, evaluate_welfare(kind, profile));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].second > candidates[best].second) best = i;
  }
  result.target_action = implementable[best];
  result.profile = candidates[best].first;
  result.welfare_value = candidates[best].second;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i == best) continue;
    if (candidates[i].second > result.welfare_value - kEpsTol &&
        (std::abs(candidates[i].first.x - result.profile.x) > kEpsTol ||
         std::abs(candidates[i].first.y - result.profile.y) > kEpsTol)) {
      result.unique = false;  // a distinct profile ties within tolerance
      break;
    }
  }
  return result;
}

}  // namespace infodesign::planner
