#pragma once

#include <optional>
#include <utility>

#include "infodesign/model.hpp"

namespace infodesign::planner {

enum class SocialUtility { kUsf, kNashProduct, kEsf, kApproxFairness };

/// Closed x-interval on the winning action's boundary whose points all attain
/// the optimal welfare (reported when the optimum is not unique).
struct Segment {
  double x_lo = 0.0;
  double x_hi = 0.0;
};

struct PlanResult {
  int target_action = 0;
  model::UtilityProfile profile;
  double welfare_value = 0.0;
  bool unique = true;
  std::optional<Segment> segment;
};

/// USF: x + y.  Nash product: x * y.  ESF: min{x, y}.
/// Approximate fairness: -(x - y)^2 / 4, so larger is better with ideal 0.
double evaluate_welfare(SocialUtility kind, const model::UtilityProfile& p);

// Optimal profile and welfare within action a's implementable slice, or empty
// when the action is not implementable.  a in 1..n.
std::optional<std::pair<model::UtilityProfile, double>> plan_action(
    const model::Instance& instance, const model::RiskAttitude& attitude,
    SocialUtility kind, int a);

// Stage 1: maximize the social utility over all implementable profiles.
// Falls back to action 0 with the origin profile when no non-default action
// is implementable.  Welfare ties between actions break toward the lowest
// index (for approximate fairness: higher USF first, then lowest index).
PlanResult plan(const model::Instance& instance, const model::RiskAttitude& attitude,
                SocialUtility kind);

}  // namespace infodesign::planner
