#include "infodesign/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace infodesign::design {

namespace {

using model::Instance;
using model::kEpsTol;
using model::RiskAttitude;
using model::UtilityProfile;

void require_profile_on_action(const Instance& instance, const RiskAttitude& attitude,
                               int a_star, const UtilityProfile& p) {
  if (a_star < 1 || a_star > instance.n()) {
    throw std::out_of_range("design: target action index out of range");
  }
  if (p.x < model::principal_floor(instance, attitude) - kEpsTol || p.y < -kEpsTol ||
      p.x > instance.reward(a_star) + kEpsTol) {
    throw std::domain_error("design: target profile is not implementable");
  }
  const double boundary = model::frontier(instance, attitude, a_star, p.x);
  const bool member = attitude.is_averse() ? p.y <= boundary + kEpsTol
                                           : std::abs(p.y - boundary) <= kEpsTol;
  if (!member) {
    throw std::domain_error(
        "design: target profile lies outside the action's possible set");
  }
}

double clamp01(double value) { return std::clamp(value, 0.0, 1.0); }

InformationStructure binary_structure(const Instance& instance, int a_star,
                                      double high_target_class,
                                      double high_low_cost_class) {
  InformationStructure structure;
  structure.k = 2;
  structure.rows.reserve(static_cast<std::size_t>(instance.n()));
  const double c_star = instance.cost(a_star);
  for (int a = 1; a <= instance.n(); ++a) {
    const double high = (a == a_star || instance.cost(a) > c_star)
                            ? high_target_class
                            : high_low_cost_class;
    structure.rows.push_back({high, 1.0 - high});
  }
  return structure;
}

DesignOutput degenerate_zero_transfer(const Instance& instance, int a_star,
                                      const UtilityProfile& p, bool averse) {
  DesignOutput out;
  out.structure = binary_structure(instance, a_star, 1.0, 1.0);
  out.predicted_contract = Contract{{0.0, 0.0}};
  out.target_action = a_star;
  out.target_profile = p;
  if (averse) {
    out.aux.z_star = 0.0;
    out.aux.q_star = 1.0;
  } else {
    out.aux.s_star = 0.0;
  }
  out.aux.p_star = 1.0;
  return out;
}

}  // namespace

double transfer_for_profile(const Instance& instance, const RiskAttitude& attitude,
                            int a_star, const UtilityProfile& p) {
  require_profile_on_action(instance, attitude, a_star, p);
  const double slack = instance.reward(a_star) - p.x;
  if (!attitude.is_averse()) {
    return slack > 0.0 ? slack : 0.0;
  }
  const double mass = p.y + instance.cost(a_star);
  if (slack <= kEpsTol) {
    if (mass > kEpsTol) {
      throw std::domain_error(
          "transfer_for_profile: x = r with positive agent value is unrealizable");
    }
    return 0.0;
  }
  if (mass <= kEpsTol) {
    throw std::domain_error(
        "transfer_for_profile: zero agent value with x < r is unrealizable");
  }
  return numerics::solve_v_ratio(attitude.value_function(), mass / slack);
}

DesignOutput design_neutral(const Instance& instance, int a_star,
                            const UtilityProfile& p) {
  const RiskAttitude attitude = RiskAttitude::neutral();
  require_profile_on_action(instance, attitude, a_star, p);
  const double c_star = instance.cost(a_star);
  const double c_hat = instance.cost(model::hat_action(instance));
  const double s_star = transfer_for_profile(instance, attitude, a_star, p);
  if (s_star <= kEpsTol) {
    if (c_star - c_hat > kEpsTol) {
      throw std::domain_error(
          "design_neutral: zero transfer cannot cover the cost gap to the "
          "cost-effective action");
    }
    return degenerate_zero_transfer(instance, a_star, p, /*averse=*/false);
  }
  const double p_star = clamp01(1.0 - (c_star - c_hat) / s_star);

  DesignOutput out;
  out.structure = binary_structure(instance, a_star, 1.0, p_star);
  out.predicted_contract = Contract{{s_star, 0.0}};
  out.target_action = a_star;
  out.target_profile = p;
  out.aux.s_star = s_star;
  out.aux.p_star = p_star;
  return out;
}

DesignOutput design_averse(const Instance& instance, const numerics::ValueFunction& v,
                           int a_star, const UtilityProfile& p) {
  // Non-owning view of the caller's value function.
  const RiskAttitude attitude = RiskAttitude::averse(
      std::shared_ptr<const numerics::ValueFunction>(std::shared_ptr<const void>(), &v));
  require_profile_on_action(instance, attitude, a_star, p);
  const double slack = instance.reward(a_star) - p.x;
  const double mass = p.y + instance.cost(a_star);
  if (slack <= kEpsTol || mass <= kEpsTol) {
    // x = r forces y = 0 and a zero cost; realized with zero transfers.
    if (slack > kEpsTol || mass > kEpsTol) {
      throw std::domain_error("design_averse: profile unrealizable by any transfer");
    }
    return degenerate_zero_transfer(instance, a_star, p, /*averse=*/true);
  }
  const double z_star = numerics::solve_v_ratio(v, mass / slack);
  const double q_star = clamp01(slack / z_star);
  const double c_hat = instance.cost(model::hat_action(instance));
  const double p_star = clamp01(q_star * (p.y + c_hat) / mass);
  if (p_star > q_star + kEpsTol) {
    throw std::logic_error("design_averse: expected p* <= q*");
  }

  DesignOutput out;
  out.structure = binary_structure(instance, a_star, q_star, p_star);
  out.predicted_contract = Contract{{z_star, 0.0}};
  out.target_action = a_star;
  out.target_profile = p;
  out.aux.z_star = z_star;
  out.aux.p_star = p_star;
  out.aux.q_star = q_star;
  return out;
}

DesignOutput design_for_plan(const Instance& instance, const RiskAttitude& attitude,
                             const planner::PlanResult& plan) {
  if (plan.target_action == 0) {
    DesignOutput out;
    out.structure.k = 1;
    out.structure.rows.assign(static_cast<std::size_t>(instance.n()), {1.0});
    out.predicted_contract = Contract{{0.0}};
    out.target_action = 0;
    out.target_profile = plan.profile;
    return out;
  }
  if (attitude.is_averse()) {
    return design_averse(instance, attitude.value_function(), plan.target_action,
                         plan.profile);
  }
  return design_neutral(instance, plan.target_action, plan.profile);
}

DesignOutput design(const Instance& instance, const RiskAttitude& attitude,
                    planner::SocialUtility kind) {
  return design_for_plan(instance, attitude, planner::plan(instance, attitude, kind));
}

}  // namespace infodesign::design
