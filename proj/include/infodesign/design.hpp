#pragma once

#include <optional>
#include <vector>

#include "infodesign/model.hpp"
#include "infodesign/planner.hpp"

namespace infodesign::design {

// Row-stochastic map from the non-default actions 1..n to k signals;
// rows[a-1] is the signal distribution of action a.  Signal 1 is the "high"
// (paid) signal, signal 2 the "low" (unpaid) one.
struct InformationStructure {
  int k = 1;
  std::vector<std::vector<double>> rows;
};

// Transfer per signal, committed by the principal.  Limited liability: all
// entries nonnegative.  The unobserved default action always pays zero.
struct Contract {
  std::vector<double> transfers;
};

struct DesignAux {
  std::optional<double> s_star;  // neutral: transfer on the high signal
  std::optional<double> z_star;  // averse: transfer on the high signal
  std::optional<double> p_star;  // high-signal probability, low-cost class
  std::optional<double> q_star;  // high-signal probability, target class
};

struct DesignOutput {
  InformationStructure structure;
  Contract predicted_contract;
  int target_action = 0;
  model::UtilityProfile target_profile;
  DesignAux aux;
};

// High-signal transfer that realizes profile p with witness action a_star:
// r - x (neutral), or the unique z with v(z)/z = (y + c)/(r - x) (averse,
// requires x < r unless y + c is also zero).
double transfer_for_profile(const model::Instance& instance,
                            const model::RiskAttitude& attitude, int a_star,
                            const model::UtilityProfile& p);

// Binary-signal structure inducing (a_star, p) with a risk-neutral agent.
DesignOutput design_neutral(const model::Instance& instance, int a_star,
                            const model::UtilityProfile& p);

// Binary-signal structure inducing (a_star, p) with a risk-averse agent.
DesignOutput design_averse(const model::Instance& instance,
                           const numerics::ValueFunction& v, int a_star,
                           const model::UtilityProfile& p);

/// Stage 2 for an already-computed stage-1 result.
DesignOutput design_for_plan(const model::Instance& instance,
                             const model::RiskAttitude& attitude,
                             const planner::PlanResult& plan);

/// Both stages: plan, then construct the structure for the chosen profile.
DesignOutput design(const model::Instance& instance,
                    const model::RiskAttitude& attitude,
                    planner::SocialUtility kind);

}  // namespace infodesign::design
