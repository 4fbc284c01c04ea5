#pragma once

#include <cstddef>

#include "infodesign/design.hpp"
#include "infodesign/model.hpp"
#include "infodesign/planner.hpp"

namespace infodesign::equilibrium {

struct GridConfig {
  double transfer_max = 1.0;
  double step = 1e-3;
  double tie_tol = 1e-9;
  std::size_t max_evaluations = 500'000'000;
};

/// Grid sized for the instance: transfer_max covers every transfer a rational
/// principal could prefer, step defaults to 1e-3 * transfer_max.
GridConfig default_grid(const model::Instance& instance,
                        const model::RiskAttitude& attitude);

enum class ContractSearchMode { kFull, kLowZero };

struct EquilibriumOutcome {
  design::Contract contract;
  int action = 0;
  model::UtilityProfile profile;
};

// The agent's equilibrium action under structure I and contract t: maximizes
// her utility; among actions within tie_tol of the maximum picks the one the
// principal prefers, then the lowest index.  Action 0 yields utility 0 for
// both players.
int agent_best_response(const model::Instance& instance,
                        const model::RiskAttitude& attitude,
                        const design::InformationStructure& I,
                        const design::Contract& t);

// Exhaustive contract search.  kFull enumerates every k-tuple over the grid
// (k <= 3); kLowZero fixes all low signals to zero and sweeps the high
// transfer over the grid plus the agent's indifference breakpoints.  Near-ties
// in principal utility (within tie_tol) resolve toward the higher agent
// utility, then the lexicographically smallest contract; the outcome is
// deterministic under any parallel chunking.
EquilibriumOutcome principal_best_contract(const model::Instance& instance,
                                           const model::RiskAttitude& attitude,
                                           const design::InformationStructure& I,
                                           const GridConfig& grid,
                                           ContractSearchMode mode);

struct VerificationReport {
  int induced_action = 0;
  model::UtilityProfile induced_profile;
  double max_abs_err = 0.0;
  bool passed = false;
};

// Runs the contract oracle under the designed structure and compares the
// induced outcome against the design target; passes when the induced action
// matches and the profile error stays within tol + 2 * grid.step.
VerificationReport verify_design(const model::Instance& instance,
                                 const model::RiskAttitude& attitude,
                                 const design::DesignOutput& designed, double tol,
                                 const GridConfig& grid,
                                 ContractSearchMode mode = ContractSearchMode::kLowZero);

// Stage-1 oracle: sweeps each implementable action's boundary with `samples`
// uniform points (plus the y = x crossing for the fairness objective) and
// returns the best profile found, with the planner's tie-breaking.
planner::PlanResult brute_force_plan(const model::Instance& instance,
                                     const model::RiskAttitude& attitude,
                                     planner::SocialUtility kind,
                                     std::size_t samples);

}  // namespace infodesign::equilibrium
