#pragma once

// Shared random-instance machinery for tests: deterministic seeds only.

#include <random>
#include <vector>

#include "infodesign/model.hpp"
#include "infodesign/planner.hpp"

namespace testgen {

inline infodesign::model::Instance random_instance(std::mt19937_64& rng,
                                                   int max_actions = 5,
                                                   double reward_scale = 10.0,
                                                   double cost_scale = -1.0) {
  if (cost_scale < 0.0) cost_scale = reward_scale;
  std::uniform_int_distribution<int> count(1, max_actions);
  std::uniform_real_distribution<double> reward(0.0, reward_scale);
  std::uniform_real_distribution<double> cost(0.0, cost_scale);
  std::vector<infodesign::model::ActionSpec> actions;
  const int n = count(rng);
  actions.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    actions.push_back({reward(rng), cost(rng)});
  }
  return infodesign::model::Instance::from_nondefault(std::move(actions));
}

inline infodesign::model::RiskAttitude random_attitude(std::mt19937_64& rng) {
  std::bernoulli_distribution averse(0.5);
  if (!averse(rng)) return infodesign::model::RiskAttitude::neutral();
  std::uniform_real_distribution<double> alpha(0.3, 0.9);
  std::uniform_real_distribution<double> beta(0.5, 2.0);
  return infodesign::model::RiskAttitude::averse(
      infodesign::numerics::make_power(alpha(rng), beta(rng)));
}

inline const std::vector<infodesign::planner::SocialUtility>& all_welfare_kinds() {
  static const std::vector<infodesign::planner::SocialUtility> kinds = {
      infodesign::planner::SocialUtility::kUsf,
      infodesign::planner::SocialUtility::kNashProduct,
      infodesign::planner::SocialUtility::kEsf,
      infodesign::planner::SocialUtility::kApproxFairness,
  };
  return kinds;
}

}  // namespace testgen
