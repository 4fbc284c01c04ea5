#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "infodesign/equilibrium.hpp"
#include "infodesign/planner.hpp"

using namespace infodesign;
using model::ActionSpec;
using model::Instance;
using model::RiskAttitude;
using model::UtilityProfile;
using planner::SocialUtility;

namespace {

Instance make(std::vector<double> rewards, std::vector<double> costs) {
  std::vector<ActionSpec> actions;
  for (std::size_t i = 1; i < rewards.size(); ++i) {
    actions.push_back({rewards[i], costs[i]});
  }
  return Instance::from_nondefault(std::move(actions));
}

RiskAttitude sqrt_agent() {
  return RiskAttitude::averse(numerics::make_power(0.5, 1.0));
}

}  // namespace

TEST_CASE("welfare evaluation") {
  CHECK(planner::evaluate_welfare(SocialUtility::kUsf, {2.5, 2.5}) == 5.0);
  CHECK(planner::evaluate_welfare(SocialUtility::kNashProduct, {20.0 / 9.0, 2.0 / 3.0}) ==
        doctest::Approx(40.0 / 27.0).epsilon(1e-15));
  CHECK(planner::evaluate_welfare(SocialUtility::kApproxFairness, {1.0, 1.0}) == 0.0);
  CHECK(planner::evaluate_welfare(SocialUtility::kEsf, {1.0, 3.0}) == 1.0);
  CHECK(planner::evaluate_welfare(SocialUtility::kApproxFairness, {3.0, 1.0}) == -1.0);
}

TEST_CASE("per-action plans match the closed forms") {
  const Instance neutral_instance = make({0, 4, 8}, {0, 2, 3});
  const RiskAttitude neutral = RiskAttitude::neutral();
  auto np = planner::plan_action(neutral_instance, neutral, SocialUtility::kNashProduct, 2);
  REQUIRE(np.has_value());
  CHECK(np->first.x == doctest::Approx(2.5));
  CHECK(np->first.y == doctest::Approx(2.5));
  CHECK(np->second == doctest::Approx(6.25));

  const Instance averse_two_action = make({0, 2, 5}, {0, 0.8, 1});
  const RiskAttitude averse = sqrt_agent();
  auto averse_np = planner::plan_action(averse_two_action, averse, SocialUtility::kNashProduct, 2);
  REQUIRE(averse_np.has_value());
  CHECK(averse_np->first.x == doctest::Approx(20.0 / 9.0).epsilon(1e-9));
  CHECK(averse_np->first.y == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(averse_np->second == doctest::Approx(40.0 / 27.0).epsilon(1e-9));

  auto averse_usf = planner::plan_action(averse_two_action, averse, SocialUtility::kUsf, 2);
  REQUIRE(averse_usf.has_value());
  CHECK(averse_usf->first.x == doctest::Approx(4.0));
  CHECK(averse_usf->first.y == doctest::Approx(0.0));
  CHECK(averse_usf->second == doctest::Approx(4.0));

  auto averse_esf = planner::plan_action(averse_two_action, averse, SocialUtility::kEsf, 2);
  REQUIRE(averse_esf.has_value());
  CHECK(averse_esf->first.x == doctest::Approx(1.36));
  CHECK(averse_esf->first.y == doctest::Approx(std::sqrt(3.64) - 1.0).epsilon(1e-12));

  // Non-implementable action yields no plan.
  CHECK_FALSE(planner::plan_action(make({0, 4, 4.5}, {0, 2, 3}), neutral,
                                   SocialUtility::kUsf, 2)
                  .has_value());
}

TEST_CASE("plan picks the documented actions and profiles") {
  const RiskAttitude neutral = RiskAttitude::neutral();
  const planner::PlanResult a =
      planner::plan(make({0, 6, 8}, {0, 2.5, 3}), neutral, SocialUtility::kNashProduct);
  CHECK(a.target_action == 2);
  CHECK(a.profile.x == doctest::Approx(3.5));
  CHECK(a.profile.y == doctest::Approx(1.5));
  CHECK(a.welfare_value == doctest::Approx(5.25));

  const planner::PlanResult b =
      planner::plan(make({0, 4, 8}, {0, 2, 3}), neutral, SocialUtility::kNashProduct);
  CHECK(b.target_action == 2);
  CHECK(b.profile.x == doctest::Approx(2.5));
  CHECK(b.welfare_value == doctest::Approx(6.25));

  const planner::PlanResult c =
      planner::plan(make({0, 2, 5}, {0, 0.8, 1}), sqrt_agent(), SocialUtility::kEsf);
  CHECK(c.target_action == 2);
  CHECK(c.profile.x == doctest::Approx(1.36));
  CHECK(c.profile.y == doctest::Approx(std::sqrt(3.64) - 1.0).epsilon(1e-12));

  // Nothing implementable: the default action and the origin profile.
  const planner::PlanResult d =
      planner::plan(make({0, 1, 2}, {0, 2, 4}), neutral, SocialUtility::kNashProduct);
  CHECK(d.target_action == 0);
  CHECK(d.profile.x == 0.0);
  CHECK(d.profile.y == 0.0);
  CHECK(d.welfare_value == 0.0);
}

TEST_CASE("planned profiles are implementable with the planned witness") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance instance = testgen::random_instance(rng);
    const RiskAttitude attitude = testgen::random_attitude(rng);
    for (SocialUtility kind : testgen::all_welfare_kinds()) {
      const planner::PlanResult result = planner::plan(instance, attitude, kind);
      const auto witness =
          model::is_profile_implementable(instance, attitude, result.profile);
      REQUIRE(witness.has_value());
      CHECK(result.profile.y >= -1e-9);
      CHECK(result.profile.x >=
            model::principal_floor(instance, attitude) - 1e-9);
      CHECK(result.welfare_value ==
            doctest::Approx(planner::evaluate_welfare(kind, result.profile))
                .epsilon(1e-12));
      if (result.target_action > 0) {
        const double boundary = model::frontier(instance, attitude,
                                                result.target_action, result.profile.x);
        if (attitude.is_averse()) {
          CHECK(result.profile.y <= boundary + 1e-9);
        } else {
          CHECK(result.profile.y == doctest::Approx(boundary).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("neutral Nash product values are ordered by surplus") {
  std::mt19937_64 rng(103);
  const RiskAttitude neutral = RiskAttitude::neutral();
  for (int trial = 0; trial < 200; ++trial) {
    const Instance instance = testgen::random_instance(rng);
    double best_surplus = -1.0;
    double best_np = -1.0;
    bool first = true;
    // Walk actions in increasing surplus order and require the per-action
    // Nash product optimum to be nondecreasing.
    std::vector<int> order;
    for (int a = 1; a <= instance.n(); ++a) {
      if (model::is_action_implementable(instance, neutral, a)) order.push_back(a);
    }
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
      return instance.reward(lhs) - instance.cost(lhs) <
             instance.reward(rhs) - instance.cost(rhs);
    });
    for (int a : order) {
      const auto result =
          planner::plan_action(instance, neutral, SocialUtility::kNashProduct, a);
      REQUIRE(result.has_value());
      if (!first) {
        CHECK(result->second >= best_np - 1e-9);
      }
      first = false;
      best_np = result->second;
      best_surplus = instance.reward(a) - instance.cost(a);
    }
    (void)best_surplus;
  }
}

TEST_CASE("neutral winners maximize the surplus") {
  std::mt19937_64 rng(107);
  const RiskAttitude neutral = RiskAttitude::neutral();
  for (int trial = 0; trial < 200; ++trial) {
    const Instance instance = testgen::random_instance(rng);
    for (SocialUtility kind :
         {SocialUtility::kUsf, SocialUtility::kNashProduct, SocialUtility::kEsf}) {
      const planner::PlanResult result = planner::plan(instance, neutral, kind);
      if (result.target_action == 0) continue;
      int expected = 0;
      double best = -1.0;
      for (int a = 1; a <= instance.n(); ++a) {
        if (!model::is_action_implementable(instance, neutral, a)) continue;
        const double surplus = instance.reward(a) - instance.cost(a);
        if (surplus > best) {
          best = surplus;
          expected = a;
        }
      }
      CHECK(result.target_action == expected);
    }
  }
}

TEST_CASE("fairness optima are exact or coincide with the egalitarian plan") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance instance = testgen::random_instance(rng);
    const RiskAttitude attitude = testgen::random_attitude(rng);
    const planner::PlanResult fairness =
        planner::plan(instance, attitude, SocialUtility::kApproxFairness);
    if (fairness.target_action == 0) continue;
    if (!fairness.unique) {
      CHECK(fairness.welfare_value == doctest::Approx(0.0).epsilon(1e-9));
    } else {
      const planner::PlanResult egalitarian =
          planner::plan(instance, attitude, SocialUtility::kEsf);
      CHECK(fairness.profile.x ==
            doctest::Approx(egalitarian.profile.x).epsilon(1e-9));
      CHECK(fairness.profile.y ==
            doctest::Approx(egalitarian.profile.y).epsilon(1e-9));
    }
  }
}

TEST_CASE("segments attain the optimal welfare along the boundary") {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance instance = testgen::random_instance(rng);
    const RiskAttitude attitude = testgen::random_attitude(rng);
    for (SocialUtility kind : testgen::all_welfare_kinds()) {
      const planner::PlanResult result = planner::plan(instance, attitude, kind);
      if (!result.segment) continue;
      CHECK_FALSE(result.unique);
      REQUIRE(result.segment->x_lo <= result.segment->x_hi + 1e-12);
      for (int i = 0; i <= 16; ++i) {
        const double x = result.segment->x_lo +
                         (result.segment->x_hi - result.segment->x_lo) * i / 16.0;
        UtilityProfile p;
        if (kind == SocialUtility::kApproxFairness) {
          p = UtilityProfile{x, x};  // fairness segments live on y = x
        } else {
          p = UtilityProfile{
              x, model::frontier(instance, attitude, result.target_action, x)};
        }
        CHECK(planner::evaluate_welfare(kind, p) ==
              doctest::Approx(result.welfare_value).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("plan agrees with the brute-force sweep") {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance instance = testgen::random_instance(rng);
    const RiskAttitude attitude = testgen::random_attitude(rng);
    for (SocialUtility kind : testgen::all_welfare_kinds()) {
      const planner::PlanResult fast = planner::plan(instance, attitude, kind);
      const planner::PlanResult slow =
          equilibrium::brute_force_plan(instance, attitude, kind, 20000);
      const double scale = 10.0 / 20000.0;  // welfare Lipschitz x sweep spacing
      CHECK(std::abs(fast.welfare_value - slow.welfare_value) <= 10.0 * scale + 1e-9);
    }
  }
}
