#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "infodesign/numerics.hpp"

namespace infodesign::model {

/// Absolute tolerance for implementability comparisons.
inline constexpr double kEpsTol = 1e-9;

struct ActionSpec {
  double reward = 0.0;  // expected reward for the principal
  double cost = 0.0;    // deterministic cost for the agent
};

// Common knowledge of the game: actions 0..n where action 0 is the default
// (zero reward, zero cost) always available to the agent.
class Instance {
 public:
  /// Takes the full action list including the default at index 0.
  explicit Instance(std::vector<ActionSpec> actions);

  /// Convenience: prepends the implicit default action.
  static Instance from_nondefault(std::vector<ActionSpec> actions);

  int n() const { return static_cast<int>(actions_.size()) - 1; }
  double reward(int a) const { return at(a).reward; }
  double cost(int a) const { return at(a).cost; }
  const std::vector<ActionSpec>& actions() const { return actions_; }

 private:
  const ActionSpec& at(int a) const;
  std::vector<ActionSpec> actions_;
};

// Risk attitude of the agent; the averse variant carries the concave
// valuation of transfers.
class RiskAttitude {
 public:
  static RiskAttitude neutral() { return RiskAttitude(nullptr); }
  static RiskAttitude averse(std::shared_ptr<const numerics::ValueFunction> v);

  bool is_averse() const { return v_ != nullptr; }
  const numerics::ValueFunction& value_function() const;

 private:
  explicit RiskAttitude(std::shared_ptr<const numerics::ValueFunction> v)
      : v_(std::move(v)) {}
  std::shared_ptr<const numerics::ValueFunction> v_;
};

// Expected utilities (principal, agent) of an equilibrium outcome.
struct UtilityProfile {
  double x = 0.0;  // principal
  double y = 0.0;  // agent
};

/// The cost-effective action: least costly among 1..n, ties by maximal
/// reward, remaining ties by lowest index.
int hat_action(const Instance& instance);

/// Net surplus of an action: r_a - c_a (neutral) or r_a - v^{-1}(c_a)
/// (averse).  Surplus of the cost-effective action bounds the principal's
/// equilibrium utility from below (once clamped at zero).
double action_surplus(const Instance& instance, const RiskAttitude& attitude, int a);

/// max{0, surplus of the cost-effective action}.
double principal_floor(const Instance& instance, const RiskAttitude& attitude);

bool is_action_implementable(const Instance& instance, const RiskAttitude& attitude,
                             int a);

// Upper boundary of the possible-profile set of action a at principal
// utility x: the line y = r_a - c_a - x (neutral) or the curve
// y = v(r_a - x) - c_a (averse).  Requires a in 1..n and x <= r_a.
double frontier(const Instance& instance, const RiskAttitude& attitude, int a,
                double x);

// Lowest-index action whose possible-profile set contains p subject to the
// floors p.x >= principal_floor - eps and p.y >= -eps; action 0 witnesses the
// origin profile when no other action does.  Empty when p is not
// implementable.
std::optional<int> is_profile_implementable(const Instance& instance,
                                            const RiskAttitude& attitude,
                                            const UtilityProfile& p);

}  // namespace infodesign::model
