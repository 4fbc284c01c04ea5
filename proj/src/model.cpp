#include "infodesign/model.hpp"

#include <cmath>
#include <stdexcept>

namespace infodesign::model {

Instance::Instance(std::vector<ActionSpec> actions) : actions_(std::move(actions)) {
  if (actions_.size() < 2) {
    throw std::invalid_argument("Instance: need at least one non-default action");
  }
  if (actions_[0].reward != 0.0 || actions_[0].cost != 0.0) {
    throw std::invalid_argument("Instance: action 0 must have zero reward and cost");
  }
  for (const ActionSpec& spec : actions_) {
    if (!std::isfinite(spec.reward) || !std::isfinite(spec.cost) ||
        spec.reward < 0.0 || spec.cost < 0.0) {
      throw std::invalid_argument("Instance: rewards and costs must be finite and nonnegative");
    }
  }
}

Instance Instance::from_nondefault(std::vector<ActionSpec> actions) {
  actions.insert(actions.begin(), ActionSpec{0.0, 0.0});
  return Instance(std::move(actions));
}

const ActionSpec& Instance::at(int a) const {
  if (a < 0 || a > n()) {
    throw std::out_of_range("Instance: action index out of range");
  }
  return actions_[static_cast<std::size_t>(a)];
}

RiskAttitude RiskAttitude::averse(std::shared_ptr<const numerics::ValueFunction> v) {
  if (!v) {
    throw std::invalid_argument("RiskAttitude::averse: value function required");
  }
  return RiskAttitude(std::move(v));
}

const numerics::ValueFunction& RiskAttitude::value_function() const {
  if (!v_) {
    throw std::logic_error("RiskAttitude: neutral attitude has no value function");
  }
  return *v_;
}

int hat_action(const Instance& instance) {
  int best = 1;
  for (int a = 2; a <= instance.n(); ++a) {
    if (instance.cost(a) < instance.cost(best) ||
        (instance.cost(a) == instance.cost(best) &&
         instance.reward(a) > instance.reward(best))) {
      best = a;
    }
  }
  return best;
}

double action_surplus(const Instance& instance, const RiskAttitude& attitude, int a) {
  if (a < 0 || a > instance.n()) {
    throw std::out_of_range("action_surplus: action index out of range");
  }
  if (attitude.is_averse()) {
    return instance.reward(a) - attitude.value_function().inverse(instance.cost(a));
  }
  return instance.reward(a) - instance.cost(a);
}

double principal_floor(const Instance& instance, const RiskAttitude& attitude) {
  const double surplus = action_surplus(instance, attitude, hat_action(instance));
  return surplus > 0.0 ? surplus : 0.0;
}

bool is_action_implementable(const Instance& instance, const RiskAttitude& attitude,
                             int a) {
  if (a < 0 || a > instance.n()) {
    throw std::out_of_range("is_action_implementable: action index out of range");
  }
  if (a == 0) return true;
  return action_surplus(instance, attitude, a) >=
         principal_floor(instance, attitude) - kEpsTol;
}

double frontier(const Instance& instance, const RiskAttitude& attitude, int a,
                double x) {
  if (a < 1 || a > instance.n()) {
    throw std::out_of_range("frontier: action index out of range");
  }
  const double slack = instance.reward(a) - x;
  if (slack < -kEpsTol) {
    throw std::domain_error("frontier: x exceeds the action's reward");
  }
  if (attitude.is_averse()) {
    return attitude.value_function().eval(slack > 0.0 ? slack : 0.0) - instance.cost(a);
  }
  return instance.reward(a) - instance.cost(a) - x;
}

std::optional<int> is_profile_implementable(const Instance& instance,
                                            const RiskAttitude& attitude,
                                            const UtilityProfile& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
  const double floor = principal_floor(instance, attitude);
  if (p.x >= floor - kEpsTol && p.y >= -kEpsTol) {
    for (int a = 1; a <= instance.n(); ++a) {
      if (p.x > instance.reward(a) + kEpsTol) continue;
      const double boundary = frontier(instance, attitude, a, p.x);
      const bool member = attitude.is_averse()
                              ? p.y <= boundary + kEpsTol
                              : std::abs(p.y - boundary) <= kEpsTol;
      if (member) return a;
    }
  }
  if (std::abs(p.x) <= kEpsTol && std::abs(p.y) <= kEpsTol) return 0;
  return std::nullopt;
}

}  // namespace infodesign::model
