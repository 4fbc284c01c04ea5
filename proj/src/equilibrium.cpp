#include "infodesign/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace infodesign::equilibrium {

namespace {

using design::Contract;
using design::InformationStructure;
using model::Instance;
using model::RiskAttitude;
using model::UtilityProfile;

int resolve_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned cap = hw;
  if (const char* env = std::getenv("INFODESIGN_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0) {
      cap = static_cast<unsigned>(std::min<long>(parsed, 256));
    }
  }
  return static_cast<int>(std::max(1u, std::min(cap, hw)));
}

inline constexpr int kMaxChunks = 256;

// Runs fn(chunk_index, begin, end) over [0, count) split into contiguous
// chunks, one per worker.  Chunk boundaries depend only on count and the
// worker tally, so per-chunk results are reproducible.
template <typename Fn>
int run_chunked(std::size_t count, const Fn& fn) {
  const int threads =
      count < 4096
          ? 1
          : std::min({resolve_threads(), static_cast<int>((count + 4095) / 4096),
                      kMaxChunks});
  if (threads <= 1) {
    fn(0, std::size_t{0}, count);
    return 1;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const std::size_t chunk = (count + static_cast<std::size_t>(threads) - 1) /
                            static_cast<std::size_t>(threads);
  for (int i = 0; i < threads; ++i) {
    const std::size_t begin = std::min(count, static_cast<std::size_t>(i) * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&fn, i, begin, end] { fn(i, begin, end); });
  }
  for (std::thread& worker : pool) worker.join();
  return threads;
}

void validate_structure(const Instance& instance, const InformationStructure& I) {
  if (static_cast<int>(I.rows.size()) != instance.n()) {
    throw std::invalid_argument("information structure: row count must equal n");
  }
  for (const std::vector<double>& row : I.rows) {
    if (static_cast<int>(row.size()) != I.k) {
      throw std::invalid_argument("information structure: row width must equal k");
    }
    double sum = 0.0;
    for (double entry : row) {
      if (!(entry >= -1e-12 && entry <= 1.0 + 1e-12)) {
        throw std::invalid_argument("information structure: entry outside [0, 1]");
      }
      sum += entry;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("information structure: row does not sum to 1");
    }
  }
}

struct AgentValuation {
  double utility = 0.0;           // what the agent maximizes
  double expected_transfer = 0.0; // what the principal pays
};

AgentValuation valuate(const Instance& instance, const InformationStructure& I,
                       int a, const double* transfers, const double* transfer_values) {
  AgentValuation out;
  if (a == 0) return out;
  const std::vector<double>& row = I.rows[static_cast<std::size_t>(a - 1)];
  double value = 0.0;
  double paid = 0.0;
  for (int j = 0; j < I.k; ++j) {
    const double prob = row[static_cast<std::size_t>(j)];
    value += prob * transfer_values[j];
    paid += prob * transfers[j];
  }
  out.utility = value - instance.cost(a);
  out.expected_transfer = paid;
  return out;
}

// Best response plus the resulting bilateral utilities for one contract.
struct Response {
  int action = 0;
  double principal = 0.0;
  double agent = 0.0;
};

Response respond(const Instance& instance, const InformationStructure& I,
                 const double* transfers, const double* transfer_values,
                 double tie_tol) {
  const int n = instance.n();
  double best_utility = 0.0;  // action 0
  for (int a = 1; a <= n; ++a) {
    best_utility =
        std::max(best_utility, valuate(instance, I, a, transfers, transfer_values).utility);
  }
  Response out;
  bool have = false;
  for (int a = 0; a <= n; ++a) {
    const AgentValuation val =
        a == 0 ? AgentValuation{} : valuate(instance, I, a, transfers, transfer_values);
    if (val.utility < best_utility - tie_tol) continue;
    const double principal = a == 0 ? 0.0 : instance.reward(a) - val.expected_transfer;
    if (!have || principal > out.principal) {
      have = true;
      out.action = a;
      out.principal = principal;
      out.agent = val.utility;
    }
  }
  return out;
}

std::vector<double> grid_points(const GridConfig& grid) {
  if (!(grid.step > 0.0) || !(grid.transfer_max >= grid.step)) {
    throw std::invalid_argument("grid: step must be positive and at most transfer_max");
  }
  if (!(grid.tie_tol >= 0.0)) {
    throw std::invalid_argument("grid: tie_tol must be nonnegative");
  }
  const std::size_t count =
      static_cast<std::size_t>(std::floor(grid.transfer_max / grid.step)) + 1;
  std::vector<double> points;
  points.reserve(count + 1);
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back(static_cast<double>(i) * grid.step);
  }
  if (points.back() < grid.transfer_max - 1e-12 * (1.0 + grid.transfer_max)) {
    points.push_back(grid.transfer_max);
  }
  return points;
}

// High-signal transfers at which some pair of actions (or an action and the
// default) swaps rank in the agent's preference, assuming zero low-signal
// transfers.  These are the only points where the principal's value function
// can jump, so sweeping them in addition to the grid pins down equilibria
// that sit exactly on an indifference.
std::vector<double> indifference_breakpoints(const Instance& instance,
                                             const RiskAttitude& attitude,
                                             const InformationStructure& I,
                                             const GridConfig& grid) {
  const int n = instance.n();
  std::vector<double> highs(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> costs(static_cast<std::size_t>(n) + 1, 0.0);
  for (int a = 1; a <= n; ++a) {
    highs[static_cast<std::size_t>(a)] = I.rows[static_cast<std::size_t>(a - 1)][0];
    costs[static_cast<std::size_t>(a)] = instance.cost(a);
  }
  std::vector<double> points;
  for (int a = 0; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      const double dh = highs[static_cast<std::size_t>(a)] - highs[static_cast<std::size_t>(b)];
      if (dh == 0.0) continue;
      const double dc = costs[static_cast<std::size_t>(a)] - costs[static_cast<std::size_t>(b)];
      const double level = dc / dh;  // required v(t) (averse) or t (neutral)
      if (!(level >= 0.0)) continue;
      double t;
      if (attitude.is_averse()) {
        try {
          t = attitude.value_function().inverse(level);
        } catch (const std::domain_error&) {
          continue;
        }
      } else {
        t = level;
      }
      if (std::isfinite(t) && t >= 0.0 && t <= grid.transfer_max) {
        points.push_back(t);
      }
    }
  }
  return points;
}

struct Candidate {
  double principal = 0.0;
  double agent = 0.0;
  int action = 0;
  std::size_t index = 0;
  bool valid = false;
};

}  // namespace

GridConfig default_grid(const Instance& instance, const RiskAttitude& attitude) {
  double max_reward = 0.0;
  double max_cost = 0.0;
  for (int a = 1; a <= instance.n(); ++a) {
    max_reward = std::max(max_reward, instance.reward(a));
    max_cost = std::max(max_cost, instance.cost(a));
  }
  GridConfig grid;
  grid.transfer_max = 2.0 * max_reward;
  if (attitude.is_averse()) {
    const numerics::ValueFunction& v = attitude.value_function();
    grid.transfer_max =
        std::max(grid.transfer_max, v.inverse(v.eval(max_reward) + max_cost));
  }
  grid.transfer_max = std::max(grid.transfer_max, 1.0);
  grid.step = 1e-3 * grid.transfer_max;
  return grid;
}

int agent_best_response(const Instance& instance, const RiskAttitude& attitude,
                        const InformationStructure& I, const Contract& t) {
  validate_structure(instance, I);
  if (static_cast<int>(t.transfers.size()) != I.k) {
    throw std::invalid_argument("agent_best_response: contract width must equal k");
  }
  std::vector<double> values(t.transfers.size());
  for (std::size_t j = 0; j < t.transfers.size(); ++j) {
    values[j] = attitude.is_averse() ? attitude.value_function().eval(t.transfers[j])
                                     : t.transfers[j];
  }
  const double tie_tol = 1e-9;
  return respond(instance, I, t.transfers.data(), values.data(), tie_tol)
      .action;
}

EquilibriumOutcome principal_best_contract(const Instance& instance,
                                           const RiskAttitude& attitude,
                                           const InformationStructure& I,
                                           const GridConfig& grid,
                                           ContractSearchMode mode) {
  validate_structure(instance, I);
  const int k = I.k;
  if (mode == ContractSearchMode::kFull && k > 3) {
    throw std::invalid_argument("principal_best_contract: full mode supports k <= 3");
  }

  // Shared axis of candidate transfer levels; low-zero mode appends the
  // agent's indifference breakpoints after the regular grid.
  std::vector<double> axis = grid_points(grid);
  if (mode == ContractSearchMode::kLowZero) {
    const std::vector<double> extra = indifference_breakpoints(instance, attitude, I, grid);
    axis.insert(axis.end(), extra.begin(), extra.end());
  }
  std::vector<double> axis_values(axis.size());
  for (std::size_t i = 0; i < axis.size(); ++i) {
    axis_values[i] = attitude.is_averse() ? attitude.value_function().eval(axis[i])
                                          : axis[i];
  }

  std::size_t total = axis.size();
  if (mode == ContractSearchMode::kFull) {
    total = 1;
    for (int j = 0; j < k; ++j) {
      if (total > grid.max_evaluations / axis.size()) {
        throw std::invalid_argument("principal_best_contract: grid too large");
      }
      total *= axis.size();
    }
  }
  if (total > grid.max_evaluations) {
    throw std::invalid_argument("principal_best_contract: grid too large");
  }

  const auto contract_at = [&](std::size_t index, double* transfers,
                               double* values) {
    if (mode == ContractSearchMode::kLowZero) {
      transfers[0] = axis[index];
      values[0] = axis_values[index];
      for (int j = 1; j < k; ++j) {
        transfers[j] = 0.0;
        values[j] = 0.0;
      }
    } else {
      std::size_t rest = index;
      for (int j = 0; j < k; ++j) {
        const std::size_t pick = rest % axis.size();
        rest /= axis.size();
        transfers[j] = axis[pick];
        values[j] = axis_values[pick];
      }
    }
  };

  // Phase 1: the best principal utility over all candidates.
  std::vector<double> chunk_max(static_cast<std::size_t>(kMaxChunks),
                                -std::numeric_limits<double>::infinity());
  run_chunked(total, [&](int chunk, std::size_t begin, std::size_t end) {
    double local = -std::numeric_limits<double>::infinity();
    std::vector<double> transfers(static_cast<std::size_t>(k));
    std::vector<double> values(static_cast<std::size_t>(k));
    for (std::size_t i = begin; i < end; ++i) {
      contract_at(i, transfers.data(), values.data());
      const Response r = respond(instance, I, transfers.data(), values.data(),
                                 grid.tie_tol);
      local = std::max(local, r.principal);
    }
    chunk_max[static_cast<std::size_t>(chunk)] = local;
  });
  double best_utility = -std::numeric_limits<double>::infinity();
  for (double m : chunk_max) best_utility = std::max(best_utility, m);

  // Phase 2: within the tie band prefer the higher agent utility, then the
  // lexicographically smallest contract.  Resolving the band after a global
  // maximum pass keeps the outcome independent of chunking.
  const double band = best_utility - grid.tie_tol;
  std::vector<Candidate> chunk_best(static_cast<std::size_t>(kMaxChunks));
  const auto lex_less = [&](std::size_t lhs, std::size_t rhs) {
    std::vector<double> lt(static_cast<std::size_t>(k)), lv(static_cast<std::size_t>(k));
    std::vector<double> rt(static_cast<std::size_t>(k)), rv(static_cast<std::size_t>(k));
    contract_at(lhs, lt.data(), lv.data());
    contract_at(rhs, rt.data(), rv.data());
    return lt < rt;
  };
  const auto better = [&](const Candidate& lhs, const Candidate& rhs) {
    if (!rhs.valid) return lhs.valid;
    if (!lhs.valid) return false;
    if (lhs.agent != rhs.agent) return lhs.agent > rhs.agent;
    if (lhs.index == rhs.index) return false;
    return lex_less(lhs.index, rhs.index);
  };
  run_chunked(total, [&](int chunk, std::size_t begin, std::size_t end) {
    Candidate local;
    std::vector<double> transfers(static_cast<std::size_t>(k));
    std::vector<double> values(static_cast<std::size_t>(k));
    for (std::size_t i = begin; i < end; ++i) {
      contract_at(i, transfers.data(), values.data());
      const Response r = respond(instance, I, transfers.data(), values.data(),
                                 grid.tie_tol);
      if (r.principal < band) continue;
      Candidate candidate{r.principal, r.agent, r.action, i, true};
      if (better(candidate, local)) local = candidate;
    }
    chunk_best[static_cast<std::size_t>(chunk)] = local;
  });
  Candidate winner;
  for (const Candidate& candidate : chunk_best) {
    if (better(candidate, winner)) winner = candidate;
  }
  if (!winner.valid) {
    throw std::logic_error("principal_best_contract: empty candidate set");
  }

  EquilibriumOutcome outcome;
  std::vector<double> transfers(static_cast<std::size_t>(k));
  std::vector<double> values(static_cast<std::size_t>(k));
  contract_at(winner.index, transfers.data(), values.data());
  outcome.contract.transfers = std::move(transfers);
  outcome.action = winner.action;
  outcome.profile = UtilityProfile{winner.principal, winner.agent};
  return outcome;
}

VerificationReport verify_design(const Instance& instance, const RiskAttitude& attitude,
                                 const design::DesignOutput& designed, double tol,
                                 const GridConfig& grid, ContractSearchMode mode) {
  const EquilibriumOutcome outcome =
      principal_best_contract(instance, attitude, designed.structure, grid, mode);
  VerificationReport report;
  report.induced_action = outcome.action;
  report.induced_profile = outcome.profile;
  report.max_abs_err =
      std::max(std::abs(outcome.profile.x - designed.target_profile.x),
               std::abs(outcome.profile.y - designed.target_profile.y));
  report.passed = outcome.action == designed.target_action &&
                  report.max_abs_err <= tol + 2.0 * grid.step;
  return report;
}

planner::PlanResult brute_force_plan(const Instance& instance,
                                     const RiskAttitude& attitude,
                                     planner::SocialUtility kind,
                                     std::size_t samples) {
  if (samples < 2) {
    throw std::invalid_argument("brute_force_plan: need at least two samples");
  }
  const double floor = model::principal_floor(instance, attitude);
  planner::PlanResult best;
  best.target_action = 0;
  best.profile = UtilityProfile{0.0, 0.0};
  best.welfare_value = planner::evaluate_welfare(kind, best.profile);
  bool found = false;

  constexpr double kTieEps = 1e-12;
  const auto consider = [&](int action, const UtilityProfile& profile) {
    const double welfare = planner::evaluate_welfare(kind, profile);
    bool take = false;
    if (!found) {
      take = true;
    } else if (welfare > best.welfare_value + kTieEps) {
      take = true;
    } else if (kind == planner::SocialUtility::kApproxFairness &&
               welfare > best.welfare_value - kTieEps &&
               profile.x + profile.y > best.profile.x + best.profile.y + kTieEps) {
      take = true;  // fairness ties resolve toward the larger overall utility
    }
    if (take) {
      found = true;
      best.target_action = action;
      best.profile = profile;
      best.welfare_value = welfare;
    }
  };

  for (int a = 1; a <= instance.n(); ++a) {
    if (!model::is_action_implementable(instance, attitude, a)) continue;
    const double hi = model::action_surplus(instance, attitude, a);
    const double lo = floor;
    if (hi < lo) continue;
    const std::size_t count = hi - lo > 0.0 ? samples : 1;
    for (std::size_t i = 0; i < count; ++i) {
      const double x =
          count == 1
              ? lo
              : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
      consider(a, UtilityProfile{x, model::frontier(instance, attitude, a, x)});
    }
    if (kind == planner::SocialUtility::kApproxFairness) {
      // Seed the y = x crossing of this action's boundary, when it lies in
      // the feasible slice.
      const auto gap = [&](double x) {
        return model::frontier(instance, attitude, a, x) - x;
      };
      if (gap(lo) >= 0.0 && gap(hi) <= 0.0) {
        const double x = numerics::solve_increasing(gap, lo, hi, 1e-12);
        consider(a, UtilityProfile{x, model::frontier(instance, attitude, a, x)});
      }
    }
  }
  return best;
}

}  // namespace infodesign::equilibrium
