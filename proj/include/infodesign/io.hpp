#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "infodesign/design.hpp"
#include "infodesign/equilibrium.hpp"
#include "infodesign/model.hpp"
#include "infodesign/planner.hpp"

namespace infodesign::io {

/// Raised on malformed or invalid input documents; the message carries the
/// offending field path.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedInstance {
  model::Instance instance;
  model::RiskAttitude attitude;
  planner::SocialUtility welfare;
};

planner::SocialUtility welfare_from_string(const std::string& name);
std::string welfare_to_string(planner::SocialUtility kind);

/// Parses an instance document.  The file lists only the non-default actions;
/// the default action is prepended on load.
LoadedInstance parse_instance(const nlohmann::json& doc);
LoadedInstance load_instance(const std::string& path);

// End-to-end output of the workflow.  Stage-2 and verification blocks are
// absent when the corresponding stage was not requested.
struct PlanReport {
  int hat_action = 0;
  std::vector<int> implementable_actions;
  int target_action = 0;
  model::UtilityProfile profile;
  double welfare_value = 0.0;
  bool unique = true;
  std::optional<planner::Segment> segment;
  std::optional<design::InformationStructure> info_structure;
  std::optional<design::Contract> predicted_contract;
  std::optional<design::DesignAux> auxiliaries;
  std::optional<equilibrium::VerificationReport> verification;
};

enum class PipelineStage { kPlan, kDesign, kVerify };

struct PipelineOptions {
  PipelineStage stage = PipelineStage::kVerify;
  std::optional<double> grid_step;
  std::optional<double> transfer_max;
  double verify_tol = 1e-6;
};

/// plan -> design -> verify, assembled into a report.  Errors from inner
/// stages are rethrown with a stage label prefix.
PlanReport run_pipeline(const model::Instance& instance,
                        const model::RiskAttitude& attitude,
                        planner::SocialUtility kind,
                        const PipelineOptions& options = {});

nlohmann::json report_to_json(const PlanReport& report);
PlanReport report_from_json(const nlohmann::json& doc);

/// CSV with header "action,x,y": `samples` boundary points per implementable
/// action, restricted to the implementable slice, 17 significant digits.
std::string frontier_csv(const model::Instance& instance,
                         const model::RiskAttitude& attitude, std::size_t samples);

}  // namespace infodesign::io
