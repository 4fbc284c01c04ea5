#include "infodesign/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace infodesign::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

double require_number(const json& doc, const std::string& where) {
  if (!doc.is_number()) fail(where, "expected a number");
  return doc.get<double>();
}

const json& require_field(const json& doc, const char* key, const std::string& where) {
  const auto it = doc.find(key);
  if (it == doc.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

planner::SocialUtility welfare_from_string(const std::string& name) {
  if (name == "usf") return planner::SocialUtility::kUsf;
  if (name == "nash_product") return planner::SocialUtility::kNashProduct;
  if (name == "esf") return planner::SocialUtility::kEsf;
  if (name == "approx_fairness") return planner::SocialUtility::kApproxFairness;
  fail("welfare", "unknown social utility '" + name + "'");
}

std::string welfare_to_string(planner::SocialUtility kind) {
  switch (kind) {
    case planner::SocialUtility::kUsf: return "usf";
    case planner::SocialUtility::kNashProduct: return "nash_product";
    case planner::SocialUtility::kEsf: return "esf";
    case planner::SocialUtility::kApproxFairness: return "approx_fairness";
  }
  return "unknown";
}

LoadedInstance parse_instance(const json& doc) {
  if (!doc.is_object()) fail("instance", "document must be a single object");

  const json& actions = require_field(doc, "actions", "instance");
  if (!actions.is_array() || actions.empty()) {
    fail("actions", "expected a non-empty array");
  }
  std::vector<model::ActionSpec> specs;
  specs.reserve(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const std::string where = "actions[" + std::to_string(i) + "]";
    const json& entry = actions[i];
    if (!entry.is_object()) fail(where, "expected an object");
    model::ActionSpec spec;
    spec.reward = require_number(require_field(entry, "reward", where), where + ".reward");
    spec.cost = require_number(require_field(entry, "cost", where), where + ".cost");
    if (!std::isfinite(spec.reward) || spec.reward < 0.0) {
      fail(where + ".reward", "must be finite and nonnegative");
    }
    if (!std::isfinite(spec.cost) || spec.cost < 0.0) {
      fail(where + ".cost", "must be finite and nonnegative");
    }
    if (spec.reward == 0.0 && spec.cost == 0.0) {
      fail(where, "the default action is implicit and must not appear");
    }
    specs.push_back(spec);
  }

  const json& agent = require_field(doc, "agent", "instance");
  if (!agent.is_object()) fail("agent", "expected an object");
  const json& attitude_field = require_field(agent, "attitude", "agent");
  if (!attitude_field.is_string()) fail("agent.attitude", "expected a string");
  const std::string attitude_name = attitude_field.get<std::string>();

  model::RiskAttitude attitude = model::RiskAttitude::neutral();
  if (attitude_name == "risk_neutral") {
    if (agent.contains("value_function")) {
      fail("agent.value_function", "not allowed for a risk-neutral agent");
    }
  } else if (attitude_name == "risk_averse") {
    const json& vf = require_field(agent, "value_function", "agent");
    if (!vf.is_object()) fail("agent.value_function", "expected an object");
    const json& family = require_field(vf, "family", "agent.value_function");
    if (!family.is_string() || family.get<std::string>() != "power") {
      fail("agent.value_function.family", "only the 'power' family is supported");
    }
    const double alpha =
        require_number(require_field(vf, "alpha", "agent.value_function"),
                       "agent.value_function.alpha");
    const double beta =
        require_number(require_field(vf, "beta", "agent.value_function"),
                       "agent.value_function.beta");
    if (!(alpha > 0.0 && alpha < 1.0)) {
      fail("agent.value_function.alpha", "must lie in (0, 1)");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      fail("agent.value_function.beta", "must be positive and finite");
    }
    attitude = model::RiskAttitude::averse(numerics::make_power(alpha, beta));
  } else {
    fail("agent.attitude", "expected 'risk_neutral' or 'risk_averse'");
  }

  const json& welfare = require_field(doc, "welfare", "instance");
  if (!welfare.is_string()) fail("welfare", "expected a string");
  const planner::SocialUtility kind = welfare_from_string(welfare.get<std::string>());

  return LoadedInstance{model::Instance::from_nondefault(std::move(specs)), attitude,
                        kind};
}

LoadedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path, e.what());
  }
  return parse_instance(doc);
}

PlanReport run_pipeline(const model::Instance& instance,
                        const model::RiskAttitude& attitude,
                        planner::SocialUtility kind, const PipelineOptions& options) {
  PlanReport report;
  report.hat_action = model::hat_action(instance);
  for (int a = 1; a <= instance.n(); ++a) {
    if (model::is_action_implementable(instance, attitude, a)) {
      report.implementable_actions.push_back(a);
    }
  }

  planner::PlanResult planned;
  try {
    planned = planner::plan(instance, attitude, kind);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("plan: ") + e.what());
  }
  report.target_action = planned.target_action;
  report.profile = planned.profile;
  report.welfare_value = planned.welfare_value;
  report.unique = planned.unique;
  report.segment = planned.segment;
  if (options.stage == PipelineStage::kPlan) return report;

  design::DesignOutput designed;
  try {
    designed = design::design_for_plan(instance, attitude, planned);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("design: ") + e.what());
  }
  report.info_structure = designed.structure;
  report.predicted_contract = designed.predicted_contract;
  report.auxiliaries = designed.aux;
  if (options.stage == PipelineStage::kDesign) return report;

  try {
    equilibrium::GridConfig grid = equilibrium::default_grid(instance, attitude);
    if (options.transfer_max) grid.transfer_max = *options.transfer_max;
    if (options.grid_step) grid.step = *options.grid_step;
    report.verification =
        equilibrium::verify_design(instance, attitude, designed, options.verify_tol, grid);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("verify: ") + e.what());
  }
  return report;
}

nlohmann::json report_to_json(const PlanReport& report) {
  json doc;
  doc["hat_action"] = report.hat_action;
  doc["implementable_actions"] = report.implementable_actions;
  doc["target_action"] = report.target_action;
  doc["profile"] = {{"x", report.profile.x}, {"y", report.profile.y}};
  doc["welfare_value"] = report.welfare_value;
  doc["unique"] = report.unique;
  if (report.segment) {
    doc["segment"] = {{"x_lo", report.segment->x_lo}, {"x_hi", report.segment->x_hi}};
  }
  if (report.info_structure) {
    doc["info_structure"] = {{"k", report.info_structure->k},
                             {"rows", report.info_structure->rows}};
  }
  if (report.predicted_contract) {
    doc["predicted_contract"] = report.predicted_contract->transfers;
  }
  if (report.auxiliaries) {
    json aux = json::object();
    if (report.auxiliaries->s_star) aux["s_star"] = *report.auxiliaries->s_star;
    if (report.auxiliaries->z_star) aux["z_star"] = *report.auxiliaries->z_star;
    if (report.auxiliaries->p_star) aux["p_star"] = *report.auxiliaries->p_star;
    if (report.auxiliaries->q_star) aux["q_star"] = *report.auxiliaries->q_star;
    doc["auxiliaries"] = aux;
  }
  if (report.verification) {
    doc["verification"] = {
        {"induced_action", report.verification->induced_action},
        {"induced_profile",
         {{"x", report.verification->induced_profile.x},
          {"y", report.verification->induced_profile.y}}},
        {"max_abs_err", report.verification->max_abs_err},
        {"passed", report.verification->passed}};
  }
  return doc;
}

PlanReport report_from_json(const nlohmann::json& doc) {
  PlanReport report;
  report.hat_action = doc.at("hat_action").get<int>();
  report.implementable_actions = doc.at("implementable_actions").get<std::vector<int>>();
  report.target_action = doc.at("target_action").get<int>();
  report.profile.x = doc.at("profile").at("x").get<double>();
  report.profile.y = doc.at("profile").at("y").get<double>();
  report.welfare_value = doc.at("welfare_value").get<double>();
  report.unique = doc.at("unique").get<bool>();
  if (doc.contains("segment")) {
    report.segment = planner::Segment{doc.at("segment").at("x_lo").get<double>(),
                                      doc.at("segment").at("x_hi").get<double>()};
  }
  if (doc.contains("info_structure")) {
    design::InformationStructure structure;
    structure.k = doc.at("info_structure").at("k").get<int>();
    structure.rows =
        doc.at("info_structure").at("rows").get<std::vector<std::vector<double>>>();
    report.info_structure = std::move(structure);
  }
  if (doc.contains("predicted_contract")) {
    report.predicted_contract =
        design::Contract{doc.at("predicted_contract").get<std::vector<double>>()};
  }
  if (doc.contains("auxiliaries")) {
    design::DesignAux aux;
    const json& block = doc.at("auxiliaries");
    if (block.contains("s_star")) aux.s_star = block.at("s_star").get<double>();
    if (block.contains("z_star")) aux.z_star = block.at("z_star").get<double>();
    if (block.contains("p_star")) aux.p_star = block.at("p_star").get<double>();
    if (block.contains("q_star")) aux.q_star = block.at("q_star").get<double>();
    report.auxiliaries = aux;
  }
  if (doc.contains("verification")) {
    equilibrium::VerificationReport verification;
    const json& block = doc.at("verification");
    verification.induced_action = block.at("induced_action").get<int>();
    verification.induced_profile.x = block.at("induced_profile").at("x").get<double>();
    verification.induced_profile.y = block.at("induced_profile").at("y").get<double>();
    verification.max_abs_err = block.at("max_abs_err").get<double>();
    verification.passed = block.at("passed").get<bool>();
    report.verification = verification;
  }
  return report;
}

std::string frontier_csv(const model::Instance& instance,
                         const model::RiskAttitude& attitude, std::size_t samples) {
  if (samples < 2) {
    throw std::invalid_argument("frontier_csv: need at least two samples");
  }
  const double floor = model::principal_floor(instance, attitude);
  std::ostringstream out;
  out << "action,x,y\n";
  for (int a = 1; a <= instance.n(); ++a) {
    if (!model::is_action_implementable(instance, attitude, a)) continue;
    const double hi = model::action_surplus(instance, attitude, a);
    if (hi < floor) continue;
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = hi == floor
                           ? floor
                           : floor + (hi - floor) * static_cast<double>(i) /
                                         static_cast<double>(samples - 1);
      out << a << ',' << format_double(x) << ','
          << format_double(model::frontier(instance, attitude, a, x)) << '\n';
      if (hi == floor) break;
    }
  }
  return out.str();
}

}  // namespace infodesign::io
