// Command line front end for the two-stage social planning workflow:
// stage 1 picks the welfare-optimal utility profile, stage 2 designs the
// binary-signal information structure realizing it, and the verify step
// replays the induced game against a brute-force contract oracle.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "infodesign/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerificationFailed = 2;
constexpr int kExitNumericFailure = 3;

struct CommonArgs {
  std::string input;
  std::string output;
  std::optional<double> grid_step;
  std::optional<double> transfer_max;
  std::optional<std::string> welfare;
  std::size_t samples = 256;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_grid, bool with_samples) {
  cmd->add_option("-i,--input", args.input, "instance file")->required();
  cmd->add_option("-o,--output", args.output, "output file (default: stdout)");
  cmd->add_option("--welfare", args.welfare,
                  "override the social utility from the instance file "
                  "(usf|nash_product|esf|approx_fairness)");
  if (with_grid) {
    cmd->add_option("--grid-step", args.grid_step, "contract grid step for the oracle");
    cmd->add_option("--transfer-max", args.transfer_max,
                    "largest transfer the oracle considers");
  }
  if (with_samples) {
    cmd->add_option("--samples", args.samples, "boundary samples per action");
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw infodesign::io::ParseError(path + ": cannot open for writing");
  out << text;
}

int run_stage(const CommonArgs& args, infodesign::io::PipelineStage stage) {
  infodesign::io::LoadedInstance loaded = infodesign::io::load_instance(args.input);
  if (args.welfare) loaded.welfare = infodesign::io::welfare_from_string(*args.welfare);

  infodesign::io::PipelineOptions options;
  options.stage = stage;
  options.grid_step = args.grid_step;
  options.transfer_max = args.transfer_max;

  const infodesign::io::PlanReport report =
      infodesign::io::run_pipeline(loaded.instance, loaded.attitude, loaded.welfare,
                                   options);
  emit(infodesign::io::report_to_json(report).dump(2) + "\n", args.output);
  if (report.verification && !report.verification->passed) {
    std::cerr << "verification failed: max profile error "
              << report.verification->max_abs_err << "\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int run_frontier(const CommonArgs& args) {
  infodesign::io::LoadedInstance loaded = infodesign::io::load_instance(args.input);
  emit(infodesign::io::frontier_csv(loaded.instance, loaded.attitude, args.samples),
       args.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"social planning for the principal-agent game via information design"};
  app.require_subcommand(1);

  CommonArgs plan_args, design_args, verify_args, run_args, frontier_args;
  CLI::App* plan = app.add_subcommand("plan", "stage 1: optimal utility profile");
  add_common(plan, plan_args, /*with_grid=*/false, /*with_samples=*/false);
  CLI::App* design =
      app.add_subcommand("design", "stages 1-2: profile and information structure");
  add_common(design, design_args, /*with_grid=*/false, /*with_samples=*/false);
  CLI::App* verify =
      app.add_subcommand("verify", "stages 1-2 plus the equilibrium oracle");
  add_common(verify, verify_args, /*with_grid=*/true, /*with_samples=*/false);
  CLI::App* run = app.add_subcommand("run", "full workflow with verification");
  add_common(run, run_args, /*with_grid=*/true, /*with_samples=*/false);
  CLI::App* frontier =
      app.add_subcommand("frontier", "CSV of each implementable action's boundary");
  add_common(frontier, frontier_args, /*with_grid=*/false, /*with_samples=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (plan->parsed()) return run_stage(plan_args, infodesign::io::PipelineStage::kPlan);
    if (design->parsed())
      return run_stage(design_args, infodesign::io::PipelineStage::kDesign);
    if (verify->parsed())
      return run_stage(verify_args, infodesign::io::PipelineStage::kVerify);
    if (run->parsed()) return run_stage(run_args, infodesign::io::PipelineStage::kVerify);
    if (frontier->parsed()) return run_frontier(frontier_args);
  } catch (const infodesign::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericFailure;
  }
  return kExitUsage;
}
