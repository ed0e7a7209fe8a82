#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "curveflow/commands.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/io.hpp"
#include "curveflow/reference.hpp"

namespace fs = std::filesystem;
using namespace curveflow;

namespace {

const CLI::Validator kFinite(
    [](std::string& text) -> std::string {
      try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) return "not a finite real: " + text;
      } catch (const std::exception&) {
        return "not a finite real: " + text;
      }
      return {};
    },
    "FINITE");

struct SpeedLawFlags {
  double p = 1.0;
  bool log = false;
  double b = 0.0;

  void add(CLI::App* cmd) {
    auto* p_opt = cmd->add_option("--p", p, "Exponent of the power speed law κ^p")->check(kFinite);
    cmd->add_flag("--log", log, "Use the log κ speed law")->excludes(p_opt);
    cmd->add_option("--b", b, "Additive speed constant")->check(kFinite);
  }
  FlowMode mode() const { return log ? FlowMode::Log : FlowMode::Power; }
};

void write_json(const fs::path& path, const nlohmann::ordered_json& value) {
  write_file_atomic(path, value.dump(2) + "\n");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DomainError(fmt::format("cannot create directory {}: {}", dir.string(), ec.message()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-flow solitons and critical curves"};
  app.require_subcommand(1);

  // soliton
  SolitonRequest sol;
  SpeedLawFlags sol_law;
  std::string sol_csv = "soliton.csv", sol_json = "soliton.json", sol_svg;
  auto* soliton = app.add_subcommand("soliton", "Integrate the translating soliton of a speed law");
  sol_law.add(soliton);
  soliton->add_option("--d", sol.d, "First-integral value")->check(kFinite);
  soliton->add_option("--half-span", sol.half_span, "Arc-length half width")->check(kFinite);
  soliton->add_option("--tol", sol.tol, "Integrator local error tolerance")->check(kFinite);
  soliton->add_option("--csv", sol_csv, "Curve CSV output");
  soliton->add_option("--json", sol_json, "Metadata JSON output");
  soliton->add_option("--svg", sol_svg, "Optional SVG output");

  // flow
  SpeedLawFlags flow_law;
  FlowConfig flow_cfg;
  std::string flow_input, flow_out = "flow_out";
  bool flow_closed = false;
  double flow_a = 1.0, margin = 0.2;
  auto* flow = app.add_subcommand("flow", "Evolve a sampled curve under the speed law");
  flow_law.add(flow);
  flow->add_option("--input", flow_input, "Curve CSV")->required();
  flow->add_flag("--closed", flow_closed, "Treat the input as a closed curve");
  flow->add_option("--a", flow_a, "Speed divisor a")->check(kFinite);
  flow->add_option("--t-end", flow_cfg.t_end, "Final time")->check(kFinite);
  flow->add_option("--snapshots", flow_cfg.snapshots, "Number of snapshot intervals");
  flow->add_option("--cfl", flow_cfg.cfl, "Explicit step safety factor")->check(kFinite);
  flow->add_option("--dt", flow_cfg.dt, "Fixed time step (default: stability bound)")->check(kFinite);
  flow->add_option("--margin", margin, "Fraction of samples skipped at each end by the fit")->check(kFinite);
  flow->add_option("--out-dir", flow_out, "Output directory");

  // verify
  SpeedLawFlags ver_law;
  std::string ver_input, ver_json;
  bool ver_closed = false;
  auto* verify = app.add_subcommand("verify", "Check a sampled curve against both sides of the equivalence");
  ver_law.add(verify);
  verify->add_option("--input", ver_input, "Curve CSV")->required();
  verify->add_flag("--closed", ver_closed, "Treat the input as a closed curve");
  verify->add_option("--json", ver_json, "Also write the report here");

  // figure1
  std::string fig_out = "figure1";
  auto* figure1 = app.add_subcommand("figure1", "Render the four p = 1 soliton panels");
  figure1->add_option("--out-dir", fig_out, "Output directory");

  // reference
  const std::map<std::string, ReferenceShape> shapes{
      {"grim_reaper", ReferenceShape::GrimReaper}, {"catenary", ReferenceShape::Catenary},
      {"cycloid", ReferenceShape::Cycloid},        {"parabola", ReferenceShape::Parabola},
      {"circle", ReferenceShape::Circle},          {"line", ReferenceShape::Line},
      {"elastica", ReferenceShape::Elastica}};
  ReferenceKind ref_kind;
  std::size_t ref_samples = 2001;
  std::string ref_out = "reference.csv";
  auto* reference = app.add_subcommand("reference", "Write a sampled special curve");
  reference->add_option("--shape", ref_kind.shape, "Curve family")
      ->required()
      ->transform(CLI::CheckedTransformer(shapes, CLI::ignore_case));
  reference->add_option("--param", ref_kind.parameter, "Family parameter (d, scale, r, focal length or R)")
      ->check(kFinite);
  reference->add_option("--span", ref_kind.span, "Arc-length half width of open curves")->check(kFinite);
  reference->add_option("--samples", ref_samples, "Number of samples");
  reference->add_option("--out", ref_out, "Curve CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::domain;
  }

  try {
    if (*soliton) {
      sol.mode = sol_law.mode();
      sol.p = sol_law.p;
      sol.b = sol_law.b;
      const SolitonRun run = run_soliton(sol);
      write_file_atomic(sol_csv, curve_to_csv(run.curve));
      write_json(sol_json, soliton_metadata(sol, run));
      if (!sol_svg.empty()) {
        SvgOptions options;
        options.translation_arrow = true;
        options.metadata = soliton_metadata(sol, run).dump();
        write_file_atomic(sol_svg, render_svg({SvgCurve{run.curve.points, false}}, options));
      }
    } else if (*flow) {
      flow_cfg.boundary = flow_closed ? Boundary::Closed : Boundary::FreeEnds;
      flow_cfg.problem = flow_law.log ? SolitonProblem::log_flow(flow_a, flow_law.b)
                                      : SolitonProblem::power_flow(flow_law.p, flow_a, flow_law.b);
      const PlaneCurve initial = read_curve_csv(flow_input, flow_cfg.boundary);
      const FlowRun run = run_flow(initial, flow_cfg, margin);
      ensure_dir(flow_out);
      std::vector<std::string> paths;
      for (std::size_t k = 0; k < run.trajectory.states.size(); ++k) {
        const std::string name = fmt::format("snapshot_{:04d}.csv", k);
        write_file_atomic(fs::path(flow_out) / name, curve_to_csv(run.trajectory.states[k]));
        paths.push_back(name);
      }
      write_json(fs::path(flow_out) / "trajectory.json", trajectory_json(run, paths));
      if (run.trajectory.stop != StopReason::Completed)
        std::cerr << "curveflow: flow stopped early: " << run.trajectory.stop_message << "\n";
    } else if (*verify) {
      const PlaneCurve curve = read_curve_csv(ver_input, ver_closed ? Boundary::Closed : Boundary::FreeEnds);
      const VerifyReport report = verify_curve(curve, ver_law.mode(), ver_law.p, ver_law.b);
      const auto json = verify_json(report);
      std::cout << json.dump(2) << "\n";
      if (!ver_json.empty()) write_json(ver_json, json);
      return report.pass ? exit_code::ok : exit_code::verify_failed;
    } else if (*figure1) {
      ensure_dir(fig_out);
      for (const auto& panel : figure1_panels())
        write_file_atomic(fs::path(fig_out) / fmt::format("figure1_{}.svg", panel.name), figure1_svg(panel));
    } else if (*reference) {
      write_file_atomic(ref_out, curve_to_csv(make_reference(ref_kind, ref_samples).curve));
    }
  } catch (const Error& e) {
    std::cerr << "curveflow: error: " << e.what() << "\n";
    if (const auto* big = dynamic_cast<const StepTooLarge*>(&e))
      std::cerr << "curveflow: stable step bound " << fmt::format("{:.6g}", big->bound()) << "\n";
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "curveflow: error: " << e.what() << "\n";
    return exit_code::domain;
  }
  return exit_code::ok;
}
