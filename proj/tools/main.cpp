// Command-line front end: Cheeger constants and sets of planar domains,
// boundary-quadrature shape derivatives, and finite-difference validation.
//
// Exit codes: 0 success/PASS, 2 input error, 3 solver error, 4 formula
// precondition error, 5 validation FAIL.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cheeger2d/cheeger_exact.hpp"
#include "cheeger2d/cheeger_grid.hpp"
#include "cheeger2d/errors.hpp"
#include "cheeger2d/io.hpp"
#include "cheeger2d/shape_derivative.hpp"
#include "cheeger2d/validation.hpp"

namespace {

namespace fs = std::filesystem;
using namespace cheeger2d;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitFail = 5;

struct CommonOpts {
  std::string out_dir = ".";
  std::string solver = "exact";
  GridOptions grid;
};

fs::path ensure_out_dir(const std::string& dir) {
  fs::path p(dir);
  if (!p.empty()) fs::create_directories(p);
  return p;
}

CheegerResult run_solver(const Polygon& domain, const CommonOpts& opts) {
  if (opts.solver == "grid")
    return cheeger_grid(rasterize(domain, opts.grid.h), opts.grid);
  return cheeger_convex(domain);
}

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->set_help_flag("--help", "print help and exit");
  cmd->add_option("--out-dir", opts.out_dir, "directory for output artifacts")
      ->envname("CHEEGER_OUT_DIR");
}

void add_grid_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--h", opts.grid.h, "grid spacing for the grid solver");
  cmd->add_option("--max-outer", opts.grid.max_outer, "max ratio iterations");
  cmd->add_option("--max-inner", opts.grid.max_inner, "max primal-dual iterations");
  cmd->add_option("--tol", opts.grid.tol, "relative stop for the ratio iteration");
}

int cmd_cheeger(const std::string& domain_file, const CommonOpts& opts) {
  const Polygon domain = load_domain_file(domain_file);
  const CheegerResult result = run_solver(domain, opts);

  const fs::path out = ensure_out_dir(opts.out_dir);
  write_csv(out / "result.csv",
            {"lambda", "radius", "set_area", "set_perimeter", "solver", "iterations"},
            {{format_full(result.lambda), format_full(result.radius),
              format_full(result.set_area), format_full(result.set_perimeter),
              result.solver_tag == SolverTag::exact ? "exact" : "grid",
              std::to_string(result.diagnostics.iterations)}});
  write_set_svg(out / "set.svg", domain, &result);

  std::cout << format_value(result.lambda) << "\n";
  return kExitOk;
}

int cmd_shape_deriv(const std::string& domain_file, const std::string& field_file,
                    const std::string& formula, const CommonOpts& opts) {
  const Polygon domain = load_domain_file(domain_file);
  const PolynomialVectorField field = load_field_file(field_file);
  const CheegerResult solver_result = run_solver(domain, opts);

  const bool want_general = formula == "general" || formula == "both";
  const bool want_smooth = formula == "smooth" || formula == "both";

  std::optional<double> general;
  std::optional<double> smooth;
  if (want_general)
    general = derivative_general(solver_result.cheeger_set, solver_result.lambda, field);
  if (want_smooth) {
    if (formula == "smooth") {
      // Explicit request: corner chains are a hard error here.
      smooth = derivative_smooth(solver_result.cheeger_set, solver_result.lambda, field);
    } else if (!solver_result.cheeger_set.has_corner()) {
      smooth = derivative_smooth(solver_result.cheeger_set, solver_result.lambda, field);
    } else {
      std::cerr << "note: boundary has corners; smooth formula skipped\n";
    }
  }

  const fs::path out = ensure_out_dir(opts.out_dir);
  write_csv(out / "deriv.csv",
            {"formula", "value_general", "value_smooth", "lambda", "set_area"},
            {{formula, general ? format_full(*general) : "",
              smooth ? format_full(*smooth) : "", format_full(solver_result.lambda),
              format_full(solver_result.set_area)}});

  std::cout << format_value(general ? *general : *smooth) << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& domain_file, const std::string& field_file,
                 const FDConfig& cfg, const CommonOpts& opts) {
  const Polygon domain = load_domain_file(domain_file);
  const PolynomialVectorField field = load_field_file(field_file);
  const ValidationReport report = validate_derivative(domain, field, cfg);

  std::vector<std::vector<std::string>> rows;
  for (const auto& [t, lambda_t] : report.lambda_by_t) {
    // The central slope of each level sits on its positive-t row.
    std::string slope;
    for (int k = 0; k < cfg.levels; ++k) {
      if (t == cfg.t0 / static_cast<double>(1 << k))
        slope = format_full(report.level_slopes[k]);
    }
    rows.push_back({format_full(t), format_full(lambda_t), slope, "", "",
                    format_full(std::abs(lambda_t - report.lambda_base))});
  }
  rows.push_back({"0", format_full(report.lambda_base), "",
                  format_full(report.richardson_slope),
                  format_full(report.formula_value),
                  format_full(report.continuity_gap)});
  const fs::path out = ensure_out_dir(opts.out_dir);
  write_csv(out / "validate.csv",
            {"t", "lambda_t", "slope_level", "richardson", "formula", "gap"}, rows);

  std::cout << (report.pass ? "PASS" : "FAIL") << "\n";
  return report.pass ? kExitOk : kExitFail;
}

int cmd_ball_criticality(int ngon, const std::string& user_field_file,
                         const FDConfig& cfg, const CommonOpts& opts) {
  std::vector<std::pair<std::string, PolynomialVectorField>> fields;
  fields.emplace_back("rotation", PolynomialVectorField::rotation());
  {
    const MonomialTerm vx[] = {{0, 1, 1.0}};
    const MonomialTerm vy[] = {{1, 0, 1.0}};
    fields.emplace_back("swap_xy", PolynomialVectorField(
                                       BivariatePoly::from_terms(vx),
                                       BivariatePoly::from_terms(vy)));
  }
  {
    const MonomialTerm vx[] = {{0, 2, 1.0}};
    const MonomialTerm vy[] = {{2, 0, 1.0}};
    fields.emplace_back("squares_xy", PolynomialVectorField(
                                          BivariatePoly::from_terms(vx),
                                          BivariatePoly::from_terms(vy)));
  }
  if (!user_field_file.empty()) {
    PolynomialVectorField user = load_field_file(user_field_file);
    if (!user.is_divergence_free())
      throw ParseError("ball-criticality: supplied field is not divergence-free");
    fields.emplace_back("user", std::move(user));
  }

  if (ngon < 3) throw ParseError("ball-criticality: --ngon must be at least 3");
  std::vector<Point2> pts;
  for (int k = 0; k < ngon; ++k) {
    const double a = 2.0 * std::numbers::pi * k / ngon;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  const Polygon disk(std::move(pts));
  const CheegerResult base = cheeger_convex(disk);

  bool all_pass = true;
  std::vector<std::vector<std::string>> rows;
  for (const auto& [name, field] : fields) {
    const double formula = derivative_general(base.cheeger_set, base.lambda, field);
    const ValidationReport report = validate_derivative(disk, field, cfg);
    const bool ok = std::abs(formula) <= 1e-3 &&
                    std::abs(report.richardson_slope) <= 1e-3;
    all_pass = all_pass && ok;
    rows.push_back({name, format_full(formula),
                    format_full(report.richardson_slope), ok ? "pass" : "fail"});
  }
  const fs::path out = ensure_out_dir(opts.out_dir);
  write_csv(out / "criticality.csv", {"field", "formula", "fd_slope", "status"}, rows);

  std::cout << (all_pass ? "PASS" : "FAIL") << "\n";
  return all_pass ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cheeger constants, Cheeger sets and shape derivatives of planar domains"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help and exit");  // frees -h/--h for grid spacing

  CommonOpts opts;
  if (const char* env = std::getenv("CHEEGER_OUT_DIR")) opts.out_dir = env;

  std::string domain_file, field_file, formula = "both", user_field;
  FDConfig cfg;
  int ngon = 256;

  CLI::App* cheeger = app.add_subcommand("cheeger", "Cheeger constant and set");
  add_common_flags(cheeger, opts);
  cheeger->add_option("domain", domain_file, "domain spec JSON file")->required();
  cheeger->add_option("--solver", opts.solver, "exact|grid")
      ->check(CLI::IsMember({"exact", "grid"}));
  add_grid_flags(cheeger, opts);

  CLI::App* deriv = app.add_subcommand("shape-deriv", "shape derivative of the eigenvalue");
  add_common_flags(deriv, opts);
  deriv->add_option("domain", domain_file, "domain spec JSON file")->required();
  deriv->add_option("field", field_file, "field spec JSON file")->required();
  deriv->add_option("--formula", formula, "general|smooth|both")
      ->check(CLI::IsMember({"general", "smooth", "both"}));
  deriv->add_option("--solver", opts.solver, "exact|grid")
      ->check(CLI::IsMember({"exact", "grid"}));
  add_grid_flags(deriv, opts);

  CLI::App* validate = app.add_subcommand("validate", "finite-difference slope check");
  add_common_flags(validate, opts);
  validate->add_option("domain", domain_file, "domain spec JSON file")->required();
  validate->add_option("field", field_file, "field spec JSON file")->required();
  validate->add_option("--t0", cfg.t0, "base perturbation step");
  validate->add_option("--levels", cfg.levels, "Richardson levels");
  std::string backend = "exact";
  validate->add_option("--backend", backend, "exact|grid")
      ->check(CLI::IsMember({"exact", "grid"}));
  validate->add_option("--resample", cfg.resample_n, "boundary points before mapping");
  validate->add_option("--h", cfg.grid.h, "grid spacing (grid backend)");
  validate->add_option("--max-outer", cfg.grid.max_outer, "max ratio iterations");
  validate->add_option("--max-inner", cfg.grid.max_inner, "max primal-dual iterations");
  validate->add_option("--tol", cfg.grid.tol, "ratio iteration tolerance");

  CLI::App* ball = app.add_subcommand(
      "ball-criticality", "volume-preserving fields leave the disk eigenvalue flat");
  add_common_flags(ball, opts);
  ball->add_option("--ngon", ngon, "vertex count of the polygonal disk");
  ball->add_option("--field", user_field, "extra divergence-free field spec file");
  ball->add_option("--t0", cfg.t0, "base perturbation step");
  ball->add_option("--levels", cfg.levels, "Richardson levels");
  ball->add_option("--resample", cfg.resample_n, "boundary points before mapping");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    cfg.backend = backend == "grid" ? Backend::grid : Backend::exact;
    if (cheeger->parsed()) return cmd_cheeger(domain_file, opts);
    if (deriv->parsed()) return cmd_shape_deriv(domain_file, field_file, formula, opts);
    if (validate->parsed()) return cmd_validate(domain_file, field_file, cfg, opts);
    if (ball->parsed()) return cmd_ball_criticality(ngon, user_field, cfg, opts);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
