#include "vps/runner.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "vps/csvio.hpp"
#include "vps/nonuniqueness.hpp"

namespace vps {

namespace {

std::string describe_failures(const ConditionReport& rep) {
  std::ostringstream os;
  auto add = [&os](const char* name, const ConditionReport::Check& c) {
    if (c.pass) return;
    os << ' ' << name << "(worst " << c.worst_value << " at " << c.worst_location << ')';
  };
  add("normalization", rep.normalization);
  add("monotonicity", rep.monotonicity);
  add("subdifferential", rep.subdifferential);
  add("growth", rep.growth);
  return os.str();
}

}  // namespace

GBundle build_gtransform(const Scenario& sc, std::optional<double> beta_override,
                         std::optional<double> c_beta_override) {
  if (sc.profile.name != "maxwellian")
    throw ScenarioError("unknown profile '" + sc.profile.name + "' (supported: maxwellian)");
  const double beta = beta_override.value_or(sc.profile.beta);

  GBundle out;
  BoundaryProfile base = make_maxwellian();
  out.profile_report = validate_profile(base);
  if (!out.profile_report.pass())
    throw std::runtime_error("boundary profile failed validation");

  if (c_beta_override)
    out.c_beta = *c_beta_override;
  else if (sc.profile.c_beta)
    out.c_beta = *sc.profile.c_beta;
  else
    out.c_beta = calibrate_c_beta(base, beta, sc.profile.r_probe, sc.profile.margin);

  ExtensionProfile ext(std::move(base), beta, out.c_beta);
  out.g = std::make_shared<GTransform>(
      GTransform::build(ext, sc.gtable.r_min, sc.gtable.r_max, sc.gtable.n));
  out.conditions = out.g->verify();
  return out;
}

ChargeMeasure load_charges(const Scenario& sc) {
  ChargeMeasure mu;
  mu.points = sc.points;
  if (!sc.density_file.empty()) {
    sc.require_grid();
    std::ifstream in(sc.density_file);
    if (!in) throw ScenarioError("cannot open density file: " + sc.density_file);
    ScalarField f = read_scalar_field_csv(in);
    if (f.n != sc.grid->n ||
        std::abs(f.box_size - sc.grid->box_size) > 1e-12 * std::max(1.0, sc.grid->box_size))
      throw ScenarioError("density file grid does not match the scenario grid");
    mu.smooth = std::move(f);
  }
  return mu;
}

RunResult run_solve(const Scenario& sc, const GBundle& gb) {
  sc.require_grid();
  auto box = std::make_shared<SpectralBox>(sc.grid->box_size, sc.grid->n);
  return run_solve(sc, gb, std::move(box));
}

RunResult run_solve(const Scenario& sc, const GBundle& gb,
                    std::shared_ptr<const SpectralBox> box) {
  sc.require_grid();
  if (!gb.conditions.all_pass())
    throw std::runtime_error("response conditions failed:" + describe_failures(gb.conditions));

  RunResult out;
  out.box = std::move(box);
  const ChargeMeasure mu = load_charges(sc);
  auto s = std::make_shared<SourceField>(build_S(mu, gb.g->sigma(), *out.box));
  out.aux = build_H1_H(*gb.g, *s, *out.box);
  out.sol = solve_fixed_point(sc.solver, gb.g, std::move(s), out.aux, *out.box);
  assemble_and_verify(out.sol, out.aux, *out.box, sc.solver);
  out.neutrality_defect = charge_neutrality(out.sol);
  return out;
}

RadialSolution run_radial(const Scenario& sc, const GBundle& gb) {
  sc.require_radial();
  if (!gb.conditions.all_pass())
    throw std::runtime_error("response conditions failed:" + describe_failures(gb.conditions));
  return radial_solve(sc.solver, *gb.g, sc.point_charge_total(), sc.radial->r_max, sc.radial->n);
}

}  // namespace vps
