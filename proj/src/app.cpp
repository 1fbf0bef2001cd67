#include "planewave/app.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "planewave/csv.hpp"
#include "planewave/errors.hpp"
#include "planewave/oracle.hpp"
#include "planewave/parallel.hpp"
#include "planewave/phase_functions.hpp"
#include "planewave/plasma_correction.hpp"
#include "planewave/ponderomotive.hpp"
#include "planewave/test_particle.hpp"
#include "planewave/validation.hpp"
#include "planewave/zero_density.hpp"

namespace planewave {

namespace {

using nlohmann::json;

std::vector<double> linspace(double a, double b, int intervals) {
  std::vector<double> out(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / intervals;
  return out;
}

class Context {
 public:
  Context(const RunConfig& cfg, const AppOptions& opt)
      : cfg_(cfg), opt_(opt), species_(cfg.make_species()), pulse_(cfg.make_pulse()) {}

  const RunConfig& cfg() const { return cfg_; }
  const Species& species() const { return species_; }
  const Pulse& pulse() const { return pulse_; }
  int threads() const { return opt_.threads; }

  double xi_max() const {
    return cfg_.run.xi_max.value_or(pulse_.support_end() + pulse_.wavelength());
  }
  const PhaseFunctions& pf() {
    if (!pf_) {
      PhaseOptions p;
      p.tolerance = cfg_.run.tolerance;
      pf_ = PhaseFunctions::build(species_, pulse_, xi_max(), p);
    }
    return *pf_;
  }
  std::ofstream open(const std::string& name) {
    std::ofstream f(opt_.out_dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (opt_.out_dir / name).string());
    written_.push_back(name);
    return f;
  }
  json& summary() { return summary_; }
  void finish() {
    summary_["files"] = written_;
    std::ofstream f(opt_.out_dir / "summary.json", std::ios::binary);
    f << summary_.dump(2) << '\n';
  }

 private:
  const RunConfig& cfg_;
  const AppOptions& opt_;
  Species species_;
  Pulse pulse_;
  std::optional<PhaseFunctions> pf_;
  json summary_;
  std::vector<std::string> written_;
};

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

int cmd_pulse(Context& ctx, std::ostream& log) {
  const Pulse& p = ctx.pulse();
  auto f = ctx.open("pulse.csv");
  CsvWriter csv(f, {"xi", "ex", "ey", "ax", "ay", "ax_env", "ay_env", "w"});
  for (double xi : linspace(0.0, ctx.xi_max(), ctx.cfg().run.samples)) {
    const Vec2 e = p.e_perp(xi), a = p.a_perp(xi), ae = p.a_perp_envelope(xi);
    csv.row({xi, e.x, e.y, a.x, a.y, ae.x, ae.y, p.dimensionless_amplitude(xi)});
  }
  auto& s = ctx.summary();
  s["wavelength_cm"] = p.wavelength();
  s["wavenumber_per_cm"] = p.wavenumber();
  s["support_end_cm"] = p.support_end();
  s["peak_field_statvolt_per_cm"] = p.envelope().peak();
  s["peak_w"] = p.envelope().peak() * kCgs.e / (p.wavenumber() * kCgs.electron_rest_energy());
  if (p.envelope().peak() != 0.0) {
    const SlownessReport sr = p.slowness();
    s["delta"] = sr.delta;
    s["xi0_cm"] = sr.xi0;
    log << "delta = " << sr.delta << ", xi0 = " << sr.xi0 << " cm\n";
  }
  return kExitOk;
}

int cmd_zero_density(Context& ctx, std::ostream& log) {
  const PhaseFunctions& pf = ctx.pf();
  const auto& r = ctx.cfg().run;
  {
    auto f = ctx.open("phase.csv");
    pf.write_csv(f, linspace(0.0, ctx.xi_max(), r.samples));
  }
  std::vector<double> times = r.times;
  if (times.empty()) times = linspace(0.0, pf.xi_of(ctx.xi_max()) + r.Z_max, r.samples);
  const std::vector<double> Zs =
      r.Z_samples == 1 ? std::vector<double>{r.Z_min} : linspace(r.Z_min, r.Z_max, r.Z_samples - 1);
  std::vector<TrajectorySample> rows(times.size() * Zs.size());
  parallel_for(rows.size(), ctx.threads(), [&](std::size_t i) {
    rows[i] = position_forward(pf, times[i / Zs.size()], {0.0, 0.0, Zs[i % Zs.size()]});
  });
  {
    auto f = ctx.open("trajectory.csv");
    write_trajectory_csv(f, rows);
  }
  const double xi0 = ctx.pulse().envelope().peak() != 0.0 ? ctx.pulse().slowness().xi0 : 0.0;
  const ZetaResult z = zeta_at_phase(pf, xi0);
  auto& s = ctx.summary();
  s["rows"] = rows.size();
  s["xi0_cm"] = xi0;
  s["zeta_cm"] = z.zeta;
  s["reach_offset_cm"] = z.reach_offset;
  s["max_Y3_cm"] = pf.y3(ctx.xi_max());
  log << "zeta = Y3(xi0) = " << z.zeta << " cm\n";
  return kExitOk;
}

int cmd_ponderomotive(Context& ctx, std::ostream& log) {
  const PhaseFunctions& pf = ctx.pf();
  const auto xs = linspace(0.0, ctx.pulse().support_end(), ctx.cfg().run.samples);
  const ForceProfile prof = force_profile(ctx.species(), ctx.pulse(), pf, xs);
  auto f = ctx.open("forces.csv");
  write_force_csv(f, prof);
  ctx.summary()["delta"] = prof.delta;
  ctx.summary()["slowness_warning"] = prof.slowness_warning;
  if (prof.slowness_warning) {
    log << "warning: envelope not slowly varying (delta = " << prof.delta
        << "); Fp is only qualitative\n";
  }
  return kExitOk;
}

int cmd_test_particle(Context& ctx, std::ostream& log) {
  const auto& r = ctx.cfg().run;
  auto shared = std::make_shared<const Pulse>(ctx.pulse());
  const LabWave wave(shared, r.direction);
  TestParticleOptions topt;
  topt.phase.tolerance = r.tolerance;
  const TestParticleSolution sol(ctx.species(), wave, r.position, r.beta, topt);
  std::vector<double> times = r.times;
  if (times.empty()) {
    times = linspace(0.0, sol.at_phase(sol.phase_functions().range_end()).x0, r.samples);
  }
  std::vector<TrajectorySample> rows(times.size());
  parallel_for(rows.size(), ctx.threads(), [&](std::size_t i) { rows[i] = sol.at_time(times[i]); });
  auto f = ctx.open("trajectory.csv");
  write_trajectory_csv(f, rows);
  const Reduction& red = sol.reduction();
  auto& s = ctx.summary();
  s["doppler"] = red.doppler;
  s["direction"] = vec_json(wave.direction());
  s["reduced_wavelength_cm"] = red.wave->wavelength();
  s["reduced_support_end_cm"] = red.wave->support_end();
  log << "Doppler factor gamma - u.n = " << red.doppler << '\n';
  return kExitOk;
}

int cmd_correction(Context& ctx, std::ostream& log) {
  const PhaseFunctions& pf = ctx.pf();
  const PlasmaSetup plasma = ctx.cfg().make_plasma();
  const CorrectionTable table = CorrectionTable::build(pf, plasma);
  {
    auto f = ctx.open("correction.csv");
    write_correction_csv(f, pf, plasma, table, linspace(0.0, ctx.xi_max(), ctx.cfg().run.samples));
  }
  const double xi0 = ctx.pulse().envelope().peak() != 0.0 ? ctx.pulse().slowness().xi0 : 0.0;
  ValidityThresholds thr{ctx.cfg().run.threshold_T, ctx.cfg().run.threshold_cond2};
  const ValidityReport v = validity(pf, plasma, table, ctx.cfg().run.Z, xi0, thr);
  auto& s = ctx.summary();
  s["K_per_cm2"] = plasma.K();
  s["xi0_cm"] = xi0;
  s["T_max"] = v.T_max;
  s["cond2_ratio"] = v.cond2_ratio;
  s["applicable"] = v.applicable;
  s["validity_pass"] = v.pass();
  log << "T_max on [0, xi0] = " << v.T_max << ", condition-2 ratio = " << v.cond2_ratio << '\n';
  return kExitOk;
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

int cmd_slingshot(Context& ctx, std::ostream& log) {
  const PhaseFunctions& pf = ctx.pf();
  const PlasmaSetup plasma = ctx.cfg().make_plasma();
  PancakeGeometry geo;
  geo.radius = ctx.cfg().plasma.radius;
  geo.length = ctx.cfg().plasma.length;
  ValidityThresholds thr{ctx.cfg().run.threshold_T, ctx.cfg().run.threshold_cond2};
  const SlingshotReport rep = slingshot(pf, plasma, ctx.pulse(), geo, thr);
  {
    auto f = ctx.open("slingshot.csv");
    write_slingshot_csv(f, rep);
  }
  const auto& v = rep.validity;
  log << std::setprecision(6);
  log << "slingshot estimate\n"
      << "  xi0       = " << rep.xi0 << " cm\n"
      << "  zeta_e    = " << rep.zeta << " cm\n"
      << "  K         = " << rep.K << " cm^-2  (K xi0^2 = " << rep.K * rep.xi0 * rep.xi0 << ")\n"
      << "  gamma_eM  = " << rep.gamma_eM << '\n'
      << "  H         = " << rep.H_MeV << " MeV\n"
      << "  T_max     = " << v.T_max << "  (threshold " << thr.t_max << ") " << verdict(v.T_pass)
      << '\n'
      << "  cond2     = " << v.cond2_ratio << "  (threshold " << thr.cond2 << ") "
      << verdict(v.cond2_pass) << '\n';
  if (rep.thin_pancake) log << "  l << R    " << verdict(*rep.thin_pancake) << '\n';
  if (rep.wide_pancake) log << "  R >= 2 zeta " << verdict(*rep.wide_pancake) << '\n';
  log << "  validity  " << verdict(v.pass()) << '\n';
  auto& s = ctx.summary();
  s["zeta_cm"] = rep.zeta;
  s["K_per_cm2"] = rep.K;
  s["K_xi0_sq"] = rep.K * rep.xi0 * rep.xi0;
  s["gamma_eM"] = rep.gamma_eM;
  s["H_MeV"] = rep.H_MeV;
  s["xi0_cm"] = rep.xi0;
  s["T_max"] = v.T_max;
  s["cond2_ratio"] = v.cond2_ratio;
  s["validity_pass"] = v.pass();
  if (rep.thin_pancake) s["thin_pancake"] = *rep.thin_pancake;
  if (rep.wide_pancake) s["wide_pancake"] = *rep.wide_pancake;
  return v.pass() ? kExitOk : kExitValidation;
}

int cmd_oracle(Context& ctx, std::ostream& log) {
  const auto& r = ctx.cfg().run;
  auto shared = std::make_shared<const Pulse>(ctx.pulse());
  const LabWave wave(shared, r.direction);
  oracle::OracleConfig ocfg;
  ocfg.step = ctx.pulse().wavelength() / r.steps_per_wavelength;
  if (ctx.cfg().plasma.n0 > 0.0) ocfg.plasma = ctx.cfg().make_plasma();
  std::vector<double> times = r.times;
  if (times.empty()) times = linspace(0.0, ctx.pf().xi_of(ctx.xi_max()), r.samples);
  const auto traj = oracle::integrate(ctx.species(), wave, r.position, r.beta, times, ocfg);
  auto f = ctx.open("oracle.csv");
  oracle::write_oracle_csv(f, traj);
  double shell = 0.0, canon = 0.0;
  for (const auto& o : traj) {
    shell = std::max(shell, std::abs(o.mass_shell_res));
    canon = std::max(canon, o.canon_perp_res);
  }
  ctx.summary()["step_cm"] = ocfg.step;
  ctx.summary()["max_mass_shell_res"] = shell;
  ctx.summary()["max_canon_perp_res"] = canon;
  log << "max |mass shell residual| = " << shell << ", max canonical drift = " << canon << '\n';
  return kExitOk;
}

int cmd_validate(Context& ctx, std::ostream& log) {
  const auto results = run_validation(ctx.cfg(), ctx.threads());
  {
    auto f = ctx.open("validation.csv");
    write_validation_csv(f, results);
  }
  int failed = 0;
  for (const auto& r : results) {
    failed += !r.passed;
    log << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name << "  value "
        << format_double(r.value) << " bound " << format_double(r.threshold);
    if (!r.detail.empty()) log << "  (" << r.detail << ')';
    log << '\n';
  }
  ctx.summary()["checks"] = results.size();
  ctx.summary()["failed"] = failed;
  log << results.size() - static_cast<std::size_t>(failed) << '/' << results.size()
      << " checks passed\n";
  return failed == 0 ? kExitOk : kExitValidation;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"pulse",      "zero-density", "ponderomotive",
                                              "test-particle", "correction", "slingshot",
                                              "oracle",     "validate"};
  return names;
}

int run(std::string_view subcommand, RunConfig cfg, const AppOptions& options, std::ostream& log,
        std::ostream& err) {
  if (options.tolerance) cfg.run.tolerance = *options.tolerance;
  if (options.threshold_T) cfg.run.threshold_T = *options.threshold_T;
  try {
    std::filesystem::create_directories(options.out_dir);
    Context ctx(cfg, options);
    ctx.summary()["subcommand"] = std::string(subcommand);
    ctx.summary()["species"] = ctx.species().label();
    int code;
    if (subcommand == "pulse") {
      code = cmd_pulse(ctx, log);
    } else if (subcommand == "zero-density") {
      code = cmd_zero_density(ctx, log);
    } else if (subcommand == "ponderomotive") {
      code = cmd_ponderomotive(ctx, log);
    } else if (subcommand == "test-particle") {
      code = cmd_test_particle(ctx, log);
    } else if (subcommand == "correction") {
      code = cmd_correction(ctx, log);
    } else if (subcommand == "slingshot") {
      code = cmd_slingshot(ctx, log);
    } else if (subcommand == "oracle") {
      code = cmd_oracle(ctx, log);
    } else if (subcommand == "validate") {
      code = cmd_validate(ctx, log);
    } else {
      err << "unknown subcommand '" << subcommand << "'\n";
      return kExitConfig;
    }
    ctx.summary()["exit_code"] = code;
    ctx.finish();
    return code;
  } catch (const NumericalError& e) {
    err << "numerical error [" << e.module() << "]: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace planewave
