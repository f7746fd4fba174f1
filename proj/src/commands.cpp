#include "gnflow/commands.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <vector>

#include "gnflow/diagnostics.hpp"
#include "gnflow/eulerian.hpp"
#include "gnflow/flow_map.hpp"
#include "gnflow/integrate.hpp"
#include "gnflow/io.hpp"

namespace gnflow {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for_termination(Termination t) {
  switch (t) {
    case Termination::completed: return 0;
    case Termination::monotonicity_loss: return 3;
    default: return 4;
  }
}

const char* failure_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config_error: return "config_error";
    case ErrorKind::ill_posed: return "ill_posed";
    case ErrorKind::solver_failure: return "solver_failure";
    case ErrorKind::monotonicity_loss: return "monotonicity_loss";
    case ErrorKind::step_rejected: return "step_rejected";
  }
  return "unknown";
}

IntegratorConfig integrator_config(const ScenarioConfig& cfg) {
  IntegratorConfig ic;
  ic.dt = cfg.dt;
  ic.T = cfg.T;
  ic.cfl_safety = cfg.cfl_safety;
  ic.max_steps = cfg.max_steps;
  ic.record_stride = cfg.stride;
  ic.diag_sigma = cfg.sigma;
  return ic;
}

json record_json(const DiagnosticsRecord& r) {
  return {{"t", r.t},           {"mass", r.mass},
          {"momentum", r.momentum}, {"energy", r.energy},
          {"min_phix", r.min_phix}, {"sobolev_h", r.sobolev_h},
          {"sobolev_u", r.sobolev_u}, {"sigma", r.sigma}};
}

class SummaryWriter {
 public:
  SummaryWriter(const ScenarioConfig& cfg)
      : cfg_(cfg), start_(std::chrono::steady_clock::now()) {}

  void write(const std::string& termination, double final_time,
             const json& diagnostics_final, const json& error_metrics) const {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    json j;
    j["termination"] = termination;
    j["final_time"] = final_time;
    j["wall_seconds"] = wall;
    j["config"] = config_echo(cfg_);
    j["diagnostics_final"] = diagnostics_final;
    j["error_metrics"] = error_metrics;
    write_file_atomic(fs::path(cfg_.directory) / "summary.json",
                      j.dump(2) + "\n");
  }

 private:
  const ScenarioConfig& cfg_;
  std::chrono::steady_clock::time_point start_;
};

void write_csv(const ScenarioConfig& cfg, const std::string& name,
               const std::string& contents) {
  if (!cfg.write_csv) return;
  write_file_atomic(fs::path(cfg.directory) / name, contents);
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config_error: return 2;
    case ErrorKind::monotonicity_loss: return 3;
    default: return 4;
  }
}

InitialData build_initial_data(const ScenarioConfig& cfg,
                               const PeriodicGrid& g) {
  InitialData data{{Field::Ones(g.n)}, Field::Zero(g.n)};
  switch (cfg.scenario) {
    case ScenarioKind::equilibrium:
      break;
    case ScenarioKind::solitary_wave: {
      EulerianState s = solitary_wave(cfg.a, g);
      data.h0 = std::move(s.h);
      data.u0 = std::move(s.u);
      break;
    }
    case ScenarioKind::gaussian_hump: {
      const Field bump =
          (-((g.nodes - 0.5 * g.length) / cfg.width).square()).exp();
      data.h0.values = 1.0 + cfg.eps * bump;
      break;
    }
    case ScenarioKind::rough_data: {
      data.h0.values =
          1.0 + synthesize_rough_field(g, cfg.sigma, cfg.amplitude, cfg.seed);
      data.u0 =
          synthesize_rough_field(g, cfg.sigma + 1.0, cfg.amplitude, cfg.seed + 1);
      break;
    }
  }
  data.u0 *= cfg.u_scale;
  if (data.h0.values.minCoeff() <= 0.0)
    fail(ErrorKind::config_error,
         "scenario produces a nonpositive height; reduce the amplitude");
  return data;
}

int command_run(const ScenarioConfig& cfg) {
  const SummaryWriter summary(cfg);
  try {
    const PeriodicGrid g(cfg.length, cfg.n);
    const InitialData data = build_initial_data(cfg, g);
    const FlowMapState state0{Field::Zero(g.n), data.u0};
    const Trajectory traj = integrate(g, state0, data.h0, integrator_config(cfg));

    // fields.csv: one row per (snapshot, node) of the reconstruction.
    std::ostringstream fields;
    fields << "t,x,h,u\n";
    for (size_t i = 0; i < traj.states.size(); ++i) {
      const EulerianState es = reconstruct_eulerian(g, traj.states[i], data.h0);
      for (int j = 0; j < g.n; ++j)
        fields << format_double(traj.times[i]) << ','
               << format_double(g.nodes(j)) << ','
               << format_double(es.h.values(j)) << ','
               << format_double(es.u(j)) << '\n';
    }
    write_csv(cfg, "fields.csv", fields.str());

    std::ostringstream diag;
    diag << "t,mass,momentum,energy,min_phix,sobolev_h,sobolev_u\n";
    for (const DiagnosticsRecord& r : traj.diagnostics)
      diag << format_double(r.t) << ',' << format_double(r.mass) << ','
           << format_double(r.momentum) << ',' << format_double(r.energy) << ','
           << format_double(r.min_phix) << ',' << format_double(r.sobolev_h)
           << ',' << format_double(r.sobolev_u) << '\n';
    write_csv(cfg, "diagnostics.csv", diag.str());

    json metrics = json::object();
    const double t_final = traj.times.back();
    if (cfg.scenario == ScenarioKind::solitary_wave &&
        traj.termination == Termination::completed) {
      const EulerianState es =
          reconstruct_eulerian(g, traj.states.back(), data.h0);
      const EulerianState exact = solitary_wave_at(cfg.a, g, t_final);
      const double rel = (es.h.values - exact.h.values).abs().maxCoeff() /
                         exact.h.values.abs().maxCoeff();
      metrics["height_error_linf_rel"] = rel;
    }
    if (cfg.scenario == ScenarioKind::equilibrium)
      metrics["max_height_deviation"] =
          (reconstruct_eulerian(g, traj.states.back(), data.h0).h.values - 1.0)
              .abs()
              .maxCoeff();

    summary.write(to_string(traj.termination), t_final,
                  record_json(traj.diagnostics.back()), metrics);
    return exit_code_for_termination(traj.termination);
  } catch (const Error& e) {
    summary.write(failure_name(e.kind()), 0.0, json::object(),
                  {{"error", e.what()}});
    return exit_code_for(e.kind());
  }
}

int command_compare(const ScenarioConfig& cfg) {
  const SummaryWriter summary(cfg);
  try {
    const PeriodicGrid g(cfg.length, cfg.n);
    const InitialData data = build_initial_data(cfg, g);

    IntegratorConfig ic = integrator_config(cfg);
    if (ic.dt <= 0.0)
      ic.dt = default_time_step(g, data.u0, data.h0, ic.cfl_safety);

    const FlowMapState state0{Field::Zero(g.n), data.u0};
    const Trajectory lag = integrate(g, state0, data.h0, ic);
    const EulerianTrajectory eul =
        integrate_eulerian(g, {data.h0, data.u0}, ic);

    std::ostringstream rows;
    rows << "t,sup_dh,sup_du,l2_dh,l2_du\n";
    double max_sup_dh = 0.0, max_sup_du = 0.0;
    const size_t m = std::min(lag.states.size(), eul.states.size());
    for (size_t i = 0; i < m; ++i) {
      const EulerianState rec = reconstruct_eulerian(g, lag.states[i], data.h0);
      const Field dh = rec.h.values - eul.states[i].h.values;
      const Field du = rec.u - eul.states[i].u;
      const double sup_dh = dh.abs().maxCoeff();
      const double sup_du = du.abs().maxCoeff();
      max_sup_dh = std::max(max_sup_dh, sup_dh);
      max_sup_du = std::max(max_sup_du, sup_du);
      rows << format_double(lag.times[i]) << ',' << format_double(sup_dh)
           << ',' << format_double(sup_du) << ','
           << format_double(std::sqrt(quadrature(g, dh.square()))) << ','
           << format_double(std::sqrt(quadrature(g, du.square()))) << '\n';
    }
    write_csv(cfg, "compare.csv", rows.str());

    const bool both_completed = lag.termination == Termination::completed &&
                                eul.termination == Termination::completed;
    const bool pass = both_completed && max_sup_dh <= cfg.tolerance &&
                      max_sup_du <= cfg.tolerance;
    const json metrics = {{"max_sup_dh", max_sup_dh},
                          {"max_sup_du", max_sup_du},
                          {"tolerance", cfg.tolerance},
                          {"pass", pass},
                          {"lagrangian_termination", to_string(lag.termination)},
                          {"eulerian_termination", to_string(eul.termination)}};
    summary.write(both_completed ? "completed"
                                 : (lag.termination != Termination::completed
                                        ? to_string(lag.termination)
                                        : to_string(eul.termination)),
                  lag.times.back(), record_json(lag.diagnostics.back()),
                  metrics);
    if (!both_completed) {
      if (lag.termination != Termination::completed)
        return exit_code_for_termination(lag.termination);
      return exit_code_for_termination(eul.termination);
    }
    return pass ? 0 : 1;
  } catch (const Error& e) {
    summary.write(failure_name(e.kind()), 0.0, json::object(),
                  {{"error", e.what()}});
    return exit_code_for(e.kind());
  }
}

namespace {

// Manufactured elliptic problem: u* and h chosen smooth and localized, the
// right-hand side assembled from the continuum operator.
double manufactured_elliptic_error(double length, int n) {
  const PeriodicGrid g(length, n);
  const double c = 0.5 * length;
  const Field x = g.nodes - c;
  const Field ustar = (-x.square()).exp();
  const Field h = 1.0 + 0.3 * (-x.square() / 4.0).exp();
  const Field hx = 0.3 * (-x.square() / 4.0).exp() * (-x / 2.0);
  const Field ux = -2.0 * x * ustar;
  const Field uxx = (4.0 * x.square() - 2.0) * ustar;
  const Field f =
      3.0 * h * ustar - (3.0 * h.square() * hx * ux + h.cube() * uxx);
  const Field u = solve_elliptic(g, {3.0 * h, h.cube()}, f);
  return (u - ustar).abs().maxCoeff();
}

}  // namespace

int command_converge(const ScenarioConfig& cfg) {
  const SummaryWriter summary(cfg);
  try {
    std::vector<double> resolutions, errors, factors;

    if (cfg.mode == ConvergeMode::spatial) {
      for (int level = 0; level < cfg.levels; ++level) {
        const int n = cfg.n << level;
        resolutions.push_back(n);
        errors.push_back(manufactured_elliptic_error(cfg.length, n));
        factors.push_back(double(1 << level));
      }
    } else {
      const PeriodicGrid g(cfg.length, cfg.n);
      const InitialData data = build_initial_data(cfg, g);
      const FlowMapState state0{Field::Zero(g.n), data.u0};

      IntegratorConfig ic = integrator_config(cfg);
      if (ic.dt <= 0.0)
        ic.dt = default_time_step(g, data.u0, data.h0, ic.cfl_safety);
      const long base_steps = long(std::ceil(ic.T / ic.dt - 1e-9));
      const double dt0 = ic.T / double(base_steps);

      const auto run_at = [&](double dt) {
        IntegratorConfig c = ic;
        c.dt = dt;
        c.record_stride = 1 << 30;  // final state only
        const Trajectory tr = integrate(g, state0, data.h0, c);
        if (tr.termination != Termination::completed)
          fail(ErrorKind::step_rejected,
               std::string("convergence run terminated: ") +
                   to_string(tr.termination));
        return tr.states.back();
      };

      const FlowMapState ref = run_at(dt0 / double(1L << (cfg.levels + 1)));
      for (int level = 0; level < cfg.levels; ++level) {
        const double dt = dt0 / double(1L << level);
        const FlowMapState s = run_at(dt);
        const double err = std::max((s.psi - ref.psi).abs().maxCoeff(),
                                    (s.v - ref.v).abs().maxCoeff());
        resolutions.push_back(dt);
        errors.push_back(err);
        factors.push_back(double(1 << level));
      }
    }

    std::ostringstream rows;
    rows << "resolution,error,observed_order\n";
    for (size_t i = 0; i < errors.size(); ++i) {
      rows << format_double(resolutions[i]) << ',' << format_double(errors[i])
           << ',';
      if (i > 0)
        rows << format_double(std::log2(errors[i - 1] / errors[i]));
      rows << '\n';
    }
    write_csv(cfg, "converge.csv", rows.str());

    const double order = convergence_rate(errors, factors);
    summary.write("completed", cfg.T, json::object(),
                  {{"observed_order", order}, {"mode", to_string(cfg.mode)}});
    return 0;
  } catch (const Error& e) {
    summary.write(failure_name(e.kind()), 0.0, json::object(),
                  {{"error", e.what()}});
    return exit_code_for(e.kind());
  }
}

}  // namespace gnflow
