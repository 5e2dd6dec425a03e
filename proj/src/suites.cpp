#include "nlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlab/csvio.hpp"
#include "nlab/noether.hpp"
#include "nlab/poisson.hpp"
#include "nlab/qfock.hpp"
#include "nlab/qwave.hpp"

namespace nlab::cli {

namespace {

// Sentinel tolerance for purely informational records (structure-constant
// constancy); they always pass.
constexpr double kDiagnosticTolerance = 1e308;

struct SuiteContext {
  const RunConfig& cfg;
  const models::ModelBundle& bundle;
  std::vector<PhaseState> states;
  Report& report;

  double tol(const std::string& key) const { return cfg.tolerances.at(key); }
  std::string digest_base() const {
    return cfg.model + "|seed=" + std::to_string(cfg.seed);
  }
};

void add(SuiteContext& ctx, const std::string& check_id,
         const std::string& anchor, const std::string& inputs_extra,
         double residual, double tolerance) {
  ctx.report.records.push_back(make_record(
      check_id, anchor, ctx.digest_base() + "|" + inputs_extra, residual,
      tolerance));
}

void suite_consistency(SuiteContext& ctx) {
  if (!ctx.bundle.transformations) return;
  for (double lambda : {0.0, 0.5, 1.0}) {
    for (const Transformation& tr : ctx.bundle.transformations(lambda)) {
      bool closed_form = tr.surface.has_dual();
      for (const Observable& o : tr.phi) closed_form = closed_form && o.has_dual();
      const double tol =
          ctx.tol(closed_form ? "consistency" : "consistency_derived");
      const auto rep =
          noether::verify_consistency(tr, ctx.bundle.sys, ctx.states, tol);
      std::ostringstream id;
      id << "consistency." << tr.label << ".lambda=" << lambda;
      add(ctx, id.str(), "action.surface-term-conditions", tr.label,
          rep.worst(), tol);
    }
  }
}

void suite_conservation(SuiteContext& ctx) {
  for (const Observable& f : ctx.bundle.charges) {
    const double tol = ctx.tol("conservation_pointwise");
    const auto rep = noether::conservation_check(f, ctx.bundle.sys, ctx.states, tol);
    add(ctx, "conservation." + f.label(), "charge.total-time-derivative",
        f.label(), rep.max_abs_total, tol);
  }
}

void suite_converse(SuiteContext& ctx) {
  for (const Observable& f : ctx.bundle.charges) {
    const Transformation tr = noether::converse_transform(f, 0.5);
    const double tol = ctx.tol("consistency_derived");
    const auto rep = noether::verify_consistency(tr, ctx.bundle.sys, ctx.states, tol);
    add(ctx, "converse.consistency." + f.label(),
        "converse.symmetry-from-conserved-observable", f.label(), rep.worst(),
        tol);
  }
  if (ctx.bundle.transformations) {
    for (const Transformation& tr : ctx.bundle.transformations(0.5)) {
      const auto bundle = noether::build_charge(tr);
      const Transformation back = noether::converse_transform(bundle.charge, 0.5);
      double worst = 0.0;
      for (const PhaseState& s : ctx.states)
        for (int a = 0; a < tr.dim; ++a) {
          worst = std::max(worst, std::abs(back.phi[a](s) - tr.phi[a](s)));
          worst = std::max(worst, std::abs(back.chi[a](s) - tr.chi[a](s)));
        }
      add(ctx, "converse.roundtrip." + tr.label, "converse.roundtrip-fields",
          tr.label, worst, ctx.tol("converse_roundtrip"));
    }
  }
}

void suite_algebra(SuiteContext& ctx) {
  const auto& obs = ctx.bundle.charges;
  const std::size_t n_states = std::min<std::size_t>(ctx.states.size(), 16);

  // Structure constants per state; constancy across states is reported as a
  // diagnostic, not asserted (some brackets are observable-valued).
  const auto table0 = poisson::bracket_table(obs, ctx.states[0]);
  for (std::size_t i = 0; i < obs.size(); ++i)
    for (std::size_t j = i + 1; j < obs.size(); ++j) {
      double spread = 0.0;
      for (std::size_t k = 1; k < n_states; ++k) {
        const double v =
            poisson::bracket(obs[i], obs[j], ctx.states[k]);
        spread = std::max(spread, std::abs(v - table0.values[i][j]));
      }
      add(ctx, "algebra.constancy." + obs[i].label() + "." + obs[j].label(),
          "bracket.structure-constant-spread",
          obs[i].label() + "," + obs[j].label(), spread, kDiagnosticTolerance);
    }

  // Jacobi identity on consecutive triples.
  for (std::size_t i = 0; i + 2 < obs.size(); ++i) {
    double worst = 0.0;
    for (std::size_t k = 0; k < std::min<std::size_t>(ctx.states.size(), 8); ++k)
      worst = std::max(worst, poisson::jacobi_residual(obs[i], obs[i + 1],
                                                       obs[i + 2], ctx.states[k]));
    add(ctx,
        "algebra.jacobi." + obs[i].label() + "." + obs[i + 1].label() + "." +
            obs[i + 2].label(),
        "bracket.jacobi-identity", obs[i].label(), worst, ctx.tol("jacobi"));
  }

  const auto closure =
      poisson::closure_check(obs, ctx.bundle.sys, ctx.states, ctx.tol("closure"));
  add(ctx, "algebra.closure", "bracket.conserved-set-closure", "charges",
      closure.worst, ctx.tol("closure"));
}

void suite_trajectory(SuiteContext& ctx) {
  const auto& ic = ctx.bundle.default_initial;
  integrate::Trajectory traj;
  switch (ctx.cfg.integrator.scheme) {
    case integrate::Scheme::verlet:
      traj = integrate::verlet(ctx.bundle.sys, ic, ctx.cfg.integrator.h,
                               ctx.cfg.integrator.n);
      break;
    case integrate::Scheme::midpoint:
      traj = integrate::midpoint(ctx.bundle.sys, ic, ctx.cfg.integrator.h,
                                 ctx.cfg.integrator.n);
      break;
    case integrate::Scheme::rk4:
      traj = integrate::rk4(ctx.bundle.sys, ic, ctx.cfg.integrator.h,
                            ctx.cfg.integrator.n);
      break;
  }
  const std::string integ = integrate::scheme_name(traj.integrator);
  for (const Observable& f : ctx.bundle.charges) {
    const auto series = integrate::drift(traj, f);
    double worst = 0.0;
    for (double x : series) worst = std::max(worst, std::abs(x));
    add(ctx, "trajectory.drift." + f.label() + "." + integ,
        "charge.drift-along-solution", f.label() + "|" + integ, worst,
        ctx.tol("trajectory_drift"));
  }
}

void suite_qfock(SuiteContext& ctx) {
  qfock::FockSpaceCtx fctx;
  fctx.cutoff = static_cast<int>(
      ctx.cfg.params.scalars.count("cutoff") ? ctx.cfg.params.scalars.at("cutoff") : 16);
  fctx.hbar = ctx.bundle.sys.hbar();
  fctx.t0 = ctx.bundle.sys.param("t0", 0.0);
  fctx.omega = ctx.bundle.sys.param("omega0", ctx.bundle.sys.param("omega", 1.0));

  const auto ops = qfock::ladder_ops(fctx);
  for (double t : {0.3, 1.7, 9.1}) {
    const auto charge = qfock::schrodinger_charge(fctx, t);
    const auto heis = qfock::heisenberg(charge.A, fctx, t);
    const double resid = (qfock::sub_cutoff_block(heis.m) -
                          qfock::sub_cutoff_block(ops.a.m))
                             .cwiseAbs()
                             .maxCoeff();
    std::ostringstream id;
    id << "qfock.heisenberg_constancy.t=" << t;
    add(ctx, id.str(), "fock.heisenberg-picture-charge-constancy",
        "t=" + std::to_string(t), resid, ctx.tol("qfock_block"));
  }

  const auto spectrum = qfock::spectrum_action_report(fctx, 1.7, 3, 3);
  add(ctx, "qfock.spectrum_action", "fock.monomial-level-shift", "jk<=3",
      spectrum.worst, ctx.tol("qfock_spectrum"));

  const auto u = qfock::evolution(fctx, 2.3);
  const double unit_res =
      (u.m.adjoint() * u.m -
       Eigen::MatrixXcd::Identity(fctx.cutoff, fctx.cutoff))
          .cwiseAbs()
          .maxCoeff();
  add(ctx, "qfock.unitarity", "fock.evolution-unitarity", "t=2.3", unit_res,
      ctx.tol("qfock_block"));

  const auto charge = qfock::schrodinger_charge(fctx, 0.9);
  const Eigen::MatrixXcd comm = charge.A.m * charge.Adag.m - charge.Adag.m * charge.A.m;
  const double comm_res =
      (qfock::sub_cutoff_block(comm) -
       Eigen::MatrixXcd::Identity(fctx.cutoff - 1, fctx.cutoff - 1))
          .cwiseAbs()
          .maxCoeff();
  add(ctx, "qfock.canonical_commutator", "fock.charge-commutator-canonical",
      "t=0.9", comm_res, ctx.tol("qfock_block"));
}

void suite_qwave(SuiteContext& ctx) {
  if (ctx.bundle.sys.name != "constant_force")
    fail(ErrorCode::BadValue, "the qwave suite needs the constant_force model");
  const double hbar = ctx.bundle.sys.hbar();
  const double m = ctx.bundle.sys.param("m", 1.0);
  const double F = ctx.bundle.sys.param("F0", 1.5);
  if (F == 0.0) fail(ErrorCode::ZeroForce, "qwave suite needs F != 0");

  // Wide fine grid for the cubic-phase energy states, coarser for the rest.
  const auto fine = qwave::make_grid(65536, -40.0, 40.0, hbar, m, F);
  const auto base = qwave::make_grid(4096, -40.0, 40.0, hbar, m, F);

  for (double E : {-1.0, 0.5, 2.0}) {
    const auto psi = qwave::energy_state(fine, E);
    std::ostringstream id;
    id << "qwave.energy_stationarity.E=" << E;
    add(ctx, id.str(), "wave.energy-eigenstate-stationarity",
        "E=" + std::to_string(E), qwave::stationarity_residual(psi, E),
        ctx.tol("qwave_residual"));
  }

  for (double t : {0.5, 1.0, 2.0}) {
    std::ostringstream id1;
    id1 << "qwave.schrodinger_spike.t=" << t;
    add(ctx, id1.str(), "wave.translation-eigenstate-dynamics",
        "t=" + std::to_string(t),
        qwave::schrodinger_residual_spike(base, 0.7, t, 1e-4),
        ctx.tol("qwave_residual"));
    std::ostringstream id2;
    id2 << "qwave.schrodinger_gamma.t=" << t;
    add(ctx, id2.str(), "wave.boost-eigenstate-dynamics",
        "t=" + std::to_string(t),
        qwave::schrodinger_residual_gamma(base, -1.3, t, 1e-6),
        ctx.tol("qwave_residual"));
  }

  {
    const double E = 1.0, a = 0.8;
    const auto lhs = qwave::translate_state(qwave::energy_state(fine, E), a);
    const auto rhs = qwave::energy_state(fine, E - a * F);
    // Global-phase-insensitive pointwise comparison via the ratio at a
    // reference bin.
    const qwave::Cplx ref = lhs.amps[fine.n / 2] / rhs.amps[fine.n / 2];
    double worst = 0.0;
    for (int j = 0; j < fine.n; ++j)
      worst = std::max(worst, std::abs(lhs.amps[j] - ref * rhs.amps[j]));
    add(ctx, "qwave.translate_energy_shift", "wave.translation-shifts-energy",
        "E=1,a=0.8", worst, ctx.tol("qwave_translate"));
  }

  {
    const auto packet = qwave::gaussian_packet(base, 1.2, 1.0, 0.4);
    const double t = 0.7;
    qwave::WaveState moving = packet;
    moving.t = t;
    const double v = 256 * base.dp / m;  // commensurate shift
    const auto boosted = qwave::boost_state(moving, v);
    const double before = qwave::energy_expectation(moving);
    const double after = qwave::energy_expectation(boosted);
    // <T(t)> = <p> - t F on the packet.
    qwave::Cplx pbar{0.0, 0.0};
    for (int j = 0; j < base.n; ++j)
      pbar += std::conj(moving.amps[j]) * base.p(j) * moving.amps[j];
    const double mean_T = pbar.real() * base.dp / qwave::norm2(moving) - t * F;
    const double predicted = v * mean_T + 0.5 * m * v * v;
    add(ctx, "qwave.boost_energy_shift", "wave.boost-shifts-energy",
        "v=commensurate,t=0.7", std::abs((after - before) - predicted),
        ctx.tol("qwave_expectation"));
  }

  // Overlap-phase arbitration: the quadrature overlap is the arbiter between
  // the two candidate closed-form readings; the verdict lands in the notes.
  struct Tuple {
    double T, g, t, hbar, m, F;
  };
  const std::vector<Tuple> tuples = {
      {0.7, -1.3, 0.9, 1.0, 2.0, 1.5}, {1.1, 0.4, 2.0, 0.7, 1.0, 0.5},
      {0.3, 2.2, 1.3, 1.3, 1.7, 2.3}, {-0.9, 0.8, 0.6, 1.0, 1.0, 1.0},
      {0.5, -0.5, 1.5, 0.5, 2.5, 0.8}};
  int winner_votes[3] = {0, 0, 0};
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const Tuple& u = tuples[i];
    const auto grid = qwave::make_grid(4096, -40.0, 40.0, u.hbar, u.m, u.F);
    const auto arb =
        qwave::arbitrate_overlap_phase(grid, u.T, u.g, u.t, ctx.tol("qwave_overlap"));
    winner_votes[arb.winner]++;
    const std::string tag = "tuple" + std::to_string(i);
    add(ctx, "qwave.overlap_phase.single_hbar." + tag,
        "wave.overlap-phase-candidate-single-hbar", tag, arb.dev_single_hbar,
        ctx.tol("qwave_overlap"));
    add(ctx, "qwave.overlap_phase.double_hbar." + tag,
        "wave.overlap-phase-candidate-double-hbar", tag, arb.dev_double_hbar,
        ctx.tol("qwave_overlap"));
    add(ctx, "qwave.overlap_phase.heisenberg_pair." + tag,
        "wave.overlap-phase-heisenberg-pair", tag, arb.dev_heisenberg,
        ctx.tol("qwave_overlap"));
  }
  std::string verdict;
  if (winner_votes[1] == static_cast<int>(tuples.size()))
    verdict = "single_hbar";
  else if (winner_votes[2] == static_cast<int>(tuples.size()))
    verdict = "double_hbar";
  else
    verdict =
        "neither: the measured phase matches T*gamma/(hbar*m) with no "
        "t-dependent term; both candidate readings deviate by t(T+tF)^2 terms";
  ctx.report.notes["overlap_phase_winner"] = verdict;
}

}  // namespace

Report run(const RunConfig& cfg) {
  const models::ModelBundle bundle = models::instantiate(cfg.model, cfg.params);

  Report report;
  report.model = cfg.model;
  report.config_json = cfg.echo;

  SuiteContext ctx{cfg, bundle, sample_states(bundle.sys.dim, 100, cfg.seed, 1.0),
                   report};

  for (const std::string& suite : cfg.suites) {
    if (suite == "consistency") suite_consistency(ctx);
    else if (suite == "conservation") suite_conservation(ctx);
    else if (suite == "converse") suite_converse(ctx);
    else if (suite == "algebra") suite_algebra(ctx);
    else if (suite == "trajectory") suite_trajectory(ctx);
    else if (suite == "qfock") suite_qfock(ctx);
    else if (suite == "qwave") suite_qwave(ctx);
  }
  return report;
}

int run_and_write(const RunConfig& cfg) {
  const Report report = run(cfg);
  write_report(report, cfg.output_dir);
  return report.all_passed() ? 0 : 1;
}

}  // namespace nlab::cli
