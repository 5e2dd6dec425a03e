#include "nlab/noether.hpp"

#include <cmath>

#include "nlab/parallel.hpp"
#include "nlab/poisson.hpp"

namespace nlab::noether {

namespace {

constexpr double kGeneratorTol = 1e-8;

void require_transformation(const Transformation& tr, const SystemSpec& sys) {
  if (tr.dim != sys.dim)
    fail(ErrorCode::DimensionMismatch,
         "transformation '" + tr.label + "' has dimension " +
             std::to_string(tr.dim) + ", system '" + sys.name + "' has " +
             std::to_string(sys.dim));
}

struct ConsistencyResiduals {
  double rq, rp, rt;
};

ConsistencyResiduals consistency_at(const Transformation& tr,
                                    const SystemSpec& sys,
                                    const PhaseState& s) {
  const int d = tr.dim;
  const double lam = tr.lambda;
  const GradResult gl = grad(tr.surface, s);
  const GradResult gh = grad(sys.hamiltonian, s);
  std::vector<GradResult> gphi(d), gchi(d);
  for (int b = 0; b < d; ++b) {
    gphi[b] = grad(tr.phi[b], s);
    gchi[b] = grad(tr.chi[b], s);
  }

  ConsistencyResiduals r{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) {
    double rhs_q = lam * gchi[a].value;
    double rhs_p = 0.0;
    for (int b = 0; b < d; ++b) {
      rhs_q += lam * gphi[b].d_q[a] * s.p[b] - (1.0 - lam) * s.q[b] * gchi[b].d_q[a];
      rhs_p += lam * gphi[b].d_p[a] * s.p[b] - (1.0 - lam) * s.q[b] * gchi[b].d_p[a];
    }
    rhs_p -= (1.0 - lam) * gphi[a].value;
    r.rq = std::max(r.rq, std::abs(gl.d_q[a] - rhs_q));
    r.rp = std::max(r.rp, std::abs(gl.d_p[a] - rhs_p));
  }

  double rhs_t = 0.0;
  for (int a = 0; a < d; ++a) {
    rhs_t += lam * gphi[a].d_t * s.p[a] - (1.0 - lam) * s.q[a] * gchi[a].d_t;
    rhs_t -= gphi[a].value * gh.d_q[a] + gchi[a].value * gh.d_p[a];
  }
  r.rt = std::abs(gl.d_t - rhs_t);
  return r;
}

}  // namespace

ConsistencyReport verify_consistency(const Transformation& tr,
                                     const SystemSpec& sys,
                                     std::span<const PhaseState> states,
                                     double tol) {
  require_transformation(tr, sys);
  if (!(tol > 0)) fail(ErrorCode::BadValue, "verify_consistency: tol must be positive");

  const auto residuals = parallel::map<ConsistencyResiduals>(
      static_cast<std::int64_t>(states.size()), [&](std::int64_t k) {
        return consistency_at(tr, sys, states[static_cast<std::size_t>(k)]);
      });

  ConsistencyReport report;
  for (const auto& r : residuals) {
    report.residual_q = std::max(report.residual_q, r.rq);
    report.residual_p = std::max(report.residual_p, r.rp);
    report.residual_t = std::max(report.residual_t, r.rt);
  }
  if (!std::isfinite(report.residual_q) || !std::isfinite(report.residual_p) ||
      !std::isfinite(report.residual_t))
    fail(ErrorCode::NonFinite, "verify_consistency: non-finite residual");
  report.passed = report.worst() < tol;
  return report;
}

ChargeBundle build_charge(const Transformation& tr) {
  const int d = tr.dim;
  const double lam = tr.lambda;

  bool dual_ok = tr.surface.has_dual();
  for (const Observable& o : tr.phi) dual_ok = dual_ok && o.has_dual();
  for (const Observable& o : tr.chi) dual_ok = dual_ok && o.has_dual();

  Observable q_obs;
  const std::string label = "Q[" + tr.label + "]";
  if (dual_ok) {
    q_obs = Observable(label, d, DualFn([tr, lam, d](const DualState& s) {
                         Dual acc(0.0);
                         for (int a = 0; a < d; ++a) {
                           acc = acc + Dual(lam) * tr.phi[a].eval_dual(s) * s.p[a];
                           acc = acc - Dual(1.0 - lam) * s.q[a] * tr.chi[a].eval_dual(s);
                         }
                         return acc - tr.surface.eval_dual(s);
                       }));
  } else {
    q_obs = Observable(label, d, RealFn([tr, lam, d](const PhaseState& s) {
                         double acc = 0.0;
                         for (int a = 0; a < d; ++a)
                           acc += lam * tr.phi[a](s) * s.p[a] -
                                  (1.0 - lam) * s.q[a] * tr.chi[a](s);
                         return acc - tr.surface(s);
                       }));
  }

  // Generator property on a fixed sample; failure flags an inconsistent
  // transformation rather than a numerical issue.
  const auto sample = sample_states(d, 32, 20240901u, 1.0);
  double worst = 0.0;
  for (const PhaseState& s : sample) {
    const GradResult g = grad(q_obs, s);
    for (int a = 0; a < d; ++a) {
      worst = std::max(worst, std::abs(g.d_p[a] - tr.phi[a](s)));
      worst = std::max(worst, std::abs(-g.d_q[a] - tr.chi[a](s)));
    }
  }
  if (!(worst < kGeneratorTol))
    fail(ErrorCode::GeneratorMismatch,
         "charge of '" + tr.label + "' does not generate (phi, chi): max deviation " +
             std::to_string(worst));

  return ChargeBundle{std::move(q_obs), tr, lam};
}

namespace {

template <class Obs>
ConservationReport conservation_impl(const Obs& f, const SystemSpec& sys,
                                     std::span<const PhaseState> states,
                                     double tol) {
  ConservationReport report;
  for (const PhaseState& s : states) {
    const auto parts = [&]() -> std::pair<double, double> {
      if constexpr (std::is_same_v<Obs, Observable>) {
        const GradResult gf = grad(f, s);
        const GradResult gh = grad(sys.hamiltonian, s);
        double br = 0.0;
        for (int i = 0; i < sys.dim; ++i)
          br += gf.d_q[i] * gh.d_p[i] - gf.d_p[i] * gh.d_q[i];
        return {gf.d_t, br};
      } else {
        const GradResult gr = grad(f.re, s);
        const GradResult gi = grad(f.im, s);
        const GradResult gh = grad(sys.hamiltonian, s);
        double br_re = 0.0, br_im = 0.0;
        for (int i = 0; i < sys.dim; ++i) {
          br_re += gr.d_q[i] * gh.d_p[i] - gr.d_p[i] * gh.d_q[i];
          br_im += gi.d_q[i] * gh.d_p[i] - gi.d_p[i] * gh.d_q[i];
        }
        return {std::hypot(gr.d_t, gi.d_t), std::hypot(br_re, br_im)};
      }
    }();
    double total;
    if constexpr (std::is_same_v<Obs, Observable>)
      total = std::abs(parts.first + parts.second);
    else
      total = std::abs(poisson::total_derivative(f, sys, s));
    report.max_abs_dt = std::max(report.max_abs_dt, std::abs(parts.first));
    report.max_abs_bracket = std::max(report.max_abs_bracket, std::abs(parts.second));
    report.max_abs_total = std::max(report.max_abs_total, total);
  }
  report.passed = report.max_abs_total < tol;
  return report;
}

}  // namespace

ConservationReport conservation_check(const Observable& f, const SystemSpec& sys,
                                      std::span<const PhaseState> states,
                                      double tol) {
  return conservation_impl(f, sys, states, tol);
}

ConservationReport conservation_check(const ComplexObservable& f,
                                      const SystemSpec& sys,
                                      std::span<const PhaseState> states,
                                      double tol) {
  return conservation_impl(f, sys, states, tol);
}

Transformation converse_transform(const Observable& f, double lambda_param) {
  const int d = f.dim();
  Transformation tr;
  tr.label = "converse[" + f.label() + "]";
  tr.dim = d;
  tr.lambda = lambda_param;
  for (int a = 0; a < d; ++a) {
    tr.phi.push_back(Observable("dF/dp" + std::to_string(a), d,
                                RealFn([f, a](const PhaseState& s) {
                                  return grad(f, s).d_p[a];
                                })));
    tr.chi.push_back(Observable("-dF/dq" + std::to_string(a), d,
                                RealFn([f, a](const PhaseState& s) {
                                  return -grad(f, s).d_q[a];
                                })));
  }
  tr.surface = Observable(
      "Lambda[" + f.label() + "]", d,
      RealFn([f, lambda_param, d](const PhaseState& s) {
        const GradResult g = grad(f, s);
        double acc = 0.0;
        for (int a = 0; a < d; ++a)
          acc += lambda_param * g.d_p[a] * s.p[a] +
                 (1.0 - lambda_param) * s.q[a] * g.d_q[a];
        return acc - g.value;
      }));
  return tr;
}

namespace {

void conservation_precheck(const Observable& f, const SystemSpec& sys) {
  const auto sample = sample_states(sys.dim, 16, 77001u, 1.0);
  double worst = 0.0;
  for (const PhaseState& s : sample)
    worst = std::max(worst, std::abs(poisson::total_derivative(f, sys, s)));
  if (worst > 1e-6)
    fail(ErrorCode::PrecheckFailed,
         "covariance check: '" + f.label() + "' is not conserved (max " +
             std::to_string(worst) + ")");
}

// Per-point equation-of-motion deviation of the eps-transformed path.
std::vector<double> covariance_deviation_series(const Observable& f,
                                                const SystemSpec& sys,
                                                const integrate::Trajectory& traj,
                                                double eps) {
  const int d = sys.dim;
  const std::size_t n = traj.size();
  if (n < 3) fail(ErrorCode::BadValue, "covariance check needs >= 3 states");

  std::vector<PhaseState> path(n);
  for (std::size_t k = 0; k < n; ++k) {
    const PhaseState& s = traj.states[k];
    PhaseState z = s;
    if (eps != 0.0) {
      const GradResult g = grad(f, s);
      for (int i = 0; i < d; ++i) {
        z.q[i] = s.q[i] + eps * g.d_p[i];
        z.p[i] = s.p[i] - eps * g.d_q[i];
      }
    }
    path[k] = std::move(z);
  }

  const double h = traj.h;
  std::vector<double> dev(2 * d * (n - 2));
  parallel::for_each(static_cast<std::int64_t>(n - 2), [&](std::int64_t kk) {
    const std::size_t k = static_cast<std::size_t>(kk) + 1;
    const GradResult gh = grad(sys.hamiltonian, path[k]);
    for (int i = 0; i < d; ++i) {
      const double dq = (path[k + 1].q[i] - path[k - 1].q[i]) / (2.0 * h);
      const double dp = (path[k + 1].p[i] - path[k - 1].p[i]) / (2.0 * h);
      dev[2 * d * (k - 1) + 2 * i] = dq - gh.d_p[i];
      dev[2 * d * (k - 1) + 2 * i + 1] = dp + gh.d_q[i];
    }
  });
  return dev;
}

}  // namespace

double covariance_residual(const Observable& f, const SystemSpec& sys,
                           const integrate::Trajectory& traj, double eps) {
  conservation_precheck(f, sys);
  return parallel::max_abs(covariance_deviation_series(f, sys, traj, eps));
}

double covariance_excess(const Observable& f, const SystemSpec& sys,
                         const integrate::Trajectory& traj, double eps) {
  conservation_precheck(f, sys);
  const auto with = covariance_deviation_series(f, sys, traj, eps);
  const auto base = covariance_deviation_series(f, sys, traj, 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < with.size(); ++i)
    worst = std::max(worst, std::abs(with[i] - base[i]));
  return worst;
}

double action_variation_check(const Transformation& tr, const SystemSpec& sys,
                              const integrate::Trajectory& traj, double eps) {
  require_transformation(tr, sys);
  const int d = sys.dim;
  const std::size_t n = traj.size();
  if (n < 3) fail(ErrorCode::BadValue, "action variation needs >= 3 states");
  const double h = traj.h;
  const double lam = tr.lambda;

  std::vector<PhaseState> tpath(n);
  for (std::size_t k = 0; k < n; ++k) {
    const PhaseState& s = traj.states[k];
    PhaseState z = s;
    for (int i = 0; i < d; ++i) {
      z.q[i] = s.q[i] + eps * tr.phi[i](s);
      z.p[i] = s.p[i] + eps * tr.chi[i](s);
    }
    tpath[k] = std::move(z);
  }

  // First-order action density with central-difference velocities, interior
  // points only; trapezoid weights at the two interior ends.
  auto density = [&](const std::vector<PhaseState>& path, std::size_t k) {
    double acc = -sys.hamiltonian(path[k]);
    for (int i = 0; i < d; ++i) {
      const double qdot = (path[k + 1].q[i] - path[k - 1].q[i]) / (2.0 * h);
      const double pdot = (path[k + 1].p[i] - path[k - 1].p[i]) / (2.0 * h);
      acc += lam * qdot * path[k].p[i] - (1.0 - lam) * path[k].q[i] * pdot;
    }
    return acc;
  };

  double delta_s = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double w = (k == 1 || k == n - 2) ? 0.5 : 1.0;
    delta_s += w * h * (density(tpath, k) - density(traj.states, k));
  }

  const double boundary =
      eps * (tr.surface(traj.states[n - 2]) - tr.surface(traj.states[1]));
  return std::abs(delta_s - boundary);
}

double charge_difference_mod_constant(const Observable& f, const Observable& g,
                                      std::span<const PhaseState> states,
                                      const PhaseState& ref) {
  const double offset = f(ref) - g(ref);
  double worst = 0.0;
  for (const PhaseState& s : states)
    worst = std::max(worst, std::abs((f(s) - g(s)) - offset));
  return worst;
}

}  // namespace nlab::noether
