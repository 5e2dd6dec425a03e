#include "nlab/integrate.hpp"

#include <cmath>

#include "nlab/deriv.hpp"

namespace nlab::integrate {

namespace {

constexpr double kFixedPointTol = 1e-13;
constexpr int kFixedPointMaxIter = 50;

void require_state(const SystemSpec& sys, const PhaseState& s) {
  if (s.dim() != sys.dim)
    fail(ErrorCode::DimensionMismatch,
         "integrator: state dimension " + std::to_string(s.dim()) +
             " vs system '" + sys.name + "' dimension " +
             std::to_string(sys.dim));
}

void require_finite_state(const PhaseState& s) {
  for (double x : s.q)
    if (!std::isfinite(x)) fail(ErrorCode::NonFinite, "trajectory left the finite domain");
  for (double x : s.p)
    if (!std::isfinite(x)) fail(ErrorCode::NonFinite, "trajectory left the finite domain");
}

Trajectory run(const SystemSpec& sys, const PhaseState& s0, double h, int n,
               Scheme scheme,
               PhaseState (*step)(const SystemSpec&, const PhaseState&, double)) {
  require_state(sys, s0);
  if (h < 0) fail(ErrorCode::BadValue, "integrator: negative step");
  if (n < 0) fail(ErrorCode::BadValue, "integrator: negative step count");
  Trajectory traj;
  traj.h = h;
  traj.sys_name = sys.name;
  traj.integrator = scheme;
  traj.states.reserve(static_cast<std::size_t>(n) + 1);
  traj.states.push_back(s0);
  const double t0 = s0.t;
  PhaseState s = s0;
  for (int k = 1; k <= n; ++k) {
    s = step(sys, s, h);
    s.t = t0 + k * h;  // never accumulated, keeps the time axis exact
    require_finite_state(s);
    traj.states.push_back(s);
  }
  return traj;
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::verlet: return "verlet";
    case Scheme::midpoint: return "midpoint";
    case Scheme::rk4: return "rk4";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "verlet") return Scheme::verlet;
  if (name == "midpoint") return Scheme::midpoint;
  if (name == "rk4") return Scheme::rk4;
  fail(ErrorCode::BadValue, "unknown integrator '" + name + "'");
}

PhaseState verlet_step(const SystemSpec& sys, const PhaseState& s, double h) {
  // Kick-drift-kick.  For a separable H the q-gradient is p-independent and
  // the p-gradient q-independent, so evaluating the full gradient is exact.
  const int d = s.dim();
  PhaseState mid = s;
  GradResult g = grad(sys.hamiltonian, s);
  for (int i = 0; i < d; ++i) mid.p[i] = s.p[i] - 0.5 * h * g.d_q[i];
  GradResult gm = grad(sys.hamiltonian, mid);
  PhaseState out = mid;
  for (int i = 0; i < d; ++i) out.q[i] = s.q[i] + h * gm.d_p[i];
  out.t = s.t + h;
  GradResult ge = grad(sys.hamiltonian, out);
  for (int i = 0; i < d; ++i) out.p[i] = mid.p[i] - 0.5 * h * ge.d_q[i];
  return out;
}

PhaseState midpoint_step(const SystemSpec& sys, const PhaseState& s, double h) {
  const int d = s.dim();
  PhaseState m = s;  // midpoint iterate
  for (int it = 0; it < kFixedPointMaxIter; ++it) {
    const GradResult g = grad(sys.hamiltonian, m);
    double delta = 0.0;
    for (int i = 0; i < d; ++i) {
      const double qn = s.q[i] + 0.5 * h * g.d_p[i];
      const double pn = s.p[i] - 0.5 * h * g.d_q[i];
      delta = std::max(delta, std::abs(qn - m.q[i]));
      delta = std::max(delta, std::abs(pn - m.p[i]));
      m.q[i] = qn;
      m.p[i] = pn;
    }
    if (delta < kFixedPointTol) {
      PhaseState out = s;
      for (int i = 0; i < d; ++i) {
        out.q[i] = 2.0 * m.q[i] - s.q[i];
        out.p[i] = 2.0 * m.p[i] - s.p[i];
      }
      out.t = s.t + h;
      return out;
    }
  }
  fail(ErrorCode::NoConvergence,
       "implicit midpoint: fixed point did not converge to 1e-13 in 50 sweeps");
}

PhaseState rk4_step(const SystemSpec& sys, const PhaseState& s, double h) {
  const int d = s.dim();
  auto field = [&](const PhaseState& z, std::vector<double>& kq,
                   std::vector<double>& kp) {
    const GradResult g = grad(sys.hamiltonian, z);
    for (int i = 0; i < d; ++i) {
      kq[i] = g.d_p[i];
      kp[i] = -g.d_q[i];
    }
  };
  std::vector<double> k1q(d), k1p(d), k2q(d), k2p(d), k3q(d), k3p(d), k4q(d),
      k4p(d);
  PhaseState z = s;
  field(s, k1q, k1p);
  for (int i = 0; i < d; ++i) {
    z.q[i] = s.q[i] + 0.5 * h * k1q[i];
    z.p[i] = s.p[i] + 0.5 * h * k1p[i];
  }
  field(z, k2q, k2p);
  for (int i = 0; i < d; ++i) {
    z.q[i] = s.q[i] + 0.5 * h * k2q[i];
    z.p[i] = s.p[i] + 0.5 * h * k2p[i];
  }
  field(z, k3q, k3p);
  for (int i = 0; i < d; ++i) {
    z.q[i] = s.q[i] + h * k3q[i];
    z.p[i] = s.p[i] + h * k3p[i];
  }
  field(z, k4q, k4p);
  PhaseState out = s;
  for (int i = 0; i < d; ++i) {
    out.q[i] = s.q[i] + h / 6.0 * (k1q[i] + 2 * k2q[i] + 2 * k3q[i] + k4q[i]);
    out.p[i] = s.p[i] + h / 6.0 * (k1p[i] + 2 * k2p[i] + 2 * k3p[i] + k4p[i]);
  }
  out.t = s.t + h;
  return out;
}

Trajectory verlet(const SystemSpec& sys, const PhaseState& s0, double h, int n) {
  if (!sys.separable)
    fail(ErrorCode::NotSeparable,
         "verlet requires a declared separable Hamiltonian; '" + sys.name +
             "' is not");
  return run(sys, s0, h, n, Scheme::verlet, verlet_step);
}

Trajectory midpoint(const SystemSpec& sys, const PhaseState& s0, double h,
                    int n) {
  return run(sys, s0, h, n, Scheme::midpoint, midpoint_step);
}

Trajectory rk4(const SystemSpec& sys, const PhaseState& s0, double h, int n) {
  return run(sys, s0, h, n, Scheme::rk4, rk4_step);
}

std::vector<double> drift(const Trajectory& traj, const Observable& f) {
  std::vector<double> out;
  out.reserve(traj.size());
  const double f0 = f(traj.states.front());
  for (const PhaseState& s : traj.states) out.push_back(f(s) - f0);
  return out;
}

std::vector<double> drift(const Trajectory& traj, const ComplexObservable& f) {
  std::vector<double> out;
  out.reserve(traj.size());
  const std::complex<double> f0 = f(traj.states.front());
  for (const PhaseState& s : traj.states) out.push_back(std::abs(f(s) - f0));
  return out;
}

}  // namespace nlab::integrate
