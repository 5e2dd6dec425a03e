#pragma once

#include <string>
#include <vector>

#include "nlab/phasespace.hpp"

namespace nlab::integrate {

enum class Scheme { verlet, midpoint, rk4 };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// Discrete solution with uniform step; times are always t0 + k*h.
struct Trajectory {
  std::vector<PhaseState> states;
  double h = 0.0;
  std::string sys_name;
  Scheme integrator = Scheme::verlet;

  std::size_t size() const { return states.size(); }
};

// Single steps, exposed for tangent-map tests and composition.
PhaseState verlet_step(const SystemSpec& sys, const PhaseState& s, double h);
PhaseState midpoint_step(const SystemSpec& sys, const PhaseState& s, double h);
PhaseState rk4_step(const SystemSpec& sys, const PhaseState& s, double h);

/// Stormer-Verlet leapfrog; requires a declared separable Hamiltonian.
Trajectory verlet(const SystemSpec& sys, const PhaseState& s0, double h, int n);

/// Implicit midpoint rule; fixed-point iteration to 1e-13 or 50 sweeps,
/// aborting with NoConvergence rather than accepting a loose solve.
Trajectory midpoint(const SystemSpec& sys, const PhaseState& s0, double h,
                    int n);

/// Classic fourth-order Runge-Kutta, the non-symplectic control.
Trajectory rk4(const SystemSpec& sys, const PhaseState& s0, double h, int n);

/// f(state_k) - f(state_0) for each k.
std::vector<double> drift(const Trajectory& traj, const Observable& f);
/// Complex observables report |f(state_k) - f(state_0)|.
std::vector<double> drift(const Trajectory& traj, const ComplexObservable& f);

}  // namespace nlab::integrate
