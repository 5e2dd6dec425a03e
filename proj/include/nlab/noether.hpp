#pragma once

#include <span>
#include <vector>

#include "nlab/integrate.hpp"
#include "nlab/phasespace.hpp"

namespace nlab::noether {

struct ConsistencyReport {
  double residual_q = 0.0;
  double residual_p = 0.0;
  double residual_t = 0.0;
  bool passed = false;

  double worst() const {
    return std::max(residual_q, std::max(residual_p, residual_t));
  }
};

/// Checks the three differential conditions the surface term has to satisfy
/// against the transformation fields and the Hamiltonian, maximised over the
/// supplied states.
ConsistencyReport verify_consistency(const Transformation& tr,
                                     const SystemSpec& sys,
                                     std::span<const PhaseState> states,
                                     double tol);

struct ChargeBundle {
  Observable charge;
  Transformation transformation;
  double lambda = 1.0;
};

/// Assembles Q = lambda*phi.p - (1-lambda)*q.chi - Lambda and validates the
/// generator property {q, Q} = phi, {p, Q} = chi on a built-in sample.
/// Throws GeneratorMismatch for an inconsistent transformation.
ChargeBundle build_charge(const Transformation& tr);

struct ConservationReport {
  double max_abs_total = 0.0;
  double max_abs_dt = 0.0;       // explicit time part, shows dynamical charges
  double max_abs_bracket = 0.0;  // {f, H} part
  bool passed = false;
};

ConservationReport conservation_check(const Observable& f,
                                      const SystemSpec& sys,
                                      std::span<const PhaseState> states,
                                      double tol);
ConservationReport conservation_check(const ComplexObservable& f,
                                      const SystemSpec& sys,
                                      std::span<const PhaseState> states,
                                      double tol);

/// Converse construction: phi = dF/dp, chi = -dF/dq,
/// Lambda = lambda*phi.p - (1-lambda)*q.chi - F.  The fields are derived
/// observables (finite-difference gradients when re-differentiated).
Transformation converse_transform(const Observable& f, double lambda_param);

/// Max equation-of-motion residual of the transformed discrete path
/// q~ = q + eps dF/dp, p~ = p - eps dF/dq (central-difference time derivative
/// against the Hamiltonian vector field).  eps = 0 gives the raw residual of
/// the trajectory itself.
double covariance_residual(const Observable& f, const SystemSpec& sys,
                           const integrate::Trajectory& traj, double eps);

/// Same residual with the eps = 0 baseline subtracted per point and
/// component, isolating the transformation-induced part.
double covariance_excess(const Observable& f, const SystemSpec& sys,
                         const integrate::Trajectory& traj, double eps);

/// |discretized action variation - eps*[Lambda(end) - Lambda(start)]| over
/// the trajectory (trapezoid rule, central-difference path velocities).
double action_variation_check(const Transformation& tr, const SystemSpec& sys,
                              const integrate::Trajectory& traj, double eps);

/// Max over states of |(f - f(ref)) - (g - g(ref))|: equality of charges up
/// to the additive constant gauge fixed at the reference state.
double charge_difference_mod_constant(const Observable& f, const Observable& g,
                                      std::span<const PhaseState> states,
                                      const PhaseState& ref);

}  // namespace nlab::noether
