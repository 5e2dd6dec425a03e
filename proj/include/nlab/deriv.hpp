#pragma once

#include "nlab/phasespace.hpp"

namespace nlab {

/// Value and all first partials of an observable at one state.
struct GradResult {
  double value = 0.0;
  std::vector<double> d_q;
  std::vector<double> d_p;
  double d_t = 0.0;
};

namespace defaults {
// Step for the O(h^2) finite-difference oracle, chosen for unit-scaled inputs.
inline constexpr double fd_oracle_step = 1e-5;
// Step for the 4th-order stencil used on derived fields that carry no dual
// evaluator (nested brackets, converse-construction components).
inline constexpr double derived_field_step = 1e-3;
// Step pinned for the inner bracket of the Jacobi residual.
inline constexpr double nested_bracket_step = 1e-4;
}  // namespace defaults

/// All first partials in one pass.  Dual-number route when the observable
/// carries one (exact up to round-off); otherwise a 4th-order central
/// stencil with step defaults::derived_field_step.
GradResult grad(const Observable& f, const PhaseState& s);

/// Independent oracle: 3-point central differences with step h, error O(h^2).
GradResult fd_grad(const Observable& f, const PhaseState& s, double h);
inline GradResult fd_grad(const Observable& f, const PhaseState& s) {
  return fd_grad(f, s, defaults::fd_oracle_step);
}

}  // namespace nlab
