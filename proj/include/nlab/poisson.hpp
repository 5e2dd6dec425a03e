#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "nlab/deriv.hpp"
#include "nlab/phasespace.hpp"

namespace nlab::poisson {

/// Canonical Poisson bracket {f, g} at s, gradients via dual numbers.
double bracket(const Observable& f, const Observable& g, const PhaseState& s);

/// Bracket of complex observables, computed on (Re, Im) parts and recombined.
std::complex<double> bracket(const ComplexObservable& f,
                             const ComplexObservable& g, const PhaseState& s);

/// Same contraction but with both gradients from the finite-difference
/// oracle; kept as the independent route for cross-checks.
double bracket_fd(const Observable& f, const Observable& g,
                  const PhaseState& s, double h);

/// Total time derivative df/dt = df/dt|_explicit + {f, H} at s.
double total_derivative(const Observable& f, const SystemSpec& sys,
                        const PhaseState& s);
std::complex<double> total_derivative(const ComplexObservable& f,
                                      const SystemSpec& sys,
                                      const PhaseState& s);

/// Wraps {g, h} as a derived observable; gradients of the wrapper come from
/// finite differences (the dual engine is first-order only).
Observable bracket_observable(const Observable& g, const Observable& h);

/// |{f,{g,h}} + {g,{h,f}} + {h,{f,g}}| with inner brackets differentiated by
/// central differences at defaults::nested_bracket_step.
double jacobi_residual(const Observable& f, const Observable& g,
                       const Observable& h, const PhaseState& s);

struct BracketTable {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;  // antisymmetric n x n
  PhaseState state;
};

BracketTable bracket_table(std::span<const Observable> obs,
                           const PhaseState& s);

struct ClosurePair {
  int i = 0;
  int j = 0;
  double max_residual = 0.0;  // max |d/dt {f_i, f_j}| over the states
};

struct ClosureReport {
  std::vector<ClosurePair> pairs;
  double worst = 0.0;
  bool passed = false;
};

/// Verifies that the pairwise brackets of already-conserved observables are
/// conserved again.  Throws PrecheckFailed if an input is not conserved on
/// the sample.
ClosureReport closure_check(std::span<const Observable> obs,
                            const SystemSpec& sys,
                            std::span<const PhaseState> states, double tol);

}  // namespace nlab::poisson
