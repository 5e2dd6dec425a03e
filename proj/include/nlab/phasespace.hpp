#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nlab/dual.hpp"
#include "nlab/errors.hpp"

namespace nlab {

/// Point (q, p, t) in extended phase space.
struct PhaseState {
  std::vector<double> q;
  std::vector<double> p;
  double t = 0.0;

  int dim() const { return static_cast<int>(q.size()); }
};

/// Phase-space point lifted to dual numbers, used by the gradient engine.
struct DualState {
  std::vector<Dual> q;
  std::vector<Dual> p;
  Dual t;
};

using DualFn = std::function<Dual(const DualState&)>;
using RealFn = std::function<double(const PhaseState&)>;

/// Real-valued observable F(q, p; t).  Observables built from closed-form
/// expressions carry a dual-number evaluator and differentiate exactly;
/// derived fields (nested brackets, converse-construction components) carry
/// only a real evaluator and are differentiated by finite differences.
class Observable {
 public:
  Observable() = default;
  Observable(std::string label, int dim, DualFn f);
  Observable(std::string label, int dim, RealFn f);

  double operator()(const PhaseState& s) const;
  Dual eval_dual(const DualState& s) const;

  const std::string& label() const { return label_; }
  int dim() const { return dim_; }
  bool has_dual() const { return static_cast<bool>(dual_fn_); }

 private:
  std::string label_;
  int dim_ = 0;
  DualFn dual_fn_;
  RealFn real_fn_;
};

// Pointwise algebra on observables; the dual evaluator survives only when
// both operands carry one.
Observable operator+(const Observable& a, const Observable& b);
Observable operator-(const Observable& a, const Observable& b);
Observable operator*(const Observable& a, const Observable& b);
Observable operator*(double c, const Observable& a);
Observable operator+(const Observable& a, double c);

/// Complex observable as a (Re, Im) pair of real observables.
struct ComplexObservable {
  Observable re;
  Observable im;
  std::string label;

  std::complex<double> operator()(const PhaseState& s) const {
    return {re(s), im(s)};
  }
  int dim() const { return re.dim(); }
};

/// A Hamiltonian system: dimension, Hamiltonian (no explicit time
/// dependence), named parameters, and a declared kinetic+potential split.
struct SystemSpec {
  std::string name;
  int dim = 0;
  Observable hamiltonian;
  std::map<std::string, double> params;
  bool separable = false;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
  double hbar() const { return param("hbar", 1.0); }
};

/// Linearized symmetry candidate: dq = eps*phi, dp = eps*chi, with surface
/// term Lambda and the action-convention parameter lambda.
struct Transformation {
  std::string label;
  int dim = 0;
  std::vector<Observable> phi;
  std::vector<Observable> chi;
  Observable surface;
  double lambda = 1.0;
};

PhaseState make_state(std::vector<double> q, std::vector<double> p, double t);

/// Deterministic test-point generator: q, p uniform in [-box, box]^d and t
/// uniform in [0, box].
std::vector<PhaseState> sample_states(int dim, int n, std::uint64_t seed,
                                      double box);

}  // namespace nlab
