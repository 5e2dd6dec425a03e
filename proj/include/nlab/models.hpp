#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nlab/phasespace.hpp"

namespace nlab::models {

/// Collection of decoupled oscillators in normal-mode form,
/// H = sum_a (p_a^2/2 + w_a^2 q_a^2/2), with the dynamical mode charges
/// A_a(t) = e^{i w_a (t - t0)} a_a exposed as (Re, Im) pairs.
class HarmonicModel {
 public:
  explicit HarmonicModel(std::vector<double> omegas, double t0 = 0.0);

  const SystemSpec& system() const { return sys_; }
  int modes() const { return static_cast<int>(omegas_.size()); }
  double omega(int alpha) const { return omegas_.at(alpha); }
  double reference_time() const { return t0_; }

  ComplexObservable charge(int alpha) const;
  /// H rewritten through the dynamical charges: sum_a w_a |A_a|^2.
  Observable hamiltonian_from_charges() const;

 private:
  std::vector<double> omegas_;
  double t0_ = 0.0;
  SystemSpec sys_;
};

HarmonicModel harmonic_system(std::vector<double> omegas, double t0 = 0.0);

struct ModeInfo {
  int index = 0;       // normal-mode coordinate index
  int wavenumber = 0;  // signed lattice wavenumber
  bool is_sin = false; // cos/sin character of the site profile
  double omega = 0.0;
  std::vector<double> profile;  // orthonormal site profile
};

/// Periodic 1-d lattice of a real scalar with mass mu and spacing a, reduced
/// to real normal modes with w_k = sqrt(mu^2 + (2/a)^2 sin^2(pi k / N)).
class LatticeScalarModel {
 public:
  LatticeScalarModel(int n_sites, double mu, double spacing, double t0 = 0.0);

  const SystemSpec& system() const { return core_.system(); }
  const HarmonicModel& normal_modes() const { return core_; }
  const std::vector<ModeInfo>& mode_map() const { return map_; }
  int sites() const { return n_; }

  /// The site-space Hamiltonian evaluated on normal-mode coordinates via the
  /// orthogonal mode map; equals the normal-mode H pointwise.
  Observable site_hamiltonian() const;
  /// Wavenumber-weighted diagonal charge sum_k k~ |A_k|^2.
  Observable momentum_charge() const;

 private:
  int n_ = 0;
  double mu_ = 0.0;
  double a_ = 0.0;
  HarmonicModel core_;
  std::vector<ModeInfo> map_;
};

LatticeScalarModel lattice_scalar_system(int n_sites, double mu, double spacing,
                                         double t0 = 0.0);

/// Nonrelativistic particle under a constant force, H = p^2/2m - x.F, with
/// the translation and boost charges, their transformations, and the finite
/// symmetry maps.
class ConstantForceModel {
 public:
  ConstantForceModel(double mass, std::vector<double> force);

  const SystemSpec& system() const { return sys_; }
  int dim() const { return static_cast<int>(force_.size()); }
  double mass() const { return mass_; }
  const std::vector<double>& force() const { return force_; }

  Observable translation_charge(int axis) const;  // T_i = p_i - t F_i
  Observable boost_charge(int axis) const;    // gamma_i = -m x_i + t p_i - t^2 F_i / 2
  /// Rotation charge in the plane (i, j) perpendicular to F (or the full
  /// angular momentum when F = 0).  Requires dim >= 3.
  Observable rotation_charge(int i, int j) const;
  /// H rewritten through the charges: T^2/2m + F.gamma/m.
  Observable hamiltonian_from_charges() const;

  Transformation translation(int axis, double lambda) const;
  Transformation boost(int axis, double lambda) const;

  /// x' = x + a + t v, p' = p + m v.
  PhaseState finite_map(const std::vector<double>& a,
                        const std::vector<double>& v, const PhaseState& s) const;
  /// |H(finite_map(s)) - H(s) - (-a.F + v.T(s) + m v^2/2)|.
  double finite_energy_shift_residual(const std::vector<double>& a,
                                      const std::vector<double>& v,
                                      const PhaseState& s) const;

 private:
  double mass_ = 1.0;
  std::vector<double> force_;
  SystemSpec sys_;
};

ConstantForceModel constant_force_system(double mass, std::vector<double> force);

/// Parameter bag used by the CLI registry.
struct ModelParams {
  std::map<std::string, double> scalars;
  std::map<std::string, std::vector<double>> vectors;
};

/// Model instance plus the named pieces the verification suites consume.
struct ModelBundle {
  SystemSpec sys;
  std::vector<Observable> charges;  // conserved observables incl. H last
  std::function<std::vector<Transformation>(double lambda)> transformations;
  PhaseState default_initial;
};

ModelBundle instantiate(const std::string& name, const ModelParams& params);
std::vector<std::string> model_names();

}  // namespace nlab::models
