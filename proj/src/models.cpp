#include "nlab/models.hpp"

#include <cmath>
#include <numbers>

#include "nlab/noether.hpp"

namespace nlab::models {

namespace {

std::string idx(const std::string& base, int i) {
  return base + std::to_string(i);
}

}  // namespace

HarmonicModel::HarmonicModel(std::vector<double> omegas, double t0)
    : omegas_(std::move(omegas)), t0_(t0) {
  if (omegas_.empty())
    fail(ErrorCode::BadValue, "harmonic model needs at least one frequency");
  for (double w : omegas_)
    if (!(w > 0))
      fail(ErrorCode::BadFrequency,
           "harmonic model: all frequencies must be positive");

  const int d = static_cast<int>(omegas_.size());
  sys_.name = "harmonic";
  sys_.dim = d;
  sys_.separable = true;
  sys_.params["t0"] = t0_;
  sys_.params["hbar"] = 1.0;
  for (int i = 0; i < d; ++i) sys_.params[idx("omega", i)] = omegas_[i];
  const std::vector<double> ws = omegas_;
  sys_.hamiltonian = Observable("H", d, DualFn([ws, d](const DualState& s) {
                                  Dual acc(0.0);
                                  for (int i = 0; i < d; ++i)
                                    acc = acc + Dual(0.5) * s.p[i] * s.p[i] +
                                          Dual(0.5 * ws[i] * ws[i]) * s.q[i] * s.q[i];
                                  return acc;
                                }));
}

ComplexObservable HarmonicModel::charge(int alpha) const {
  const double w = omega(alpha);
  const double t0 = t0_;
  const double c = std::sqrt(w / 2.0);
  const int d = sys_.dim;
  // A(t) = e^{i w (t-t0)} sqrt(w/2) (q + i p/w), split into real parts.
  Observable re(idx("ReA", alpha), d, DualFn([w, t0, c, alpha](const DualState& s) {
                  const Dual th = Dual(w) * (s.t - Dual(t0));
                  return Dual(c) * (s.q[alpha] * cos(th) -
                                    s.p[alpha] / Dual(w) * sin(th));
                }));
  Observable im(idx("ImA", alpha), d, DualFn([w, t0, c, alpha](const DualState& s) {
                  const Dual th = Dual(w) * (s.t - Dual(t0));
                  return Dual(c) * (s.q[alpha] * sin(th) +
                                    s.p[alpha] / Dual(w) * cos(th));
                }));
  return ComplexObservable{std::move(re), std::move(im), idx("A", alpha)};
}

Observable HarmonicModel::hamiltonian_from_charges() const {
  Observable acc = omegas_[0] * (charge(0).re * charge(0).re + charge(0).im * charge(0).im);
  for (int a = 1; a < modes(); ++a) {
    const ComplexObservable A = charge(a);
    acc = acc + omegas_[a] * (A.re * A.re + A.im * A.im);
  }
  return Observable("H[charges]", sys_.dim,
                    DualFn([acc](const DualState& s) { return acc.eval_dual(s); }));
}

HarmonicModel harmonic_system(std::vector<double> omegas, double t0) {
  return HarmonicModel(std::move(omegas), t0);
}

LatticeScalarModel::LatticeScalarModel(int n_sites, double mu, double spacing,
                                       double t0)
    : n_(n_sites),
      mu_(mu),
      a_(spacing),
      core_([&] {
        if (n_sites < 1) fail(ErrorCode::BadValue, "lattice: n_sites must be >= 1");
        if (!(spacing > 0)) fail(ErrorCode::BadValue, "lattice: spacing must be positive");
        if (!(mu > 0))
          fail(ErrorCode::ZeroModeUnsupported,
               "lattice: mu = 0 gives a zero mode whose Fock normalisation degenerates");
        std::vector<double> ws(n_sites);
        for (int k = 0; k < n_sites; ++k) {
          const double s = std::sin(std::numbers::pi * k / n_sites);
          ws[k] = std::sqrt(mu * mu + 4.0 / (spacing * spacing) * s * s);
        }
        return HarmonicModel(std::move(ws), t0);
      }()) {
  map_.resize(n_);
  const double pi = std::numbers::pi;
  for (int k = 0; k < n_; ++k) {
    ModeInfo info;
    info.index = k;
    info.wavenumber = (2 * k <= n_) ? k : k - n_;
    info.is_sin = 2 * k > n_;
    info.omega = core_.omega(k);
    info.profile.resize(n_);
    for (int j = 0; j < n_; ++j) {
      if (k == 0) {
        info.profile[j] = 1.0 / std::sqrt(static_cast<double>(n_));
      } else if (2 * k == n_) {
        info.profile[j] = (j % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(n_));
      } else if (!info.is_sin) {
        info.profile[j] = std::sqrt(2.0 / n_) * std::cos(2.0 * pi * k * j / n_);
      } else {
        info.profile[j] = std::sqrt(2.0 / n_) * std::sin(2.0 * pi * (n_ - k) * j / n_);
      }
    }
    map_[k] = std::move(info);
  }
}

Observable LatticeScalarModel::site_hamiltonian() const {
  const int n = n_;
  const double mu = mu_;
  const double a = a_;
  const auto map = map_;
  return Observable("H[site]", n, DualFn([n, mu, a, map](const DualState& s) {
    std::vector<Dual> phi(n), pi(n);
    for (int j = 0; j < n; ++j) {
      Dual fq(0.0), fp(0.0);
      for (int k = 0; k < n; ++k) {
        fq = fq + Dual(map[k].profile[j]) * s.q[k];
        fp = fp + Dual(map[k].profile[j]) * s.p[k];
      }
      phi[j] = fq;
      pi[j] = fp;
    }
    Dual acc(0.0);
    for (int j = 0; j < n; ++j) {
      const Dual grad = (phi[(j + 1) % n] - phi[j]) / Dual(a);
      acc = acc + Dual(0.5) * pi[j] * pi[j] + Dual(0.5 * mu * mu) * phi[j] * phi[j] +
            Dual(0.5) * grad * grad;
    }
    return acc;
  }));
}

Observable LatticeScalarModel::momentum_charge() const {
  Observable acc("P", n_, DualFn([](const DualState&) { return Dual(0.0); }));
  for (int k = 0; k < n_; ++k) {
    if (map_[k].wavenumber == 0) continue;
    const ComplexObservable A = core_.charge(k);
    acc = acc + static_cast<double>(map_[k].wavenumber) * (A.re * A.re + A.im * A.im);
  }
  return Observable("P", n_, DualFn([acc](const DualState& s) { return acc.eval_dual(s); }));
}

LatticeScalarModel lattice_scalar_system(int n_sites, double mu, double spacing,
                                         double t0) {
  return LatticeScalarModel(n_sites, mu, spacing, t0);
}

ConstantForceModel::ConstantForceModel(double mass, std::vector<double> force)
    : mass_(mass), force_(std::move(force)) {
  if (!(mass_ > 0)) fail(ErrorCode::BadValue, "constant force model: mass must be positive");
  if (force_.empty()) fail(ErrorCode::BadValue, "constant force model: dimension must be >= 1");
  for (double f : force_)
    if (!std::isfinite(f)) fail(ErrorCode::NonFinite, "constant force model: force must be finite");

  const int d = dim();
  const double m = mass_;
  const std::vector<double> F = force_;
  sys_.name = "constant_force";
  sys_.dim = d;
  sys_.separable = true;
  sys_.params["m"] = m;
  sys_.params["hbar"] = 1.0;
  for (int i = 0; i < d; ++i) sys_.params[idx("F", i)] = F[i];
  sys_.hamiltonian = Observable("H", d, DualFn([m, F, d](const DualState& s) {
                                  Dual acc(0.0);
                                  for (int i = 0; i < d; ++i)
                                    acc = acc + s.p[i] * s.p[i] / Dual(2.0 * m) -
                                          s.q[i] * Dual(F[i]);
                                  return acc;
                                }));
}

Observable ConstantForceModel::translation_charge(int axis) const {
  const double f = force_.at(axis);
  return Observable(idx("T", axis), dim(), DualFn([axis, f](const DualState& s) {
                      return s.p[axis] - s.t * Dual(f);
                    }));
}

Observable ConstantForceModel::boost_charge(int axis) const {
  const double f = force_.at(axis);
  const double m = mass_;
  return Observable(idx("gamma", axis), dim(), DualFn([axis, f, m](const DualState& s) {
                      return Dual(-m) * s.q[axis] + s.t * s.p[axis] -
                             Dual(0.5) * s.t * s.t * Dual(f);
                    }));
}

Observable ConstantForceModel::rotation_charge(int i, int j) const {
  const int d = dim();
  if (d < 3)
    fail(ErrorCode::BadDimension,
         "rotation charges need dimension >= 3, model has " + std::to_string(d));
  if (i < 0 || j < 0 || i >= d || j >= d || i == j)
    fail(ErrorCode::BadValue, "rotation charge: bad plane indices");

  double norm2 = 0.0;
  for (double f : force_) norm2 += f * f;
  std::vector<double> u(d, 0.0);
  if (norm2 > 0)
    for (int k = 0; k < d; ++k) u[k] = force_[k] / std::sqrt(norm2);

  // Components perpendicular to F when F != 0; the full plane otherwise.
  return Observable("L" + std::to_string(i) + std::to_string(j), d,
                    DualFn([i, j, u, d](const DualState& s) {
                      Dual qu(0.0), pu(0.0);
                      for (int k = 0; k < d; ++k) {
                        qu = qu + Dual(u[k]) * s.q[k];
                        pu = pu + Dual(u[k]) * s.p[k];
                      }
                      const Dual qi = s.q[i] - Dual(u[i]) * qu;
                      const Dual qj = s.q[j] - Dual(u[j]) * qu;
                      const Dual pi = s.p[i] - Dual(u[i]) * pu;
                      const Dual pj = s.p[j] - Dual(u[j]) * pu;
                      return qi * pj - qj * pi;
                    }));
}

Observable ConstantForceModel::hamiltonian_from_charges() const {
  const int d = dim();
  const double m = mass_;
  const std::vector<double> F = force_;
  const auto model = *this;
  return Observable("H[charges]", d, DualFn([model, m, F, d](const DualState& s) {
                      Dual acc(0.0);
                      for (int i = 0; i < d; ++i) {
                        const Dual Ti = model.translation_charge(i).eval_dual(s);
                        const Dual gi = model.boost_charge(i).eval_dual(s);
                        acc = acc + Ti * Ti / Dual(2.0 * m) + Dual(F[i] / m) * gi;
                      }
                      return acc;
                    }));
}

Transformation ConstantForceModel::translation(int axis, double lambda) const {
  const int d = dim();
  const double f = force_.at(axis);
  Transformation tr;
  tr.label = idx("translation", axis);
  tr.dim = d;
  tr.lambda = lambda;
  for (int a = 0; a < d; ++a) {
    const double delta = (a == axis) ? 1.0 : 0.0;
    tr.phi.push_back(Observable(idx("phi", a), d, DualFn([delta](const DualState&) {
                                  return Dual(delta);
                                })));
    tr.chi.push_back(Observable(idx("chi", a), d, DualFn([](const DualState&) {
                                  return Dual(0.0);
                                })));
  }
  tr.surface = Observable("Lambda", d, DualFn([axis, f, lambda](const DualState& s) {
                            return Dual(-(1.0 - lambda)) * s.p[axis] + s.t * Dual(f);
                          }));
  return tr;
}

Transformation ConstantForceModel::boost(int axis, double lambda) const {
  const int d = dim();
  const double f = force_.at(axis);
  const double m = mass_;
  Transformation tr;
  tr.label = idx("boost", axis);
  tr.dim = d;
  tr.lambda = lambda;
  for (int a = 0; a < d; ++a) {
    const double delta = (a == axis) ? 1.0 : 0.0;
    tr.phi.push_back(Observable(idx("phi", a), d, DualFn([delta](const DualState& s) {
                                  return Dual(delta) * s.t;
                                })));
    tr.chi.push_back(Observable(idx("chi", a), d, DualFn([delta, m](const DualState&) {
                                  return Dual(delta * m);
                                })));
  }
  tr.surface = Observable("Lambda", d, DualFn([axis, f, m, lambda](const DualState& s) {
                            return Dual(lambda * m) * s.q[axis] -
                                   Dual(1.0 - lambda) * s.t * s.p[axis] +
                                   Dual(0.5) * s.t * s.t * Dual(f);
                          }));
  return tr;
}

PhaseState ConstantForceModel::finite_map(const std::vector<double>& a,
                                          const std::vector<double>& v,
                                          const PhaseState& s) const {
  const int d = dim();
  if (static_cast<int>(a.size()) != d || static_cast<int>(v.size()) != d ||
      s.dim() != d)
    fail(ErrorCode::DimensionMismatch, "finite_map: dimension mismatch");
  PhaseState out = s;
  for (int i = 0; i < d; ++i) {
    out.q[i] = s.q[i] + a[i] + s.t * v[i];
    out.p[i] = s.p[i] + mass_ * v[i];
  }
  return out;
}

double ConstantForceModel::finite_energy_shift_residual(
    const std::vector<double>& a, const std::vector<double>& v,
    const PhaseState& s) const {
  const PhaseState mapped = finite_map(a, v, s);
  const double lhs = sys_.hamiltonian(mapped) - sys_.hamiltonian(s);
  double rhs = 0.0;
  double v2 = 0.0;
  for (int i = 0; i < dim(); ++i) {
    rhs += -a[i] * force_[i] + v[i] * (s.p[i] - s.t * force_[i]);
    v2 += v[i] * v[i];
  }
  rhs += 0.5 * mass_ * v2;
  return std::abs(lhs - rhs);
}

ConstantForceModel constant_force_system(double mass, std::vector<double> force) {
  return ConstantForceModel(mass, std::move(force));
}

namespace {

double scalar_or(const ModelParams& p, const std::string& key, double fallback) {
  auto it = p.scalars.find(key);
  return it == p.scalars.end() ? fallback : it->second;
}

ModelBundle bundle_constant_force(const ModelParams& params) {
  const double m = scalar_or(params, "m", 1.0);
  std::vector<double> F{2.0};
  if (auto it = params.vectors.find("F"); it != params.vectors.end()) F = it->second;
  ConstantForceModel model(m, F);
  const int d = model.dim();

  ModelBundle b;
  b.sys = model.system();
  b.sys.params["hbar"] = scalar_or(params, "hbar", 1.0);
  for (int i = 0; i < d; ++i) b.charges.push_back(model.translation_charge(i));
  for (int i = 0; i < d; ++i) b.charges.push_back(model.boost_charge(i));
  b.charges.push_back(model.system().hamiltonian);
  b.transformations = [model](double lambda) {
    std::vector<Transformation> trs;
    for (int i = 0; i < model.dim(); ++i) {
      trs.push_back(model.translation(i, lambda));
      trs.push_back(model.boost(i, lambda));
    }
    return trs;
  };
  std::vector<double> q0(d), p0(d);
  for (int i = 0; i < d; ++i) {
    q0[i] = 0.3 + 0.1 * i;
    p0[i] = -0.4 + 0.2 * i;
  }
  b.default_initial = make_state(q0, p0, 0.0);
  return b;
}

ModelBundle bundle_harmonic(const ModelParams& params) {
  std::vector<double> omegas{1.0};
  if (auto it = params.vectors.find("omega"); it != params.vectors.end())
    omegas = it->second;
  HarmonicModel model(omegas, scalar_or(params, "t0", 0.0));
  const int d = model.modes();

  ModelBundle b;
  b.sys = model.system();
  b.sys.params["hbar"] = scalar_or(params, "hbar", 1.0);
  for (int a = 0; a < d; ++a) {
    const ComplexObservable A = model.charge(a);
    b.charges.push_back(A.re);
    b.charges.push_back(A.im);
  }
  b.charges.push_back(model.system().hamiltonian);
  b.transformations = [model, d](double lambda) {
    std::vector<Transformation> trs;
    for (int a = 0; a < d; ++a) {
      const ComplexObservable A = model.charge(a);
      trs.push_back(noether::converse_transform(A.re, lambda));
      trs.push_back(noether::converse_transform(A.im, lambda));
    }
    return trs;
  };
  std::vector<double> q0(d, 0.0), p0(d, 0.0);
  for (int a = 0; a < d; ++a) {
    q0[a] = 1.0 / (1.0 + a);
    p0[a] = 0.25 * a;
  }
  b.default_initial = make_state(q0, p0, 0.0);
  return b;
}

ModelBundle bundle_lattice(const ModelParams& params) {
  const int n = static_cast<int>(scalar_or(params, "n_sites", 4.0));
  LatticeScalarModel model(n, scalar_or(params, "mu", 1.0),
                           scalar_or(params, "spacing", 1.0),
                           scalar_or(params, "t0", 0.0));

  ModelBundle b;
  b.sys = model.system();
  b.sys.name = "lattice_scalar";
  b.sys.params["hbar"] = scalar_or(params, "hbar", 1.0);
  for (int k = 0; k < n; ++k) {
    const ComplexObservable A = model.normal_modes().charge(k);
    b.charges.push_back(A.re);
    b.charges.push_back(A.im);
  }
  b.charges.push_back(model.momentum_charge());
  b.charges.push_back(model.system().hamiltonian);
  const HarmonicModel core = model.normal_modes();
  b.transformations = [core, n](double lambda) {
    std::vector<Transformation> trs;
    for (int k = 0; k < n; ++k) {
      const ComplexObservable A = core.charge(k);
      trs.push_back(noether::converse_transform(A.re, lambda));
    }
    return trs;
  };
  std::vector<double> q0(n, 0.0), p0(n, 0.0);
  for (int k = 0; k < n; ++k) q0[k] = 0.5 / (1.0 + k);
  b.default_initial = make_state(q0, p0, 0.0);
  return b;
}

}  // namespace

ModelBundle instantiate(const std::string& name, const ModelParams& params) {
  if (name == "constant_force") return bundle_constant_force(params);
  if (name == "harmonic") return bundle_harmonic(params);
  if (name == "lattice_scalar") return bundle_lattice(params);
  fail(ErrorCode::BadValue, "unknown model '" + name + "'");
}

std::vector<std::string> model_names() {
  return {"constant_force", "harmonic", "lattice_scalar"};
}

}  // namespace nlab::models
