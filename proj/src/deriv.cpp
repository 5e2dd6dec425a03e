#include "nlab/deriv.hpp"

#include <cmath>

namespace nlab {

namespace {

void require_dim(const Observable& f, const PhaseState& s) {
  if (f.dim() != s.dim())
    fail(ErrorCode::DimensionMismatch,
         "gradient of '" + f.label() + "': observable dimension " +
             std::to_string(f.dim()) + " vs state dimension " +
             std::to_string(s.dim()));
}

void require_finite(double x, const Observable& f) {
  if (!std::isfinite(x))
    fail(ErrorCode::NonFinite, "observable '" + f.label() +
                                   "' produced a non-finite value");
}

// Evaluate f along one shifted coordinate; slot: 0..d-1 -> q, d..2d-1 -> p,
// 2d -> t.
double eval_shifted(const Observable& f, const PhaseState& s, int slot,
                    double delta) {
  PhaseState sh = s;
  const int d = s.dim();
  if (slot < d)
    sh.q[slot] += delta;
  else if (slot < 2 * d)
    sh.p[slot - d] += delta;
  else
    sh.t += delta;
  return f(sh);
}

GradResult grad_dual(const Observable& f, const PhaseState& s) {
  const int d = s.dim();
  const std::size_t width = 2 * static_cast<std::size_t>(d) + 1;
  DualState ds;
  ds.q.reserve(d);
  ds.p.reserve(d);
  for (int i = 0; i < d; ++i) ds.q.emplace_back(s.q[i], width, i);
  for (int i = 0; i < d; ++i) ds.p.emplace_back(s.p[i], width, d + i);
  ds.t = Dual(s.t, width, 2 * d);

  const Dual r = f.eval_dual(ds);
  require_finite(r.value(), f);

  GradResult g;
  g.value = r.value();
  g.d_q.assign(d, 0.0);
  g.d_p.assign(d, 0.0);
  if (!r.constant()) {
    for (int i = 0; i < d; ++i) g.d_q[i] = r.derivs()[i];
    for (int i = 0; i < d; ++i) g.d_p[i] = r.derivs()[d + i];
    g.d_t = r.derivs()[2 * d];
  }
  for (double x : g.d_q) require_finite(x, f);
  for (double x : g.d_p) require_finite(x, f);
  require_finite(g.d_t, f);
  return g;
}

// 4th-order central stencil (exact on cubics), for fields without duals.
GradResult grad_fd4(const Observable& f, const PhaseState& s) {
  const int d = s.dim();
  const double h = defaults::derived_field_step;
  GradResult g;
  g.value = f(s);
  require_finite(g.value, f);
  g.d_q.assign(d, 0.0);
  g.d_p.assign(d, 0.0);
  auto stencil = [&](int slot) {
    const double f2p = eval_shifted(f, s, slot, 2 * h);
    const double f1p = eval_shifted(f, s, slot, h);
    const double f1m = eval_shifted(f, s, slot, -h);
    const double f2m = eval_shifted(f, s, slot, -2 * h);
    return (f2m - 8.0 * f1m + 8.0 * f1p - f2p) / (12.0 * h);
  };
  for (int i = 0; i < d; ++i) g.d_q[i] = stencil(i);
  for (int i = 0; i < d; ++i) g.d_p[i] = stencil(d + i);
  g.d_t = stencil(2 * d);
  for (double x : g.d_q) require_finite(x, f);
  for (double x : g.d_p) require_finite(x, f);
  require_finite(g.d_t, f);
  return g;
}

}  // namespace

GradResult grad(const Observable& f, const PhaseState& s) {
  require_dim(f, s);
  return f.has_dual() ? grad_dual(f, s) : grad_fd4(f, s);
}

GradResult fd_grad(const Observable& f, const PhaseState& s, double h) {
  require_dim(f, s);
  if (!(h > 0)) fail(ErrorCode::BadValue, "fd_grad: step must be positive");
  const int d = s.dim();
  GradResult g;
  g.value = f(s);
  require_finite(g.value, f);
  g.d_q.assign(d, 0.0);
  g.d_p.assign(d, 0.0);
  auto central = [&](int slot) {
    return (eval_shifted(f, s, slot, h) - eval_shifted(f, s, slot, -h)) /
           (2.0 * h);
  };
  for (int i = 0; i < d; ++i) g.d_q[i] = central(i);
  for (int i = 0; i < d; ++i) g.d_p[i] = central(d + i);
  g.d_t = central(2 * d);
  for (double x : g.d_q) require_finite(x, f);
  for (double x : g.d_p) require_finite(x, f);
  require_finite(g.d_t, f);
  return g;
}

}  // namespace nlab
