#include "nlab/phasespace.hpp"

#include <cmath>
#include <random>

namespace nlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PrecheckFailed: return "PrecheckFailed";
    case ErrorCode::GeneratorMismatch: return "GeneratorMismatch";
    case ErrorCode::BadFrequency: return "BadFrequency";
    case ErrorCode::ZeroModeUnsupported: return "ZeroModeUnsupported";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::ZeroForce: return "ZeroForce";
    case ErrorCode::OffGrid: return "OffGrid";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::IncommensurateShift: return "IncommensurateShift";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::AliasedPhase: return "AliasedPhase";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Observable::Observable(std::string label, int dim, DualFn f)
    : label_(std::move(label)), dim_(dim), dual_fn_(std::move(f)) {
  real_fn_ = [fn = dual_fn_](const PhaseState& s) {
    DualState ds;
    ds.q.assign(s.q.begin(), s.q.end());
    ds.p.assign(s.p.begin(), s.p.end());
    ds.t = Dual(s.t);
    return fn(ds).value();
  };
}

Observable::Observable(std::string label, int dim, RealFn f)
    : label_(std::move(label)), dim_(dim), real_fn_(std::move(f)) {}

double Observable::operator()(const PhaseState& s) const {
  if (s.dim() != dim_)
    fail(ErrorCode::DimensionMismatch,
         "observable '" + label_ + "' expects dimension " +
             std::to_string(dim_) + ", got " + std::to_string(s.dim()));
  return real_fn_(s);
}

Dual Observable::eval_dual(const DualState& s) const { return dual_fn_(s); }

namespace {

Observable combine(const std::string& label, const Observable& a,
                   const Observable& b, double sa, double sb, bool product) {
  const int dim = a.dim();
  if (a.dim() != b.dim())
    fail(ErrorCode::DimensionMismatch,
         "cannot combine observables of dimensions " +
             std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  if (a.has_dual() && b.has_dual()) {
    if (product)
      return Observable(label, dim, DualFn([a, b](const DualState& s) {
                          return a.eval_dual(s) * b.eval_dual(s);
                        }));
    return Observable(label, dim, DualFn([a, b, sa, sb](const DualState& s) {
                        return Dual(sa) * a.eval_dual(s) +
                               Dual(sb) * b.eval_dual(s);
                      }));
  }
  if (product)
    return Observable(label, dim,
                      RealFn([a, b](const PhaseState& s) { return a(s) * b(s); }));
  return Observable(label, dim, RealFn([a, b, sa, sb](const PhaseState& s) {
                      return sa * a(s) + sb * b(s);
                    }));
}

}  // namespace

Observable operator+(const Observable& a, const Observable& b) {
  return combine(a.label() + "+" + b.label(), a, b, 1.0, 1.0, false);
}
Observable operator-(const Observable& a, const Observable& b) {
  return combine(a.label() + "-" + b.label(), a, b, 1.0, -1.0, false);
}
Observable operator*(const Observable& a, const Observable& b) {
  return combine(a.label() + "*" + b.label(), a, b, 0.0, 0.0, true);
}
Observable operator*(double c, const Observable& a) {
  if (a.has_dual())
    return Observable(a.label(), a.dim(), DualFn([c, a](const DualState& s) {
                        return Dual(c) * a.eval_dual(s);
                      }));
  return Observable(a.label(), a.dim(),
                    RealFn([c, a](const PhaseState& s) { return c * a(s); }));
}
Observable operator+(const Observable& a, double c) {
  if (a.has_dual())
    return Observable(a.label(), a.dim(), DualFn([c, a](const DualState& s) {
                        return a.eval_dual(s) + Dual(c);
                      }));
  return Observable(a.label(), a.dim(),
                    RealFn([c, a](const PhaseState& s) { return a(s) + c; }));
}

PhaseState make_state(std::vector<double> q, std::vector<double> p, double t) {
  if (q.size() != p.size())
    fail(ErrorCode::DimensionMismatch,
         "q has length " + std::to_string(q.size()) + ", p has length " +
             std::to_string(p.size()));
  auto finite = [](double x) { return std::isfinite(x); };
  for (double x : q)
    if (!finite(x)) fail(ErrorCode::NonFinite, "non-finite entry in q");
  for (double x : p)
    if (!finite(x)) fail(ErrorCode::NonFinite, "non-finite entry in p");
  if (!finite(t)) fail(ErrorCode::NonFinite, "non-finite time");
  return PhaseState{std::move(q), std::move(p), t};
}

std::vector<PhaseState> sample_states(int dim, int n, std::uint64_t seed,
                                      double box) {
  if (n <= 0) fail(ErrorCode::BadValue, "sample_states: n must be positive");
  if (box <= 0) fail(ErrorCode::BadValue, "sample_states: box must be positive");
  std::mt19937_64 rng(seed);
  // Fixed bit-to-double mapping keeps the stream identical across platforms.
  auto unit = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  std::vector<PhaseState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    PhaseState s;
    s.q.resize(dim);
    s.p.resize(dim);
    for (int i = 0; i < dim; ++i) s.q[i] = box * (2.0 * unit() - 1.0);
    for (int i = 0; i < dim; ++i) s.p[i] = box * (2.0 * unit() - 1.0);
    s.t = box * unit();
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace nlab
