#include "nlab/poisson.hpp"

#include <cmath>

#include "nlab/parallel.hpp"

namespace nlab::poisson {

namespace {

double contract(const GradResult& gf, const GradResult& gg) {
  double acc = 0.0;
  for (std::size_t i = 0; i < gf.d_q.size(); ++i)
    acc += gf.d_q[i] * gg.d_p[i] - gf.d_p[i] * gg.d_q[i];
  return acc;
}

void require_same_dim(const Observable& f, const Observable& g) {
  if (f.dim() != g.dim())
    fail(ErrorCode::DimensionMismatch,
         "bracket of '" + f.label() + "' (dim " + std::to_string(f.dim()) +
             ") with '" + g.label() + "' (dim " + std::to_string(g.dim()) + ")");
}

}  // namespace

double bracket(const Observable& f, const Observable& g, const PhaseState& s) {
  require_same_dim(f, g);
  return contract(grad(f, s), grad(g, s));
}

std::complex<double> bracket(const ComplexObservable& f,
                             const ComplexObservable& g, const PhaseState& s) {
  const double rr = bracket(f.re, g.re, s);
  const double ii = bracket(f.im, g.im, s);
  const double ri = bracket(f.re, g.im, s);
  const double ir = bracket(f.im, g.re, s);
  return {rr - ii, ri + ir};
}

double bracket_fd(const Observable& f, const Observable& g,
                  const PhaseState& s, double h) {
  require_same_dim(f, g);
  return contract(fd_grad(f, s, h), fd_grad(g, s, h));
}

double total_derivative(const Observable& f, const SystemSpec& sys,
                        const PhaseState& s) {
  if (f.dim() != sys.dim)
    fail(ErrorCode::DimensionMismatch,
         "total_derivative: '" + f.label() + "' vs system '" + sys.name + "'");
  const GradResult gf = grad(f, s);
  const GradResult gh = grad(sys.hamiltonian, s);
  return gf.d_t + contract(gf, gh);
}

std::complex<double> total_derivative(const ComplexObservable& f,
                                      const SystemSpec& sys,
                                      const PhaseState& s) {
  return {total_derivative(f.re, sys, s), total_derivative(f.im, sys, s)};
}

Observable bracket_observable(const Observable& g, const Observable& h) {
  require_same_dim(g, h);
  return Observable("{" + g.label() + "," + h.label() + "}", g.dim(),
                    RealFn([g, h](const PhaseState& s) {
                      return bracket(g, h, s);
                    }));
}

double jacobi_residual(const Observable& f, const Observable& g,
                       const Observable& h, const PhaseState& s) {
  const double step = defaults::nested_bracket_step;
  auto outer = [&](const Observable& a, const Observable& inner_lhs,
                   const Observable& inner_rhs) {
    const Observable inner = bracket_observable(inner_lhs, inner_rhs);
    return contract(grad(a, s), fd_grad(inner, s, step));
  };
  const double r =
      outer(f, g, h) + outer(g, h, f) + outer(h, f, g);
  if (!std::isfinite(r))
    fail(ErrorCode::NonFinite, "jacobi_residual produced a non-finite value");
  return std::abs(r);
}

BracketTable bracket_table(std::span<const Observable> obs,
                           const PhaseState& s) {
  const std::size_t n = obs.size();
  for (const Observable& o : obs)
    if (o.dim() != s.dim())
      fail(ErrorCode::DimensionMismatch,
           "bracket_table: '" + o.label() + "' does not match state dimension");

  std::vector<GradResult> grads(n);
  for (std::size_t i = 0; i < n; ++i) grads[i] = grad(obs[i], s);

  BracketTable table;
  table.state = s;
  table.labels.reserve(n);
  for (const Observable& o : obs) table.labels.push_back(o.label());
  table.values.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = contract(grads[i], grads[j]);
      table.values[i][j] = v;
      table.values[j][i] = -v;
    }
  return table;
}

ClosureReport closure_check(std::span<const Observable> obs,
                            const SystemSpec& sys,
                            std::span<const PhaseState> states, double tol) {
  for (const Observable& o : obs) {
    double worst = 0.0;
    for (const PhaseState& s : states)
      worst = std::max(worst, std::abs(total_derivative(o, sys, s)));
    if (worst > tol)
      fail(ErrorCode::PrecheckFailed,
           "closure_check: input '" + o.label() +
               "' is not conserved (max residual " + std::to_string(worst) + ")");
  }

  const std::size_t n = obs.size();
  std::vector<ClosurePair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      pairs.push_back({static_cast<int>(i), static_cast<int>(j), 0.0});

  // Each pair scans all states independently.
  std::vector<double> residuals = parallel::map<double>(
      static_cast<std::int64_t>(pairs.size()), [&](std::int64_t k) {
        const ClosurePair& pr = pairs[static_cast<std::size_t>(k)];
        const Observable b = bracket_observable(obs[pr.i], obs[pr.j]);
        double worst = 0.0;
        for (const PhaseState& s : states)
          worst = std::max(worst, std::abs(total_derivative(b, sys, s)));
        return worst;
      });

  ClosureReport report;
  report.pairs = std::move(pairs);
  for (std::size_t k = 0; k < report.pairs.size(); ++k) {
    report.pairs[k].max_residual = residuals[k];
    report.worst = std::max(report.worst, residuals[k]);
  }
  report.passed = report.worst < tol;
  return report;
}

}  // namespace nlab::poisson
