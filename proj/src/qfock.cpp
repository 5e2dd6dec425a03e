#include "nlab/qfock.hpp"

#include <cmath>
#include <complex>

namespace nlab::qfock {

namespace {

using Cplx = std::complex<double>;

void require_ctx(const FockSpaceCtx& ctx) {
  if (ctx.cutoff < 2) fail(ErrorCode::BadValue, "Fock cutoff must be >= 2");
  if (!(ctx.omega > 0)) fail(ErrorCode::BadFrequency, "Fock omega must be positive");
  if (!(ctx.hbar > 0)) fail(ErrorCode::BadValue, "Fock hbar must be positive");
}

}  // namespace

LadderOps ladder_ops(const FockSpaceCtx& ctx) {
  require_ctx(ctx);
  const int n = ctx.cutoff;
  LadderOps ops;
  ops.a.m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) ops.a.m(k - 1, k) = std::sqrt(static_cast<double>(k));
  ops.a.cutoff = n;
  ops.a.label = "a";
  ops.adag.m = ops.a.m.adjoint();
  ops.adag.cutoff = n;
  ops.adag.label = "adag";
  ops.H.m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) ops.H.m(k, k) = ctx.hbar * ctx.omega * k;
  ops.H.cutoff = n;
  ops.H.label = "H";
  return ops;
}

ChargePair schrodinger_charge(const FockSpaceCtx& ctx, double t) {
  const LadderOps ops = ladder_ops(ctx);
  const Cplx phase = std::exp(Cplx(0.0, ctx.omega * (t - ctx.t0)));
  ChargePair c;
  c.A.m = phase * ops.a.m;
  c.A.cutoff = ctx.cutoff;
  c.A.label = "A(t)";
  c.Adag.m = std::conj(phase) * ops.adag.m;
  c.Adag.cutoff = ctx.cutoff;
  c.Adag.label = "Adag(t)";
  return c;
}

FockOp evolution(const FockSpaceCtx& ctx, double t) {
  require_ctx(ctx);
  FockOp u;
  u.m = Eigen::MatrixXcd::Zero(ctx.cutoff, ctx.cutoff);
  // H is diagonal in the number basis, so the exponential is exact entrywise;
  // hbar cancels between H and the exponent.
  for (int k = 0; k < ctx.cutoff; ++k)
    u.m(k, k) = std::exp(Cplx(0.0, -ctx.omega * k * t));
  u.cutoff = ctx.cutoff;
  u.label = "U(t)";
  return u;
}

FockOp heisenberg(const FockOp& op, const FockSpaceCtx& ctx, double t) {
  require_ctx(ctx);
  if (op.cutoff != ctx.cutoff)
    fail(ErrorCode::DimensionMismatch, "heisenberg: operator cutoff " +
                                           std::to_string(op.cutoff) +
                                           " vs context cutoff " +
                                           std::to_string(ctx.cutoff));
  FockOp out;
  out.m = op.m;
  for (int r = 0; r < ctx.cutoff; ++r)
    for (int c = 0; c < ctx.cutoff; ++c)
      out.m(r, c) *= std::exp(Cplx(0.0, ctx.omega * (r - c) * t));
  out.cutoff = ctx.cutoff;
  out.label = op.label + "_H";
  return out;
}

Eigen::MatrixXcd sub_cutoff_block(const Eigen::MatrixXcd& m) {
  return m.topLeftCorner(m.rows() - 1, m.cols() - 1);
}

SpectrumReport spectrum_action_report(const FockSpaceCtx& ctx, double t,
                                      int j_max, int k_max) {
  require_ctx(ctx);
  if (j_max < 0 || k_max < 0)
    fail(ErrorCode::BadValue, "spectrum_action_report: negative monomial degree");
  if (j_max + k_max >= ctx.cutoff - 1)
    fail(ErrorCode::CutoffTooSmall,
         "monomial degree " + std::to_string(j_max + k_max) +
             " needs cutoff > " + std::to_string(j_max + k_max + 1));

  const ChargePair c = schrodinger_charge(ctx, t);
  const LadderOps ops = ladder_ops(ctx);

  SpectrumReport report;
  for (int j = 0; j <= j_max; ++j) {
    for (int k = 0; k <= k_max; ++k) {
      Eigen::MatrixXcd mono = Eigen::MatrixXcd::Identity(ctx.cutoff, ctx.cutoff);
      for (int r = 0; r < j; ++r) mono = c.Adag.m * mono;
      for (int r = 0; r < k; ++r) mono = mono * c.A.m;

      const Eigen::MatrixXcd comm = ops.H.m * mono - mono * ops.H.m;
      const Eigen::MatrixXcd target = ctx.hbar * ctx.omega * (j - k) * mono;
      const double resid =
          (sub_cutoff_block(comm) - sub_cutoff_block(target)).cwiseAbs().maxCoeff();

      bool band_ok = true;
      for (int r = 0; r < ctx.cutoff - 1 && band_ok; ++r)
        for (int col = 0; col < ctx.cutoff - 1; ++col)
          if (r - col != j - k && std::abs(mono(r, col)) > 1e-14) {
            band_ok = false;
            break;
          }

      report.entries.push_back({j, k, resid, j - k, band_ok});
      report.worst = std::max(report.worst, resid);
    }
  }
  return report;
}

}  // namespace nlab::qfock
