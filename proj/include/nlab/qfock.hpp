#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "nlab/errors.hpp"

namespace nlab::qfock {

/// Operator on the truncated number basis |0..cutoff-1>.
struct FockOp {
  Eigen::MatrixXcd m;
  int cutoff = 0;
  std::string label;
};

struct FockSpaceCtx {
  int cutoff = 16;
  double omega = 1.0;
  double hbar = 1.0;
  double t0 = 0.0;
};

struct LadderOps {
  FockOp a;
  FockOp adag;
  FockOp H;  // hbar * omega * adag a, normal ordered
};

LadderOps ladder_ops(const FockSpaceCtx& ctx);

struct ChargePair {
  FockOp A;     // e^{i omega (t - t0)} a
  FockOp Adag;  // e^{-i omega (t - t0)} adag
};

ChargePair schrodinger_charge(const FockSpaceCtx& ctx, double t);

/// Conjugation by the exact diagonal evolution, e^{iHt/hbar} op e^{-iHt/hbar}.
FockOp heisenberg(const FockOp& op, const FockSpaceCtx& ctx, double t);

/// Evolution operator e^{-iHt/hbar}; diagonal, hence exact.
FockOp evolution(const FockSpaceCtx& ctx, double t);

struct SpectrumEntry {
  int j = 0;
  int k = 0;
  double max_block_residual = 0.0;  // |[H, M] - hbar w (j-k) M| on the block
  int level_shift = 0;              // j - k, the energy-level step of the monomial
  bool ladder_structure_ok = false; // nonzero entries only on the j-k band
};

struct SpectrumReport {
  std::vector<SpectrumEntry> entries;
  double worst = 0.0;
};

/// For monomials Adag^j A^k with j <= j_max, k <= k_max, checks the
/// commutator identity [H, M] = hbar w (j - k) M away from the truncation
/// edge and the band structure that moves level n to n + j - k.
SpectrumReport spectrum_action_report(const FockSpaceCtx& ctx, double t,
                                      int j_max, int k_max);

/// Top-left (cutoff-1) x (cutoff-1) block, where truncated identities are exact.
Eigen::MatrixXcd sub_cutoff_block(const Eigen::MatrixXcd& m);

}  // namespace nlab::qfock
