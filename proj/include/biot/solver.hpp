// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_SOLVER_HPP
#define BIOT_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/SparseCholesky>

#include "biot/reduction.hpp"
#include "biot/system.hpp"

namespace biot
{

/// Sparse LU with iterative refinement. Throws SolverError for a singular
/// matrix; the message points at the DOF where the null vector concentrates.
Vector direct_solve(const SparseMatrix &matrix, const Vector &rhs);

using LinearOperator = std::function<Vector(const Vector &)>;

struct SolveReport
{
  bool converged = false;
  int iterations = 0;
  /// Preconditioned residual norm relative to its initial value.
  double relative_residual = 0.0;
  double wall_seconds = 0.0;
  /// Signed extremes of the Ritz values of the preconditioned operator.
  double ritz_low = 0.0;
  double ritz_high = 0.0;
  /// Smallest and largest Ritz value in magnitude.
  double ritz_abs_min = 0.0;
  double ritz_abs_max = 0.0;
  double condition_estimate = 0.0;
  std::string message;
};

struct MinresOptions
{
  double tol = 1e-10;
  int max_iter = 1000;
  bool check_symmetry = true;
  std::uint64_t probe_seed = 7;
};

struct MinresResult
{
  Vector x;
  SolveReport report;
};

/// Preconditioned MINRES for a symmetric operator and an SPD preconditioner
/// (applied as P, the approximate inverse). Stops when the P-norm of the
/// residual has dropped by tol. Throws SolverError when the symmetry probe
/// fails or P is not positive.
MinresResult minres(const LinearOperator &A, const LinearOperator &P, const Vector &b,
                    const MinresOptions &options = {});
MinresResult minres(const SparseMatrix &A, const LinearOperator &P, const Vector &b,
                    const MinresOptions &options = {});

LinearOperator identity_operator();

/// Block-diagonal SPD operator given through the inverses of its blocks,
/// each applied by a cached sparse Cholesky factorization.
class BlockPreconditioner
{
public:
  /// Throws SolverError when a block is not SPD.
  explicit BlockPreconditioner(std::vector<SparseMatrix> inverse_blocks);

  Index size() const { return offsets_.back(); }
  int num_blocks() const { return static_cast<int>(inverse_.size()); }
  const SparseMatrix &block_inverse(int i) const { return inverse_[i]; }
  /// P^{-1} assembled as one block-diagonal matrix.
  SparseMatrix inverse_matrix() const;

  Vector apply(const Vector &f) const;
  LinearOperator as_operator() const;

private:
  using Factor = Eigen::SimplicialLLT<SparseMatrix>;
  std::vector<SparseMatrix> inverse_;
  std::vector<std::shared_ptr<const Factor>> factors_;
  std::vector<Index> offsets_;
};

/// Riesz map of the weighted norm on (r, u, q, p):
///   P_r^-1 = mu^-1 (M_r + curl-curl)
///   P_u^-1 = mu M_u + (2 mu + lambda) div-div
///   P_q^-1 = K^-1 M_q + delta^2 / (eta + c0) div-div
///   P_p^-1 = (eta + c0) M_p
/// Essential DOFs get unit rows. A tensor conductivity uses the lumped
/// tensor mass in P_q.
BlockPreconditioner build_preconditioner(const MixedSpaces &spaces, const MaterialParams &params);

/// P_u and P_p only, for the condensed (u, p) system.
BlockPreconditioner build_condensed_preconditioner(const MixedSpaces &spaces, const MaterialParams &params);

/// Solves a four-field system: symmetrize, then MINRES with the block
/// preconditioner. The returned vector is in the original unknowns.
MinresResult solve_minres(const BlockSystem &sys, const MinresOptions &options = {});

/// Solves a condensed system by MINRES with P_u and P_p.
MinresResult solve_minres(const CondensedSystem &cs, const MinresOptions &options = {});

/// Direct solution of the four-field system, as a state.
FieldState solve_direct(const BlockSystem &sys);
/// Direct solution of the condensed system followed by recovery.
FieldState solve_direct(const CondensedSystem &cs);

struct SweepOptions
{
  int family = 1;
  double tol = 1e-10;
  int max_iter = 500;
  std::uint64_t seed = 20220517;
  /// 0 selects the hardware concurrency, capped by BIOT_MRFEM_THREADS.
  int threads = 0;
  bool lumped = false;
};

struct SweepRow
{
  MaterialParams params;
  int n = 0;
  Index dofs = 0;
  bool ok = false;
  std::string error;
  SolveReport report;
};

/// mu, K in {1e-6, 1, 1e6}, lambda in {0, 1, 1e6}, c0 in {0, 1},
/// alpha in {0, 0.5, 1}, dt in {1e-6, 1}.
std::vector<MaterialParams> default_sweep_grid();

/// Boundary assignment used by the sweep: rotation and flux on left/bottom,
/// displacement and pressure on right/top, zero data.
BoundaryConfig sweep_boundary(const Mesh &mesh);

/// One row per (level, params), levels outermost. Each row solves with a
/// random right-hand side seeded from (seed, row index). Failures are
/// recorded in the row and the sweep continues.
std::vector<SweepRow> parameter_sweep(const std::vector<MaterialParams> &grid, const std::vector<int> &levels,
                                      const SweepOptions &options = {});

/// Worker count: requested (0 = hardware) capped by BIOT_MRFEM_THREADS.
int worker_threads(int requested, std::size_t jobs);

}  // namespace biot

#endif  // BIOT_SOLVER_HPP
