// SPDX-License-Identifier: Apache-2.0

#include "biot/system.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

namespace biot
{

double MaterialParams::delta() const { return std::sqrt(dt); }

double MaterialParams::eta() const
{
  double k = K;
  if (!K_tensor.empty())
  {
    k = 0.0;
    for (const auto &t : K_tensor)
      k = std::max(k, Eigen::SelfAdjointEigenSolver<Matrix2>(t, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff());
  }
  return alpha * alpha / (2.0 * mu + lambda) + dt * k;
}

void MaterialParams::validate() const
{
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(mu) || !(mu > 0.0))
    throw std::invalid_argument("parameter mu must be positive");
  if (!finite(lambda) || lambda < 0.0)
    throw std::invalid_argument("parameter lambda must be non-negative");
  if (!finite(alpha) || alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("parameter alpha must lie in [0, 1]");
  if (!finite(c0) || c0 < 0.0)
    throw std::invalid_argument("parameter c0 must be non-negative");
  if (K_tensor.empty() && (!finite(K) || !(K > 0.0)))
    throw std::invalid_argument("parameter K must be positive");
  for (const auto &t : K_tensor)
  {
    if (!t.allFinite() || t(0, 1) != t(1, 0) || !(t(0, 0) > 0.0) || !(t.determinant() > 0.0))
      throw std::invalid_argument("parameter K tensor must be symmetric positive definite");
  }
  if (!finite(dt) || !(dt > 0.0))
    throw std::invalid_argument("parameter dt must be positive");
  if (!(eta() + c0 > 0.0))
    throw std::invalid_argument("parameters must satisfy eta + c0 > 0");
}

SparseMatrix BlockSystem::matrix() const
{
  const auto off = offsets();
  std::vector<Triplet> triplets;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (Index k = 0; k < blocks[i][j].outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(blocks[i][j], k); it; ++it)
          triplets.emplace_back(off[i] + it.row(), off[j] + it.col(), it.value());
  SparseMatrix m(off[4], off[4]);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

Vector BlockSystem::rhs_vector() const
{
  Vector x(size());
  x << rhs[0], rhs[1], rhs[2], rhs[3];
  return x;
}

void eliminate_coupling(SparseMatrix &block, const std::vector<char> &rows, const std::vector<char> &cols)
{
  block.prune([&](const Index &r, const Index &c, const double &) { return !rows[r] && !cols[c]; });
}

void eliminate_diagonal(SparseMatrix &block, const std::vector<char> &essential)
{
  eliminate_coupling(block, essential, essential);
  std::vector<Triplet> diag;
  for (std::size_t i = 0; i < essential.size(); ++i)
    if (essential[i])
      diag.emplace_back(static_cast<Index>(i), static_cast<Index>(i), 1.0);
  SparseMatrix d(block.rows(), block.cols());
  d.setFromTriplets(diag.begin(), diag.end());
  block = block + d;
  block.makeCompressed();
}

SparseMatrix symmetric_part(const SparseMatrix &a)
{
  SparseMatrix at = a.transpose();
  SparseMatrix s = 0.5 * (a + at);
  s.makeCompressed();
  return s;
}

BlockSystem assemble_biot(std::shared_ptr<const Mesh> mesh, int family, const MaterialParams &params,
                          const BoundaryConfig &bc, const ProblemData &data, bool lumped)
{
  return assemble_biot(build_mixed_spaces(std::move(mesh), family, bc), params, bc, data, lumped);
}

BlockSystem assemble_biot(std::shared_ptr<const MixedSpaces> spaces, const MaterialParams &params,
                          const BoundaryConfig &bc, const ProblemData &data, bool lumped)
{
  params.validate();
  const Mesh &m = *spaces->mesh;
  if (!params.K_tensor.empty())
  {
    if (!lumped)
      throw std::invalid_argument("tensor conductivity requires the lumped system");
    if (static_cast<Index>(params.K_tensor.size()) != m.num_cells())
      throw std::invalid_argument("tensor conductivity needs one entry per cell");
  }

  BlockSystem sys;
  sys.spaces = spaces;
  sys.params = params;
  sys.lumped = lumped;
  sys.ops = assemble_operators(*spaces);
  const OperatorBlocks &ops = sys.ops;
  const double mu = params.mu;
  const double delta = params.delta();

  CellWeight k_inverse = CellWeight::uniform(1.0 / params.K);
  if (!params.K_tensor.empty())
  {
    std::vector<Matrix2> inv(params.K_tensor.size());
    for (std::size_t c = 0; c < inv.size(); ++c)
    {
      inv[c] = params.K_tensor[c].inverse();
      inv[c](1, 0) = inv[c](0, 1);
    }
    k_inverse = CellWeight::tensor(std::move(inv));
  }

  auto &b = sys.blocks;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      b[i][j] = SparseMatrix((*spaces)[i].dof_count(), (*spaces)[j].dof_count());

  if (lumped)
  {
    sys.lumped_r = lumped_mass(spaces->rotation, CellWeight::uniform(1.0 / mu));
    sys.lumped_q = lumped_mass(spaces->flux, k_inverse);
    b[0][0] = sys.lumped_r->matrix;
    b[2][2] = sys.lumped_q->matrix;
  }
  else
  {
    b[0][0] = (1.0 / mu) * ops.M_r;
    b[2][2] = (1.0 / params.K) * ops.M_q;
  }
  const SparseMatrix div_div = ops.B_u.transpose() * ops.Bh_u;
  b[1][1] = (2.0 * mu + params.lambda) * symmetric_part(div_div);
  b[3][3] = (params.c0 * ops.M_p).pruned();

  b[1][0] = ops.Bh_r;
  b[0][1] = -SparseMatrix(ops.Bh_r.transpose());
  b[3][1] = (params.alpha * ops.Bh_u).pruned();
  b[1][3] = -SparseMatrix(b[3][1].transpose());
  b[3][2] = (delta * ops.Bh_q).pruned();
  b[2][3] = -SparseMatrix(b[3][2].transpose());

  const RhsAssembly f = assemble_rhs(data, *spaces, bc, delta);
  sys.rhs = {f.f_r, f.f_u, f.f_q, f.f_p};

  std::array<const std::vector<char> *, 4> ess;
  for (int i = 0; i < 4; ++i)
    ess[i] = &(*spaces)[i].essential();

  std::array<Vector, 4> lift;
  for (int i = 0; i < 4; ++i)
    lift[i] = Vector::Zero((*spaces)[i].dof_count());
  if (bc.rotation)
    lift[0] = interpolate(spaces->rotation, bc.rotation);
  if (bc.displacement)
    lift[1] = interpolate(spaces->displacement, bc.displacement);
  if (bc.flux)
    lift[2] = interpolate(spaces->flux, bc.flux);
  for (int i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < ess[i]->size(); ++k)
      if (!(*ess[i])[k])
        lift[i][static_cast<Index>(k)] = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j)
      if (!lift[j].isZero(0.0))
        sys.rhs[i] -= b[i][j] * lift[j];
  for (int i = 0; i < 4; ++i)
  {
    for (int j = 0; j < 4; ++j)
    {
      if (i == j)
        eliminate_diagonal(b[i][j], *ess[i]);
      else
        eliminate_coupling(b[i][j], *ess[i], *ess[j]);
    }
    for (std::size_t k = 0; k < ess[i]->size(); ++k)
      if ((*ess[i])[k])
        sys.rhs[i][static_cast<Index>(k)] = lift[i][static_cast<Index>(k)];
    sys.essential.insert(sys.essential.end(), ess[i]->begin(), ess[i]->end());
  }
  return sys;
}

Symmetrized symmetrize(const BlockSystem &sys)
{
  const auto off = sys.offsets();
  Symmetrized out;
  out.signs = Vector::Ones(off[4]);
  out.signs.segment(off[1], off[3] - off[1]).setConstant(-1.0);
  out.matrix = sys.matrix() * out.signs.asDiagonal();
  out.matrix.makeCompressed();
  return out;
}

std::vector<FieldState> time_loop(std::shared_ptr<const MixedSpaces> spaces, const Vector &u0, const Vector &p0,
                                  const MaterialParams &params, const BoundaryConfig &bc, const TimeData &data,
                                  int n_steps, bool lumped, TimeScheme scheme, const SystemSolver &solve)
{
  if (n_steps < 1)
    throw std::invalid_argument("time_loop: n_steps must be >= 1");
  if (u0.size() != spaces->displacement.dof_count() || p0.size() != spaces->pressure.dof_count())
    throw std::invalid_argument("time_loop: initial state does not match the spaces");

  // Crank-Nicolson halves the weight of the flux divergence; the step is
  // assembled with dt / 2 so that the flux stays symmetric in delta.
  MaterialParams step = params;
  if (scheme == TimeScheme::CrankNicolson)
    step.dt = 0.5 * params.dt;

  ProblemData pd;
  pd.body_force = data.body_force;
  if (data.fluid_source)
  {
    const double dt = params.dt;
    const ScalarField src = data.fluid_source;
    pd.fluid_source = [src, dt](const Vector2 &x) { return dt * src(x); };
  }
  const BlockSystem sys = assemble_biot(spaces, step, bc, pd, lumped);
  const double delta = step.delta();

  FieldState prev = FieldState::zero(spaces);
  prev.u = u0;
  prev.p = p0;
  if (scheme == TimeScheme::CrankNicolson)
  {
    // flux consistent with p0 through the Darcy row
    Eigen::SimplicialLDLT<SparseMatrix> darcy(sys.blocks[2][2]);
    if (darcy.info() != Eigen::Success)
      throw SolverError("time_loop: flux mass matrix factorization failed");
    prev.q = darcy.solve(Vector(sys.rhs[2] - sys.blocks[2][3] * p0));
  }

  std::vector<FieldState> states;
  states.reserve(n_steps);
  for (int n = 1; n <= n_steps; ++n)
  {
    Vector f = sys.rhs_vector();
    const auto off = sys.offsets();
    Vector history = params.c0 * (sys.ops.M_p * prev.p) + params.alpha * (sys.ops.Bh_u * prev.u);
    if (scheme == TimeScheme::CrankNicolson)
      history -= delta * (sys.ops.Bh_q * prev.q);
    f.segment(off[3], off[4] - off[3]) += history;
    Vector x;
    try
    {
      x = solve(sys, f);
    }
    catch (const std::exception &e)
    {
      throw SolverError("time step " + std::to_string(n) + ": " + e.what());
    }
    prev = FieldState::from_stacked(spaces, x);
    states.push_back(prev);
  }
  return states;
}

}  // namespace biot
