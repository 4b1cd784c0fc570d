// SPDX-License-Identifier: Apache-2.0

#include "biot/reduction.hpp"

#include <stdexcept>

namespace biot
{

SparseMatrix CondensedSystem::matrix() const
{
  const Index nu = S_uu.rows();
  const Index np = S_pp.rows();
  std::vector<Triplet> t;
  t.reserve(S_uu.nonZeros() + S_pp.nonZeros() + A_up.nonZeros() + A_pu.nonZeros());
  auto add = [&t](const SparseMatrix &m, Index r0, Index c0) {
    for (Index k = 0; k < m.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(m, k); it; ++it)
        t.emplace_back(r0 + it.row(), c0 + it.col(), it.value());
  };
  add(S_uu, 0, 0);
  add(A_up, 0, nu);
  add(A_pu, nu, 0);
  add(S_pp, nu, nu);
  SparseMatrix m(nu + np, nu + np);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

Vector CondensedSystem::rhs() const
{
  Vector x(size());
  x << g_u, g_p;
  return x;
}

SparseMatrix CondensedSystem::symmetrized() const
{
  Vector signs = Vector::Ones(size());
  signs.head(S_uu.rows()).setConstant(-1.0);
  SparseMatrix m = matrix() * signs.asDiagonal();
  m.makeCompressed();
  return m;
}

Vector CondensedSystem::condense_rhs(const std::array<Vector, 4> &f) const
{
  if (f[0].size() != A_ur.cols() || f[1].size() != S_uu.rows() || f[2].size() != A_pq.cols() ||
      f[3].size() != S_pp.rows())
    throw std::invalid_argument("condense_rhs: inconsistent rhs");
  Vector g(size());
  g << f[1] - A_ur * rotation_solver->solve(f[0]), f[3] - A_pq * flux_solver->solve(f[2]);
  return g;
}

CondensedSystem condense(const BlockSystem &sys)
{
  if (!sys.lumped)
    throw std::invalid_argument("condense requires a lumped system");
  const MixedSpaces &s = *sys.spaces;
  if (!s.rotation.vertex_groups_disjoint() || !s.flux.vertex_groups_disjoint())
    throw std::invalid_argument("condense requires vertex-local rotation and flux masses (family 2)");

  const auto &b = sys.blocks;
  CondensedSystem cs;
  cs.spaces = sys.spaces;
  cs.params = sys.params;
  auto rot = std::make_shared<BlockDiagonalSolver>(b[0][0], s.rotation.vertex_dof_groups());
  auto flux = std::make_shared<BlockDiagonalSolver>(b[2][2], s.flux.vertex_dof_groups());

  const SparseMatrix rot_inv = rot->inverse();
  const SparseMatrix flux_inv = flux->inverse();
  const SparseMatrix su = b[1][1] - SparseMatrix(b[1][0] * rot_inv * b[0][1]);
  const SparseMatrix sp = b[3][3] - SparseMatrix(b[3][2] * flux_inv * b[2][3]);
  cs.S_uu = symmetric_part(su).pruned();
  cs.S_pp = symmetric_part(sp).pruned();
  cs.A_up = b[1][3];
  cs.A_pu = b[3][1];
  cs.A_ur = b[1][0];
  cs.A_pq = b[3][2];
  cs.reducible = sys.matrix();
  cs.g_u = sys.rhs[1] - b[1][0] * rot->solve(sys.rhs[0]);
  cs.g_p = sys.rhs[3] - b[3][2] * flux->solve(sys.rhs[2]);

  cs.A_ru = b[0][1];
  cs.A_qp = b[2][3];
  cs.f_r = sys.rhs[0];
  cs.f_q = sys.rhs[2];
  cs.rotation_solver = std::move(rot);
  cs.flux_solver = std::move(flux);
  return cs;
}

FieldState recover(const CondensedSystem &cs, const Vector &u, const Vector &p)
{
  return recover(cs, u, p, {cs.f_r, Vector(), cs.f_q, Vector()});
}

FieldState recover(const CondensedSystem &cs, const Vector &u, const Vector &p, const std::array<Vector, 4> &rhs)
{
  if (u.size() != cs.S_uu.rows() || p.size() != cs.S_pp.rows())
    throw std::invalid_argument("recover: (u, p) do not match the condensed system");
  if (rhs[0].size() != cs.A_ru.rows() || rhs[2].size() != cs.A_qp.rows())
    throw std::invalid_argument("recover: inconsistent rhs");
  FieldState x = FieldState::zero(cs.spaces);
  x.u = u;
  x.p = p;
  x.r = cs.rotation_solver->solve(rhs[0] - cs.A_ru * u);
  x.q = cs.flux_solver->solve(rhs[2] - cs.A_qp * p);
  return x;
}

}  // namespace biot
