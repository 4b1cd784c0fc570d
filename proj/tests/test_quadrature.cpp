// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace biot;
using biot::test::free_space;
using biot::test::random_vector;
using biot::test::square;

namespace
{

std::shared_ptr<const Mesh> reference_triangle()
{
  return std::make_shared<const Mesh>(
    Mesh({Vector2(0, 0), Vector2(1, 0), Vector2(0, 1)}, {Mesh::Cell{0, 1, 2}}));
}

CellwiseConstant random_cellwise(Index cells, std::mt19937_64 &rng)
{
  CellwiseConstant c(2, cells);
  const Vector v = random_vector(2 * cells, rng);
  for (Index k = 0; k < cells; ++k)
    c.col(k) = Vector2(v[2 * k], v[2 * k + 1]);
  return c;
}

Matrix2 random_spd(std::mt19937_64 &rng)
{
  const Vector v = random_vector(4, rng);
  Matrix2 a;
  a << v[0], v[1], v[2], v[3];
  return a * a.transpose() + 0.5 * Matrix2::Identity();
}

}  // namespace

TEST_CASE("reference triangle gives one sixth on the diagonal")
{
  const LumpedMass lm = lumped_mass(free_space(reference_triangle(), Family::Lagrange1));
  const Eigen::MatrixXd dense(lm.matrix);
  CHECK((dense - Eigen::MatrixXd::Identity(3, 3) / 6.0).norm() < 1e-15);
}

TEST_CASE("two-cell square lumps to patch areas")
{
  const auto m = square(1);
  const Eigen::MatrixXd dense(lumped_mass(free_space(m, Family::Lagrange1)).matrix);
  CHECK((dense - Eigen::MatrixXd(dense.diagonal().asDiagonal())).norm() == 0.0);
  CHECK(dense.sum() == doctest::Approx(1.0));
  for (Index v = 0; v < 4; ++v)
  {
    double patch = 0.0;
    for (Index c = 0; c < m->num_cells(); ++c)
      for (Index w : m->cell(c))
        if (w == v)
          patch += m->cell_area(c);
    CHECK(dense(v, v) == doctest::Approx(patch / 3.0));
  }
}

TEST_CASE("lumped matrices are symmetric and match the vertex inner product")
{
  const auto m = square(3);
  std::mt19937_64 rng(17);
  for (Family f : {Family::Lagrange1, Family::RT0, Family::BDM1})
  {
    const FESpace s = free_space(m, f);
    const SparseMatrix a = lumped_mass(s).matrix;
    CHECK(biot::test::max_abs(a - SparseMatrix(a.transpose())) == 0.0);
    const Vector x = random_vector(s.dof_count(), rng), y = random_vector(s.dof_count(), rng);
    CHECK(vertex_inner_product(s, x, y) == doctest::Approx(x.dot(a * y)).epsilon(1e-13));
  }
}

TEST_CASE("vertex rule is exact against cellwise constants")
{
  const auto m = square(4);
  std::mt19937_64 rng(23);
  for (Family f : {Family::Lagrange1, Family::RT0, Family::BDM1})
  {
    const FESpace s = free_space(m, f);
    for (int trial = 0; trial < 5; ++trial)
    {
      const Vector x = random_vector(s.dof_count(), rng);
      const CellwiseConstant c = random_cellwise(m->num_cells(), rng);
      const double exact = exact_inner_product(s, x, c);
      CHECK(std::abs(vertex_inner_product(s, x, c) - exact) < 1e-14 * (1.0 + std::abs(exact)) * 10);
    }
  }
}

TEST_CASE("BDM1 lumped mass never couples different vertices")
{
  const auto m = square(3);
  const FESpace s = free_space(m, Family::BDM1);
  const LumpedMass lm = lumped_mass(s);
  CHECK(lm.block_diagonal);
  std::vector<Index> owner(static_cast<std::size_t>(s.dof_count()), -1);
  for (Index v = 0; v < m->num_vertices(); ++v)
    for (Index d : lm.vertex_dofs[v])
      owner[static_cast<std::size_t>(d)] = v;
  for (Index col = 0; col < lm.matrix.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(lm.matrix, col); it; ++it)
      CHECK(owner[static_cast<std::size_t>(it.row())] == owner[static_cast<std::size_t>(it.col())]);
  for (const auto &block : lm.vertex_blocks)
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(block);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
  CHECK_FALSE(lumped_mass(free_space(m, Family::RT0)).block_diagonal);
}

TEST_CASE("tensor weights superpose")
{
  const auto m = square(3);
  std::mt19937_64 rng(29);
  std::vector<Matrix2> k1, k2, k12;
  for (Index c = 0; c < m->num_cells(); ++c)
  {
    k1.push_back(random_spd(rng));
    k2.push_back(random_spd(rng));
    k12.push_back(k1.back() + k2.back());
  }
  for (Family f : {Family::RT0, Family::BDM1})
  {
    const FESpace s = free_space(m, f);
    const SparseMatrix sum = lumped_mass(s, CellWeight::tensor(k1)).matrix + lumped_mass(s, CellWeight::tensor(k2)).matrix;
    CHECK(biot::test::max_abs(lumped_mass(s, CellWeight::tensor(k12)).matrix - sum) < 1e-14);
    const SparseMatrix scaled = lumped_mass(s, CellWeight::uniform(3.0)).matrix;
    CHECK(biot::test::max_abs(scaled - 3.0 * lumped_mass(s).matrix) < 1e-14);
  }
}

TEST_CASE("piecewise constants are rejected")
{
  const FESpace s = free_space(square(2), Family::P0);
  CHECK_THROWS_WITH_AS(lumped_mass(s), doctest::Contains("unsupported space"), std::invalid_argument);
  CHECK_THROWS_AS(norm_equivalence_ratio(s, 4), std::invalid_argument);
}

TEST_CASE("single hat function has ratio square root of two")
{
  const auto m = square(4);
  const FESpace s = free_space(m, Family::Lagrange1);
  const SparseMatrix exact = mass_matrix(s), lumped = lumped_mass(s).matrix;
  for (Index v = 0; v < m->num_vertices(); ++v)
  {
    const Vector e = Vector::Unit(s.dof_count(), v);
    CHECK(std::sqrt(e.dot(lumped * e) / e.dot(exact * e)) == doctest::Approx(std::sqrt(2.0)));
  }
}

TEST_CASE("equivalence ratio is bounded and mesh independent")
{
  for (Family f : {Family::Lagrange1, Family::BDM1, Family::RT0})
  {
    const EquivalenceRatio a = norm_equivalence_ratio(free_space(square(4), f), 200, 5);
    const EquivalenceRatio b = norm_equivalence_ratio(free_space(square(8), f), 200, 5);
    CHECK(a.seed == 5);
    CHECK(a.min_ratio >= 1.0 - 1e-12);
    CHECK(a.max_ratio < 3.0);
    if (f == Family::Lagrange1)
      for (const EquivalenceRatio &r : {a, b})
        CHECK(r.max_ratio <= 2.0);
  }
}

TEST_CASE("block diagonal solver inverts lumped BDM1 masses")
{
  const auto m = square(3);
  const FESpace s = free_space(m, Family::BDM1);
  std::vector<Matrix2> k(static_cast<std::size_t>(m->num_cells()), Matrix2{{2.0, 0.5}, {0.5, 1.0}});
  const LumpedMass lm = lumped_mass(s, CellWeight::tensor(k));
  const BlockDiagonalSolver solver(lm.matrix, lm.vertex_dofs);
  std::mt19937_64 rng(31);
  const Vector x = random_vector(s.dof_count(), rng);
  CHECK((solver.solve(lm.matrix * x) - x).norm() < 1e-12 * x.norm());
  const SparseMatrix product = solver.inverse() * lm.matrix;
  const Eigen::MatrixXd dense(product);
  CHECK((dense - Eigen::MatrixXd::Identity(s.dof_count(), s.dof_count())).norm() < 1e-12);
  CHECK_THROWS_AS(BlockDiagonalSolver(mass_matrix(s), lm.vertex_dofs), std::invalid_argument);
  auto partial = lm.vertex_dofs;
  partial.pop_back();
  CHECK_THROWS_AS(BlockDiagonalSolver(lm.matrix, partial), std::invalid_argument);
}
