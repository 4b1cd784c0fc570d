// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_TEST_SUPPORT_HPP
#define BIOT_TEST_SUPPORT_HPP

#include <memory>
#include <random>

#include "biot/verify.hpp"

namespace biot::test
{

inline std::shared_ptr<const Mesh> square(int n)
{
  return std::make_shared<const Mesh>(unit_square_mesh(n));
}

inline MaterialParams params(double mu, double lambda, double alpha, double c0, double K, double dt)
{
  MaterialParams p;
  p.mu = mu;
  p.lambda = lambda;
  p.alpha = alpha;
  p.c0 = c0;
  p.K = K;
  p.dt = dt;
  return p;
}

inline Vector random_vector(Index n, std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i)
    v[i] = uni(rng);
  return v;
}

/// Random coefficients, zero on essential DOFs.
inline FieldState random_state(std::shared_ptr<const MixedSpaces> sp, std::mt19937_64 &rng)
{
  FieldState s = FieldState::zero(sp);
  for (int f = 0; f < 4; ++f)
  {
    Vector &v = f == 0 ? s.r : f == 1 ? s.u : f == 2 ? s.q : s.p;
    v = random_vector(v.size(), rng);
    const auto &ess = (*sp)[f].essential();
    for (Index i = 0; i < v.size(); ++i)
      if (ess[static_cast<std::size_t>(i)])
        v[i] = 0.0;
  }
  return s;
}

inline FESpace free_space(std::shared_ptr<const Mesh> mesh, Family family)
{
  return FESpace(mesh, family, FieldRole::Flux, std::vector<char>(static_cast<std::size_t>(dof_count(*mesh, family)), 0));
}

inline double max_abs(const SparseMatrix &a)
{
  double m = 0.0;
  for (Index k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

}  // namespace biot::test

#endif  // BIOT_TEST_SUPPORT_HPP
