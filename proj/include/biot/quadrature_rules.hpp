// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_QUADRATURE_RULES_HPP
#define BIOT_QUADRATURE_RULES_HPP

#include <array>
#include <cmath>

#include <Eigen/Dense>

namespace biot
{

/// Symmetric 6-point rule on a triangle, exact for polynomials of degree 4.
/// Points are barycentric; weights sum to one and get multiplied by the area.
template <typename Scalar = double>
struct TriangleRule4
{
  static constexpr int size = 6;
  using Point = Eigen::Matrix<Scalar, 3, 1>;

  static std::array<Point, size> points()
  {
    const Scalar a1 = Scalar(0.445948490915964886318329253883L);
    const Scalar b1 = Scalar(1) - 2 * a1;
    const Scalar a2 = Scalar(0.091576213509770743459571463402L);
    const Scalar b2 = Scalar(1) - 2 * a2;
    return {Point(a1, a1, b1), Point(a1, b1, a1), Point(b1, a1, a1),
            Point(a2, a2, b2), Point(a2, b2, a2), Point(b2, a2, a2)};
  }

  static std::array<Scalar, size> weights()
  {
    const Scalar w1 = Scalar(0.223381589678011465695007008433L);
    const Scalar w2 = Scalar(1) / Scalar(3) - w1;
    return {w1, w1, w1, w2, w2, w2};
  }
};

/// 3-point Gauss-Legendre rule on [0, 1], exact to degree 5.
template <typename Scalar = double>
struct EdgeRule3
{
  static constexpr int size = 3;

  static std::array<Scalar, size> points()
  {
    const Scalar d = std::sqrt(Scalar(15)) / Scalar(10);
    return {Scalar(0.5) - d, Scalar(0.5), Scalar(0.5) + d};
  }

  static std::array<Scalar, size> weights()
  {
    return {Scalar(5) / Scalar(18), Scalar(8) / Scalar(18), Scalar(5) / Scalar(18)};
  }
};

}  // namespace biot

#endif  // BIOT_QUADRATURE_RULES_HPP
