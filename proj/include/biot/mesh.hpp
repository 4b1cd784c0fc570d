// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_MESH_HPP
#define BIOT_MESH_HPP

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace biot
{

using Index = Eigen::Index;
using Vector2 = Eigen::Vector2d;
using Vector3 = Eigen::Vector3d;
using Matrix2 = Eigen::Matrix2d;

/// Globally oriented edge, always stored with a < b.
struct Edge
{
  Index a;
  Index b;
};

/// Conforming 2D triangulation.
///
/// Cells are stored counterclockwise. Local edge i of a cell is the edge
/// opposite local vertex i, traversed from vertex i+1 to vertex i+2; its
/// relative sign is +1 when that traversal agrees with the global a -> b
/// orientation. The global unit normal of an edge is its tangent rotated
/// clockwise, so for sign +1 it coincides with the cell's outward normal.
class Mesh
{
public:
  using Cell = std::array<Index, 3>;
  using TagMap = std::map<std::pair<Index, Index>, std::string>;

  /// Builds edges and incidence. Clockwise cells are reoriented; degenerate
  /// cells, non-manifold edges and dangling vertex ids throw
  /// std::invalid_argument. Boundary edges missing from \p boundary_tags
  /// receive the tag "boundary".
  Mesh(std::vector<Vector2> vertices, std::vector<Cell> cells, const TagMap &boundary_tags = {});

  Index num_vertices() const { return static_cast<Index>(vertices_.size()); }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  Index num_cells() const { return static_cast<Index>(cells_.size()); }

  const Vector2 &vertex(Index v) const { return vertices_[v]; }
  const Cell &cell(Index c) const { return cells_[c]; }
  const Edge &edge(Index e) const { return edges_[e]; }

  Index cell_edge(Index c, int local) const { return cell_edges_[c][local]; }
  int cell_edge_sign(Index c, int local) const { return cell_edge_signs_[c][local]; }

  /// Incident cells of an edge; the second entry is -1 on the boundary.
  const std::array<Index, 2> &edge_cells(Index e) const { return edge_cells_[e]; }
  bool is_boundary_edge(Index e) const { return edge_cells_[e][1] < 0; }
  /// Empty string for interior edges.
  const std::string &boundary_tag(Index e) const { return edge_tags_[e]; }
  std::vector<std::string> boundary_tag_set() const;
  std::span<const Index> vertex_edges(Index v) const;

  /// Edge id for an unordered vertex pair, or -1.
  Index find_edge(Index v0, Index v1) const;

  double cell_area(Index c) const;
  double edge_length(Index e) const;
  /// Global unit normal of edge e (tangent a -> b rotated clockwise).
  Vector2 edge_normal(Index e) const;
  /// Outward unit normal of a boundary edge.
  Vector2 boundary_normal(Index e) const;

private:
  std::vector<Vector2> vertices_;
  std::vector<Cell> cells_;
  std::vector<Edge> edges_;
  std::vector<std::array<Index, 3>> cell_edges_;
  std::vector<std::array<int, 3>> cell_edge_signs_;
  std::vector<std::array<Index, 2>> edge_cells_;
  std::vector<std::string> edge_tags_;
  std::vector<Index> vertex_edge_offsets_;
  std::vector<Index> vertex_edge_list_;
  std::map<std::pair<Index, Index>, Index> edge_lookup_;
};

/// Per-cell geometry: vertex coordinates, area and barycentric gradients.
struct Triangle
{
  std::array<Vector2, 3> x;
  std::array<Vector2, 3> grad_bary;
  double area;

  Vector2 point(const Vector3 &bary) const { return bary[0] * x[0] + bary[1] * x[1] + bary[2] * x[2]; }
  Vector3 barycentric(const Vector2 &p) const;
};

Triangle triangle(const Mesh &mesh, Index c);

/// Structured right-triangle mesh of the unit square with n cells per side.
/// Boundary edges are tagged "left", "right", "bottom", "top".
Mesh unit_square_mesh(int n);

/// Splits every triangle into four by its edge midpoints. Boundary tags are
/// inherited by the child edges.
Mesh refine_uniform(const Mesh &mesh);

struct MeshStats
{
  double h_max;
  double h_min;
  /// max over cells of diameter / inradius
  double shape_regularity;
};

MeshStats mesh_stats(const Mesh &mesh);

/// Plain-text mesh format:
///   dim=2 nv=<V> nc=<T>
///   V lines "x y", T lines "i j k", optional "boundary" section with lines
///   "a b tag". '#' starts a comment.
Mesh read_mesh(std::istream &in);
Mesh read_mesh_file(const std::string &path);
void write_mesh(std::ostream &out, const Mesh &mesh);

enum class MechanicsBoundary
{
  Rotation,     // nu.u = 0 and nu x r = 0 imposed essentially
  Displacement  // tangential displacement and normal stress imposed naturally
};

enum class FlowBoundary
{
  Pressure,  // p = p0, natural
  Flux       // nu.q = 0, essential
};

/// Assignment of boundary tags to the mechanics and flow boundary parts, and
/// the data of the natural boundary conditions.
struct BoundaryConfig
{
  std::map<std::string, MechanicsBoundary> mechanics;
  std::map<std::string, FlowBoundary> flow;

  /// Displacement datum: tangential trace on the displacement boundary,
  /// normal trace on the rotation boundary.
  std::function<Vector2(const Vector2 &)> displacement;
  /// Rotation datum on the rotation boundary.
  std::function<double(const Vector2 &)> rotation;
  /// Flux datum, normal trace on the flux boundary.
  std::function<Vector2(const Vector2 &)> flux;
  /// Normal stress datum on the displacement boundary.
  std::function<double(const Vector2 &)> normal_stress;
  /// Pressure datum on the pressure boundary.
  std::function<double(const Vector2 &)> pressure;

  /// Every tag of \p mesh assigned to both partitions, and at least one
  /// pressure edge. Throws std::invalid_argument otherwise.
  void validate(const Mesh &mesh) const;

  bool is_rotation_edge(const Mesh &mesh, Index e) const;
  bool is_displacement_edge(const Mesh &mesh, Index e) const;
  bool is_pressure_edge(const Mesh &mesh, Index e) const;
  bool is_flux_edge(const Mesh &mesh, Index e) const;

  /// Same assignment for every tag of the mesh, zero data.
  static BoundaryConfig uniform(const Mesh &mesh, MechanicsBoundary m, FlowBoundary f);
};

}  // namespace biot

#endif  // BIOT_MESH_HPP
