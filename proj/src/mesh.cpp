// SPDX-License-Identifier: Apache-2.0

#include "biot/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace biot
{

namespace
{

double signed_area(const Vector2 &a, const Vector2 &b, const Vector2 &c)
{
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

std::pair<Index, Index> key(Index a, Index b)
{
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

Mesh::Mesh(std::vector<Vector2> vertices, std::vector<Cell> cells, const TagMap &boundary_tags)
  : vertices_(std::move(vertices)), cells_(std::move(cells))
{
  const Index nv = num_vertices();
  if (cells_.empty())
  {
    throw std::invalid_argument("mesh has no cells");
  }
  for (auto &c : cells_)
  {
    for (Index v : c)
    {
      if (v < 0 || v >= nv)
      {
        throw std::invalid_argument("cell references vertex id " + std::to_string(v) + " out of range");
      }
    }
    if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2])
    {
      throw std::invalid_argument("cell with repeated vertex");
    }
    const double area = signed_area(vertices_[c[0]], vertices_[c[1]], vertices_[c[2]]);
    if (area == 0.0)
    {
      throw std::invalid_argument("degenerate cell with zero area");
    }
    if (area < 0.0)
    {
      std::swap(c[1], c[2]);
    }
  }

  cell_edges_.resize(cells_.size());
  cell_edge_signs_.resize(cells_.size());
  for (Index c = 0; c < num_cells(); ++c)
  {
    const auto &cell = cells_[c];
    for (int i = 0; i < 3; ++i)
    {
      const Index from = cell[(i + 1) % 3];
      const Index to = cell[(i + 2) % 3];
      const auto k = key(from, to);
      auto [it, inserted] = edge_lookup_.try_emplace(k, num_edges());
      if (inserted)
      {
        edges_.push_back({k.first, k.second});
        edge_cells_.push_back({c, -1});
      }
      else
      {
        auto &inc = edge_cells_[it->second];
        if (inc[1] >= 0)
        {
          throw std::invalid_argument("non-manifold edge shared by more than two cells");
        }
        inc[1] = c;
      }
      cell_edges_[c][i] = it->second;
      cell_edge_signs_[c][i] = from < to ? 1 : -1;
    }
  }

  edge_tags_.assign(edges_.size(), std::string());
  for (Index e = 0; e < num_edges(); ++e)
  {
    if (is_boundary_edge(e))
    {
      edge_tags_[e] = "boundary";
    }
  }
  for (const auto &[pair, tag] : boundary_tags)
  {
    const Index e = find_edge(pair.first, pair.second);
    if (e < 0 || !is_boundary_edge(e))
    {
      throw std::invalid_argument("boundary tag '" + tag + "' assigned to a non-boundary edge");
    }
    if (tag.empty())
    {
      throw std::invalid_argument("empty boundary tag");
    }
    edge_tags_[e] = tag;
  }

  // vertex -> edge adjacency (CSR)
  vertex_edge_offsets_.assign(nv + 1, 0);
  for (const auto &e : edges_)
  {
    ++vertex_edge_offsets_[e.a + 1];
    ++vertex_edge_offsets_[e.b + 1];
  }
  for (Index v = 0; v < nv; ++v)
  {
    vertex_edge_offsets_[v + 1] += vertex_edge_offsets_[v];
  }
  vertex_edge_list_.resize(vertex_edge_offsets_[nv]);
  std::vector<Index> fill(vertex_edge_offsets_.begin(), vertex_edge_offsets_.end() - 1);
  for (Index e = 0; e < num_edges(); ++e)
  {
    vertex_edge_list_[fill[edges_[e].a]++] = e;
    vertex_edge_list_[fill[edges_[e].b]++] = e;
  }
  for (Index v = 0; v < nv; ++v)
  {
    if (vertex_edge_offsets_[v + 1] == vertex_edge_offsets_[v])
    {
      throw std::invalid_argument("vertex " + std::to_string(v) + " is not used by any cell");
    }
  }
}

std::vector<std::string> Mesh::boundary_tag_set() const
{
  std::set<std::string> tags;
  for (Index e = 0; e < num_edges(); ++e)
  {
    if (is_boundary_edge(e))
    {
      tags.insert(edge_tags_[e]);
    }
  }
  return {tags.begin(), tags.end()};
}

std::span<const Index> Mesh::vertex_edges(Index v) const
{
  return {vertex_edge_list_.data() + vertex_edge_offsets_[v],
          static_cast<std::size_t>(vertex_edge_offsets_[v + 1] - vertex_edge_offsets_[v])};
}

Index Mesh::find_edge(Index v0, Index v1) const
{
  auto it = edge_lookup_.find(key(v0, v1));
  return it == edge_lookup_.end() ? -1 : it->second;
}

double Mesh::cell_area(Index c) const
{
  const auto &cell = cells_[c];
  return signed_area(vertices_[cell[0]], vertices_[cell[1]], vertices_[cell[2]]);
}

double Mesh::edge_length(Index e) const
{
  return (vertices_[edges_[e].b] - vertices_[edges_[e].a]).norm();
}

Vector2 Mesh::edge_normal(Index e) const
{
  const Vector2 t = vertices_[edges_[e].b] - vertices_[edges_[e].a];
  return Vector2(t.y(), -t.x()) / t.norm();
}

Vector2 Mesh::boundary_normal(Index e) const
{
  const Index c = edge_cells_[e][0];
  for (int i = 0; i < 3; ++i)
  {
    if (cell_edges_[c][i] == e)
    {
      return cell_edge_signs_[c][i] * edge_normal(e);
    }
  }
  throw std::logic_error("inconsistent edge incidence");
}

Vector3 Triangle::barycentric(const Vector2 &p) const
{
  Vector3 l;
  for (int i = 0; i < 3; ++i)
  {
    l[i] = grad_bary[i].dot(p - x[(i + 1) % 3]);
  }
  return l;
}

Triangle triangle(const Mesh &mesh, Index c)
{
  Triangle t;
  const auto &cell = mesh.cell(c);
  for (int i = 0; i < 3; ++i)
  {
    t.x[i] = mesh.vertex(cell[i]);
  }
  t.area = signed_area(t.x[0], t.x[1], t.x[2]);
  for (int i = 0; i < 3; ++i)
  {
    const Vector2 &p = t.x[(i + 1) % 3];
    const Vector2 &q = t.x[(i + 2) % 3];
    t.grad_bary[i] = Vector2(p.y() - q.y(), q.x() - p.x()) / (2.0 * t.area);
  }
  return t;
}

Mesh unit_square_mesh(int n)
{
  if (n < 1)
  {
    throw std::invalid_argument("unit_square_mesh: cells per side must be >= 1");
  }
  const Index m = n + 1;
  std::vector<Vector2> vertices;
  vertices.reserve(m * m);
  for (Index j = 0; j < m; ++j)
  {
    for (Index i = 0; i < m; ++i)
    {
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    }
  }
  auto id = [m](Index i, Index j) { return j * m + i; };
  std::vector<Mesh::Cell> cells;
  cells.reserve(2 * n * n);
  for (Index j = 0; j < n; ++j)
  {
    for (Index i = 0; i < n; ++i)
    {
      cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  Mesh::TagMap tags;
  for (Index k = 0; k < n; ++k)
  {
    tags[key(id(k, 0), id(k + 1, 0))] = "bottom";
    tags[key(id(k, n), id(k + 1, n))] = "top";
    tags[key(id(0, k), id(0, k + 1))] = "left";
    tags[key(id(n, k), id(n, k + 1))] = "right";
  }
  return Mesh(std::move(vertices), std::move(cells), tags);
}

Mesh refine_uniform(const Mesh &mesh)
{
  const Index nv = mesh.num_vertices();
  std::vector<Vector2> vertices;
  vertices.reserve(nv + mesh.num_edges());
  for (Index v = 0; v < nv; ++v)
  {
    vertices.push_back(mesh.vertex(v));
  }
  for (Index e = 0; e < mesh.num_edges(); ++e)
  {
    vertices.push_back(0.5 * (mesh.vertex(mesh.edge(e).a) + mesh.vertex(mesh.edge(e).b)));
  }
  std::vector<Mesh::Cell> cells;
  cells.reserve(4 * mesh.num_cells());
  for (Index c = 0; c < mesh.num_cells(); ++c)
  {
    const auto &v = mesh.cell(c);
    const Index m0 = nv + mesh.cell_edge(c, 0);
    const Index m1 = nv + mesh.cell_edge(c, 1);
    const Index m2 = nv + mesh.cell_edge(c, 2);
    cells.push_back({v[0], m2, m1});
    cells.push_back({m2, v[1], m0});
    cells.push_back({m1, m0, v[2]});
    cells.push_back({m0, m1, m2});
  }
  Mesh::TagMap tags;
  for (Index e = 0; e < mesh.num_edges(); ++e)
  {
    if (mesh.is_boundary_edge(e))
    {
      const Index mid = nv + e;
      tags[key(mesh.edge(e).a, mid)] = mesh.boundary_tag(e);
      tags[key(mid, mesh.edge(e).b)] = mesh.boundary_tag(e);
    }
  }
  return Mesh(std::move(vertices), std::move(cells), tags);
}

MeshStats mesh_stats(const Mesh &mesh)
{
  MeshStats s{0.0, std::numeric_limits<double>::max(), 0.0};
  for (Index c = 0; c < mesh.num_cells(); ++c)
  {
    double diameter = 0.0;
    double perimeter = 0.0;
    for (int i = 0; i < 3; ++i)
    {
      const double len = mesh.edge_length(mesh.cell_edge(c, i));
      diameter = std::max(diameter, len);
      perimeter += len;
    }
    const double inradius = 2.0 * mesh.cell_area(c) / perimeter;
    s.h_max = std::max(s.h_max, diameter);
    s.h_min = std::min(s.h_min, diameter);
    s.shape_regularity = std::max(s.shape_regularity, diameter / inradius);
  }
  return s;
}

namespace
{

// Non-empty, comment-stripped lines.
std::vector<std::string> content_lines(std::istream &in)
{
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
  {
    if (auto pos = line.find('#'); pos != std::string::npos)
    {
      line.erase(pos);
    }
    if (line.find_first_not_of(" \t\r") != std::string::npos)
    {
      lines.push_back(line);
    }
  }
  return lines;
}

}  // namespace

Mesh read_mesh(std::istream &in)
{
  const auto lines = content_lines(in);
  if (lines.empty())
  {
    throw std::invalid_argument("mesh file: missing header");
  }
  long dim = -1, nv = -1, nc = -1;
  {
    std::istringstream header(lines[0]);
    std::string token;
    while (header >> token)
    {
      const auto eq = token.find('=');
      if (eq == std::string::npos)
      {
        throw std::invalid_argument("mesh file: malformed header token '" + token + "'");
      }
      const std::string name = token.substr(0, eq);
      const long value = std::stol(token.substr(eq + 1));
      if (name == "dim")
        dim = value;
      else if (name == "nv")
        nv = value;
      else if (name == "nc")
        nc = value;
      else
        throw std::invalid_argument("mesh file: unknown header key '" + name + "'");
    }
  }
  if (dim != 2)
  {
    throw std::invalid_argument("mesh file: only dim=2 is supported");
  }
  if (nv < 3 || nc < 1 || static_cast<long>(lines.size()) < 1 + nv + nc)
  {
    throw std::invalid_argument("mesh file: vertex/cell counts inconsistent with content");
  }
  std::vector<Vector2> vertices(nv);
  for (long i = 0; i < nv; ++i)
  {
    std::istringstream ls(lines[1 + i]);
    if (!(ls >> vertices[i].x() >> vertices[i].y()))
    {
      throw std::invalid_argument("mesh file: bad vertex line " + std::to_string(i));
    }
  }
  std::vector<Mesh::Cell> cells(nc);
  for (long i = 0; i < nc; ++i)
  {
    std::istringstream ls(lines[1 + nv + i]);
    if (!(ls >> cells[i][0] >> cells[i][1] >> cells[i][2]))
    {
      throw std::invalid_argument("mesh file: bad cell line " + std::to_string(i));
    }
  }
  Mesh::TagMap tags;
  std::size_t pos = 1 + nv + nc;
  if (pos < lines.size())
  {
    std::istringstream ls(lines[pos]);
    std::string word;
    ls >> word;
    if (word != "boundary")
    {
      throw std::invalid_argument("mesh file: expected 'boundary' section, got '" + word + "'");
    }
    for (++pos; pos < lines.size(); ++pos)
    {
      std::istringstream bs(lines[pos]);
      Index a, b;
      std::string tag;
      if (!(bs >> a >> b >> tag))
      {
        throw std::invalid_argument("mesh file: bad boundary line '" + lines[pos] + "'");
      }
      tags[key(a, b)] = tag;
    }
  }
  return Mesh(std::move(vertices), std::move(cells), tags);
}

Mesh read_mesh_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::invalid_argument("cannot open mesh file '" + path + "'");
  }
  return read_mesh(in);
}

void write_mesh(std::ostream &out, const Mesh &mesh)
{
  out << "dim=2 nv=" << mesh.num_vertices() << " nc=" << mesh.num_cells() << '\n';
  out.precision(17);
  for (Index v = 0; v < mesh.num_vertices(); ++v)
  {
    out << mesh.vertex(v).x() << ' ' << mesh.vertex(v).y() << '\n';
  }
  for (Index c = 0; c < mesh.num_cells(); ++c)
  {
    out << mesh.cell(c)[0] << ' ' << mesh.cell(c)[1] << ' ' << mesh.cell(c)[2] << '\n';
  }
  out << "boundary\n";
  for (Index e = 0; e < mesh.num_edges(); ++e)
  {
    if (mesh.is_boundary_edge(e))
    {
      out << mesh.edge(e).a << ' ' << mesh.edge(e).b << ' ' << mesh.boundary_tag(e) << '\n';
    }
  }
}

void BoundaryConfig::validate(const Mesh &mesh) const
{
  const auto tags = mesh.boundary_tag_set();
  for (const auto &tag : tags)
  {
    if (!mechanics.contains(tag))
    {
      throw std::invalid_argument("boundary tag '" + tag + "' has no mechanics assignment");
    }
    if (!flow.contains(tag))
    {
      throw std::invalid_argument("boundary tag '" + tag + "' has no flow assignment");
    }
  }
  auto known = [&](const std::string &t) { return std::find(tags.begin(), tags.end(), t) != tags.end(); };
  for (const auto &[tag, kind] : mechanics)
  {
    if (!known(tag))
      throw std::invalid_argument("boundary tag '" + tag + "' does not exist on the mesh");
  }
  for (const auto &[tag, kind] : flow)
  {
    if (!known(tag))
      throw std::invalid_argument("boundary tag '" + tag + "' does not exist on the mesh");
  }
  bool has_pressure = false;
  for (Index e = 0; e < mesh.num_edges() && !has_pressure; ++e)
  {
    has_pressure = is_pressure_edge(mesh, e);
  }
  if (!has_pressure)
  {
    throw std::invalid_argument("the pressure boundary must contain at least one edge");
  }
}

bool BoundaryConfig::is_rotation_edge(const Mesh &mesh, Index e) const
{
  if (!mesh.is_boundary_edge(e))
    return false;
  auto it = mechanics.find(mesh.boundary_tag(e));
  return it != mechanics.end() && it->second == MechanicsBoundary::Rotation;
}

bool BoundaryConfig::is_displacement_edge(const Mesh &mesh, Index e) const
{
  if (!mesh.is_boundary_edge(e))
    return false;
  auto it = mechanics.find(mesh.boundary_tag(e));
  return it != mechanics.end() && it->second == MechanicsBoundary::Displacement;
}

bool BoundaryConfig::is_pressure_edge(const Mesh &mesh, Index e) const
{
  if (!mesh.is_boundary_edge(e))
    return false;
  auto it = flow.find(mesh.boundary_tag(e));
  return it != flow.end() && it->second == FlowBoundary::Pressure;
}

bool BoundaryConfig::is_flux_edge(const Mesh &mesh, Index e) const
{
  if (!mesh.is_boundary_edge(e))
    return false;
  auto it = flow.find(mesh.boundary_tag(e));
  return it != flow.end() && it->second == FlowBoundary::Flux;
}

BoundaryConfig BoundaryConfig::uniform(const Mesh &mesh, MechanicsBoundary m, FlowBoundary f)
{
  BoundaryConfig bc;
  for (const auto &tag : mesh.boundary_tag_set())
  {
    bc.mechanics[tag] = m;
    bc.flow[tag] = f;
  }
  bc.displacement = [](const Vector2 &) { return Vector2::Zero().eval(); };
  bc.normal_stress = [](const Vector2 &) { return 0.0; };
  bc.pressure = [](const Vector2 &) { return 0.0; };
  return bc;
}

}  // namespace biot
