#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace signorini {

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

enum class BoundaryTag : std::uint8_t
{
    Interior,
    Dirichlet,
    Neumann,
    Contact,
};

std::string_view to_string(BoundaryTag tag);

/// Diagonal layout of the structured triangulation. UnionJack alternates the
/// diagonal direction with the parity of (i + j) over the grid cells; Uniform
/// puts every diagonal from the lower-left to the upper-right corner.
enum class DiagonalPattern : std::uint8_t
{
    UnionJack,
    Uniform,
};

/// Maps a boundary face midpoint to a tag. Returning nullopt means the rule
/// does not cover that face, which classify_boundary rejects.
using BoundaryTagger = std::function<std::optional<BoundaryTag>(Point midpoint)>;

/// Dirichlet on y = 1, Neumann on x = 0 and x = 1, contact on y = 0.
BoundaryTagger standard_tagger();

struct Face
{
    std::array<int, 2> vertices{};
    /// Incident triangles; triangles[1] == -1 on the boundary.
    std::array<int, 2> triangles{-1, -1};
    BoundaryTag tag = BoundaryTag::Interior;

    bool is_boundary() const { return triangles[1] < 0; }
};

struct FaceGeometry
{
    double length = 0.0;
    Point normal;
};

/// Immutable conforming triangulation of the unit square.
///
/// Triangles are stored counterclockwise. Local face k of a triangle is the
/// face opposite its local vertex k, so `triangle_faces(t)[k]` pairs with the
/// barycentric coordinate of `triangle(t)[k]`.
class Mesh
{
  public:
    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
    const std::vector<Face>& faces() const { return faces_; }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_triangles() const { return triangles_.size(); }
    std::size_t num_faces() const { return faces_.size(); }

    const Point& vertex(int v) const { return vertices_.at(v); }
    const std::array<int, 3>& triangle(int t) const { return triangles_.at(t); }
    const std::array<int, 3>& triangle_faces(int t) const { return triangle_faces_.at(t); }
    const Face& face(int f) const { return faces_.at(f); }

    std::array<Point, 3> triangle_points(int t) const;
    double signed_area(int t) const;
    Point face_midpoint(int f) const;

    /// Faces carrying `tag`, in ascending face index order.
    std::vector<int> faces_with_tag(BoundaryTag tag) const;

    /// Maximum element diameter.
    double h() const { return h_; }
    /// Cells per side of the structured grid the mesh was built from.
    int cells_per_side() const { return n_; }
    DiagonalPattern pattern() const { return pattern_; }

    /// Triangle containing `p` by grid-cell arithmetic (structured meshes only).
    int locate(Point p) const;

  private:
    friend Mesh build_unit_square_mesh(int n, DiagonalPattern pattern);
    friend Mesh classify_boundary(const Mesh& mesh, const BoundaryTagger& tagger);

    std::vector<Point> vertices_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<std::array<int, 3>> triangle_faces_;
    std::vector<Face> faces_;
    double h_ = 0.0;
    int n_ = 0;
    DiagonalPattern pattern_ = DiagonalPattern::UnionJack;
};

/// Structured triangulation of [0,1]^2 with n cells per side, two triangles
/// per cell, boundary faces tagged with standard_tagger().
Mesh build_unit_square_mesh(int n, DiagonalPattern pattern = DiagonalPattern::UnionJack);

/// Copy of `mesh` with every boundary face retagged by its midpoint.
Mesh classify_boundary(const Mesh& mesh, const BoundaryTagger& tagger);

/// Length and unit normal of `face`, oriented outward from the incident
/// triangle `side` (0 or 1). On the boundary side 0 gives the outward normal
/// of the domain.
FaceGeometry face_geometry(const Mesh& mesh, int face, int side = 0);

} // namespace signorini
