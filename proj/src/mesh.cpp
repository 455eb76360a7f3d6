#include "signorini/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace signorini {

namespace {

constexpr double on_line_tol = 1e-12;

bool diagonal_is_sw_ne(DiagonalPattern pattern, int i, int j)
{
    return pattern == DiagonalPattern::Uniform || (i + j) % 2 == 0;
}

} // namespace

std::string_view to_string(BoundaryTag tag)
{
    switch (tag) {
    case BoundaryTag::Interior: return "interior";
    case BoundaryTag::Dirichlet: return "dirichlet";
    case BoundaryTag::Neumann: return "neumann";
    case BoundaryTag::Contact: return "contact";
    }
    return "unknown";
}

BoundaryTagger standard_tagger()
{
    return [](Point m) -> std::optional<BoundaryTag> {
        if (std::abs(m.y - 1.0) < on_line_tol)
            return BoundaryTag::Dirichlet;
        if (std::abs(m.y) < on_line_tol)
            return BoundaryTag::Contact;
        if (std::abs(m.x) < on_line_tol || std::abs(m.x - 1.0) < on_line_tol)
            return BoundaryTag::Neumann;
        return std::nullopt;
    };
}

std::array<Point, 3> Mesh::triangle_points(int t) const
{
    const auto& tri = triangle(t);
    return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

double Mesh::signed_area(int t) const
{
    const auto [a, b, c] = triangle_points(t);
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

Point Mesh::face_midpoint(int f) const
{
    const auto& fc = face(f);
    return 0.5 * (vertices_[fc.vertices[0]] + vertices_[fc.vertices[1]]);
}

std::vector<int> Mesh::faces_with_tag(BoundaryTag tag) const
{
    std::vector<int> out;
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f)
        if (faces_[f].tag == tag)
            out.push_back(f);
    return out;
}

int Mesh::locate(Point p) const
{
    if (p.x < -on_line_tol || p.x > 1.0 + on_line_tol || p.y < -on_line_tol ||
        p.y > 1.0 + on_line_tol)
        throw std::out_of_range("Mesh::locate: point outside the unit square");
    const int i = std::clamp(static_cast<int>(std::floor(p.x * n_)), 0, n_ - 1);
    const int j = std::clamp(static_cast<int>(std::floor(p.y * n_)), 0, n_ - 1);
    const double lx = p.x * n_ - i;
    const double ly = p.y * n_ - j;
    const int cell = j * n_ + i;
    bool lower = false;
    if (diagonal_is_sw_ne(pattern_, i, j))
        lower = ly <= lx;
    else
        lower = lx + ly <= 1.0;
    return 2 * cell + (lower ? 0 : 1);
}

Mesh build_unit_square_mesh(int n, DiagonalPattern pattern)
{
    if (n < 1)
        throw std::invalid_argument("build_unit_square_mesh: need at least one cell per side");

    Mesh mesh;
    mesh.n_ = n;
    mesh.pattern_ = pattern;

    const int nv = n + 1;
    mesh.vertices_.reserve(static_cast<std::size_t>(nv) * nv);
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            mesh.vertices_.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

    auto vid = [nv](int i, int j) { return j * nv + i; };
    mesh.triangles_.reserve(2 * static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            if (diagonal_is_sw_ne(pattern, i, j)) {
                mesh.triangles_.push_back({a, b, c});
                mesh.triangles_.push_back({a, c, d});
            }
            else {
                mesh.triangles_.push_back({a, b, d});
                mesh.triangles_.push_back({b, c, d});
            }
        }
    }

    const auto nverts = static_cast<long long>(mesh.vertices_.size());
    std::unordered_map<long long, int> face_of_edge;
    face_of_edge.reserve(3 * mesh.triangles_.size());
    mesh.triangle_faces_.resize(mesh.triangles_.size());
    for (int t = 0; t < static_cast<int>(mesh.triangles_.size()); ++t) {
        const auto& tri = mesh.triangles_[t];
        for (int k = 0; k < 3; ++k) {
            const int v0 = tri[(k + 1) % 3];
            const int v1 = tri[(k + 2) % 3];
            const long long key = std::min(v0, v1) * nverts + std::max(v0, v1);
            auto [it, inserted] = face_of_edge.try_emplace(key, static_cast<int>(mesh.faces_.size()));
            if (inserted) {
                Face f;
                f.vertices = {v0, v1};
                f.triangles = {t, -1};
                mesh.faces_.push_back(f);
            }
            else {
                mesh.faces_[it->second].triangles[1] = t;
            }
            mesh.triangle_faces_[t][k] = it->second;
        }
    }

    double h = 0.0;
    for (const auto& f : mesh.faces_) {
        const Point e = mesh.vertices_[f.vertices[1]] - mesh.vertices_[f.vertices[0]];
        h = std::max(h, std::sqrt(dot(e, e)));
    }
    mesh.h_ = h;

    return classify_boundary(mesh, standard_tagger());
}

Mesh classify_boundary(const Mesh& mesh, const BoundaryTagger& tagger)
{
    Mesh out = mesh;
    for (int f = 0; f < static_cast<int>(out.faces_.size()); ++f) {
        auto& face = out.faces_[f];
        if (!face.is_boundary()) {
            face.tag = BoundaryTag::Interior;
            continue;
        }
        const Point m = out.face_midpoint(f);
        const auto tag = tagger(m);
        if (!tag || *tag == BoundaryTag::Interior)
            throw std::invalid_argument("classify_boundary: boundary face at (" +
                                        std::to_string(m.x) + ", " + std::to_string(m.y) +
                                        ") left untagged");
        face.tag = *tag;
    }
    return out;
}

FaceGeometry face_geometry(const Mesh& mesh, int face, int side)
{
    const Face& fc = mesh.face(face);
    if (side < 0 || side > 1 || fc.triangles[side] < 0)
        throw std::out_of_range("face_geometry: face has no incident triangle on that side");
    const Point p = mesh.vertex(fc.vertices[0]);
    const Point q = mesh.vertex(fc.vertices[1]);
    const Point t = q - p;
    const double len = std::sqrt(dot(t, t));
    Point n{t.y / len, -t.x / len};

    const int tri = fc.triangles[side];
    const auto& faces = mesh.triangle_faces(tri);
    const int k = static_cast<int>(std::find(faces.begin(), faces.end(), face) - faces.begin());
    const Point opposite = mesh.vertex(mesh.triangle(tri)[k]);
    if (dot(opposite - p, n) > 0.0)
        n = -1.0 * n;
    return {len, n};
}

} // namespace signorini
