#include "signorini/vtk.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace signorini {

namespace {

constexpr int vtk_triangle = 5;

void write_header(std::ostream& os, const char* title)
{
    os << "# vtk DataFile Version 2.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    writer(os);
    os.flush();
    if (!os)
        throw std::runtime_error("write to " + path.string() + " failed");
}

} // namespace

void write_mesh_vtk(const Mesh& mesh, std::ostream& os)
{
    os << std::setprecision(17);
    write_header(os, "unit square triangulation");
    os << "POINTS " << mesh.num_vertices() << " double\n";
    for (const auto& p : mesh.vertices())
        os << p.x << ' ' << p.y << " 0\n";
    const auto nt = mesh.num_triangles();
    os << "CELLS " << nt << ' ' << 4 * nt << '\n';
    for (const auto& t : mesh.triangles())
        os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    os << "CELL_TYPES " << nt << '\n';
    for (std::size_t t = 0; t < nt; ++t)
        os << vtk_triangle << '\n';
    os << "CELL_DATA " << nt << "\nSCALARS triangle_index int 1\nLOOKUP_TABLE default\n";
    for (std::size_t t = 0; t < nt; ++t)
        os << t << '\n';
}

void write_mesh_vtk(const Mesh& mesh, const std::filesystem::path& path)
{
    write_file(path, [&](std::ostream& os) { write_mesh_vtk(mesh, os); });
}

void export_solution(const DiscreteField& field, std::ostream& os)
{
    const Mesh& mesh = field.space().mesh();
    const auto nt = mesh.num_triangles();
    os << std::setprecision(17);
    write_header(os, "Crouzeix-Raviart solution (discontinuous)");
    os << "POINTS " << 3 * nt << " double\n";
    for (std::size_t t = 0; t < nt; ++t)
        for (const auto& p : mesh.triangle_points(static_cast<int>(t)))
            os << p.x << ' ' << p.y << " 0\n";
    os << "CELLS " << nt << ' ' << 4 * nt << '\n';
    for (std::size_t t = 0; t < nt; ++t)
        os << "3 " << 3 * t << ' ' << 3 * t + 1 << ' ' << 3 * t + 2 << '\n';
    os << "CELL_TYPES " << nt << '\n';
    for (std::size_t t = 0; t < nt; ++t)
        os << vtk_triangle << '\n';

    os << "POINT_DATA " << 3 * nt << "\nSCALARS u double 1\nLOOKUP_TABLE default\n";
    for (std::size_t t = 0; t < nt; ++t) {
        // vertex k: basis k is -1, the other two +1
        const auto c = field.local_coefficients(static_cast<int>(t));
        const double sum = c[0] + c[1] + c[2];
        for (int k = 0; k < 3; ++k)
            os << sum - 2.0 * c[k] << '\n';
    }
    os << "CELL_DATA " << nt << "\nSCALARS grad_u_magnitude double 1\nLOOKUP_TABLE default\n";
    for (std::size_t t = 0; t < nt; ++t) {
        const Point g = element_gradient(field, static_cast<int>(t));
        os << std::sqrt(dot(g, g)) << '\n';
    }
}

void export_solution(const DiscreteField& field, const std::filesystem::path& path)
{
    write_file(path, [&](std::ostream& os) { export_solution(field, os); });
}

} // namespace signorini
