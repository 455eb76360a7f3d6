#pragma once

#include <filesystem>
#include <iosfwd>

#include "signorini/cr_space.hpp"
#include "signorini/mesh.hpp"

namespace signorini {

/// Legacy VTK 2.0 ASCII unstructured grid (cell type 5); cell data carries the
/// triangle index.
void write_mesh_vtk(const Mesh& mesh, std::ostream& os);
void write_mesh_vtk(const Mesh& mesh, const std::filesystem::path& path);

/// Discontinuous dump: every triangle gets its own three points so the
/// nonconforming field is shown as computed. Point data "u" holds the trace
/// values at the vertices, cell data "grad_u_magnitude" the gradient norm.
void export_solution(const DiscreteField& field, std::ostream& os);
void export_solution(const DiscreteField& field, const std::filesystem::path& path);

} // namespace signorini
