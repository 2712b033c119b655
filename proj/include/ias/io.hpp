#pragma once

// Mesh files. CSV is the interchange format and round-trips exactly
// (shortest round-trip doubles); OBJ and PLY are for viewers.

#include <filesystem>
#include <string>
#include <vector>

#include "ias/mesh.hpp"
#include "ias/weier.hpp"

namespace ias::io {

enum class Format { obj, ply, csv };

/// "obj", "ply" or "csv"; anything else throws InvalidParameter.
Format parse_format(const std::string& name);
/// From the file extension.
Format format_of(const std::filesystem::path& path);
std::string extension(Format f);

/// Columns `s,t,x,y,u,N1,N2,h_E,h_F,h_G,singular`, row-major (s fastest),
/// after `#` lines carrying eps, grid kind, sizes, ranges and period.
std::string to_csv(const SurfaceMesh& mesh);
/// Inverse of to_csv. h_degeneracy is taken from h_E (h_F on asymptotic
/// grids), which has the same sign and zero set. Throws ParseError.
SurfaceMesh from_csv(const std::string& text);

/// Grid vertices `v x y u`, quads over cells with no singular corner, then
/// the singular curves as polylines in object `singular_curves`.
std::string to_obj(const SurfaceMesh& mesh, const std::vector<weier::SingularCurve>& curves);
/// Binary little-endian, per-vertex h_degeneracy, same faces as OBJ.
std::string to_ply(const SurfaceMesh& mesh);

/// Surface points along a curve: exact when the mesh carries its data,
/// bilinear in the grid otherwise.
std::vector<Vec3> curve_vertices(const SurfaceMesh& mesh, const weier::SingularCurve& curve);
/// Sidecar listing `curve,closed,s,t,x,y,u` per curve point.
std::string curves_csv(const SurfaceMesh& mesh, const std::vector<weier::SingularCurve>& curves);

/// Write through a temporary file in the same directory, then rename.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

/// Writes the mesh in the format of `path`'s extension. OBJ also writes the
/// curve sidecar next to it (`<stem>.curves.csv`); returns every path written.
std::vector<std::filesystem::path> export_mesh(const SurfaceMesh& mesh, Format format,
                                               const std::filesystem::path& path);
SurfaceMesh load_mesh(const std::filesystem::path& path);

}  // namespace ias::io
