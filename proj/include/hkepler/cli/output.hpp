// hkepler - CSV, JSON and plot-script writers
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hkepler/cli/config.hpp"
#include "hkepler/integrator.hpp"
#include "hkepler/surfaces.hpp"

namespace hkepler::cli {

inline constexpr std::string_view kTrajectoryHeader = "t,r,theta,z,pR,pS,x,y,H,F1,F2,F3,reldrift";
inline constexpr std::string_view kMeshHeader = "r,theta,z,branch";

/// Shortest form that still round-trips: "%.17g".
std::string fmt(double v);

void write_trajectory_csv(const std::filesystem::path& path, const integrator::Trajectory& traj);
void write_mesh_csv(const std::filesystem::path& path, const surfaces::SurfaceMesh& mesh);
void write_json(const std::filesystem::path& path, const Json& doc);
void write_text(const std::filesystem::path& path, std::string_view text);

/// Gnuplot script: 3D trajectory next to its Oxy projection.
std::string trajectory_plot_script(std::string_view csv_name);
/// Gnuplot script: mesh points mapped to Cartesian coordinates.
std::string surface_plot_script(std::string_view csv_name, std::string_view title);

}  // namespace hkepler::cli
