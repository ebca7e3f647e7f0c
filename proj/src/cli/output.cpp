#include "hkepler/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hkepler/error.hpp"

namespace hkepler::cli {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::config, "cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::filesystem::path& path, const integrator::Trajectory& traj) {
    auto out = open_for_write(path);
    out << kTrajectoryHeader << '\n';
    for (const auto& s : traj.samples) {
        const auto& q = s.state;
        const double x = q.r * std::cos(q.theta);
        const double y = q.r * std::sin(q.theta);
        const double drift = integrator::relative_drift(s.values, traj.integrals_at_start);
        for (double v : {s.t, q.r, q.theta, q.z, q.p_r, q.p_s, x, y, s.values.h, s.values.f1, s.values.f2}) {
            out << fmt(v) << ',';
        }
        out << fmt(s.values.f3) << ',' << fmt(drift) << '\n';
    }
}

void write_mesh_csv(const std::filesystem::path& path, const surfaces::SurfaceMesh& mesh) {
    auto out = open_for_write(path);
    out << kMeshHeader << '\n';
    for (const auto& p : mesh.points) {
        out << fmt(p.r) << ',' << fmt(p.theta) << ',' << fmt(p.z) << ',' << p.branch << '\n';
    }
}

void write_json(const std::filesystem::path& path, const Json& doc) {
    auto out = open_for_write(path);
    out << doc.dump(2) << '\n';
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    auto out = open_for_write(path);
    out << text;
}

std::string trajectory_plot_script(std::string_view csv_name) {
    const std::string csv(csv_name);
    return "set datafile separator ','\n"
           "set terminal pngcairo size 1400,600\n"
           "set output 'trajectory.png'\n"
           "set multiplot layout 1,2\n"
           "set title 'trajectory'\n"
           "set xlabel 'x'\nset ylabel 'y'\nset zlabel 'z'\n"
           "splot '" + csv + "' using 7:8:4 with lines notitle\n"
           "set title 'projection on Oxy'\n"
           "set size ratio -1\n"
           "plot '" + csv + "' using 7:8 with lines notitle\n"
           "unset multiplot\n";
}

std::string surface_plot_script(std::string_view csv_name, std::string_view title) {
    const std::string csv(csv_name);
    return "set datafile separator ','\n"
           "set terminal pngcairo size 900,800\n"
           "set output 'surface.png'\n"
           "set title '" + std::string(title) + "'\n"
           "set xlabel 'x'\nset ylabel 'y'\nset zlabel 'z'\n"
           "set view equal xy\n"
           "splot '" + csv + "' using ($1*cos($2)):($1*sin($2)):3 with points pt 7 ps 0.3 notitle\n";
}

}  // namespace hkepler::cli
