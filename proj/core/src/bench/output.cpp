#include "sphtrunc/bench/output.h"

#include "sphtrunc/kernel.h"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sphtrunc::bench
{
namespace
{
std::ofstream open_output(const std::filesystem::path &path)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write '" + path.string() + "'");
    out.precision(17);
    return out;
}

void vtk_header(std::ostream &out, const std::string &title, std::size_t n)
{
    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET POLYDATA\nPOINTS " << n << " double\n";
}

void vtk_vertices(std::ostream &out, std::size_t n)
{
    out << "VERTICES " << n << ' ' << 2 * n << '\n';
    for (std::size_t i = 0; i < n; ++i)
        out << "1 " << i << '\n';
    out << "POINT_DATA " << n << '\n';
}

void vtk_scalar(std::ostream &out, const std::string &name, std::span<const double> values)
{
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : values)
        out << format_double(v) << '\n';
}
} // namespace

std::string format_double(double value)
{
    std::ostringstream s;
    s.precision(17);
    s << value;
    return s.str();
}

void write_fluid_csv(const std::filesystem::path &path, const FluidSnapshot &s)
{
    auto out = open_output(path);
    const bool energy = !s.E.empty();
    out << "x,y,rho,u,v,p" << (energy ? ",E" : "") << '\n';
    for (std::size_t i = 0; i < s.positions.size(); ++i)
    {
        out << s.positions[i].x() << ',' << s.positions[i].y() << ',' << s.rho[i] << ',' << s.velocity[i].x() << ','
            << s.velocity[i].y() << ',' << s.p[i];
        if (energy)
            out << ',' << s.E[i];
        out << '\n';
    }
}

void write_solid_csv(const std::filesystem::path &path, const SolidSnapshot &s)
{
    auto out = open_output(path);
    out << "X0,Y0,Z0,x,y,z,vx,vy,vz,von_mises\n";
    for (std::size_t i = 0; i < s.positions.size(); ++i)
    {
        for (const auto *v : {&s.reference[i], &s.positions[i], &s.velocity[i]})
            out << (*v)[0] << ',' << (*v)[1] << ',' << (*v)[2] << ',';
        out << s.von_mises[i] << '\n';
    }
}

void write_trajectory_csv(const std::filesystem::path &path, std::span<const TrajectorySample> samples)
{
    auto out = open_output(path);
    out << "time,z\n";
    for (const auto &s : samples)
        out << s.time << ',' << s.tip.z() << '\n';
}

void write_fluid_vtk(const std::filesystem::path &path, const FluidSnapshot &s)
{
    auto out = open_output(path);
    const std::size_t n = s.positions.size();
    vtk_header(out, "fluid t=" + format_double(s.time), n);
    for (const auto &x : s.positions)
        out << x.x() << ' ' << x.y() << " 0\n";
    vtk_vertices(out, n);
    vtk_scalar(out, "rho", s.rho);
    vtk_scalar(out, "p", s.p);
    if (!s.vorticity.empty())
        vtk_scalar(out, "vorticity", s.vorticity);
    out << "VECTORS velocity double\n";
    for (const auto &v : s.velocity)
        out << v.x() << ' ' << v.y() << " 0\n";
}

void write_solid_vtk(const std::filesystem::path &path, const SolidSnapshot &s)
{
    auto out = open_output(path);
    const std::size_t n = s.positions.size();
    vtk_header(out, "solid t=" + format_double(s.time), n);
    for (const auto &x : s.positions)
        out << x.x() << ' ' << x.y() << ' ' << x.z() << '\n';
    vtk_vertices(out, n);
    vtk_scalar(out, "von_mises", s.von_mises);
    out << "VECTORS velocity double\n";
    for (const auto &v : s.velocity)
        out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
}

template <int Dim>
void write_positions_csv(const std::filesystem::path &path, const PointArray<Dim> &positions,
                         std::span<const double> volumes)
{
    if (volumes.size() != positions.size())
        throw InputError("volume count does not match the position count");
    auto out = open_output(path);
    static constexpr const char *axes[] = {"x", "y", "z"};
    for (int k = 0; k < Dim; ++k)
        out << axes[k] << ',';
    out << "volume\n";
    for (std::size_t i = 0; i < positions.size(); ++i)
    {
        for (int k = 0; k < Dim; ++k)
            out << positions[i][k] << ',';
        out << volumes[i] << '\n';
    }
}

template void write_positions_csv<2>(const std::filesystem::path &, const PointArray<2> &, std::span<const double>);
template void write_positions_csv<3>(const std::filesystem::path &, const PointArray<3> &, std::span<const double>);

void write_residual_csv(const std::filesystem::path &path, std::span<const double> residuals)
{
    auto out = open_output(path);
    out << "step,residual\n";
    for (std::size_t i = 0; i < residuals.size(); ++i)
        out << i << ',' << residuals[i] << '\n';
}

void write_study_csv(const std::filesystem::path &path, std::span<const StudyRow> rows)
{
    auto out = open_output(path);
    out << "distribution,kernel,correction,divisions,dp,gradient_l2,unity_l2,observed_order\n";
    for (const auto &r : rows)
    {
        out << to_string(r.distribution) << ',' << to_string(r.kernel) << ',' << (r.correction ? "on" : "off") << ','
            << r.divisions << ',' << r.dp << ',' << r.gradient_l2 << ',' << r.unity_l2 << ',';
        if (std::isfinite(r.observed_order))
            out << r.observed_order;
        out << '\n';
    }
}

void write_profile_csv(const std::filesystem::path &path, std::span<const double> coordinate,
                       std::span<const double> value, std::span<const double> reference)
{
    if (value.size() != coordinate.size() || (!reference.empty() && reference.size() != coordinate.size()))
        throw InputError("profile columns differ in length");
    auto out = open_output(path);
    out << "coordinate,value" << (reference.empty() ? "" : ",reference") << '\n';
    for (std::size_t i = 0; i < coordinate.size(); ++i)
    {
        out << coordinate[i] << ',' << value[i];
        if (!reference.empty())
            out << ',' << reference[i];
        out << '\n';
    }
}
} // namespace sphtrunc::bench
