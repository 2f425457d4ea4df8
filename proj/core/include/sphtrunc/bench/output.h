#pragma once

#include "sphtrunc/approx.h"
#include "sphtrunc/types.h"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sphtrunc::bench
{
struct FluidSnapshot
{
    double time = 0.0;
    PointArray<2> positions;
    std::vector<double> rho;
    PointArray<2> velocity;
    std::vector<double> p;
    std::vector<double> E; ///< empty unless the ideal-gas equation of state is used
    std::vector<double> vorticity;
};

struct SolidSnapshot
{
    double time = 0.0;
    PointArray<3> reference;
    PointArray<3> positions;
    PointArray<3> velocity;
    std::vector<double> von_mises;
};

struct TrajectorySample
{
    EIGEN_MAKE_ALIGNED_OPERATOR_NEW
    double time = 0.0;
    Vec3 tip = Vec3::Zero();
};

/// Shortest round-trip text for doubles: 17 significant digits.
std::string format_double(double value);

/// Columns x,y,rho,u,v,p[,E].
void write_fluid_csv(const std::filesystem::path &path, const FluidSnapshot &snapshot);
/// Columns X0,Y0,Z0,x,y,z,vx,vy,vz,von_mises.
void write_solid_csv(const std::filesystem::path &path, const SolidSnapshot &snapshot);
/// Columns time,z (tip particle height).
void write_trajectory_csv(const std::filesystem::path &path, std::span<const TrajectorySample> samples);
/// Legacy ASCII VTK POLYDATA point cloud with one scalar per named field.
void write_fluid_vtk(const std::filesystem::path &path, const FluidSnapshot &snapshot);
void write_solid_vtk(const std::filesystem::path &path, const SolidSnapshot &snapshot);

/// Columns x[,y[,z]],volume.
template <int Dim>
void write_positions_csv(const std::filesystem::path &path, const PointArray<Dim> &positions,
                         std::span<const double> volumes);
/// Columns step,residual.
void write_residual_csv(const std::filesystem::path &path, std::span<const double> residuals);
/// Columns distribution,kernel,correction,divisions,dp,gradient_l2,unity_l2,observed_order.
void write_study_csv(const std::filesystem::path &path, std::span<const StudyRow> rows);
/// Columns coordinate,value[,reference].
void write_profile_csv(const std::filesystem::path &path, std::span<const double> coordinate,
                       std::span<const double> value, std::span<const double> reference = {});
} // namespace sphtrunc::bench
