#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphtrunc
{
template <int Dim>
using Vec = Eigen::Matrix<double, Dim, 1>;
template <int Dim>
using Mat = Eigen::Matrix<double, Dim, Dim>;

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;
using Mat2 = Mat<2>;
using Mat3 = Mat<3>;

template <int Dim>
using PointArray = std::vector<Vec<Dim>, Eigen::aligned_allocator<Vec<Dim>>>;
template <int Dim>
using MatrixArray = std::vector<Mat<Dim>, Eigen::aligned_allocator<Mat<Dim>>>;

using Index = std::uint32_t;

//=================================================================================================//
// Error taxonomy. The CLI maps ConfigError to exit code 3 and SolverError to exit code 2.
//=================================================================================================//
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

class InputError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Relaxation residual blew up or never settled.
class NonConvergenceError : public SolverError
{
  public:
    using SolverError::SolverError;
};
} // namespace sphtrunc
