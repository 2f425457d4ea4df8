#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace sphtrunc::bench
{
/// Metric value or an explicit "unavailable" marker (serialized as null).
using MetricMap = std::map<std::string, std::optional<double>>;

struct DtSummary
{
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double last = 0.0;
};

struct ConservationAudit
{
    std::optional<double> mass_drift;     ///< |M1 - M0| / M0
    std::optional<double> momentum_drift; ///< |P1 - P0| / sum vol rho |v| at t = 0
    std::optional<double> energy_drift;   ///< |E1 - E0| / E0 (total energy; kinetic + strain for solids)
};

struct RunReport
{
    std::string case_name;
    std::string kind;
    std::string kernel;
    std::string solver;
    double dp = 0.0;
    int workers = 1;
    std::uint64_t seed = 0;
    double wall_clock = 0.0; ///< seconds inside the solver loop
    std::size_t steps = 0;
    double end_time = 0.0;
    std::size_t particles = 0;
    std::size_t ghosts = 0;
    double mean_neighbors = 0.0;
    std::size_t pair_count = 0;
    std::size_t regularized = 0; ///< correction matrices that needed regularization
    DtSummary dt;
    ConservationAudit conservation;
    MetricMap metrics;
    std::string timing_protocol = "wall clock around the time-step loop only; setup, relaxation and output excluded";
    std::string status = "ok";
    std::string message;

    std::string to_json() const;
};

/// wall-clock ratio truncated / standard. Throws DomainError unless both times are positive.
double alpha_ratio(double t_tw, double t_sw);

struct PairReport
{
    RunReport sw;
    RunReport tw;
    double alpha = 0.0;
    MetricMap differences;

    std::string to_json() const;
};

void write_text(const std::filesystem::path &path, const std::string &text);
} // namespace sphtrunc::bench
