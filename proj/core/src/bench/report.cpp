#include "sphtrunc/bench/report.h"

#include "sphtrunc/types.h"

#include <json.hpp>

#include <fstream>

namespace sphtrunc::bench
{
namespace
{
nlohmann::ordered_json optional_value(const std::optional<double> &value)
{
    if (value && std::isfinite(*value))
        return *value;
    return nullptr;
}

nlohmann::ordered_json metric_object(const MetricMap &metrics)
{
    auto out = nlohmann::ordered_json::object();
    for (const auto &[key, value] : metrics)
        out[key] = optional_value(value);
    return out;
}

nlohmann::ordered_json report_object(const RunReport &r)
{
    nlohmann::ordered_json j;
    j["case"] = r.case_name;
    j["kind"] = r.kind;
    j["kernel"] = r.kernel;
    j["solver"] = r.solver;
    j["dp"] = r.dp;
    j["workers"] = r.workers;
    j["seed"] = r.seed;
    j["status"] = r.status;
    if (!r.message.empty())
        j["message"] = r.message;
    j["wall_clock_s"] = r.wall_clock;
    j["timing_protocol"] = r.timing_protocol;
    j["steps"] = r.steps;
    j["end_time"] = r.end_time;
    j["particles"] = r.particles;
    j["ghosts"] = r.ghosts;
    j["mean_neighbors"] = r.mean_neighbors;
    j["pair_count"] = r.pair_count;
    j["regularized_corrections"] = r.regularized;
    j["dt"] = {{"min", r.dt.min}, {"max", r.dt.max}, {"mean", r.dt.mean}, {"last", r.dt.last}};
    j["conservation"] = {{"mass_drift", optional_value(r.conservation.mass_drift)},
                         {"momentum_drift", optional_value(r.conservation.momentum_drift)},
                         {"energy_drift", optional_value(r.conservation.energy_drift)}};
    j["metrics"] = metric_object(r.metrics);
    return j;
}
} // namespace

std::string RunReport::to_json() const
{
    return report_object(*this).dump(2);
}

double alpha_ratio(double t_tw, double t_sw)
{
    if (!(t_sw > 0.0))
        throw DomainError("alpha needs a positive standard-kernel time");
    if (!(t_tw > 0.0))
        throw DomainError("alpha needs a positive truncated-kernel time");
    return t_tw / t_sw;
}

std::string PairReport::to_json() const
{
    nlohmann::ordered_json j;
    j["alpha"] = alpha;
    j["t_sw_s"] = sw.wall_clock;
    j["t_tw_s"] = tw.wall_clock;
    j["differences"] = metric_object(differences);
    j["sw"] = report_object(sw);
    j["tw"] = report_object(tw);
    return j.dump(2);
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write '" + path.string() + "'");
    out << text << '\n';
}
} // namespace sphtrunc::bench
