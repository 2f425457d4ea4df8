#include "sphtrunc/bench/drag_lift.h"

#include <cmath>

namespace sphtrunc::bench
{
double force_coefficient(double force, double rho, double u, double area)
{
    if (!(rho > 0.0) || !(area > 0.0) || u == 0.0)
        throw DomainError("force coefficient needs positive density, area and a nonzero reference speed");
    return 2.0 * force / (rho * u * u * area);
}

DragLiftResult drag_lift(std::span<const ForceSample> history, double rho, double u, double area, double length,
                         double t_transient)
{
    if (!(length > 0.0))
        throw DomainError("Strouhal length must be positive");
    DragLiftResult out;
    out.time.reserve(history.size());
    for (const auto &s : history)
    {
        out.time.push_back(s.time);
        out.cd.push_back(force_coefficient(s.force.x(), rho, u, area));
        out.cl.push_back(force_coefficient(s.force.y(), rho, u, area));
    }

    // one peak per positive lobe of C_L, so ripples inside a lobe are not counted twice
    double sum = 0.0;
    std::size_t count = 0;
    std::vector<double> peak_times;
    bool in_lobe = false;
    bool lobe_complete = false; ///< the lobe started after a negative excursion
    bool seen_negative = false;
    double lobe_max = 0.0;
    double lobe_time = 0.0;
    for (std::size_t k = 0; k < out.time.size(); ++k)
    {
        if (out.time[k] < t_transient)
            continue;
        sum += out.cd[k];
        ++count;
        const double cl = out.cl[k];
        if (cl > 0.0)
        {
            if (!in_lobe)
            {
                in_lobe = true;
                lobe_complete = seen_negative;
                lobe_max = cl;
                lobe_time = out.time[k];
            }
            else if (cl > lobe_max)
            {
                lobe_max = cl;
                lobe_time = out.time[k];
            }
        }
        else if (cl < 0.0)
        {
            if (in_lobe && lobe_complete)
                peak_times.push_back(lobe_time);
            in_lobe = false;
            seen_negative = true;
        }
    }
    if (count > 0)
        out.mean_cd = sum / static_cast<double>(count);
    out.peaks = peak_times.size();
    if (peak_times.size() < 2)
    {
        out.note = "fewer than two lift maxima after the transient; series shorter than one shedding period";
        return out;
    }
    const double period = (peak_times.back() - peak_times.front()) / static_cast<double>(peak_times.size() - 1);
    if (period > 0.0)
        out.strouhal = length / (period * std::abs(u));
    else
        out.note = "degenerate lift peaks";
    return out;
}
} // namespace sphtrunc::bench
