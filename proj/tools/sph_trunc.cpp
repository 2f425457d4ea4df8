// sph-trunc: run, pair, relax and error-study front end.
//
// Exit codes: 0 success, 2 solver abort, 3 configuration error, 1 anything else.

#include "sphtrunc/bench/config.h"
#include "sphtrunc/bench/output.h"
#include "sphtrunc/bench/runner.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace
{
using namespace sphtrunc;
using namespace sphtrunc::bench;

struct CommonFlags
{
    std::optional<int> workers;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool quiet = false;
};

CaseConfig load_with_overrides(const std::string &path, const CommonFlags &flags)
{
    CaseConfig config = load_case_config(path);
    if (flags.workers)
        config.workers = *flags.workers;
    if (flags.seed)
        config.seed = *flags.seed;
    config.validate();
    return config;
}

RunOptions run_options(const CommonFlags &flags)
{
    RunOptions options;
    options.out_dir = flags.out;
    if (!flags.quiet)
        options.log = [](const std::string &line) { std::cerr << line << '\n'; };
    return options;
}

void print_metrics(const MetricMap &metrics)
{
    for (const auto &[key, value] : metrics)
        std::cout << "  " << key << " = " << (value ? format_double(*value) : "unavailable") << '\n';
}

void print_report(const RunReport &r)
{
    std::cout << r.case_name << " [" << r.kernel << "] status " << r.status << ": " << r.steps << " steps to t = "
              << format_double(r.end_time) << ", " << format_double(r.wall_clock) << " s, " << r.particles
              << " particles\n";
    print_metrics(r.metrics);
}

int run_command(const std::string &path, const CommonFlags &flags)
{
    const auto config = load_with_overrides(path, flags);
    const auto result = run_case(config, run_options(flags));
    if (flags.out.empty())
        std::cout << result.report.to_json() << '\n';
    else
        print_report(result.report);
    return 0;
}

int pair_command(const std::string &path, const CommonFlags &flags)
{
    const auto config = load_with_overrides(path, flags);
    const auto pair = paired_run(config, run_options(flags));
    if (flags.out.empty())
    {
        std::cout << pair.report.to_json() << '\n';
        return 0;
    }
    print_report(pair.sw.report);
    print_report(pair.tw.report);
    std::cout << "alpha = " << format_double(pair.report.alpha) << '\n';
    print_metrics(pair.report.differences);
    return 0;
}

int relax_command(const std::string &path, const CommonFlags &flags)
{
    const auto config = load_with_overrides(path, flags);
    const auto relaxed = relax_case(config);
    const std::filesystem::path out = flags.out.empty() ? std::filesystem::path(".") : std::filesystem::path(flags.out);
    write_positions_csv<2>(out / "positions.csv", relaxed.positions, relaxed.volumes);
    write_residual_csv(out / "residuals.csv", relaxed.residual_history);
    std::cout << relaxed.positions.size() << " particles, " << relaxed.steps << " steps, converged "
              << (relaxed.converged ? "yes" : "no") << ", final residual "
              << format_double(relaxed.residual_history.empty() ? 0.0 : relaxed.residual_history.back()) << '\n';
    return 0;
}

int study_command(const std::string &path, const CommonFlags &flags)
{
    const auto study = load_study_config(path);
    std::vector<StudyRow> rows;
    for (const auto distribution : study.distributions)
    {
        if (!flags.quiet)
            std::cerr << "error study: " << to_string(distribution) << '\n';
        auto part = full_study(distribution, study.divisions, study.settings);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    const std::filesystem::path out = flags.out.empty() ? std::filesystem::path(".") : std::filesystem::path(flags.out);
    write_study_csv(out / "error_study.csv", rows);
    std::printf("%-22s %-20s %-4s %5s %12s %12s %7s\n", "distribution", "kernel", "corr", "D/dp", "grad_l2",
                "unity_l2", "order");
    for (const auto &r : rows)
        std::printf("%-22s %-20s %-4s %5d %12.4e %12.4e %7.3f\n", std::string(to_string(r.distribution)).c_str(),
                    std::string(to_string(r.kernel)).c_str(), r.correction ? "on" : "off", r.divisions,
                    r.gradient_l2, r.unity_l2, r.observed_order);
    return 0;
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Truncated-Wendland SPH engine: benchmark cases, paired timing runs, relaxation and error studies"};
    app.require_subcommand(1);
    CommonFlags flags;
    std::string path;

    const auto add_common = [&](CLI::App *cmd, const char *what) {
        cmd->add_option("config", path, what)->required();
        cmd->add_option("--workers", flags.workers, "worker threads (overrides the config)")->check(CLI::PositiveNumber);
        cmd->add_option("--out", flags.out, "output directory");
        cmd->add_option("--seed", flags.seed, "random seed (overrides the config)");
        cmd->add_flag("--quiet", flags.quiet, "no progress lines on stderr");
    };
    auto *run = app.add_subcommand("run", "run one case");
    add_common(run, "case file");
    auto *pair = app.add_subcommand("pair", "run a case with the standard and the truncated kernel and report alpha");
    add_common(pair, "case file");
    auto *relax = app.add_subcommand("relax", "relax the body-fitted fill of a case and write positions.csv");
    add_common(relax, "case file");
    auto *study = app.add_subcommand("error-study", "approximation error table on the circle");
    add_common(study, "study file");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try
    {
        if (*run)
            return run_command(path, flags);
        if (*pair)
            return pair_command(path, flags);
        if (*relax)
            return relax_command(path, flags);
        return study_command(path, flags);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 3;
    }
    catch (const SolverError &e)
    {
        std::cerr << "solver aborted: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
