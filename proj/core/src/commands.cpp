#include "orlicz/commands.hpp"
#include "orlicz/bounds.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/extremal_process.hpp"
#include "orlicz/report_io.hpp"
#include "orlicz/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace orlicz {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const RunConfig& config, const std::string& name) {
    fs::create_directories(config.out_dir);
    const fs::path path = fs::path(config.out_dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + path.string());
    return os;
}

SolveOptions solve_options(const RunConfig& config) {
    SolveOptions opt;
    opt.quad_tol = config.quad_tol;
    opt.root_tol = config.root_tol;
    return opt;
}

std::optional<double> r_min_of(const RunConfig& config) {
    if (config.r_min > 0.0) return config.r_min;
    return std::nullopt;
}

template <typename Fn>
int guarded(const RunConfig& config, std::ostream& diag, Fn&& body) {
    try {
        config.validate();
    } catch (const ConfigError& e) {
        diag << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        return body();
    } catch (const ConfigError& e) {
        diag << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        diag << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

} // namespace

int cmd_conjugate(const RunConfig& config, std::ostream& diag) {
    return guarded(config, diag, [&]() {
        const OrliczFunction phi = config.make_phi();
        std::vector<double> xs(50);
        for (int i = 0; i < 50; ++i) xs[static_cast<std::size_t>(i)] =
            std::pow(10.0, -4.0 + 8.0 * i / 49.0);
        auto os = open_out(config, "conjugate.csv");
        write_conjugate_csv(os, phi, xs);
        diag << "conjugate table written (" << xs.size() << " rows)\n";
        return kExitOk;
    });
}

int cmd_partition(const RunConfig& config, std::ostream& diag) {
    return guarded(config, diag, [&]() {
        const NormSpace space = config.make_space();
        const Modulus modulus = config.make_modulus();
        const Partition part =
            build_partition(space, modulus, config.k_max, r_min_of(config));
        auto os = open_out(config, "partition.csv");
        write_partition_csv(os, part);
        if (part.terminal_m)
            diag << "terminal_m=" << *part.terminal_m << "\n";
        else if (part.truncated)
            diag << "truncated after " << part.level_count() << " levels\n";
        return kExitOk;
    });
}

int cmd_bounds(const RunConfig& config, std::ostream& diag) {
    return guarded(config, diag, [&]() {
        const NormSpace space = config.make_space();
        const Modulus modulus = config.make_modulus();
        const OrliczFunction phi = config.make_phi();
        const Partition part =
            build_partition(space, modulus, config.k_max, r_min_of(config));
        const BoundsReport report =
            total_bound(space, modulus, phi, part, solve_options(config));
        {
            auto os = open_out(config, "bounds.csv");
            write_bounds_csv(os, report);
        }
        {
            auto os = open_out(config, "bounds_summary.json");
            os << bounds_summary_json(report);
        }
        diag << "sum=" << format_double(report.sum)
             << " lower_bound=" << format_double(report.lower_bound)
             << " finite=" << (report.finite ? "true" : "false") << "\n";
        return report.finite ? kExitOk : kExitInfinite;
    });
}

int cmd_simulate(const RunConfig& config, std::ostream& diag) {
    return guarded(config, diag, [&]() {
        const NormSpace space = config.make_space();
        const Modulus modulus = config.make_modulus();
        const OrliczFunction phi = config.make_phi();
        const Partition part =
            build_partition(space, modulus, config.k_max, r_min_of(config));
        const BoundsReport report =
            total_bound(space, modulus, phi, part, solve_options(config));
        std::optional<DensityG> density;
        try {
            density.emplace(build_density(space, modulus, phi, report));
        } catch (const InfiniteLevel& e) {
            diag << "density undefined: " << e.what() << "\n";
            return kExitInfinite;
        }
        const IncrementReport increments = verify_increment_condition(
            *density, phi, config.pair_count, config.mc_count, config.seed, config.jobs);
        const SupIdentityReport sup = verify_sup_identity(
            *density, config.grid_count, std::min(config.mc_count, 200), config.seed);
        {
            auto os = open_out(config, "increments.csv");
            write_increments_csv(os, increments);
        }
        const bool sup_pass =
            sup.max_abs_deviation <= 1e-8 * std::max(1.0, std::abs(sup.target));
        {
            auto os = open_out(config, "sup_identity.json");
            os << sup_identity_json(sup, sup_pass);
        }
        diag << "max increment estimate " << format_double(increments.max_estimate)
             << " (stderr " << format_double(increments.std_error_at_max) << ")\n";
        return kExitOk;
    });
}

int cmd_verify_sobolev(const RunConfig& config, std::ostream& diag) {
    return guarded(config, diag, [&]() {
        const NormSpace space = config.make_space();
        const OrliczFunction phi = config.make_phi();
        const auto corpus = standard_corpus(space, config.seed);
        const double probes[] = {0.1, 1.0, 10.0};
        std::vector<SobolevRow> rows;
        bool violated = false;
        for (const auto& f : corpus) {
            for (double a : probes) {
                for (double b : probes) {
                    SobolevRow row;
                    row.tag = f.tag;
                    row.check = check_inequality(space, phi, f, a, b, config.sobolev_grid,
                                              config.sobolev_mc, config.seed);
                    if (!row.check.term1_divergent &&
                        row.check.margin < -1e-6 * row.check.rhs)
                        violated = true;
                    rows.push_back(std::move(row));
                }
            }
        }
        auto os = open_out(config, "sobolev.csv");
        write_sobolev_csv(os, rows);
        diag << rows.size() << " checks written\n";
        if (violated) {
            diag << "inequality violated\n";
            return kExitViolation;
        }
        return kExitOk;
    });
}

} // namespace orlicz
