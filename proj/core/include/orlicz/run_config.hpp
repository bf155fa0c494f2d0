#ifndef ORLICZ_RUN_CONFIG_HPP
#define ORLICZ_RUN_CONFIG_HPP

#include "orlicz/geometry.hpp"
#include "orlicz/orlicz_function.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace orlicz {

// Plain-text run configuration: [section] headers with key=value lines,
// '#' comments, no locale, no environment. serialize() followed by parse()
// reproduces the configuration exactly.
struct RunConfig {
    // [space]
    int n = 1;
    std::string norm = "linf"; // linf | l1 | l2 | lp:<p>
    double radius = 1.0;
    // [model]
    std::string modulus = "power:1"; // power:<alpha>
    std::string phi = "power:2";     // power:<p>
    // [solver]
    double quad_tol = 1e-9;
    double root_tol = 1e-10;
    int k_max = 200;
    double r_min = 0.0; // 0 means the default 1e-15 * r_0
    // [mc]
    std::uint64_t seed = 12345;
    int pair_count = 200;
    int mc_count = 100000;
    int grid_count = 512;
    int sobolev_grid = 2048;
    int sobolev_mc = 20000;
    // [run]
    int jobs = 1;
    std::string out_dir = "out";

    static RunConfig parse(std::istream& in);          // throws ConfigError
    static RunConfig parse_file(const std::string& path);
    std::string serialize() const;

    // "section.key=value" override, e.g. "solver.k_max=50".
    void apply_override(const std::string& assignment);

    // Range checks: n in [1,6], p > 1, alpha in (0,1], positive tolerances
    // and counts. Throws ConfigError.
    void validate() const;

    NormSpace make_space() const;
    Modulus make_modulus() const;
    OrliczFunction make_phi() const;

    bool operator==(const RunConfig&) const = default;
};

} // namespace orlicz

#endif
