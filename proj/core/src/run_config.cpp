#include "orlicz/run_config.hpp"
#include "orlicz/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace orlicz {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw ConfigError("trailing characters in " + key);
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("cannot parse number for " + key + ": '" + v + "'");
    }
}

long long parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size()) throw ConfigError("trailing characters in " + key);
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("cannot parse integer for " + key + ": '" + v + "'");
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// "power:<x>" -> x
double spec_number(const std::string& spec, const std::string& family,
                   const std::string& what) {
    const std::string prefix = family + ":";
    if (spec.rfind(prefix, 0) != 0)
        throw ConfigError(what + " spec must look like '" + prefix + "<value>': '" + spec + "'");
    return parse_double(spec.substr(prefix.size()), what);
}

} // namespace

RunConfig RunConfig::parse(std::istream& in) {
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key=value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        cfg.apply_override(section + "." + key + "=" + value);
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse(in);
}

void RunConfig::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like section.key=value: '" + assignment + "'");
    const std::string dotted = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dotpos = dotted.find('.');
    if (dotpos == std::string::npos)
        throw ConfigError("override key must be section.key: '" + dotted + "'");
    const std::string section = dotted.substr(0, dotpos);
    const std::string key = dotted.substr(dotpos + 1);

    auto is = [&](const char* s, const char* k) { return section == s && key == k; };
    if (is("space", "n"))
        n = static_cast<int>(parse_int(value, dotted));
    else if (is("space", "norm"))
        norm = value;
    else if (is("space", "radius"))
        radius = parse_double(value, dotted);
    else if (is("model", "modulus"))
        modulus = value;
    else if (is("model", "phi"))
        phi = value;
    else if (is("solver", "quad_tol"))
        quad_tol = parse_double(value, dotted);
    else if (is("solver", "root_tol"))
        root_tol = parse_double(value, dotted);
    else if (is("solver", "k_max"))
        k_max = static_cast<int>(parse_int(value, dotted));
    else if (is("solver", "r_min"))
        r_min = parse_double(value, dotted);
    else if (is("mc", "seed"))
        seed = static_cast<std::uint64_t>(parse_int(value, dotted));
    else if (is("mc", "pair_count"))
        pair_count = static_cast<int>(parse_int(value, dotted));
    else if (is("mc", "mc_count"))
        mc_count = static_cast<int>(parse_int(value, dotted));
    else if (is("mc", "grid_count"))
        grid_count = static_cast<int>(parse_int(value, dotted));
    else if (is("mc", "sobolev_grid"))
        sobolev_grid = static_cast<int>(parse_int(value, dotted));
    else if (is("mc", "sobolev_mc"))
        sobolev_mc = static_cast<int>(parse_int(value, dotted));
    else if (is("run", "jobs"))
        jobs = static_cast<int>(parse_int(value, dotted));
    else if (is("run", "out_dir"))
        out_dir = value;
    else
        throw ConfigError("unknown configuration key: '" + dotted + "'");
}

std::string RunConfig::serialize() const {
    std::ostringstream os;
    os << "[space]\n"
       << "n=" << n << "\n"
       << "norm=" << norm << "\n"
       << "radius=" << fmt(radius) << "\n"
       << "[model]\n"
       << "modulus=" << modulus << "\n"
       << "phi=" << phi << "\n"
       << "[solver]\n"
       << "quad_tol=" << fmt(quad_tol) << "\n"
       << "root_tol=" << fmt(root_tol) << "\n"
       << "k_max=" << k_max << "\n"
       << "r_min=" << fmt(r_min) << "\n"
       << "[mc]\n"
       << "seed=" << seed << "\n"
       << "pair_count=" << pair_count << "\n"
       << "mc_count=" << mc_count << "\n"
       << "grid_count=" << grid_count << "\n"
       << "sobolev_grid=" << sobolev_grid << "\n"
       << "sobolev_mc=" << sobolev_mc << "\n"
       << "[run]\n"
       << "jobs=" << jobs << "\n"
       << "out_dir=" << out_dir << "\n";
    return os.str();
}

void RunConfig::validate() const {
    if (n < 1 || n > 6) throw ConfigError("space.n must lie in [1, 6]");
    if (!(radius > 0.0)) throw ConfigError("space.radius must be positive");
    if (norm != "linf" && norm != "l1" && norm != "l2") {
        const double p = spec_number(norm, "lp", "space.norm");
        if (!(p >= 1.0)) throw ConfigError("space.norm lp exponent must be >= 1");
    }
    const double alpha = spec_number(modulus, "power", "model.modulus");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw ConfigError("model.modulus power exponent must lie in (0, 1]");
    const double p = spec_number(phi, "power", "model.phi");
    if (!(p > 1.0)) throw ConfigError("model.phi power exponent must exceed 1");
    if (!(quad_tol > 0.0) || !(root_tol > 0.0))
        throw ConfigError("solver tolerances must be positive");
    if (k_max < 1) throw ConfigError("solver.k_max must be >= 1");
    if (r_min < 0.0) throw ConfigError("solver.r_min must be >= 0 (0 = default)");
    if (pair_count < 1 || mc_count < 1 || grid_count < 2 || sobolev_grid < 2 ||
        sobolev_mc < 1)
        throw ConfigError("mc counts must be positive (grids >= 2)");
    if (jobs < 1) throw ConfigError("run.jobs must be >= 1");
}

NormSpace RunConfig::make_space() const {
    if (norm == "linf")
        return NormSpace::lp(n, std::numeric_limits<double>::infinity(), radius);
    if (norm == "l1") return NormSpace::lp(n, 1.0, radius);
    if (norm == "l2") return NormSpace::lp(n, 2.0, radius);
    return NormSpace::lp(n, spec_number(norm, "lp", "space.norm"), radius);
}

Modulus RunConfig::make_modulus() const {
    return Modulus::power(spec_number(modulus, "power", "model.modulus"));
}

OrliczFunction RunConfig::make_phi() const {
    return OrliczFunction::power(spec_number(phi, "power", "model.phi"));
}

} // namespace orlicz
