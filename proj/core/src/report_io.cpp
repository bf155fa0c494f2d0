#include "orlicz/report_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>

namespace orlicz {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

// nlohmann/json maps non-finite doubles to null; store them as tagged strings.
nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return "nan";
}

} // namespace

void write_bounds_csv(std::ostream& os, const BoundsReport& report) {
    os << "k,r_k,label,S_k,residual,bracket_lo,bracket_hi\n";
    const Partition& part = report.partition;
    for (int k = 0; k < part.level_count(); ++k) {
        const auto idx = static_cast<std::size_t>(k);
        os << k << ',' << format_double(part.upper_radius(k)) << ','
           << static_cast<char>(part.labels[idx]) << ','
           << format_double(report.s_values[idx]) << ','
           << format_double(report.residuals[idx]) << ','
           << format_double(report.brackets[idx].lo) << ',';
        if (report.brackets[idx].hi) os << format_double(*report.brackets[idx].hi);
        os << '\n';
    }
}

std::string bounds_summary_json(const BoundsReport& report) {
    nlohmann::json j;
    j["sum"] = json_number(report.sum);
    j["lower_bound"] = json_number(report.lower_bound);
    j["lower_constant"] = report.lower_constant;
    j["finite"] = report.finite;
    j["tail_bound"] = json_number(report.tail_bound);
    j["truncated"] = report.truncated;
    j["levels"] = report.s_values.size();
    return j.dump(2) + "\n";
}

void write_increments_csv(std::ostream& os, const IncrementReport& report) {
    if (report.pairs.empty()) return;
    const std::size_t n = report.pairs.front().s.size();
    os << "pair";
    for (std::size_t i = 0; i < n; ++i) os << ",s" << i;
    for (std::size_t i = 0; i < n; ++i) os << ",t" << i;
    os << ",d,estimate,stderr\n";
    for (std::size_t p = 0; p < report.pairs.size(); ++p) {
        const auto& pr = report.pairs[p];
        os << p;
        for (double c : pr.s) os << ',' << format_double(c);
        for (double c : pr.t) os << ',' << format_double(c);
        os << ',' << format_double(pr.d) << ',' << format_double(pr.estimate) << ','
           << format_double(pr.std_error) << '\n';
    }
}

std::string sup_identity_json(const SupIdentityReport& report, bool pass) {
    nlohmann::json j;
    j["empirical_mean_sup"] = json_number(report.empirical_mean_sup);
    j["target"] = json_number(report.target);
    j["max_abs_deviation"] = json_number(report.max_abs_deviation);
    j["omega_count"] = report.omega_count;
    j["pass"] = pass;
    return j.dump(2) + "\n";
}

void write_sobolev_csv(std::ostream& os, const std::vector<SobolevRow>& rows) {
    os << "function,A,B,lhs,term1,term2,rhs,margin,stderr,term1_divergent,"
          "excluded_fraction\n";
    for (const auto& row : rows) {
        const auto& c = row.check;
        os << row.tag << ',' << format_double(c.A) << ',' << format_double(c.B) << ','
           << format_double(c.lhs) << ',' << format_double(c.term1) << ','
           << format_double(c.term2) << ',' << format_double(c.rhs) << ','
           << format_double(c.margin) << ',' << format_double(c.term2_std_error) << ','
           << (c.term1_divergent ? 1 : 0) << ',' << format_double(c.excluded_fraction)
           << '\n';
    }
}

void write_conjugate_csv(std::ostream& os, const OrliczFunction& phi,
                         const std::vector<double>& xs) {
    const OrliczFunction psi = conjugate(phi);
    os << "x,phi,psi,young_gap\n";
    for (double x : xs) {
        os << format_double(x) << ',' << format_double(phi(x)) << ','
           << format_double(psi(x)) << ',' << format_double(young_gap(phi, psi, x, x))
           << '\n';
    }
}

} // namespace orlicz
