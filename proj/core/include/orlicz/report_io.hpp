#ifndef ORLICZ_REPORT_IO_HPP
#define ORLICZ_REPORT_IO_HPP

#include "orlicz/bounds.hpp"
#include "orlicz/extremal_process.hpp"
#include "orlicz/sobolev.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace orlicz {

// All CSV output uses '.' decimals and 17 significant digits so reruns with
// the same configuration are byte-identical.
std::string format_double(double v);

void write_bounds_csv(std::ostream& os, const BoundsReport& report);
std::string bounds_summary_json(const BoundsReport& report);

void write_increments_csv(std::ostream& os, const IncrementReport& report);
std::string sup_identity_json(const SupIdentityReport& report, bool pass);

struct SobolevRow {
    std::string tag;
    SobolevCheck check;
};
void write_sobolev_csv(std::ostream& os, const std::vector<SobolevRow>& rows);

void write_conjugate_csv(std::ostream& os, const OrliczFunction& phi,
                         const std::vector<double>& xs);

} // namespace orlicz

#endif
