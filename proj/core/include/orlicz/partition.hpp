#ifndef ORLICZ_PARTITION_HPP
#define ORLICZ_PARTITION_HPP

#include "orlicz/geometry.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace orlicz {

enum class LevelLabel : char { I = 'I', J = 'J' };

// The decreasing scale sequence r_0 > r_1 > ... with r_0 = eta(r). Step k
// spans (r_{k+1}, r_k]; its label says which stopping rule fired: I for
// radius halving r_k = 2 r_{k+1}, J for doubling of eps/eta^{-1}(eps). When
// eta'(0) < inf the recursion bottoms out at some m with r_{m+1} = 0; that
// step is recorded as terminal (label J, no stored radius below it).
struct Partition {
    std::vector<double> radii;       // r_0 .. r_last, strictly decreasing, > 0
    std::vector<LevelLabel> labels;  // one per step, terminal step included
    std::optional<int> terminal_m;
    bool truncated = false;          // cut by k_max or r_min, not by terminal_m

    int level_count() const {
        return terminal_m ? static_cast<int>(radii.size())
                          : static_cast<int>(radii.size()) - 1;
    }
    double upper_radius(int k) const { return radii[static_cast<std::size_t>(k)]; }
    double lower_radius(int k) const {
        if (terminal_m && k == *terminal_m) return 0.0;
        return radii[static_cast<std::size_t>(k) + 1];
    }
    bool is_terminal_level(int k) const { return terminal_m && k == *terminal_m; }
};

// Builds the sequence: r_{k+1} = inf{eps >= 0 : r_k <= 2 eps or
// eps/eta^{-1}(eps) <= 2 r_k/eta^{-1}(r_k)} = min(r_k/2, c_k), with c_k the
// leftmost root of the nonincreasing map eps -> eps/eta^{-1}(eps) against
// twice its value at r_k (c_k = 0 when no positive root exists). Ties label I.
// Stops at terminal_m, k_max levels, or when r_k < r_min (default
// 1e-15 * r_0). Throws NonConcaveModulus if eps/eta^{-1}(eps) fails its
// monotonicity probe.
Partition build_partition(const NormSpace& space, const Modulus& modulus,
                          int k_max = 200, std::optional<double> r_min = std::nullopt);

// CSV rows (k, r_k, label); the trailing truncated radius gets label "-".
void write_partition_csv(std::ostream& os, const Partition& partition);

} // namespace orlicz

#endif
