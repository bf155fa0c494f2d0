#ifndef ORLICZ_EXTREMAL_PROCESS_HPP
#define ORLICZ_EXTREMAL_PROCESS_HPP

#include "orlicz/bounds.hpp"
#include "orlicz/geometry.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/partition.hpp"

#include <cstdint>
#include <vector>

namespace orlicz {

// The lower-bound witness density
//   g(eps) = K^{-1} (S_k lam(eps) / eps) psi(eps / (S_k lam(eps)))
// on each level (r_{k+1}, r_k], zero above eta(r), with K = 3(n + 2).
// Carries a per-level antiderivative table G(eps) = int_0^eps g refined until
// the interpolation error is below 1e-8 of the level mass, so that path
// evaluation is table lookups rather than quadrature.
class DensityG {
public:
    double operator()(double eps) const;     // the piecewise formula
    double antiderivative(double eps) const; // table-backed G
    double total_mass() const { return total_mass_; }     // K^{-1} sum S_k
    double level_mass(int k) const { return masses_[static_cast<std::size_t>(k)]; }
    double level_s(int k) const { return s_values_[static_cast<std::size_t>(k)]; }
    double big_k() const { return big_k_; }

    const Partition& partition() const { return partition_; }
    const NormSpace& space() const { return space_; }
    const Modulus& modulus() const { return modulus_; }

    friend DensityG build_density(const NormSpace&, const Modulus&,
                                  const OrliczFunction&, const BoundsReport&);

private:
    struct LevelTable {
        double lo = 0.0, hi = 0.0;
        double base = 0.0;  // G at lo
        double scale = 1.0; // normalizes the tabulated mass to K^{-1} S_k
        double ramp_edge = 0.0, ramp_mass = 0.0; // sub-resolution tail at a terminal level
        std::vector<double> x, g_raw, g_cum;      // nodes, slopes, cumulative raw mass
    };

    DensityG(NormSpace space, Modulus modulus, OrliczFunction psi, Partition partition);
    int level_of(double eps) const;

    NormSpace space_;
    Modulus modulus_;
    OrliczFunction psi_;
    Partition partition_;
    std::vector<double> s_values_;
    std::vector<double> masses_;
    std::vector<LevelTable> tables_;
    double big_k_ = 0.0;
    double total_mass_ = 0.0;
};

// Throws InfiniteLevel when the report carries an infinite level constant.
DensityG build_density(const NormSpace& space, const Modulus& modulus,
                       const OrliczFunction& phi, const BoundsReport& report);

// X(t, omega) = G(d(omega, t)) - G(d(omega, 0)) per point. Throws OutOfBall
// when an input leaves T by more than 1e-12 r.
std::vector<double> evaluate_path(const DensityG& density, const Vec& omega,
                                  const std::vector<Vec>& points);

struct PairEstimate {
    Vec s, t;
    double d = 0.0;
    double estimate = 0.0;  // Monte Carlo mean of phi(|X(s) - X(t)| / d)
    double std_error = 0.0;
};

struct IncrementReport {
    std::vector<PairEstimate> pairs;
    double max_estimate = 0.0;
    double std_error_at_max = 0.0;
};

// Draws pair_count (s, t) pairs -- alternating uniform pairs and
// near-diagonal pairs stratified so d(s, t) lands inside each level whose
// width the floating-point grid can represent -- and estimates
// E phi(|X(s) - X(t)| / d(s, t)) over mc_count omega samples per pair.
// Deterministic given seed, independent of the worker count.
IncrementReport verify_increment_condition(const DensityG& density,
                                           const OrliczFunction& phi,
                                           int pair_count, int mc_count,
                                           std::uint64_t seed, int jobs = 1);

struct SupIdentityReport {
    double empirical_mean_sup = 0.0;
    double target = 0.0;             // K^{-1} sum S_k
    double max_abs_deviation = 0.0;  // over sampled omegas, extremizers included
    int omega_count = 0;
};

// Per omega, evaluates the path on a grid that includes omega itself and its
// antipodal boundary point ((||omega|| - r) / ||omega||) omega; with those two
// extremizers the per-omega sup equals the target exactly (up to the table
// interpolation error), independent of omega.
SupIdentityReport verify_sup_identity(const DensityG& density, int grid_count,
                                      int mc_count, std::uint64_t seed);

} // namespace orlicz

#endif
