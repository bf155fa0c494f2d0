#ifndef ORLICZ_GEOMETRY_HPP
#define ORLICZ_GEOMETRY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orlicz {

using Vec = std::vector<double>;

// A norm on R^n together with the ball T = B(0, r) the processes live on.
// The lp and weighted-lp families get exact dual norms and ball volumes;
// generic callables get sampled lower-bound duals and Monte Carlo volumes,
// flagged as approximate.
class NormSpace {
public:
    enum class Kind { Lp, WeightedLp, Generic };

    // p in [1, inf]; pass std::numeric_limits<double>::infinity() for sup-norm.
    static NormSpace lp(int n, double p, double r);
    static NormSpace weighted_lp(std::vector<double> weights, double p, double r);
    static NormSpace generic(int n, std::function<double(std::span<const double>)> norm,
                             double r);

    int dimension() const { return n_; }
    double radius() const { return r_; }
    Kind kind() const { return kind_; }
    double p() const { return p_; }

    double norm(std::span<const double> v) const;

    // sup_{||u|| <= 1} |<u, v>|. Analytic for the lp families; for generic
    // norms a certified lower bound from 1e5 sampled unit-sphere directions.
    double dual_norm(std::span<const double> v) const;
    bool dual_norm_exact() const { return kind_ != Kind::Generic; }

    // |B(0,1)|. Closed form 2^n Gamma(1+1/p)^n / Gamma(1+n/p) for lp kinds;
    // rejection Monte Carlo for generic kinds (standard error reported).
    double unit_ball_volume() const { return ball_volume_; }
    double unit_ball_volume_std_error() const { return ball_volume_se_; }
    bool volume_exact() const { return kind_ != Kind::Generic; }

    struct BallSample {
        std::vector<Vec> points;
        double acceptance_rate = 1.0;
    };
    // `count` points uniform on B(0, r), rejection from the bounding box,
    // deterministic given seed. Throws RejectionStalled below acceptance 1e-6.
    BallSample sample_ball(int count, std::uint64_t seed) const;

    // One uniform point; convenience wrapper over the same rejection loop.
    Vec sample_point(class Rng& rng) const;

    // Per-axis halfwidth of the bounding box of B(0, r).
    double box_halfwidth(int axis) const { return box_half_[static_cast<std::size_t>(axis)]; }

private:
    NormSpace() = default;
    void finish_setup();

    int n_ = 0;
    double r_ = 1.0;
    Kind kind_ = Kind::Lp;
    double p_ = 2.0;
    std::vector<double> weights_;
    std::function<double(std::span<const double>)> custom_;
    std::vector<double> box_half_;
    double ball_volume_ = 0.0;
    double ball_volume_se_ = 0.0;
};

// The concave distortion eta defining the metric d(s,t) = eta(||s-t||).
class Modulus {
public:
    // x^alpha, 0 < alpha <= 1. eta'(0) = inf exactly when alpha < 1.
    static Modulus power(double alpha);
    static Modulus identity() { return power(1.0); }

    // Piecewise-linear concave cap: slope0 x up to the knee, tail_slope
    // beyond. Finite derivative at zero; 0 < tail_slope < slope0.
    static Modulus capped_linear(double slope0, double knee, double tail_slope);

    static Modulus custom(std::function<double(double)> eta,
                          std::function<double(double)> eta_inverse,
                          double derivative_at_zero);

    double operator()(double x) const { return eta_(x); }
    double inverse(double y) const { return eta_inv_(y); }
    double derivative_at_zero() const { return d0_; }
    bool finite_derivative_at_zero() const;
    std::optional<double> power_alpha() const { return alpha_; }

private:
    Modulus() = default;
    void validate_shape() const; // throws NonConcaveModulus

    std::function<double(double)> eta_;
    std::function<double(double)> eta_inv_;
    double d0_ = 1.0;
    std::optional<double> alpha_;
};

// d(s, t) = eta(||s - t||); throws DimensionMismatch on length mismatch.
double metric(const NormSpace& space, const Modulus& modulus,
              std::span<const double> s, std::span<const double> t);

// Interior-ball measure value min(1, eta^{-1}(eps)^n / r^n).
double ball_measure_fraction(const NormSpace& space, const Modulus& modulus, double eps);

} // namespace orlicz

#endif
