#include "orlicz/geometry.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/rng.hpp"

#include <cmath>
#include <limits>
#include <algorithm>

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lp_norm(std::span<const double> v, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (double x : v) s += std::abs(x);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

double weighted_lp_norm(std::span<const double> v, std::span<const double> w, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += w[i] * std::pow(std::abs(v[i]), p);
    return std::pow(s, 1.0 / p);
}

double holder_exponent(double p) {
    if (p == 1.0) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

double lp_unit_ball_volume(int n, double p) {
    if (std::isinf(p)) return std::pow(2.0, n);
    // 2^n Gamma(1 + 1/p)^n / Gamma(1 + n/p)
    const double ln = n * std::log(2.0) + n * std::lgamma(1.0 + 1.0 / p) -
                      std::lgamma(1.0 + static_cast<double>(n) / p);
    return std::exp(ln);
}

} // namespace

NormSpace NormSpace::lp(int n, double p, double r) {
    if (n < 1) throw DimensionMismatch("dimension must be positive");
    if (!(p >= 1.0)) throw NonConvexInput("lp exponent must be >= 1");
    if (!(r > 0.0)) throw NonConvexInput("radius must be positive");
    NormSpace s;
    s.n_ = n;
    s.r_ = r;
    s.kind_ = Kind::Lp;
    s.p_ = p;
    s.finish_setup();
    return s;
}

NormSpace NormSpace::weighted_lp(std::vector<double> weights, double p, double r) {
    if (weights.empty()) throw DimensionMismatch("weights must be nonempty");
    for (double w : weights)
        if (!(w > 0.0)) throw NonConvexInput("weights must be positive");
    if (!(p >= 1.0) || std::isinf(p))
        throw NonConvexInput("weighted-lp exponent must be finite and >= 1");
    if (!(r > 0.0)) throw NonConvexInput("radius must be positive");
    NormSpace s;
    s.n_ = static_cast<int>(weights.size());
    s.r_ = r;
    s.kind_ = Kind::WeightedLp;
    s.p_ = p;
    s.weights_ = std::move(weights);
    s.finish_setup();
    return s;
}

NormSpace NormSpace::generic(int n, std::function<double(std::span<const double>)> norm,
                             double r) {
    if (n < 1) throw DimensionMismatch("dimension must be positive");
    if (!(r > 0.0)) throw NonConvexInput("radius must be positive");
    NormSpace s;
    s.n_ = n;
    s.r_ = r;
    s.kind_ = Kind::Generic;
    s.custom_ = std::move(norm);
    s.finish_setup();
    return s;
}

void NormSpace::finish_setup() {
    box_half_.assign(static_cast<std::size_t>(n_), r_);
    switch (kind_) {
    case Kind::Lp:
        // sup of |x_i| over the unit lp ball is 1 for every p.
        ball_volume_ = lp_unit_ball_volume(n_, p_);
        return;
    case Kind::WeightedLp: {
        double shrink = 0.0; // log of prod w_i^{-1/p}
        for (int i = 0; i < n_; ++i) {
            const double h = std::pow(weights_[static_cast<std::size_t>(i)], -1.0 / p_);
            box_half_[static_cast<std::size_t>(i)] = r_ * h;
            shrink += std::log(h);
        }
        ball_volume_ = lp_unit_ball_volume(n_, p_) * std::exp(shrink);
        return;
    }
    case Kind::Generic: {
        // Halfwidths from sampled unit-sphere directions (sup of |x_i| over
        // the sphere), inflated 5% since the sampled dual is a lower bound.
        Rng rng(0x0b5e55edULL);
        std::vector<double> hw(static_cast<std::size_t>(n_), 0.0);
        Vec dir(static_cast<std::size_t>(n_));
        for (int k = 0; k < 4096; ++k) {
            for (auto& c : dir) c = rng.normal();
            const double nv = custom_(dir);
            if (!(nv > 0.0)) continue;
            for (int i = 0; i < n_; ++i)
                hw[static_cast<std::size_t>(i)] =
                    std::max(hw[static_cast<std::size_t>(i)],
                             std::abs(dir[static_cast<std::size_t>(i)]) / nv);
        }
        for (int i = 0; i < n_; ++i)
            box_half_[static_cast<std::size_t>(i)] = r_ * hw[static_cast<std::size_t>(i)] * 1.05;
        // Rejection Monte Carlo volume of the unit ball in its own box.
        Rng vr(0x0f01dedULL);
        const long trials = 1000000;
        long hits = 0;
        Vec x(static_cast<std::size_t>(n_));
        for (long t = 0; t < trials; ++t) {
            for (int i = 0; i < n_; ++i)
                x[static_cast<std::size_t>(i)] =
                    vr.uniform(-hw[static_cast<std::size_t>(i)] * 1.05,
                               hw[static_cast<std::size_t>(i)] * 1.05);
            if (custom_(x) <= 1.0) ++hits;
        }
        double box_vol = 1.0;
        for (int i = 0; i < n_; ++i) box_vol *= 2.0 * hw[static_cast<std::size_t>(i)] * 1.05;
        const double frac = static_cast<double>(hits) / static_cast<double>(trials);
        ball_volume_ = box_vol * frac;
        ball_volume_se_ =
            box_vol * std::sqrt(frac * (1.0 - frac) / static_cast<double>(trials));
        return;
    }
    }
}

double NormSpace::norm(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != n_)
        throw DimensionMismatch("vector length does not match dimension");
    switch (kind_) {
    case Kind::Lp:
        return lp_norm(v, p_);
    case Kind::WeightedLp:
        return weighted_lp_norm(v, weights_, p_);
    case Kind::Generic:
        return custom_(v);
    }
    return 0.0;
}

double NormSpace::dual_norm(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != n_)
        throw DimensionMismatch("vector length does not match dimension");
    switch (kind_) {
    case Kind::Lp:
        return lp_norm(v, holder_exponent(p_));
    case Kind::WeightedLp: {
        // dual of (sum w |x|^p)^{1/p} is (sum w^{1-q} |v|^q)^{1/q}
        const double q = holder_exponent(p_);
        if (std::isinf(q)) {
            double m = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i)
                m = std::max(m, std::abs(v[i]) / weights_[i]);
            return m;
        }
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += std::pow(weights_[i], 1.0 - q) * std::pow(std::abs(v[i]), q);
        return std::pow(s, 1.0 / q);
    }
    case Kind::Generic: {
        // Lower bound: max of |<u, v>| over sampled unit-sphere directions.
        Rng rng(0xd0a1ULL);
        Vec dir(static_cast<std::size_t>(n_));
        double best = 0.0;
        for (int k = 0; k < 100000; ++k) {
            for (auto& c : dir) c = rng.normal();
            const double nv = custom_(dir);
            if (!(nv > 0.0)) continue;
            double dot = 0.0;
            for (std::size_t i = 0; i < dir.size(); ++i) dot += dir[i] * v[i];
            best = std::max(best, std::abs(dot) / nv);
        }
        return best;
    }
    }
    return 0.0;
}

Vec NormSpace::sample_point(Rng& rng) const {
    Vec x(static_cast<std::size_t>(n_));
    for (long tries = 0;; ++tries) {
        for (int i = 0; i < n_; ++i) {
            const double h = box_half_[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] = rng.uniform(-h, h);
        }
        if (norm(x) <= r_) return x;
        if (tries > 2000000)
            throw RejectionStalled("ball rejection sampler acceptance below 1e-6");
    }
}

NormSpace::BallSample NormSpace::sample_ball(int count, std::uint64_t seed) const {
    if (count < 1) throw NonConvexInput("sample count must be >= 1");
    BallSample out;
    out.points.reserve(static_cast<std::size_t>(count));
    Rng rng(seed);
    long proposals = 0;
    Vec x(static_cast<std::size_t>(n_));
    while (static_cast<int>(out.points.size()) < count) {
        for (int i = 0; i < n_; ++i) {
            const double h = box_half_[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] = rng.uniform(-h, h);
        }
        ++proposals;
        if (norm(x) <= r_) out.points.push_back(x);
        if (proposals >= 2000000 &&
            static_cast<double>(out.points.size()) < 1e-6 * static_cast<double>(proposals))
            throw RejectionStalled("ball rejection sampler acceptance below 1e-6");
    }
    out.acceptance_rate = static_cast<double>(count) / static_cast<double>(proposals);
    return out;
}

Modulus Modulus::power(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw NonConcaveModulus("power modulus needs alpha in (0, 1]");
    Modulus m;
    m.eta_ = [alpha](double x) { return std::pow(x, alpha); };
    m.eta_inv_ = [alpha](double y) { return std::pow(y, 1.0 / alpha); };
    m.d0_ = alpha < 1.0 ? kInf : 1.0;
    m.alpha_ = alpha;
    return m;
}

Modulus Modulus::capped_linear(double slope0, double knee, double tail_slope) {
    if (!(slope0 > 0.0) || !(knee > 0.0) || !(tail_slope > 0.0) || !(tail_slope < slope0))
        throw NonConcaveModulus("capped_linear needs 0 < tail_slope < slope0 and knee > 0");
    Modulus m;
    const double y_knee = slope0 * knee;
    m.eta_ = [=](double x) {
        return x <= knee ? slope0 * x : y_knee + tail_slope * (x - knee);
    };
    m.eta_inv_ = [=](double y) {
        return y <= y_knee ? y / slope0 : knee + (y - y_knee) / tail_slope;
    };
    m.d0_ = slope0;
    return m;
}

Modulus Modulus::custom(std::function<double(double)> eta,
                        std::function<double(double)> eta_inverse,
                        double derivative_at_zero) {
    Modulus m;
    m.eta_ = std::move(eta);
    m.eta_inv_ = std::move(eta_inverse);
    m.d0_ = derivative_at_zero;
    m.validate_shape();
    return m;
}

bool Modulus::finite_derivative_at_zero() const { return std::isfinite(d0_); }

void Modulus::validate_shape() const {
    if (eta_(0.0) != 0.0) throw NonConcaveModulus("eta(0) must be 0");
    double prev_x = 0.0, prev_v = 0.0;
    std::vector<double> xs(64), vs(64);
    for (int i = 0; i < 64; ++i) {
        xs[static_cast<std::size_t>(i)] = std::pow(10.0, -9.0 + 12.0 * i / 63.0);
        vs[static_cast<std::size_t>(i)] = eta_(xs[static_cast<std::size_t>(i)]);
        if (!(vs[static_cast<std::size_t>(i)] > prev_v))
            throw NonConcaveModulus("eta must be strictly increasing");
        const double back = eta_inv_(vs[static_cast<std::size_t>(i)]);
        if (std::abs(back - xs[static_cast<std::size_t>(i)]) >
            1e-10 * std::max(xs[static_cast<std::size_t>(i)], 1e-300))
            throw NonConcaveModulus("eta_inverse does not invert eta");
        prev_v = vs[static_cast<std::size_t>(i)];
        prev_x = xs[static_cast<std::size_t>(i)];
    }
    (void)prev_x;
    for (int i = 0; i + 2 < 64; ++i) {
        const double x1 = xs[static_cast<std::size_t>(i)], x2 = xs[static_cast<std::size_t>(i + 1)],
                     x3 = xs[static_cast<std::size_t>(i + 2)];
        const double chord = vs[static_cast<std::size_t>(i)] +
                             (vs[static_cast<std::size_t>(i + 2)] - vs[static_cast<std::size_t>(i)]) *
                                 (x2 - x1) / (x3 - x1);
        if (vs[static_cast<std::size_t>(i + 1)] < chord * (1.0 - 1e-12) - 1e-300)
            throw NonConcaveModulus("eta failed the concavity secant test");
    }
}

double metric(const NormSpace& space, const Modulus& modulus,
              std::span<const double> s, std::span<const double> t) {
    if (s.size() != t.size() || static_cast<int>(s.size()) != space.dimension())
        throw DimensionMismatch("metric arguments must match the space dimension");
    Vec diff(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) diff[i] = s[i] - t[i];
    const double nd = space.norm(diff);
    return nd == 0.0 ? 0.0 : modulus(nd);
}

double ball_measure_fraction(const NormSpace& space, const Modulus& modulus, double eps) {
    if (!(eps > 0.0)) return 0.0;
    if (eps >= modulus(space.radius())) return 1.0;
    const double ratio = modulus.inverse(eps) / space.radius();
    return std::min(1.0, std::pow(ratio, space.dimension()));
}

} // namespace orlicz
