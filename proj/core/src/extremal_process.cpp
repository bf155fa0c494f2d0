#include "orlicz/extremal_process.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/rng.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <algorithm>

namespace orlicz {

namespace {

double hermite(double x0, double x1, double c0, double c1, double g0, double g1,
               double x) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return c0 * (2.0 * s3 - 3.0 * s2 + 1.0) + h * g0 * (s3 - 2.0 * s2 + s) +
           c1 * (-2.0 * s3 + 3.0 * s2) + h * g1 * (s3 - s2);
}

struct NodeSink {
    std::vector<double> x, g, mass; // mass[i] = integral since previous node
};

double quad_mass(const std::function<double(double)>& g, double a, double b) {
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    return integrate_adaptive(g, a, b, opt).value;
}

// Appends interior and right nodes of [a, b]; returns the segment mass.
double build_segment(const std::function<double(double)>& g, double a, double b,
                     double ga, double gb, double tol, int depth, NodeSink& sink) {
    const double m = 0.5 * (a + b);
    const double gm = g(m);
    const double i_am = quad_mass(g, a, m);
    const double i_mb = quad_mass(g, m, b);
    const double total = i_am + i_mb;
    const double predicted = 0.5 * total + (b - a) * (ga - gb) / 8.0;
    if (depth <= 0 || std::abs(predicted - i_am) <= tol) {
        sink.x.push_back(m);
        sink.g.push_back(gm);
        sink.mass.push_back(i_am);
        sink.x.push_back(b);
        sink.g.push_back(gb);
        sink.mass.push_back(i_mb);
        return total;
    }
    const double left = build_segment(g, a, m, ga, gm, 0.5 * tol, depth - 1, sink);
    const double right = build_segment(g, m, b, gm, gb, 0.5 * tol, depth - 1, sink);
    return left + right;
}

} // namespace

DensityG::DensityG(NormSpace space, Modulus modulus, OrliczFunction psi,
                   Partition partition)
    : space_(std::move(space)), modulus_(std::move(modulus)), psi_(std::move(psi)),
      partition_(std::move(partition)) {}

double DensityG::operator()(double eps) const {
    const int k = level_of(eps);
    if (k < 0) return 0.0;
    const double s = s_values_[static_cast<std::size_t>(k)];
    return level_integrand(space_, modulus_, psi_, s, eps) * s / big_k_;
}

int DensityG::level_of(double eps) const {
    const auto& radii = partition_.radii;
    if (eps <= 0.0 || eps > radii.front()) return -1;
    // radii descending; find k with lower_radius(k) < eps <= radii[k]
    int lo = 0, hi = static_cast<int>(radii.size()) - 1;
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if (eps <= radii[static_cast<std::size_t>(mid)])
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo < partition_.level_count() ? lo : -1;
}

double DensityG::antiderivative(double eps) const {
    if (eps <= 0.0) return 0.0;
    if (eps > partition_.radii.front()) return total_mass_;
    const int k = level_of(eps);
    if (k < 0) return 0.0; // below the last covered level of a truncated run
    const LevelTable& tab = tables_[static_cast<std::size_t>(k)];
    if (eps < tab.ramp_edge)
        return tab.base + tab.scale * tab.ramp_mass * (eps / tab.ramp_edge);
    // locate the node segment
    const auto it = std::lower_bound(tab.x.begin(), tab.x.end(), eps);
    std::size_t i1 = static_cast<std::size_t>(it - tab.x.begin());
    if (i1 == 0) return tab.base + tab.scale * tab.g_cum.front();
    if (i1 >= tab.x.size()) i1 = tab.x.size() - 1;
    const std::size_t i0 = i1 - 1;
    const double raw = hermite(tab.x[i0], tab.x[i1], tab.g_cum[i0], tab.g_cum[i1],
                               tab.g_raw[i0], tab.g_raw[i1], eps);
    return tab.base + tab.scale * raw;
}

DensityG build_density(const NormSpace& space, const Modulus& modulus,
                       const OrliczFunction& phi, const BoundsReport& report) {
    for (double s : report.s_values)
        if (!std::isfinite(s) || !(s > 0.0))
            throw InfiniteLevel("non-finite level constant");

    DensityG d(space, modulus, conjugate(phi), report.partition);
    d.s_values_ = report.s_values;
    d.big_k_ = 3.0 * (space.dimension() + 2);
    const int levels = report.partition.level_count();
    d.masses_.resize(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k)
        d.masses_[static_cast<std::size_t>(k)] =
            d.s_values_[static_cast<std::size_t>(k)] / d.big_k_;
    d.total_mass_ = 0.0;
    for (double m : d.masses_) d.total_mass_ += m;

    d.tables_.resize(static_cast<std::size_t>(levels));
    double base_above = d.total_mass_;
    for (int k = 0; k < levels; ++k) {
        auto& tab = d.tables_[static_cast<std::size_t>(k)];
        tab.hi = d.partition_.upper_radius(k);
        tab.lo = d.partition_.lower_radius(k);
        const double mass_k = d.masses_[static_cast<std::size_t>(k)];
        base_above -= mass_k;
        tab.base = base_above;
        const double s_k = d.s_values_[static_cast<std::size_t>(k)];
        auto g = [&](double eps) {
            return level_integrand(space, modulus, d.psi_, s_k, eps) * s_k / d.big_k_;
        };

        // Dyadic pre-split keeps segments at bounded ratio; a terminal level
        // (lo == 0) extends the split until the block mass is negligible and
        // carries the rest as a linear ramp.
        std::vector<double> edges;
        if (tab.lo > 0.0) {
            edges.push_back(tab.lo);
            double e = tab.lo;
            while (tab.hi / e > 2.0) {
                e *= 2.0;
                edges.push_back(e);
            }
            edges.push_back(tab.hi);
        } else {
            double e = tab.hi;
            std::vector<double> down{tab.hi};
            double block_prev = -1.0, ratio = 0.5;
            double covered = 0.0;
            for (int j = 0; j < 60; ++j) {
                const double lo_e = 0.5 * e;
                const double b = quad_mass(g, lo_e, e);
                covered += b;
                if (block_prev > 0.0) ratio = b / block_prev;
                block_prev = b;
                down.push_back(lo_e);
                e = lo_e;
                if (b <= 1e-13 * covered) break;
            }
            tab.ramp_edge = e;
            tab.ramp_mass = ratio < 1.0 ? block_prev * ratio / (1.0 - ratio) : 0.0;
            edges.assign(down.rbegin(), down.rend());
        }

        NodeSink sink;
        sink.x.push_back(edges.front());
        sink.g.push_back(tab.lo > 0.0 ? g(edges.front()) : g(edges.front() * (1.0 + 1e-12)));
        sink.mass.push_back(tab.ramp_mass);
        const double tol = 1e-10 * mass_k;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const double a = edges[i], b = edges[i + 1];
            build_segment(g, a, b, sink.g.back(), g(b),
                          tol * (b - a) / (edges.back() - edges.front() + 1e-300), 24,
                          sink);
        }
        tab.x = sink.x;
        tab.g_raw = sink.g;
        tab.g_cum.resize(sink.mass.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < sink.mass.size(); ++i) {
            acc += sink.mass[i];
            tab.g_cum[i] = acc;
        }
        const double raw_total = acc;
        tab.scale = raw_total > 0.0 ? mass_k / raw_total : 1.0;
    }
    return d;
}

namespace {

void check_in_ball(const NormSpace& space, const Vec& v, const char* what) {
    if (space.norm(v) > space.radius() * (1.0 + 1e-12))
        throw OutOfBall(std::string(what) + " lies outside the index ball");
}

double path_value(const DensityG& density, const Vec& omega, const Vec& t,
                  double g_at_origin) {
    const double d = metric(density.space(), density.modulus(), omega, t);
    return density.antiderivative(d) - g_at_origin;
}

} // namespace

std::vector<double> evaluate_path(const DensityG& density, const Vec& omega,
                                  const std::vector<Vec>& points) {
    check_in_ball(density.space(), omega, "omega");
    const Vec origin(static_cast<std::size_t>(density.space().dimension()), 0.0);
    const double g0 = density.antiderivative(
        metric(density.space(), density.modulus(), omega, origin));
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& t : points) {
        check_in_ball(density.space(), t, "path point");
        out.push_back(path_value(density, omega, t, g0));
    }
    return out;
}

namespace {

struct PairSpec {
    Vec s, t;
    double d = 0.0;
};

PairSpec make_pair(const DensityG& density, int idx, std::uint64_t seed) {
    const NormSpace& space = density.space();
    const Modulus& modulus = density.modulus();
    const Partition& part = density.partition();
    Rng rng = Rng::for_shard(seed, static_cast<std::uint64_t>(idx) * 2 + 1);

    // levels whose separation scale survives in double precision
    std::vector<double> targets;
    for (int k = 0; k < part.level_count(); ++k) {
        const double hi = part.upper_radius(k);
        const double lo = std::max(part.lower_radius(k), hi / 4.0);
        const double d_target = std::sqrt(lo * hi);
        if (modulus.inverse(d_target) >= 1e-12 * space.radius())
            targets.push_back(d_target);
    }

    for (int attempt = 0; attempt < 64; ++attempt) {
        PairSpec ps;
        const bool stratified = (idx % 2 == 1) && !targets.empty();
        if (!stratified) {
            ps.s = space.sample_point(rng);
            ps.t = space.sample_point(rng);
        } else {
            const double d_target = targets[static_cast<std::size_t>(idx / 2) % targets.size()];
            const double sep = modulus.inverse(d_target);
            ps.s = space.sample_point(rng);
            const double shrink = (space.radius() - sep) / space.radius();
            for (auto& c : ps.s) c *= shrink;
            Vec dir(ps.s.size());
            for (auto& c : dir) c = rng.normal();
            const double nd = space.norm(dir);
            if (nd == 0.0) continue;
            ps.t = ps.s;
            for (std::size_t i = 0; i < dir.size(); ++i)
                ps.t[i] += sep * dir[i] / nd;
        }
        ps.d = metric(space, modulus, ps.s, ps.t);
        if (ps.d > 0.0) return ps;
    }
    throw BracketFailure("could not draw a pair with positive distance");
}

} // namespace

IncrementReport verify_increment_condition(const DensityG& density,
                                           const OrliczFunction& phi,
                                           int pair_count, int mc_count,
                                           std::uint64_t seed, int jobs) {
    if (pair_count < 1 || mc_count < 1)
        throw BracketFailure("verify_increment_condition needs positive counts");
    const NormSpace& space = density.space();
    const Modulus& modulus = density.modulus();
    const Vec origin(static_cast<std::size_t>(space.dimension()), 0.0);

    IncrementReport rep;
    rep.pairs.resize(static_cast<std::size_t>(pair_count));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= pair_count) return;
            const PairSpec ps = make_pair(density, idx, seed);
            Rng rng = Rng::for_shard(seed, 0x10000u + static_cast<std::uint64_t>(idx));
            double sum = 0.0, sumsq = 0.0;
            for (int i = 0; i < mc_count; ++i) {
                const Vec omega = space.sample_point(rng);
                const double xs = density.antiderivative(metric(space, modulus, omega, ps.s));
                const double xt = density.antiderivative(metric(space, modulus, omega, ps.t));
                const double v = phi(std::abs(xs - xt) / ps.d);
                sum += v;
                sumsq += v * v;
            }
            const double mean = sum / mc_count;
            const double var = std::max(0.0, sumsq / mc_count - mean * mean);
            auto& slot = rep.pairs[static_cast<std::size_t>(idx)];
            slot.s = ps.s;
            slot.t = ps.t;
            slot.d = ps.d;
            slot.estimate = mean;
            slot.std_error = std::sqrt(var / mc_count);
        }
    };
    const int threads = std::max(1, std::min(jobs, pair_count));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    rep.max_estimate = -1.0;
    for (const auto& p : rep.pairs) {
        if (p.estimate > rep.max_estimate) {
            rep.max_estimate = p.estimate;
            rep.std_error_at_max = p.std_error;
        }
    }
    return rep;
}

SupIdentityReport verify_sup_identity(const DensityG& density, int grid_count,
                                      int mc_count, std::uint64_t seed) {
    if (grid_count < 2 || mc_count < 1)
        throw BracketFailure("verify_sup_identity needs grid_count >= 2, mc_count >= 1");
    const NormSpace& space = density.space();
    SupIdentityReport rep;
    rep.target = density.total_mass();
    rep.omega_count = mc_count;

    std::vector<Vec> grid;
    if (grid_count > 2)
        grid = space.sample_ball(grid_count - 2, seed ^ 0x9d1dULL).points;
    const auto omegas = space.sample_ball(mc_count, seed).points;

    double sup_sum = 0.0;
    for (const auto& omega : omegas) {
        const double n_omega = space.norm(omega);
        Vec antipodal(omega.size(), 0.0);
        if (n_omega > 0.0) {
            const double scale = (n_omega - space.radius()) / n_omega;
            for (std::size_t i = 0; i < omega.size(); ++i) antipodal[i] = scale * omega[i];
        } else {
            antipodal[0] = space.radius();
        }
        std::vector<Vec> pts;
        pts.reserve(grid.size() + 2);
        pts.push_back(omega);
        pts.push_back(antipodal);
        for (const auto& gpt : grid) pts.push_back(gpt);
        const std::vector<double> xs = evaluate_path(density, omega, pts);
        const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
        const double sup = *mx - *mn;
        sup_sum += sup;
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::abs(sup - rep.target));
    }
    rep.empirical_mean_sup = sup_sum / mc_count;
    return rep;
}

} // namespace orlicz
