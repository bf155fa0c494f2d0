#ifndef ORLICZ_ORLICZ_FUNCTION_HPP
#define ORLICZ_ORLICZ_FUNCTION_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace orlicz {

// A convex Young function phi: [0,inf) -> [0,inf) with phi(0) = 0,
// phi(x)/x -> 0 at 0 and -> inf at infinity. Immutable after construction;
// construction runs a shape check (zero at zero, strictly increasing, convex
// secants) on a fixed 64-point log-spaced probe grid and throws
// NonConvexInput when it fails.
class OrliczFunction {
public:
    // x^p / p, p > 1. Carries its conjugate x^q / q, 1/p + 1/q = 1.
    static OrliczFunction power(double p);

    // Arbitrary evaluator plus right-derivative. Conjugation, inversion and
    // everything downstream run through the numeric paths.
    static OrliczFunction custom(std::function<double(double)> value,
                                 std::function<double(double)> slope);

    // Same, with a caller-supplied conjugate used as the analytic fast path.
    static OrliczFunction custom(std::function<double(double)> value,
                                 std::function<double(double)> slope,
                                 const OrliczFunction& analytic_conjugate);

    double operator()(double x) const { return value_(x); }
    double slope(double x) const { return slope_(x); }

    // Solves phi(x) = y by bracketing doubling + bisection (relative 1e-12).
    // inverse(0) == 0 exactly.
    double inverse(double y) const;

    std::optional<double> power_exponent() const { return power_p_; }
    bool has_analytic_conjugate() const {
        return power_p_.has_value() || static_cast<bool>(conjugate_);
    }

    friend OrliczFunction conjugate(const OrliczFunction& phi);

private:
    OrliczFunction() = default;
    void validate_shape() const;

    std::function<double(double)> value_;
    std::function<double(double)> slope_;
    std::optional<double> power_p_;
    std::shared_ptr<const OrliczFunction> conjugate_;
};

// psi(x) = sup_{y >= 0} (x y - phi(y)). Returns the stored analytic conjugate
// when present; otherwise the supremum is located per query point by monotone
// search on y -> x - phi'(y) (doubling + bisection, relative 1e-12). Throws
// OverflowRange if the maximizer bracket exceeds 1e300.
OrliczFunction conjugate(const OrliczFunction& phi);

// The maximizer y*(x) of y -> x y - phi(y); also the right-derivative of the
// numeric conjugate at x.
double conjugate_maximizer(const OrliczFunction& phi, double x);

struct EmpiricalSample {
    std::vector<double> values;
    std::vector<double> weights; // empty means uniform 1/N

    // nonempty; weights (when given) nonnegative and summing to 1 within 1e-12
    void validate() const;
};

// inf{ c > 0 : sum_i w_i phi(|v_i| / c) <= 1 } by bisection on the decreasing
// map c -> E phi(|X|/c); returns 0 when every value is 0.
double luxemburg_norm(const OrliczFunction& phi, const EmpiricalSample& sample,
                      double rel_tol = 1e-10);

// phi(x) + psi(y) - x y; nonnegative up to roundoff by the Young inequality.
double young_gap(const OrliczFunction& phi, const OrliczFunction& psi,
                 double x, double y);
double young_gap(const OrliczFunction& phi, double x, double y);

} // namespace orlicz

#endif
