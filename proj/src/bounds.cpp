#include "knng/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace knng {

namespace {

constexpr double kLuneCoefficient = 0.61;  // safe rounding-up of the crescent
                                           // area ratio (pi/3 + sqrt(3)/2)/pi
constexpr double kSqrt2 = 1.41421356237309504880;

void check_k(int k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
}

}  // namespace

double poisson_tail_geq(int k, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
    if (lambda > 700.0) throw std::invalid_argument("lambda too large for stable tail evaluation");
    if (k <= 0) return 1.0;
    if (lambda == 0.0) return 0.0;
    if (static_cast<double>(k) <= lambda) {
        // Head P(X < k) is comfortably below 1; complement is accurate.
        long double term = std::exp(static_cast<long double>(-lambda));
        long double head = term;
        for (int i = 1; i < k; ++i) {
            term *= lambda / i;
            head += term;
        }
        return static_cast<double>(std::max<long double>(0.0L, 1.0L - head));
    }
    // k above the mean: sum the tail directly from its largest term.
    long double log_first = k * std::log(static_cast<long double>(lambda)) -
                            static_cast<long double>(lambda) - std::lgamma(static_cast<long double>(k) + 1.0L);
    long double term = std::exp(log_first);
    long double tail = term;
    for (int i = k; term > 0.0L; ++i) {
        term *= lambda / (i + 1);
        tail += term;
        if (term < tail * 1e-22L) break;
    }
    return static_cast<double>(std::min<long double>(1.0L, tail));
}

double lemma_kk_bound(double a, double b, double c, int k) {
    check_k(k);
    if (a < 0.0 || b < 0.0 || c < 0.0)
        throw std::invalid_argument("areas must be non-negative");
    if (a > c || b > c)
        throw std::invalid_argument("lemma hypothesis violated: requires a <= c and b <= c");
    const double denom = a + b + c;
    if (denom <= 0.0) return (k >= 1) ? 0.0 : 1.0;
    double ratio = 4.0 * a * b / (denom * denom);
    ratio = std::clamp(ratio, 0.0, 1.0);
    return std::pow(ratio, k);
}

double lemma_kk_exact(double a, double b, double c, int k) {
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    if (a < 0.0 || b < 0.0 || c < 0.0)
        throw std::invalid_argument("areas must be non-negative");
    return std::exp(-c) * poisson_tail_geq(k, a) * poisson_tail_geq(k, b);
}

namespace {

double power_k(double base, int k) {
    base = std::clamp(base, 0.0, 1.0);
    return std::pow(base, k);
}

double interior_f1_raw(double x) {
    const double s = kLuneCoefficient * x * x;
    const double d = 7.0 + s;
    return 4.0 * s / (d * d);
}

double interior_f2_raw(double x) {
    const double s = kLuneCoefficient * x * x;
    const double d = (x + 1.0) * (x + 1.0) + s;
    return 4.0 * s / (d * d);
}

double boundary_g1_raw(double x) {
    const double s = kLuneCoefficient * x * x;
    const double d = 5.0 + s;
    return 4.0 * s / (d * d);
}

double boundary_g2_raw(double x) {
    const double s = kLuneCoefficient * x * x;
    const double t = 1.0 + x / kSqrt2;
    const double d = t * t + s;
    return 4.0 * s / (d * d);
}

double boundary_g3_raw(double x) {
    const double t = 1.0 + x / kSqrt2;
    return 1.0 / (t * t);
}

}  // namespace

InteriorCurves interior_curves(double x, int k) {
    check_k(k);
    InteriorCurves out;
    if (x <= 0.0) return out;
    out.f1 = {power_k(interior_f1_raw(x), k), x < 3.13};
    out.f2 = {power_k(interior_f2_raw(x), k), x > kSqrt2 - 1.0};
    return out;
}

BoundaryCurves boundary_curves(double x, int k) {
    check_k(k);
    BoundaryCurves out;
    if (x <= 0.0) return out;
    out.g1 = {power_k(boundary_g1_raw(x), k), x < 2.56};
    out.g2 = {power_k(boundary_g2_raw(x), k), x > 2.0 - kSqrt2 && x < 12.0};
    out.g3 = {power_k(boundary_g3_raw(x), k), true};
    return out;
}

double interior_f1_cutoff_exact() { return std::sqrt(6.0 / kLuneCoefficient); }

double boundary_g1_cutoff_exact() { return std::sqrt(4.0 / kLuneCoefficient); }

namespace {

double golden_section_max(const std::function<double(double)>& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-9) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

OptimalAlpha optimal_alpha(CurveFamily family) {
    OptimalAlpha out;
    if (family == CurveFamily::Interior) {
        const auto envelope = [](double x) {
            return std::min(interior_f1_raw(x), interior_f2_raw(x));
        };
        const double x_golden = golden_section_max(envelope, 0.5, 3.0);
        const double x_star = std::sqrt(7.0) - 1.0;  // where (x+1)^2 = 7
        const double identity = (x_star + 1.0) * (x_star + 1.0) - 7.0;
        if (std::abs(identity) > 1e-12)
            throw std::runtime_error("interior crossing identity failed");
        const double f1 = interior_f1_raw(x_star);
        const double f2 = interior_f2_raw(x_star);
        if (std::abs(f1 - f2) > 1e-12)
            throw std::runtime_error("interior curves fail to cross at the analytic optimum");
        if (std::abs(x_golden - x_star) > 1e-6)
            throw std::runtime_error("golden-section optimum disagrees with the analytic crossing");
        out.x_star = x_star;
        out.crossing_value = f1;
        out.alpha = 1.0 / f1;
        return out;
    }
    const auto envelope = [](double x) {
        return std::min({boundary_g1_raw(x), boundary_g2_raw(x), boundary_g3_raw(x)});
    };
    const double x_golden = golden_section_max(envelope, 1.0, 2.5);
    const double x_star = kSqrt2 * (std::sqrt(5.0) - 1.0);  // where (1+x/sqrt2)^2 = 5
    const double t = 1.0 + x_star / kSqrt2;
    if (std::abs(t * t - 5.0) > 1e-12)
        throw std::runtime_error("boundary crossing identity failed");
    const double g1 = boundary_g1_raw(x_star);
    const double g2 = boundary_g2_raw(x_star);
    if (std::abs(g1 - g2) > 1e-12)
        throw std::runtime_error("boundary curves fail to cross at the analytic optimum");
    if (std::abs(x_golden - x_star) > 1e-6)
        throw std::runtime_error("golden-section optimum disagrees with the analytic crossing");
    out.x_star = x_star;
    out.crossing_value = g1;
    out.alpha = 1.0 / g1;
    return out;
}

double witness_area_coefficient(double shrink) {
    if (!(shrink > 0.0) || shrink > 1.0)
        throw std::invalid_argument("shrink factor must be in (0, 1]");
    const double pi = std::acos(-1.0);
    const double crescent = pi / 3.0 + std::sqrt(3.0) / 2.0;
    return crescent / (pi * shrink * shrink);
}

double disc_blocking_probability(double lambda, int k) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    if (lambda == 0.0) return 0.0;
    return std::exp(-9.0 * lambda + (k + 1) * std::log(lambda) -
                    std::lgamma(static_cast<double>(k) + 2.0));
}

double disc_blocking_probability_at_least(double lambda, int k) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    if (lambda == 0.0) return 0.0;
    return std::exp(-8.0 * lambda) * poisson_tail_geq(k + 1, lambda);
}

std::vector<ThresholdRow> threshold_table() {
    std::vector<ThresholdRow> rows;
    const OptimalAlpha interior = optimal_alpha(CurveFamily::Interior);
    const OptimalAlpha boundary = optimal_alpha(CurveFamily::Boundary);
    rows.push_back({"c_centre", 1.0 / std::log(interior.alpha), 0.4125, "optimization"});
    rows.push_back({"c_boundary", 1.0 / (2.0 * std::log(boundary.alpha)), 0.272, "optimization"});
    rows.push_back({"c_disc", 1.0 / std::log(9.0), 0.455, "heuristic"});
    rows.push_back({"prior_lower", 0.3043, 0.3043, "prior"});
    rows.push_back({"prior_upper", 0.5139, 0.5139, "prior"});
    rows.push_back({"prior_boundary", 0.311, 0.311, "prior"});
    rows.push_back({"prior_first_upper", 5.1774, 5.1774, "prior"});
    rows.push_back({"prior_first_lower", 0.074, 0.074, "prior"});
    return rows;
}

}  // namespace knng
