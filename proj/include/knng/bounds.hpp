#pragma once

#include <string>
#include <vector>

namespace knng {

// Probability that two disjoint regions of areas a and b each hold at least k
// points of a unit Poisson process while a third disjoint region of area c
// holds none, bounded above by (4ab / (a+b+c)^2)^k. Requires a <= c, b <= c.
double lemma_kk_bound(double a, double b, double c, int k);

// The exact probability of the same event: e^{-c} Q(k,a) Q(k,b).
double lemma_kk_exact(double a, double b, double c, int k);

// Q(k, lambda) = P(Poisson(lambda) >= k); stable for lambda <= 700.
double poisson_tail_geq(int k, double lambda);

struct CurveValue {
    double value = 0.0;
    bool valid = false;
};

struct InteriorCurves {
    CurveValue f1, f2;
};

struct BoundaryCurves {
    CurveValue g1, g2, g3;
};

// Interior small-component probability curves in the normalized radius
// x = r / sqrt(|A_0| / pi):
//   f1 = (4*0.61x^2 / (7 + 0.61x^2)^2)^k        valid for x < 3.13
//   f2 = (4*0.61x^2 / ((x+1)^2 + 0.61x^2)^2)^k  valid for x > sqrt(2)-1
InteriorCurves interior_curves(double x, int k);

// Boundary counterparts:
//   g1 = (4*0.61x^2 / (5 + 0.61x^2)^2)^k             valid for x < 2.56
//   g2 = (4*0.61x^2 / ((1+x/sqrt2)^2 + 0.61x^2)^2)^k valid for 2-sqrt2 < x < 12
//   g3 = (1 + x/sqrt2)^(-2k)                         always valid
BoundaryCurves boundary_curves(double x, int k);

// The decimal validity cutoffs round the exact algebra down, so the windows
// they admit are safe: exact f1 cutoff sqrt(6/0.61), exact g1 cutoff
// sqrt(4/0.61).
double interior_f1_cutoff_exact();
double boundary_g1_cutoff_exact();

enum class CurveFamily { Interior, Boundary };

struct OptimalAlpha {
    double x_star = 0.0;          // argmax of the pointwise-min envelope at k=1
    double alpha = 0.0;           // 1 / envelope(x_star): the per-k decay base
    double crossing_value = 0.0;  // envelope value at x_star
};

// Maximises the envelope by golden-section search, then validates against the
// analytic crossing ((x+1)^2 = 7 interior, (1+x/sqrt2)^2 = 5 boundary) and
// returns the algebraic optimum.
OptimalAlpha optimal_alpha(CurveFamily family);

// (pi/3 + sqrt(3)/2) / (pi * shrink^2): crescent area over the area of the
// disc with radius shrunk by the given factor. Below 0.61 for shrink 1-1e-4.
double witness_area_coefficient(double shrink);

// e^{-9 lambda} lambda^{k+1} / (k+1)!: chance that a disc of area lambda
// holds exactly k+1 points while the surrounding eightfold area holds none.
double disc_blocking_probability(double lambda, int k);

// At-least variant: e^{-8 lambda} Q(k+1, lambda), the disc holding k+1 or
// more points with the surrounding ring empty.
double disc_blocking_probability_at_least(double lambda, int k);

struct ThresholdRow {
    std::string name;
    double value = 0.0;            // derived here (equals reference for priors)
    double reference_value = 0.0;  // published rounded value
    std::string kind;              // "optimization", "heuristic" or "prior"
};

// Connectivity-threshold constants: c_centre = 1/ln(alpha_interior),
// c_boundary = 1/(2 ln(alpha_boundary)), c_disc = 1/ln 9, plus prior
// published constants reported as-is.
std::vector<ThresholdRow> threshold_table();

}  // namespace knng
