#pragma once

#include "subh/field.hpp"
#include "subh/profile.hpp"

namespace subh {

// Result of the three-point sine-inequality sweep over sample-node triples
// theta1 <= theta <= theta2 < theta1 + pi/rho.
struct TrigConvexReport {
    bool holds = true;
    double margin = pos_inf;  // min over triples of rhs - lhs
    double worst_theta1 = 0, worst_theta = 0, worst_theta2 = 0;
    long long triples = 0;
    int stride = 1;
    bool arc_too_coarse = false;  // pi/rho shorter than two sample steps
};

struct TrigConvexTol {
    double smooth = 1e-9;  // absolute slack for kink-free arcs
    double kink = 1e-6;    // arcs containing a derivative jump
};

TrigConvexReport is_rho_trig_convex(const PeriodicProfile& h, double rho,
                                    const TrigConvexTol& tol = {});

// h'' + rho^2 h as a measure: sampled density plus atoms at derivative jumps.
// An atom is a node whose second difference dwarfs the median (8x) and grows
// by ~2 under one refinement; its mass is step * (excess over the local
// density).
struct DefectAtom {
    double angle;
    double mass;
};

struct DefectMeasure {
    Eigen::ArrayXd density;  // at angles 2*pi*k/n
    double rho = 1;
    std::vector<DefectAtom> atoms;

    int size() const { return static_cast<int>(density.size()); }
    double min_density() const { return density.minCoeff(); }
    double min_atom_mass() const;
    bool nonnegative(double tol) const;
    // integral of the density over the arc [a0, a1) plus the atoms inside;
    // a1 - a0 == 2*pi means the full circle.
    double arc_integral(double a0, double a1) const;
    double total() const { return arc_integral(0, 2 * pi); }
};

DefectMeasure defect_measure(const PeriodicProfile& h, double rho);

// Positively rho-homogeneous extension h(arg z)*|z|^rho as a plane field.
ScalarField extend(const PeriodicProfile& h, double rho);

struct LipschitzReport {
    long pairs = 0;
    long violations_plane = 0;    // |H(z)-H(w)| bound on random points
    long violations_profile = 0;  // |h(a)-h(b)| bound on random angles
    double worst_excess = 0;
};

// Checks |H(z)-H(w)| <= rho * max h * max(|z|,|w|)^(rho-1) * |z-w| + tol and
// |h(a)-h(b)| <= rho * max h * |a-b| + tol over deterministic random pairs.
// Requires h rho-trig-convex (throws otherwise).
LipschitzReport lipschitz_bound_check(const PeriodicProfile& h, double rho, long pairs,
                                      double tol = 1e-9, unsigned seed = 12345);

// Riesz measure of the extension in factorized polar form:
//   r^(rho-1) dr  x  (1/2pi)(h'' + rho^2 h) dtheta.
struct PolarRieszDensity {
    double rho;
    DefectMeasure angular;

    double sector_mass(double r0, double r1, double a0, double a1) const;
};

PolarRieszDensity riesz_density_polar(const PeriodicProfile& h, double rho);

struct ComplementReport {
    bool holds = false;
    double min_density = 0;
    double worst_angle = 0;
    double min_atom_mass = 0;
};

// h1 complementable to h2: the defect measure of h2 - h1 is nonnegative.
ComplementReport complementable(const PeriodicProfile& h1, const PeriodicProfile& h2,
                                double rho, double tol = 1e-6);

// (C + rho^2 max h) / (rho^2 min g - c); throws when the denominator is <= 0.
double q_threshold(const PeriodicProfile& g, const PeriodicProfile& h, double rho, double c,
                   double C);

struct BulletReport {
    bool bullet1 = false;  // slope increments of g bounded below by -c, 0 < c < rho^2 min g
    bool bullet2 = false;  // g' nondecreasing and min(g(t) + g(t + pi/rho)) > 0
    bool bullet3 = false;  // C >= sup |h''|
    double sup_h_second = 0;
    double min_g_pair_sum = 0;
    bool any() const { return bullet1 || bullet2 || bullet3; }
};

BulletReport verify_bullet_conditions(const PeriodicProfile& g, const PeriodicProfile& h,
                                      double rho, double c, double C);

}  // namespace subh
