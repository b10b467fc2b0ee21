#include "subh/trigconvex.hpp"

#include <algorithm>
#include <random>

namespace subh {

namespace {

// Number of kink angles falling strictly inside the arc (start, start+span),
// measured going counterclockwise.  kinks sorted in [0, 2*pi).
int kinks_in_open_arc(const std::vector<double>& kinks, double start, double span) {
    if (kinks.empty()) return 0;
    auto count_in = [&](double lo, double hi) {
        auto a = std::upper_bound(kinks.begin(), kinks.end(), lo);
        auto b = std::lower_bound(kinks.begin(), kinks.end(), hi);
        return static_cast<int>(b - a);
    };
    double lo = wrap_angle(start);
    double hi = lo + span;
    if (hi <= 2.0 * pi) return count_in(lo, hi);
    return count_in(lo, 2.0 * pi) + count_in(-1.0, hi - 2.0 * pi);
}

}  // namespace

TrigConvexReport is_rho_trig_convex(const PeriodicProfile& h, double rho,
                                    const TrigConvexTol& tol) {
    if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
    const int n = h.size();
    const double step = h.step();
    TrigConvexReport rep;

    // widest admissible span in steps: s*step < pi/rho (strict)
    int smax = static_cast<int>(std::floor((pi / rho) / step - 1e-12));
    if (smax > n) smax = n;  // never wrap past a full turn
    if (smax < 2) {
        rep.arc_too_coarse = true;
        rep.margin = 0;
        return rep;
    }

    // deterministic thinning to <= 2e6 triples
    double full = static_cast<double>(n) * smax * (smax - 1) / 2.0;
    int stride = 1;
    while (full / (static_cast<double>(stride) * stride * stride) > 2e6) ++stride;
    rep.stride = stride;

    std::vector<double> sins(smax + 1);
    for (int k = 0; k <= smax; ++k) sins[k] = std::sin(rho * k * step);

    for (int i = 0; i < n; i += stride) {
        double th1 = i * step;
        double v1 = h.sample(i);
        for (int s = 2; s <= smax; s += stride) {
            double v2 = h.sample(i + s);
            double span = s * step;
            double tcur = kinks_in_open_arc(h.kinks, th1, span) > 0 ? tol.kink : tol.smooth;
            for (int m = 1; m < s; m += stride) {
                double lhs = h.sample(i + m) * sins[s];
                double rhs = v1 * sins[s - m] + v2 * sins[m];
                double slack = rhs - lhs;
                ++rep.triples;
                if (slack < rep.margin) {
                    rep.margin = slack;
                    rep.worst_theta1 = wrap_angle(th1);
                    rep.worst_theta = wrap_angle(th1 + m * step);
                    rep.worst_theta2 = wrap_angle(th1 + span);
                }
                if (slack < -tcur) rep.holds = false;
            }
        }
    }
    if (rep.triples == 0) rep.margin = 0;
    return rep;
}

double DefectMeasure::min_atom_mass() const {
    double m = 0;
    bool first = true;
    for (const auto& a : atoms) {
        if (first || a.mass < m) m = a.mass;
        first = false;
    }
    return m;
}

bool DefectMeasure::nonnegative(double tol) const {
    if (min_density() < -tol) return false;
    for (const auto& a : atoms)
        if (a.mass < -tol) return false;
    return true;
}

double DefectMeasure::arc_integral(double a0, double a1) const {
    const int n = size();
    const double step = 2.0 * pi / n;
    double span = a1 - a0;
    bool full = span >= 2.0 * pi - 1e-15;
    double lo = wrap_angle(a0);
    double acc = 0;
    for (int k = 0; k < n; ++k) {
        if (full || wrap_angle(k * step - lo) < span) acc += density[k] * step;
    }
    for (const auto& a : atoms) {
        if (full || wrap_angle(a.angle - lo) < span) acc += a.mass;
    }
    return acc;
}

namespace {

Eigen::ArrayXd defect_samples(const PeriodicProfile& h, double rho, int n) {
    PeriodicProfile p = h.size() == n ? h : h.resampled(n);
    const double step = 2.0 * pi / n;
    Eigen::ArrayXd d(n);
    for (int k = 0; k < n; ++k) {
        double second = (p.sample(k - 1) - 2.0 * p.sample(k) + p.sample(k + 1)) / (step * step);
        d[k] = second + rho * rho * p.sample(k);
    }
    return d;
}

double median_abs(const Eigen::ArrayXd& v) {
    std::vector<double> a(v.data(), v.data() + v.size());
    for (double& x : a) x = std::fabs(x);
    std::nth_element(a.begin(), a.begin() + a.size() / 2, a.end());
    return a[a.size() / 2];
}

}  // namespace

DefectMeasure defect_measure(const PeriodicProfile& h, double rho) {
    if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
    if (!h.analytic() && h.size() < 64)
        throw std::invalid_argument("defect extraction needs >= 64 samples");
    const int n = h.analytic() ? 2048 : std::max(64, h.size());
    const double step = 2.0 * pi / n;

    Eigen::ArrayXd d1 = defect_samples(h, rho, n);
    Eigen::ArrayXd d2 = defect_samples(h, rho, 2 * n);

    double med = median_abs(d1);
    double threshold = 8.0 * med + 1e-12;

    DefectMeasure out;
    out.density = d1;
    out.rho = rho;
    std::vector<bool> candidate(n, false);
    for (int k = 0; k < n; ++k) candidate[k] = std::fabs(d1[k]) > threshold;

    for (int k = 0; k < n; ++k) {
        if (!candidate[k]) continue;
        double ratio = std::fabs(d2[2 * k]) / std::max(std::fabs(d1[k]), 1e-300);
        if (ratio <= 1.25) continue;  // stable spike: genuine density feature
        if (ratio <= 1.6)
            throw std::runtime_error("resolution-insufficient: atom classification unstable at angle " +
                                     fmt(k * step));
        // baseline = nearby non-candidate density
        double base = 0;
        int found = 0;
        for (int off = 1; off <= 4 && found < 2; ++off) {
            for (int sgn : {-1, 1}) {
                int idx = ((k + sgn * off) % n + n) % n;
                if (!candidate[idx] && found < 2) {
                    base += d1[idx];
                    ++found;
                }
            }
        }
        if (found > 0) base /= found;
        out.atoms.push_back({k * step, step * (d1[k] - base)});
        out.density[k] = base;
    }
    return out;
}

ScalarField extend(const PeriodicProfile& h, double rho) {
    if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
    ScalarField f;
    f.domain = Domain::whole_plane();
    PolarPart part;
    part.profile = [h](double t) { return h(t); };
    part.rho = rho;
    part.coef = 1.0;
    part.kinks = h.kinks;
    f.polars.push_back(std::move(part));
    f.label = "ext(" + h.name + "," + fmt(rho) + ")";
    return f;
}

LipschitzReport lipschitz_bound_check(const PeriodicProfile& h, double rho, long pairs,
                                      double tol, unsigned seed) {
    TrigConvexReport pre = is_rho_trig_convex(h, rho);
    if (!pre.holds)
        throw std::invalid_argument("lipschitz bound needs a rho-trig-convex profile");
    double maxh = h.resampled(4096).max_value();

    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * pi);
    auto H = [&](complexd z) {
        double r = std::abs(z);
        if (r == 0.0) return 0.0;
        return h(std::atan2(z.imag(), z.real())) * std::pow(r, rho);
    };

    LipschitzReport rep;
    rep.pairs = pairs;
    for (long k = 0; k < pairs; ++k) {
        complexd z(coord(gen), coord(gen));
        complexd w(coord(gen), coord(gen));
        double lhs = std::fabs(H(z) - H(w));
        double big = std::max(std::abs(z), std::abs(w));
        double rhs = big > 0 ? rho * maxh * std::pow(big, rho - 1.0) * std::abs(z - w) : 0.0;
        if (lhs > rhs + tol) {
            ++rep.violations_plane;
            rep.worst_excess = std::max(rep.worst_excess, lhs - rhs);
        }
        double a = ang(gen), b = ang(gen);
        double plhs = std::fabs(h(a) - h(b));
        double prhs = rho * maxh * std::fabs(a - b);
        if (plhs > prhs + tol) {
            ++rep.violations_profile;
            rep.worst_excess = std::max(rep.worst_excess, plhs - prhs);
        }
    }
    return rep;
}

double PolarRieszDensity::sector_mass(double r0, double r1, double a0, double a1) const {
    if (!(r0 >= 0) || !(r1 >= r0)) throw std::invalid_argument("bad sector radii");
    double radial = (std::pow(r1, rho) - std::pow(r0, rho)) / rho;
    return radial * angular.arc_integral(a0, a1) / (2.0 * pi);
}

PolarRieszDensity riesz_density_polar(const PeriodicProfile& h, double rho) {
    TrigConvexReport pre = is_rho_trig_convex(h, rho);
    if (!pre.holds)
        throw std::invalid_argument("polar Riesz density needs a rho-trig-convex profile");
    return {rho, defect_measure(h, rho)};
}

ComplementReport complementable(const PeriodicProfile& h1, const PeriodicProfile& h2,
                                double rho, double tol) {
    DefectMeasure d = defect_measure(h2 - h1, rho);
    ComplementReport rep;
    rep.min_density = d.min_density();
    rep.min_atom_mass = d.min_atom_mass();
    int n = d.size();
    for (int k = 0; k < n; ++k) {
        if (d.density[k] == rep.min_density) {
            rep.worst_angle = 2.0 * pi * k / n;
            break;
        }
    }
    rep.holds = d.nonnegative(tol);
    return rep;
}

double q_threshold(const PeriodicProfile& g, const PeriodicProfile& h, double rho, double c,
                   double C) {
    if (c < 0) throw std::invalid_argument("c must be nonnegative");
    double denom = rho * rho * g.min_value() - c;
    if (!(denom > 0))
        throw std::invalid_argument("q threshold undefined: rho^2 min g - c = " + fmt(denom));
    return (C + rho * rho * h.max_value()) / denom;
}

BulletReport verify_bullet_conditions(const PeriodicProfile& g, const PeriodicProfile& h,
                                      double rho, double c, double C) {
    BulletReport rep;
    const int ng = std::max(g.size(), 256);
    PeriodicProfile gp = g.size() == ng ? g : g.resampled(ng);
    const double dg = 2.0 * pi / ng;
    std::vector<double> slope(ng);
    for (int i = 0; i < ng; ++i)
        slope[i] = (gp.sample(i + 1) - gp.sample(i - 1)) / (2.0 * dg);
    double gscale = std::max(1.0, std::max(std::fabs(g.max_value()), std::fabs(g.min_value())));
    double slope_tol = 1e-8 + gscale * dg * dg;

    bool incr_bounded = true, nondecreasing = true;
    for (int i = 0; i < ng; ++i) {
        double inc = slope[(i + 1) % ng] - slope[i];
        if (inc < -c * dg - slope_tol) incr_bounded = false;
        if (inc < -slope_tol) nondecreasing = false;
    }
    rep.bullet1 = incr_bounded && c > 0 && c < rho * rho * g.min_value();

    double min_pair = pos_inf;
    for (int i = 0; i < ng; ++i) {
        double t = i * dg;
        min_pair = std::min(min_pair, gp(t) + gp(t + pi / rho));
    }
    rep.min_g_pair_sum = min_pair;
    rep.bullet2 = nondecreasing && min_pair > 0;

    const int nh = h.analytic() ? 2048 : std::max(64, h.size());
    PeriodicProfile hp = h.size() == nh ? h : h.resampled(nh);
    const double dh = 2.0 * pi / nh;
    double sup_dd = 0;
    for (int i = 0; i < nh; ++i) {
        double second = (hp.sample(i - 1) - 2.0 * hp.sample(i) + hp.sample(i + 1)) / (dh * dh);
        sup_dd = std::max(sup_dd, std::fabs(second));
    }
    rep.sup_h_second = sup_dd;
    double hscale = std::max(1.0, std::fabs(h.max_value()));
    rep.bullet3 = C >= sup_dd - (1e-6 + hscale * dh * dh);
    return rep;
}

}  // namespace subh
