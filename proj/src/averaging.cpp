#include "subh/averaging.hpp"

#include <algorithm>

namespace subh {

void QuadratureSpec::validate() const {
    if (radial < 4) throw std::invalid_argument("quadrature needs >= 4 radial panels");
    if (angular < 8) throw std::invalid_argument("quadrature needs >= 8 angular nodes");
    if (!(tol > 0) || tol > 1e-2)
        throw std::invalid_argument("quadrature tolerance must lie in (0, 1e-2]");
}

double log_atom_disk_average(complexd atom, complexd z, double r) {
    double d = std::abs(atom - z);
    if (d >= r) return std::log(d);
    return std::log(r) - 0.5 + d * d / (2.0 * r * r);
}

namespace {

// --- generic part: midpoint (radius) x trapezoid (angle) with doubling ---

struct GenericIntegrand {
    const ScalarField& f;
    bool hit_minus_inf = false;

    double operator()(complexd w) {
        double v = 0;
        if (f.smooth) {
            double s = f.smooth(w);
            if (is_neg_inf(s)) {
                hit_minus_inf = true;
                return 0;
            }
            v += s;
        }
        if (f.grid) {
            double s = f.grid->bilinear(w);
            if (is_neg_inf(s)) {
                hit_minus_inf = true;
                return 0;
            }
            v += s;
        }
        return v;
    }
};

// 12-point Gauss-Legendre on [-1,1], shared by the radial rules below.
constexpr double kGlNode[6] = {0.1252334085114689, 0.3678314989981802,
                               0.5873179542866175, 0.7699026741943047,
                               0.9041172563704749, 0.9815606342467192};
constexpr double kGlWeight[6] = {0.2491470458134028, 0.2334925365383548,
                                 0.2031674267230659, 0.1600783285433462,
                                 0.1069393259953184, 0.0471753363865118};

AverageResult generic_average(const ScalarField& f, complexd z, double r,
                              const QuadratureSpec& q) {
    GenericIntegrand g{f};
    AverageResult res;
    // Periodic trapezoid (equal weights, spectrally accurate on smooth rings)
    // nested inside Gauss-Legendre panels against the disk measure 2t dt/r^2.
    auto ring_mean = [&](double t, int m) {
        double s = 0;
        for (int j = 0; j < m; ++j) {
            s += g(z + std::polar(t, 2.0 * pi * j / m));
            if (g.hit_minus_inf) return 0.0;
        }
        res.evals += m;
        return s / m;
    };
    auto full = [&](int p, int m) {
        double h = r / p, total = 0;
        for (int k = 0; k < p && !g.hit_minus_inf; ++k) {
            double mid = (k + 0.5) * h, half = 0.5 * h, acc = 0;
            for (int i = 0; i < 6; ++i) {
                double tp = mid + half * kGlNode[i], tm = mid - half * kGlNode[i];
                acc += kGlWeight[i] * (ring_mean(tp, m) * tp + ring_mean(tm, m) * tm);
            }
            total += acc * half * 2.0 / (r * r);
        }
        return total;
    };
    int p = std::max(1, q.radial / 4), m = q.angular;
    double prev = full(p, m);
    for (;;) {
        if (g.hit_minus_inf) return {neg_inf, 0, res.evals, true};
        double cur = full(2 * p, 2 * m);
        if (g.hit_minus_inf) return {neg_inf, 0, res.evals, true};
        res.value = cur;
        res.error = std::abs(cur - prev);
        if (res.error <= q.tol * std::max(1.0, std::abs(cur))) return res;
        prev = cur;
        p *= 2;
        m *= 2;
        if (p > 1024 || res.evals > 20'000'000) {
            res.converged = false;
            return res;
        }
    }
}

// --- polar parts: exact radial integral + adaptive arc quadrature ---

template <typename F>
double gl_panels(const F& fn, double a, double b, int panels, long& evals) {
    double h = (b - a) / panels;
    double total = 0;
    for (int k = 0; k < panels; ++k) {
        double mid = a + (k + 0.5) * h;
        double half = 0.5 * h;
        double acc = 0;
        for (int i = 0; i < 6; ++i) {
            acc += kGlWeight[i] * (fn(mid + half * kGlNode[i]) + fn(mid - half * kGlNode[i]));
        }
        total += acc * half;
        evals += 12;
    }
    return total;
}

// Integrate fn over [a,b] split at interior points, refining each piece by
// doubling panels until the piece tolerance is met.
template <typename F>
AverageResult adaptive_pieces(const F& fn, double a, double b, std::vector<double> splits,
                              double tol) {
    splits.push_back(a);
    splits.push_back(b);
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
    AverageResult res;
    int npieces = 0;
    for (std::size_t s = 0; s + 1 < splits.size(); ++s)
        if (splits[s] >= a - 1e-15 && splits[s + 1] <= b + 1e-15) ++npieces;
    double piece_tol = tol / std::max(1, npieces);
    for (std::size_t s = 0; s + 1 < splits.size(); ++s) {
        double lo = splits[s], hi = splits[s + 1];
        if (lo < a - 1e-15 || hi > b + 1e-15 || hi - lo < 1e-15) continue;
        int panels = 1;
        double prev = gl_panels(fn, lo, hi, panels, res.evals);
        for (;;) {
            panels *= 2;
            double cur = gl_panels(fn, lo, hi, panels, res.evals);
            double diff = std::abs(cur - prev);
            if (diff <= piece_tol * std::max(1.0, std::abs(cur)) || panels >= 256) {
                res.value += cur;
                res.error += diff;
                if (panels >= 256 && diff > piece_tol * std::max(1.0, std::abs(cur)))
                    res.converged = false;
                break;
            }
            prev = cur;
        }
    }
    return res;
}

// Mean of coef*h(arg w)*|w|^rho over disk(z,r).
AverageResult polar_average(const PolarPart& p, complexd z, double r, double tol) {
    const double R = std::abs(z);
    const double phi = (R == 0.0) ? 0.0 : std::atan2(z.imag(), z.real());
    const double q = p.rho + 2.0;
    AverageResult res;

    if (R < r * (1.0 + 1e-12)) {
        // Origin inside (or on the rim of) the disk: every direction reaches
        // from 0 to s_plus(alpha).
        auto fn = [&](double alpha) {
            double del = alpha - phi;
            double sn = std::sin(del);
            double rad = r * r - R * R * sn * sn;
            double splus = R * std::cos(del) + std::sqrt(std::max(0.0, rad));
            return p.profile(alpha) * std::pow(splus, q) / q;
        };
        std::vector<double> splits;
        for (double k : p.kinks) {
            splits.push_back(wrap_angle(k));
            splits.push_back(wrap_angle(k) + 2.0 * pi);
        }
        if (R > 0.99 * r) {
            // near-tangent rim: the sqrt loses smoothness around del = +-pi/2
            for (double d : {phi + pi / 2, phi - pi / 2, phi + 3 * pi / 2}) {
                double w = wrap_angle(d);
                splits.push_back(w);
                splits.push_back(w + 2.0 * pi);
            }
        }
        std::erase_if(splits, [](double v) { return v < 0.0 || v > 2.0 * pi; });
        AverageResult arc = adaptive_pieces(fn, 0.0, 2.0 * pi, splits, tol);
        res = arc;
        res.value = p.coef * arc.value / (pi * r * r);
        res.error = std::abs(p.coef) * arc.error / (pi * r * r);
        return res;
    }

    // Origin outside the disk: substitute sin(del) = (r/R) sin(psi) so the
    // integrand is smooth in psi on [-pi/2, pi/2].
    const double ratio = r / R;
    auto fn = [&](double psi) {
        double sp = std::sin(psi), cp = std::cos(psi);
        double sd = ratio * sp;
        double cd = std::sqrt(std::max(0.0, 1.0 - sd * sd));
        double del = std::asin(std::clamp(sd, -1.0, 1.0));
        double splus = R * cd + r * cp;
        double sminus = R * cd - r * cp;
        double jac = r * cp / (R * cd);
        return p.profile(phi + del) * (std::pow(splus, q) - std::pow(sminus, q)) / q * jac;
    };
    std::vector<double> splits;
    for (double k : p.kinks) {
        double del = std::remainder(k - phi, 2.0 * pi);
        if (std::abs(del) < pi / 2 && std::abs(std::sin(del)) < ratio) {
            splits.push_back(std::asin(std::clamp(std::sin(del) / ratio, -1.0, 1.0)));
        }
    }
    AverageResult arc = adaptive_pieces(fn, -pi / 2, pi / 2, splits, tol);
    res = arc;
    res.value = p.coef * arc.value / (pi * r * r);
    res.error = std::abs(p.coef) * arc.error / (pi * r * r);
    return res;
}

}  // namespace

AverageResult disk_average_detailed(const ScalarField& f, complexd z, double r,
                                    const QuadratureSpec& q) {
    q.validate();
    if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument("radius must be positive");
    if (!f.domain.contains_disk(z, r))
        throw std::domain_error("disk exceeds domain: center " + fmt(z) + " radius " + fmt(r));

    AverageResult res;
    res.value = f.constant;
    for (const auto& atom : f.atoms) res.value += atom.weight * log_atom_disk_average(atom.point, z, r);
    for (const auto& part : f.polars) {
        AverageResult pr = polar_average(part, z, r, q.tol);
        res.value += pr.value;
        res.error += pr.error;
        res.evals += pr.evals;
        res.converged = res.converged && pr.converged;
    }
    if (f.has_generic_part()) {
        AverageResult gr = generic_average(f, z, r, q);
        if (is_neg_inf(gr.value)) return {neg_inf, 0, res.evals + gr.evals, true};
        res.value += gr.value;
        res.error += gr.error;
        res.evals += gr.evals;
        res.converged = res.converged && gr.converged;
    }
    return res;
}

double disk_average(const ScalarField& f, complexd z, double r, const QuadratureSpec& q) {
    return disk_average_detailed(f, z, r, q).value;
}

ScalarField average_field(const ScalarField& f, const std::function<double(complexd)>& radius,
                          const GridSpec& grid, const QuadratureSpec& q) {
    auto data = std::make_shared<GridData>(grid);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            complexd z = grid.node(i, j);
            double r = radius(z);
            try {
                data->values(i, j) = disk_average(f, z, r, q);
            } catch (const std::exception& e) {
                throw std::runtime_error("average_field failed at node " + fmt(z) + ": " +
                                         e.what());
            }
        }
    }
    ScalarField out = grid_field(std::move(data), f.domain);
    out.label = "avg(" + f.label + ")";
    return out;
}

}  // namespace subh
