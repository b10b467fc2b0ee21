#include "subh/profile.hpp"

#include <algorithm>
#include <set>

namespace subh {

PeriodicProfile PeriodicProfile::from_samples(std::vector<double> values, std::string name) {
    if (values.size() < 4) throw std::invalid_argument("profile needs at least 4 samples");
    PeriodicProfile p;
    p.samples = Eigen::Map<Eigen::ArrayXd>(values.data(), values.size());
    p.name = std::move(name);
    return p;
}

PeriodicProfile PeriodicProfile::from_function(std::function<double(double)> fn, int n,
                                               std::vector<double> kinks, std::string name) {
    if (n < 4) throw std::invalid_argument("profile needs at least 4 samples");
    PeriodicProfile p;
    p.samples.resize(n);
    for (int k = 0; k < n; ++k) p.samples[k] = fn(2.0 * pi * k / n);
    p.fn = std::move(fn);
    for (double& k : kinks) k = wrap_angle(k);
    std::sort(kinks.begin(), kinks.end());
    p.kinks = std::move(kinks);
    p.name = std::move(name);
    return p;
}

double PeriodicProfile::sample(int k) const {
    int n = size();
    int m = k % n;
    if (m < 0) m += n;
    return samples[m];
}

double PeriodicProfile::operator()(double theta) const {
    if (fn) return fn(theta);
    double t = wrap_angle(theta) / step();
    int k = static_cast<int>(std::floor(t));
    double u = t - k;
    return sample(k) * (1.0 - u) + sample(k + 1) * u;
}

double PeriodicProfile::max_value() const {
    double m = samples.maxCoeff();
    if (fn)
        for (double k : kinks) m = std::max(m, fn(k));
    return m;
}

double PeriodicProfile::min_value() const {
    double m = samples.minCoeff();
    if (fn)
        for (double k : kinks) m = std::min(m, fn(k));
    return m;
}

PeriodicProfile PeriodicProfile::resampled(int m) const {
    if (fn) return from_function(fn, m, kinks, name);
    PeriodicProfile p;
    p.samples.resize(m);
    for (int k = 0; k < m; ++k) p.samples[k] = (*this)(2.0 * pi * k / m);
    p.name = name;
    p.kinks = kinks;
    return p;
}

namespace {

std::vector<double> merged_kinks(const PeriodicProfile& a, const PeriodicProfile& b) {
    std::set<double> s(a.kinks.begin(), a.kinks.end());
    s.insert(b.kinks.begin(), b.kinks.end());
    return {s.begin(), s.end()};
}

PeriodicProfile combine(const PeriodicProfile& a, const PeriodicProfile& b, double sign,
                        char op) {
    int n = std::max(a.size(), b.size());
    PeriodicProfile p;
    p.name = a.name + op + b.name;
    if (a.fn && b.fn) {
        auto fa = a.fn, fb = b.fn;
        return PeriodicProfile::from_function(
            [fa, fb, sign](double t) { return fa(t) + sign * fb(t); }, n, merged_kinks(a, b),
            p.name);
    }
    p.samples.resize(n);
    for (int k = 0; k < n; ++k) {
        double t = 2.0 * pi * k / n;
        p.samples[k] = a(t) + sign * b(t);
    }
    p.kinks = merged_kinks(a, b);
    return p;
}

}  // namespace

PeriodicProfile operator+(const PeriodicProfile& a, const PeriodicProfile& b) {
    return combine(a, b, 1.0, '+');
}

PeriodicProfile operator-(const PeriodicProfile& a, const PeriodicProfile& b) {
    return combine(a, b, -1.0, '-');
}

PeriodicProfile operator*(double c, const PeriodicProfile& p) {
    PeriodicProfile out;
    out.name = fmt(c) + "*" + p.name;
    out.kinks = p.kinks;
    out.samples = c * p.samples;
    if (p.fn) {
        auto f = p.fn;
        out.fn = [c, f](double t) { return c * f(t); };
    }
    return out;
}

}  // namespace subh
