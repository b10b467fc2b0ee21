#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "subh/common.hpp"

namespace subh {

// 2*pi-periodic real profile.  Always carries n equally spaced samples; an
// optional analytic evaluator (plus the list of angles where the derivative
// jumps) makes defect extraction and extension averaging sharp.  Without the
// evaluator, off-node values come from periodic linear interpolation.
struct PeriodicProfile {
    Eigen::ArrayXd samples;
    std::function<double(double)> fn;  // may be empty
    std::vector<double> kinks;         // sorted angles in [0, 2*pi)
    std::string name = "profile";

    static PeriodicProfile from_samples(std::vector<double> values, std::string name = "profile");
    static PeriodicProfile from_function(std::function<double(double)> fn, int n,
                                         std::vector<double> kinks = {},
                                         std::string name = "profile");

    int size() const { return static_cast<int>(samples.size()); }
    double step() const { return 2.0 * pi / size(); }
    double angle(int k) const { return 2.0 * pi * k / size(); }
    double sample(int k) const;  // index modulo n
    double operator()(double theta) const;
    bool analytic() const { return static_cast<bool>(fn); }

    // Extrema over the samples (and kink angles when analytic).
    double max_value() const;
    double min_value() const;

    // Resampled copy with m nodes: analytic profiles re-evaluate, sampled ones
    // interpolate linearly.
    PeriodicProfile resampled(int m) const;
};

PeriodicProfile operator+(const PeriodicProfile& a, const PeriodicProfile& b);
PeriodicProfile operator-(const PeriodicProfile& a, const PeriodicProfile& b);
PeriodicProfile operator*(double c, const PeriodicProfile& p);

}  // namespace subh
