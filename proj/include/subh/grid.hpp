#pragma once

#include <Eigen/Core>

#include "subh/common.hpp"
#include "subh/domain.hpp"

namespace subh {

// Uniform node lattice over [x0,x1] x [y0,y1] with nx*ny nodes.  The step must
// be the same on both axes.
struct GridSpec {
    double x0, x1, y0, y1;
    int nx, ny;

    GridSpec(double x0, double x1, double y0, double y1, int nx, int ny);

    double hx() const { return (x1 - x0) / (nx - 1); }
    double hy() const { return (y1 - y0) / (ny - 1); }
    double step() const { return hx(); }
    double x(int i) const { return x0 + i * hx(); }
    double y(int j) const { return y0 + j * hy(); }
    complexd node(int i, int j) const { return {x(i), y(j)}; }
    long node_count() const { return static_cast<long>(nx) * ny; }

    // Centered square grid with an exact step: nodes at k*h for |k| <= half_span.
    static GridSpec centered(double step, int half_span);
    // "x0,x1,y0,y1,nx,ny"
    static GridSpec parse(const std::string& text);
    std::string describe() const;
};

// Samples on a GridSpec plus bilinear evaluation between nodes.
struct GridData {
    GridSpec spec;
    Eigen::ArrayXXd values;  // values(i,j) at node (x(i), y(j))

    explicit GridData(const GridSpec& s) : spec(s), values(s.nx, s.ny) {}

    bool covers(complexd z) const;
    // Bilinear interpolation; exact on affine functions.  -inf at a corner of
    // the containing cell makes the interpolated value -inf.
    double bilinear(complexd z) const;
};

}  // namespace subh
