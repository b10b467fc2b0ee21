#include "subh/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace subh {

GridSpec::GridSpec(double x0_, double x1_, double y0_, double y1_, int nx_, int ny_)
    : x0(x0_), x1(x1_), y0(y0_), y1(y1_), nx(nx_), ny(ny_) {
    if (!(x0 < x1) || !(y0 < y1)) throw std::invalid_argument("grid box is empty");
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2 nodes per axis");
    double rel = std::abs(hx() - hy()) / std::max(hx(), hy());
    if (rel > 1e-9) throw std::invalid_argument("grid step must be uniform on both axes");
}

GridSpec GridSpec::centered(double step, int half_span) {
    if (!(step > 0) || half_span < 1) throw std::invalid_argument("bad centered grid");
    double a = step * half_span;
    return GridSpec(-a, a, -a, a, 2 * half_span + 1, 2 * half_span + 1);
}

GridSpec GridSpec::parse(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        char* end = nullptr;
        double d = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw std::invalid_argument("bad grid token '" + item + "'");
        v.push_back(d);
    }
    if (v.size() != 6) throw std::invalid_argument("grid wants x0,x1,y0,y1,nx,ny");
    return GridSpec(v[0], v[1], v[2], v[3], static_cast<int>(v[4]), static_cast<int>(v[5]));
}

std::string GridSpec::describe() const {
    return fmt(x0) + "," + fmt(x1) + "," + fmt(y0) + "," + fmt(y1) + "," +
           std::to_string(nx) + "," + std::to_string(ny);
}

bool GridData::covers(complexd z) const {
    return z.real() >= spec.x0 && z.real() <= spec.x1 && z.imag() >= spec.y0 &&
           z.imag() <= spec.y1;
}

double GridData::bilinear(complexd z) const {
    if (!covers(z)) throw std::domain_error("point outside grid field box " + fmt(z));
    double sx = (z.real() - spec.x0) / spec.hx();
    double sy = (z.imag() - spec.y0) / spec.hy();
    int i = std::clamp(static_cast<int>(std::floor(sx)), 0, spec.nx - 2);
    int j = std::clamp(static_cast<int>(std::floor(sy)), 0, spec.ny - 2);
    double u = sx - i, v = sy - j;
    double c00 = values(i, j), c10 = values(i + 1, j);
    double c01 = values(i, j + 1), c11 = values(i + 1, j + 1);
    if (is_neg_inf(c00) || is_neg_inf(c10) || is_neg_inf(c01) || is_neg_inf(c11))
        return neg_inf;
    return c00 * (1 - u) * (1 - v) + c10 * u * (1 - v) + c01 * (1 - u) * v + c11 * u * v;
}

}  // namespace subh
