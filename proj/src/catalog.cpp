#include "subh/catalog.hpp"

#include <filesystem>
#include <memory>

#include "subh/expr.hpp"
#include "subh/io.hpp"
#include "subh/trigconvex.hpp"

namespace subh {

namespace {

struct NamedProfile {
    const char* name;
    double (*fn)(double);
    std::vector<double> kinks;
};

const std::vector<NamedProfile>& named_profiles() {
    static const std::vector<NamedProfile> table = {
        {"cos", [](double t) { return std::cos(t); }, {}},
        {"sin", [](double t) { return std::sin(t); }, {}},
        {"abssin", [](double t) { return std::fabs(std::sin(t)); }, {0.0, pi}},
        {"abscos", [](double t) { return std::fabs(std::cos(t)); }, {pi / 2, 3 * pi / 2}},
        {"2+0.5cos", [](double t) { return 2.0 + 0.5 * std::cos(t); }, {}},
        {"1.5+sin", [](double t) { return 1.5 + std::sin(t); }, {}},
        {"cos+abssin", [](double t) { return std::cos(t) + std::fabs(std::sin(t)); }, {0.0, pi}},
        {"2+0.5cos2t", [](double t) { return 2.0 + 0.5 * std::cos(2.0 * t); }, {}},
    };
    return table;
}

constexpr int kProfileSamples = 1024;

bool parse_const_profile(const std::string& name, double* value) {
    if (name.rfind("const:", 0) != 0) return false;
    std::string rest = name.substr(6);
    char* end = nullptr;
    double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str() || *end != '\0') return false;
    *value = v;
    return true;
}

}  // namespace

std::vector<std::string> catalog_field_names() {
    return {"re", "im", "rez2", "xy", "abs2", "potential:<re,im,m;...>", "ext:<profile>:<rho>"};
}

std::vector<std::string> catalog_profile_names() {
    std::vector<std::string> names{"const:<v>"};
    for (const auto& p : named_profiles()) names.push_back(p.name);
    return names;
}

bool is_catalog_field(const std::string& name) {
    if (name == "re" || name == "im" || name == "rez2" || name == "xy" || name == "abs2")
        return true;
    return name.rfind("potential:", 0) == 0 || name.rfind("ext:", 0) == 0;
}

ScalarField catalog_field(const std::string& name) {
    if (name == "re")
        return smooth_field([](complexd z) { return z.real(); }, "re");
    if (name == "im")
        return smooth_field([](complexd z) { return z.imag(); }, "im");
    if (name == "rez2")
        return smooth_field(
            [](complexd z) { return z.real() * z.real() - z.imag() * z.imag(); }, "rez2");
    if (name == "xy")
        return smooth_field([](complexd z) { return z.real() * z.imag(); }, "xy");
    if (name == "abs2")
        return smooth_field([](complexd z) { return std::norm(z); }, "abs2");
    if (name.rfind("potential:", 0) == 0) {
        ZeroSequence zs = io::parse_zeros_inline(name.substr(10));
        if (zs.empty()) throw std::invalid_argument("potential: needs at least one zero");
        return potential_field(zs);
    }
    if (name.rfind("ext:", 0) == 0) {
        std::string rest = name.substr(4);
        size_t colon = rest.rfind(':');
        if (colon == std::string::npos || colon + 1 == rest.size())
            throw std::invalid_argument("ext: wants ext:<profile>:<rho>");
        std::string profile = rest.substr(0, colon);
        char* end = nullptr;
        std::string rho_text = rest.substr(colon + 1);
        double rho = std::strtod(rho_text.c_str(), &end);
        if (end == rho_text.c_str() || *end != '\0' || !(rho > 0))
            throw std::invalid_argument("ext: bad rho '" + rho_text + "'");
        return extend(resolve_profile(profile), rho);
    }
    throw std::invalid_argument("unknown catalog field: " + name);
}

bool is_catalog_profile(const std::string& name) {
    double v;
    if (parse_const_profile(name, &v)) return true;
    for (const auto& p : named_profiles())
        if (name == p.name) return true;
    return false;
}

PeriodicProfile catalog_profile(const std::string& name) {
    double v;
    if (parse_const_profile(name, &v)) {
        double value = v;
        return PeriodicProfile::from_function([value](double) { return value; }, kProfileSamples,
                                              {}, name);
    }
    for (const auto& p : named_profiles())
        if (name == p.name)
            return PeriodicProfile::from_function(p.fn, kProfileSamples, p.kinks, p.name);
    throw std::invalid_argument("unknown catalog profile: " + name);
}

std::vector<PeriodicProfile> acceptance_profiles() {
    std::vector<PeriodicProfile> out;
    for (const char* name : {"const:1", "const:2", "const:0.5", "const:-1", "cos", "sin",
                             "abssin", "abscos", "2+0.5cos", "1.5+sin", "cos+abssin",
                             "2+0.5cos2t"})
        out.push_back(catalog_profile(name));
    return out;
}

ScalarField resolve_field(const std::string& text) {
    if (is_catalog_field(text)) return catalog_field(text);
    if (std::filesystem::exists(text)) {
        auto grid = std::make_shared<GridData>(io::read_grid_csv(text));
        Domain dom = Domain::rectangle(grid->spec.x0, grid->spec.x1, grid->spec.y0, grid->spec.y1);
        ScalarField f = grid_field(grid, dom);
        f.label = text;
        return f;
    }
    return parse_field(text);
}

PeriodicProfile resolve_profile(const std::string& text) {
    if (is_catalog_profile(text)) return catalog_profile(text);
    if (std::filesystem::exists(text)) return io::read_profile_csv(text);
    // expression in theta: the field parser with z standing for the angle
    auto f = std::make_shared<ScalarField>(parse_field(text));
    return PeriodicProfile::from_function([f](double t) { return (*f)(complexd(t, 0)); },
                                          kProfileSamples, {}, text);
}

}  // namespace subh
