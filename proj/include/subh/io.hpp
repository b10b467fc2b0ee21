#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "subh/field.hpp"
#include "subh/grid.hpp"
#include "subh/measure.hpp"
#include "subh/profile.hpp"

namespace subh::io {

// zero lists: header "re,im,multiplicity", one row per distinct zero
ZeroSequence read_zeros_csv(const std::string& path);
ZeroSequence parse_zeros_inline(const std::string& text);  // "re,im,m;re,im,m;..."
void write_zeros_csv(std::ostream& out, const ZeroSequence& zeros);

// sampled fields: "# grid x0 x1 y0 y1 nx ny" sidecar line, then "re,im,value"
// rows in row-major order (y outer, x inner); -inf spelled literally
GridData read_grid_csv(const std::string& path);
void write_grid_csv(std::ostream& out, const GridData& grid);

// measures: ragged rows tagged by kind
//   cell,x0,x1,y0,y1,mass | cell-disk,cx,cy,r,mass |
//   cell-sector,r0,r1,a0,a1,mass | atom,x,y,mass
void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu);

// profiles: header "theta,value", uniform angles starting at 0
PeriodicProfile read_profile_csv(const std::string& path);
void write_profile_csv(std::ostream& out, const PeriodicProfile& h);

// plain "key value" lines, '#' comments; relative paths resolve against dir
struct ScenarioFile {
    std::string check;
    std::map<std::string, std::string> kv;
    std::filesystem::path dir;

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
    double num(const std::string& key, double fallback) const;
    std::string resolve_path(const std::string& value) const;
};

ScenarioFile read_scenario(const std::string& path);

std::vector<std::string> split(const std::string& line, char sep);

}  // namespace subh::io
