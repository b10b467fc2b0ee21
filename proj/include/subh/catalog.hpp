#pragma once

#include <string>
#include <vector>

#include "subh/field.hpp"
#include "subh/profile.hpp"

namespace subh {

// Built-in named fields and angular profiles used by the CLI and the demo
// scenarios, plus the resolution rules turning a command-line string into an
// object (name lookup, then file, then expression).

std::vector<std::string> catalog_field_names();
std::vector<std::string> catalog_profile_names();

bool is_catalog_field(const std::string& name);
ScalarField catalog_field(const std::string& name);

bool is_catalog_profile(const std::string& name);
PeriodicProfile catalog_profile(const std::string& name);

// profiles exercised by the agreement sweep, in fixed order
std::vector<PeriodicProfile> acceptance_profiles();

// name -> catalog; existing file -> CSV; otherwise parse as expression / error
ScalarField resolve_field(const std::string& text);
PeriodicProfile resolve_profile(const std::string& text);

}  // namespace subh
