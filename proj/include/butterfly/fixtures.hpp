#pragma once

#include <optional>
#include <string>

#include "butterfly/core.hpp"

namespace butterfly {

// The two sporadic families that show up in the maximum-size discussion.
Family exceptional_family_n3();  // {{}, {1}, {2}, {1,2}, {1,3}, {2,3}}
Family exceptional_family_n4();  // all 2-sets of [4] plus {1},{2},{2,3,4},{1,3,4}

// Resolves the CLI's named fixtures: "exceptional-n3", "exceptional-n4",
// "two-levels:<n>:<k>", "level:<n>:<k>". Returns nullopt for anything else.
std::optional<Family> fixture_by_name(const std::string& name);

}  // namespace butterfly
