#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "butterfly/core.hpp"

namespace butterfly {

// Text format:
//   n=<int>
//   one member per nonempty line, elements comma-separated ascending; "{}" is
//   the empty set.
// JSON format: {"n": <int>, "members": [[1,2],[3],...]} with [] for the empty
// set. Members serialize in canonical family order either way.

struct FamilyParseError : std::runtime_error {
    FamilyParseError(int line_number, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
          line(line_number) {}
    int line;
};

Family parse_family(std::istream& in);
Family parse_family_text(const std::string& text);
std::string family_to_text(const Family& f);

nlohmann::ordered_json family_to_json(const Family& f);
Family family_from_json(const nlohmann::json& j);

}  // namespace butterfly
