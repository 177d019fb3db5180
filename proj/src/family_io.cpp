#include "butterfly/family_io.hpp"

#include <charconv>
#include <istream>
#include <sstream>

namespace butterfly {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int parse_int(const std::string& tok, int line, const std::string& what) {
    int value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw FamilyParseError(line, "expected " + what + ", got \"" + tok + "\"");
    return value;
}

}  // namespace

Family parse_family(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_n = false;
    GroundSize n(1);
    std::vector<Subset> members;

    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;

        if (!have_n) {
            if (t.rfind("n=", 0) != 0)
                throw FamilyParseError(lineno, "expected \"n=<int>\" on the first nonempty line");
            const int v = parse_int(trim(t.substr(2)), lineno, "an integer after \"n=\"");
            if (v < 1 || v > GroundSize::kMax)
                throw FamilyParseError(lineno, "n must be between 1 and " +
                                                   std::to_string(GroundSize::kMax));
            n = GroundSize(v);
            have_n = true;
            continue;
        }

        if (t == "{}") {
            members.push_back(Subset::empty(n));
            continue;
        }

        std::vector<int> elems;
        std::size_t pos = 0;
        while (pos <= t.size()) {
            const std::size_t comma = t.find(',', pos);
            const std::string tok = trim(t.substr(pos, comma == std::string::npos
                                                            ? std::string::npos
                                                            : comma - pos));
            if (tok.empty()) throw FamilyParseError(lineno, "empty element in member line");
            const int e = parse_int(tok, lineno, "an element");
            if (e < 1 || e > n.value())
                throw FamilyParseError(lineno, "element " + std::to_string(e) +
                                                   " outside {1,...," + std::to_string(n.value()) + "}");
            if (!elems.empty() && e <= elems.back())
                throw FamilyParseError(lineno, "elements must be strictly ascending");
            elems.push_back(e);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        members.push_back(Subset::of(n, elems));
    }

    if (!have_n) throw FamilyParseError(lineno, "missing \"n=<int>\" header");
    return Family(n, std::move(members));
}

Family parse_family_text(const std::string& text) {
    std::istringstream in(text);
    return parse_family(in);
}

std::string family_to_text(const Family& f) {
    std::string out = "n=" + std::to_string(f.ground().value()) + "\n";
    for (const Subset& s : f.members()) {
        if (s.is_empty()) {
            out += "{}\n";
            continue;
        }
        bool first = true;
        for (int e : s.elements()) {
            if (!first) out += ",";
            out += std::to_string(e);
            first = false;
        }
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json family_to_json(const Family& f) {
    nlohmann::ordered_json j;
    j["n"] = f.ground().value();
    auto members = nlohmann::ordered_json::array();
    for (const Subset& s : f.members()) members.push_back(s.elements());
    j["members"] = std::move(members);
    return j;
}

Family family_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("members"))
        throw FamilyParseError(0, "json family needs \"n\" and \"members\"");
    if (!j["n"].is_number_integer()) throw FamilyParseError(0, "json \"n\" must be an integer");
    const int nv = j["n"].get<int>();
    if (nv < 1 || nv > GroundSize::kMax)
        throw FamilyParseError(0, "n must be between 1 and " + std::to_string(GroundSize::kMax));
    const GroundSize n(nv);
    if (!j["members"].is_array()) throw FamilyParseError(0, "json \"members\" must be an array");
    std::vector<Subset> members;
    for (const auto& m : j["members"]) {
        if (!m.is_array()) throw FamilyParseError(0, "each member must be an array of elements");
        std::vector<int> elems;
        for (const auto& e : m) {
            if (!e.is_number_integer()) throw FamilyParseError(0, "elements must be integers");
            elems.push_back(e.get<int>());
        }
        try {
            members.push_back(Subset::of(n, elems));
        } catch (const DomainError& err) {
            throw FamilyParseError(0, err.what());
        }
    }
    return Family(n, std::move(members));
}

}  // namespace butterfly
