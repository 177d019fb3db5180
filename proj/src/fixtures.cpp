#include "butterfly/fixtures.hpp"

#include <charconv>
#include <vector>

namespace butterfly {

Family exceptional_family_n3() {
    const GroundSize n(3);
    return Family(n, {Subset::empty(n), Subset::of(n, {1}), Subset::of(n, {2}),
                      Subset::of(n, {1, 2}), Subset::of(n, {2, 3}), Subset::of(n, {1, 3})});
}

Family exceptional_family_n4() {
    const GroundSize n(4);
    std::vector<Subset> ms = level(n, 2).members();
    ms.push_back(Subset::of(n, {1}));
    ms.push_back(Subset::of(n, {2, 3, 4}));
    ms.push_back(Subset::of(n, {2}));
    ms.push_back(Subset::of(n, {1, 3, 4}));
    return Family(n, std::move(ms));
}

namespace {
std::optional<int> to_int(const std::string& s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}
}  // namespace

std::optional<Family> fixture_by_name(const std::string& name) {
    if (name == "exceptional-n3") return exceptional_family_n3();
    if (name == "exceptional-n4") return exceptional_family_n4();

    for (const std::string prefix : {"two-levels:", "level:"}) {
        if (name.rfind(prefix, 0) != 0) continue;
        const std::string rest = name.substr(prefix.size());
        const std::size_t colon = rest.find(':');
        if (colon == std::string::npos) return std::nullopt;
        const auto n = to_int(rest.substr(0, colon));
        const auto k = to_int(rest.substr(colon + 1));
        if (!n || !k || *n < 1 || *n > GroundSize::kMax) return std::nullopt;
        try {
            return prefix == "two-levels:" ? two_levels(GroundSize(*n), *k)
                                           : level(GroundSize(*n), *k);
        } catch (const DomainError&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace butterfly
