#include "butterfly/conditions.hpp"

#include <algorithm>
#include <string>

namespace butterfly::conditions {

namespace {

bool bits_subset(Bits a, Bits b) { return (a & b) == a; }
bool bits_proper_subset(Bits a, Bits b) { return a != b && bits_subset(a, b); }

}  // namespace

std::optional<StarViolation> find_star_violation(const Family& f) {
    const auto& mem = f.members();
    const int m = f.size();
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Bits inter = mem[i].bits() & mem[j].bits();
            int found = -1;
            for (int k = 0; k < m; ++k) {
                if (k == i || k == j) continue;
                if (!bits_subset(mem[k].bits(), inter)) continue;
                if (found < 0) {
                    found = k;
                    continue;
                }
                return StarViolation{mem[found], mem[k], mem[i], mem[j]};
            }
        }
    }
    return std::nullopt;
}

std::optional<ForkViolation> find_fork_violation(const Family& f) {
    const auto& mem = f.members();
    const int m = f.size();
    for (int k = 0; k < m; ++k) {
        int first = -1;
        for (int j = 0; j < m; ++j) {
            if (!bits_proper_subset(mem[k].bits(), mem[j].bits())) continue;
            if (first < 0) {
                first = j;
                continue;
            }
            return ForkViolation{mem[k], mem[first], mem[j]};
        }
    }
    return std::nullopt;
}

bool satisfies_star(const Family& f) { return !find_star_violation(f).has_value(); }
bool is_fork_free(const Family& f) { return !find_fork_violation(f).has_value(); }

std::optional<std::pair<Subset, Subset>> find_comparable_pair(const Family& f) {
    const auto& mem = f.members();
    const int m = f.size();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (bits_subset(mem[i].bits(), mem[j].bits()))
                return std::pair{mem[i], mem[j]};
    return std::nullopt;
}

bool is_antichain(const Family& f) { return !find_comparable_pair(f).has_value(); }

Decomposition decompose(const Family& f) {
    const auto& mem = f.members();
    const int m = f.size();
    std::vector<Subset> maximal, minimal, middle;
    for (int k = 0; k < m; ++k) {
        bool has_superset = false, has_subset = false;
        for (int j = 0; j < m; ++j) {
            if (bits_proper_subset(mem[k].bits(), mem[j].bits())) has_superset = true;
            if (bits_proper_subset(mem[j].bits(), mem[k].bits())) has_subset = true;
        }
        if (!has_superset) maximal.push_back(mem[k]);
        if (!has_subset) minimal.push_back(mem[k]);
        if (has_superset && has_subset) middle.push_back(mem[k]);
    }
    return Decomposition{Family(f.ground(), std::move(maximal)),
                         Family(f.ground(), std::move(minimal)),
                         Family(f.ground(), std::move(middle))};
}

std::string SupersetMapError::message() const {
    if (kind == Kind::no_superset)
        return "member " + member.to_string() + " has no strict superset in the target family";
    return "member " + member.to_string() + " has multiple strict supersets, e.g. " +
           first->to_string() + " and " + second->to_string();
}

std::variant<SupersetMap, SupersetMapError> unique_superset_map(const Family& from,
                                                                const Family& into) {
    if (!(from.ground() == into.ground()))
        throw DomainError("unique_superset_map: families live on different ground sets");
    SupersetMap out;
    for (const Subset& a : from.members()) {
        std::optional<Subset> hit;
        for (const Subset& b : into.members()) {
            if (!bits_proper_subset(a.bits(), b.bits())) continue;
            if (!hit) {
                hit = b;
                continue;
            }
            return SupersetMapError{SupersetMapError::Kind::multiple_supersets, a, hit, b};
        }
        if (!hit)
            return SupersetMapError{SupersetMapError::Kind::no_superset, a,
                                    std::nullopt, std::nullopt};
        out.emplace(a, *hit);
    }
    return out;
}

Family replace_empty_with_singleton(const Family& f) {
    const GroundSize n = f.ground();
    if (!f.contains_bits(0))
        throw DomainError("replace_empty_with_singleton: family does not contain the empty set");
    if (f.contains_bits(n.full_mask()))
        throw DomainError("replace_empty_with_singleton: family contains the full ground set");
    for (int i = 1; i <= n.value(); ++i) {
        const Bits single = Bits{1} << (i - 1);
        if (!f.contains_bits(single))
            return f.without(Subset::empty(n)).with(Subset(n, single));
    }
    throw DomainError("replace_empty_with_singleton: every singleton is already a member");
}

bool StarFilter::can_add(Bits candidate) const {
    const int m = static_cast<int>(members_.size());
    for (int k = 0; k < m; ++k)
        if (members_[k] == candidate) return false;
    // candidate slides under an existing pair that already has one member below
    for (int j = 1; j < m; ++j) {
        for (int i = 0; i < j; ++i) {
            if (below_pair_[j][i] == 0) continue;
            if (bits_subset(candidate, members_[i] & members_[j])) return false;
        }
    }
    // a pair formed by the candidate and an existing member traps two members
    for (int j = 0; j < m; ++j) {
        const Bits inter = candidate & members_[j];
        int below = 0;
        for (int k = 0; k < m; ++k) {
            if (k == j) continue;
            if (bits_subset(members_[k], inter) && ++below == 2) return false;
        }
    }
    return true;
}

void StarFilter::push(Bits candidate) {
    const int m = static_cast<int>(members_.size());
    for (int j = 1; j < m; ++j)
        for (int i = 0; i < j; ++i)
            if (bits_subset(candidate, members_[i] & members_[j])) ++below_pair_[j][i];
    std::vector<std::uint8_t> row(m, 0);
    for (int i = 0; i < m; ++i) {
        const Bits inter = candidate & members_[i];
        for (int k = 0; k < m; ++k)
            if (k != i && bits_subset(members_[k], inter)) ++row[i];
    }
    below_pair_.push_back(std::move(row));
    members_.push_back(candidate);
}

void StarFilter::pop() {
    const Bits gone = members_.back();
    members_.pop_back();
    below_pair_.pop_back();
    const int m = static_cast<int>(members_.size());
    for (int j = 1; j < m; ++j)
        for (int i = 0; i < j; ++i)
            if (bits_subset(gone, members_[i] & members_[j])) --below_pair_[j][i];
}

bool ForkFilter::can_add(Bits candidate) const {
    const int m = static_cast<int>(members_.size());
    int supersets = 0;
    for (int k = 0; k < m; ++k) {
        if (members_[k] == candidate) return false;
        if (bits_proper_subset(candidate, members_[k]) && ++supersets == 2) return false;
        if (bits_proper_subset(members_[k], candidate) && strict_superset_count_[k] >= 1)
            return false;
    }
    return true;
}

void ForkFilter::push(Bits candidate) {
    const int m = static_cast<int>(members_.size());
    std::uint8_t own = 0;
    for (int k = 0; k < m; ++k) {
        if (bits_proper_subset(members_[k], candidate)) ++strict_superset_count_[k];
        if (bits_proper_subset(candidate, members_[k])) ++own;
    }
    members_.push_back(candidate);
    strict_superset_count_.push_back(own);
}

void ForkFilter::pop() {
    const Bits gone = members_.back();
    members_.pop_back();
    strict_superset_count_.pop_back();
    const int m = static_cast<int>(members_.size());
    for (int k = 0; k < m; ++k)
        if (bits_proper_subset(members_[k], gone)) --strict_superset_count_[k];
}

}  // namespace butterfly::conditions
