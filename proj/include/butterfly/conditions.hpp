#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "butterfly/core.hpp"

namespace butterfly::conditions {

// The star condition on a family F: there are no four distinct members
// A, B, C, D with A ∪ B ⊆ C ∩ D. Equivalently, for each unordered pair
// {C, D} at most one other member fits under C ∩ D.
struct StarViolation {
    Subset a, b, c, d;  // union(a,b) ⊆ intersect(c,d), all four distinct
};

// A fork: one member strictly below two others.
struct ForkViolation {
    Subset a, b, c;  // a ⊂ b and a ⊂ c, b ≠ c
};

// Scans unordered pairs (C, D) in canonical member order and, per pair, the
// members below C ∩ D in canonical order; the first pair with two qualifying
// members yields the witness. Deterministic for a given family. O(|F|^3).
std::optional<StarViolation> find_star_violation(const Family& f);

// First member (canonical order) with two strict supersets; the witness lists
// its two smallest supersets.
std::optional<ForkViolation> find_fork_violation(const Family& f);

bool satisfies_star(const Family& f);
bool is_fork_free(const Family& f);
bool is_antichain(const Family& f);
std::optional<std::pair<Subset, Subset>> find_comparable_pair(const Family& f);

// maximal = members contained in no other member, minimal = members containing
// no other member, middle = the rest. A member that is both maximal and
// minimal appears in both of the first two parts and not in middle.
struct Decomposition {
    Family maximal, minimal, middle;
};
Decomposition decompose(const Family& f);

using SupersetMap = std::map<Subset, Subset>;

struct SupersetMapError {
    enum class Kind { no_superset, multiple_supersets };
    Kind kind;
    Subset member;                        // the offending member of `from`
    std::optional<Subset> first, second;  // witnesses for multiple_supersets
    std::string message() const;
};

// For each member A of `from`, the unique member of `into` strictly containing
// A. Errors out if some A has none or more than one.
std::variant<SupersetMap, SupersetMapError> unique_superset_map(const Family& from,
                                                                const Family& into);

// Swaps the empty set for the least absent singleton. Requires {} ∈ F,
// [n] ∉ F, and at least one absent singleton; preserves size, and preserves
// the star condition when F satisfies it.
Family replace_empty_with_singleton(const Family& f);

// Incremental star feasibility for a growing family, for search and random
// generation. Keeps, per unordered pair of members, the count of members that
// fit under the pair's intersection; in any accepted state every count is at
// most one. push/pop follow a LIFO discipline.
class StarFilter {
public:
    explicit StarFilter(GroundSize n) : n_(n) {}

    GroundSize ground() const { return n_; }
    int size() const { return static_cast<int>(members_.size()); }
    const std::vector<Bits>& members() const { return members_; }
    Family family() const { return Family::from_bits(n_, members_); }

    bool can_add(Bits candidate) const;
    void push(Bits candidate);  // caller checks can_add first
    void pop();

private:
    GroundSize n_;
    std::vector<Bits> members_;
    // below_pair_[j][i], i < j: members under members_[i] ∩ members_[j],
    // not counting the pair itself
    std::vector<std::vector<std::uint8_t>> below_pair_;
};

// Same idea for fork-freeness: tracks how many strict supersets each member
// has; a fork appears exactly when some count would reach two.
class ForkFilter {
public:
    explicit ForkFilter(GroundSize n) : n_(n) {}

    GroundSize ground() const { return n_; }
    int size() const { return static_cast<int>(members_.size()); }
    const std::vector<Bits>& members() const { return members_; }
    Family family() const { return Family::from_bits(n_, members_); }

    bool can_add(Bits candidate) const;
    void push(Bits candidate);
    void pop();

private:
    GroundSize n_;
    std::vector<Bits> members_;
    std::vector<std::uint8_t> strict_superset_count_;
};

}  // namespace butterfly::conditions
