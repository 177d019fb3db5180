#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "butterfly/core.hpp"
#include "butterfly/lym.hpp"

namespace butterfly::search {

enum class Predicate { star, fork_free };

std::string predicate_name(Predicate p);

// 0 means unlimited. Node counts are checked exactly, the clock every few
// hundred nodes.
struct SearchBudget {
    std::uint64_t max_nodes = 0;
    double max_seconds = 0.0;
};

// proof_complete means the branch-and-bound exhausted the space, so optimum
// is certified rather than best-found. A budget stop leaves it false and
// keeps the best family seen so far.
struct SearchResult {
    GroundSize n;
    Predicate predicate = Predicate::star;
    int optimum = 0;
    Family witness;
    std::uint64_t nodes_explored = 0;
    bool proof_complete = false;

    nlohmann::ordered_json to_json() const;
};

// Exact maximum family size for the predicate, by depth-first search over
// the 2^n candidate sets in canonical order with incremental feasibility,
// a remaining-candidate bound, and relabeling reduction at the root (the
// first chosen member can always be mapped to {1,...,s}). No cutoffs taken
// on faith from known bounds; the result is an independent certification.
// 2 <= n <= 6; expect n = 6 to need a real budget.
SearchResult max_family(GroundSize n, Predicate pred, const SearchBudget& budget = {},
                        int threads = 1);

// All maximum families reduced to canonical relabeling classes, sorted.
struct ExtremalCatalog {
    GroundSize n;
    Predicate predicate = Predicate::star;
    int size = 0;
    std::vector<Family> classes;
    std::uint64_t nodes_explored = 0;
    bool proof_complete = false;

    int class_count() const { return static_cast<int>(classes.size()); }
    nlohmann::ordered_json to_json() const;
};

// Enumerates every predicate-satisfying family of exactly `optimum` members,
// up to relabeling. `optimum` must come from a completed max_family run;
// if the sweep meets a family that still extends past it, the claimed
// optimum was wrong and a std::logic_error flies. 2 <= n <= 5.
ExtremalCatalog enumerate_max_families(GroundSize n, Predicate pred, int optimum,
                                       const SearchBudget& budget = {}, int threads = 1);

// Exhaustive loop over all 2^(2^n) families; n <= 4. Independent of the
// branch-and-bound machinery, used as its oracle.
int brute_force_max(GroundSize n, Predicate pred);
std::vector<Family> brute_force_max_families(GroundSize n, Predicate pred);

// Certified check that the star optimum equals the sum of the two largest
// binomial coefficients, C(n,floor(n/2)) + C(n,floor(n/2)+1). 3 <= n <= 5.
struct TwoLevelOptimumReport {
    SearchResult result;
    std::int64_t expected = 0;
    bool conclusive = false;  // search exhausted the space
    bool matches = false;     // conclusive and optimum == expected

    nlohmann::ordered_json to_json() const;
};

TwoLevelOptimumReport verify_two_level_optimum(GroundSize n, const SearchBudget& budget = {},
                                               int threads = 1);

// Certified catalog of maximum star families plus, per class, the
// level-weighted bound verdict and whether the class is two full adjacent
// levels. 3 <= n <= 5.
struct ClassificationReport {
    ExtremalCatalog catalog;
    std::vector<lym::InequalityVerdict> class_lym;
    bool all_two_levels = false;
    bool conclusive = false;

    nlohmann::ordered_json to_json() const;
};

ClassificationReport verify_extremal_classification(GroundSize n,
                                                    const SearchBudget& budget = {},
                                                    int threads = 1);

// Deterministic helpers on top of the standard mt19937_64 engine. The
// distributions in <random> are not pinned across implementations, so
// sampling is done by hand.
std::uint64_t rng_below(std::mt19937_64& g, std::uint64_t bound);  // uniform in [0, bound)
double unit_real(std::mt19937_64& g);                              // uniform in [0, 1)

struct RandomFamilyOptions {
    double density = 0.5;
    bool exclude_empty = false;
    bool exclude_full = false;
};

// Independent per-subset coin flips in ascending mask order.
Family random_family(GroundSize n, std::uint64_t seed, const RandomFamilyOptions& opts = {});

// Randomized greedy insertion with rejection: shuffle the candidate subsets,
// skip each with probability 1 - density, insert what keeps the predicate.
Family random_star_family(GroundSize n, std::uint64_t seed, const RandomFamilyOptions& opts = {});
Family random_fork_free_family(GroundSize n, std::uint64_t seed,
                               const RandomFamilyOptions& opts = {});

}  // namespace butterfly::search
