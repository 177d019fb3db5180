#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "butterfly/conditions.hpp"
#include "butterfly/core.hpp"

namespace butterfly::lym {

// Uniform result shape for the exact inequality checks in this module.
// holds and equality always describe lhs vs rhs even when hypotheses fail,
// so diagnostic runs can still show the numbers.
struct InequalityVerdict {
    Rat lhs;
    Rat rhs;
    bool holds = false;     // lhs <= rhs
    bool equality = false;  // lhs == rhs
    bool hypotheses_ok = true;
    std::vector<std::string> hypothesis_failures;

    nlohmann::ordered_json to_json() const;
};

// Sum of 1/C(n,|F|) over the members of f.
Rat lym_sum(const Family& f);

// For a family satisfying the star condition with neither {} nor the full
// set as a member, the level-weighted sum stays at or below 2. Hypothesis
// failure codes: "violates_star", "contains_empty_set", "contains_full_set".
InequalityVerdict check_star_lym(const Family& f);

// Input shape for the annotated bound: two disjoint antichains m and mid,
// the full set not in m, and a map f sending each member of mid to a strict
// superset inside m. Each mid member must have exactly one strict superset
// in m (so f is forced); with a second container the bounds below are simply
// false, e.g. m = level(4,3), mid = level(4,2) pushes the linear form to 3/2.
struct AnnotatedAntichains {
    Family m;
    Family mid;
    conditions::SupersetMap f;
};

// Per mid-member diagnostics. The two coefficient forms agree exactly when
// C(n-|A|, n-|f(A)|) equals n-|A|, which happens at the boundary values of
// n-|f(A)|; the flags record which boundary was hit.
struct MidMemberNote {
    Subset a;
    Subset fa;
    int size_gap;            // |f(A)| - |A|
    bool coefficient_tight;  // C(n-|A|, n-|f(A)|) == n-|A|
    bool fa_is_coatom;       // |f(A)| == n-1
    bool fa_adjacent;        // |f(A)| == |A|+1
};

// Both refinements of the classical antichain bound for the annotated shape:
//   linear_form.lhs   = sum_M 1/C(n,|M|) + sum_A (1/C(n,|A|)) (1 - 1/(n-|A|))
//   binomial_form.lhs = sum_M 1/C(n,|M|) + sum_A (1/C(n,|A|)) (1 - 1/C(n-|A|, n-|f(A)|))
// with rhs 1 in both. linear_form.lhs <= binomial_form.lhs <= 1 whenever the
// input shape is valid.
struct AnnotatedLymReport {
    InequalityVerdict linear_form;
    InequalityVerdict binomial_form;
    std::vector<MidMemberNote> notes;
};

AnnotatedLymReport annotated_lym_check(const AnnotatedAntichains& x);

// Weakening of the linear form with every mid coefficient replaced by 1/2:
//   lhs = sum_M 1/C(n,|M|) + sum_A (1/2) / C(n,|A|) <= 1.
// stated_equality_condition records whether every mid member A has
// |A| = n-2 and |f(A)| = n-1, the only pattern that can make this tight
// with mid nonempty.
struct HalvedLymReport {
    InequalityVerdict verdict;
    bool stated_equality_condition = false;
};

HalvedLymReport halved_lym_check(const Family& m, const Family& mid,
                                 const conditions::SupersetMap& f);

// Largest fork-free weight a level can carry: C(n,i) (n-i)/(n-i-1).
// Defined for 0 <= i <= n-2; the last two levels are rejected.
Rat fork_free_level_capacity(int n, int i);

// The i in [1, n-2] maximizing fork_free_level_capacity(n, i), ties broken
// toward smaller i. For every n >= 4 this lands on floor((n+1)/2); at n = 6
// levels 3 and 4 tie and the tie rule picks 3.
int capacity_argmax(int n);

// Size bound for fork-free families avoiding the full set:
// C(n, floor(n/2)) (1 + 2/(n-3)), defined for n >= 4.
Rat fork_free_bound(int n);

}  // namespace butterfly::lym
