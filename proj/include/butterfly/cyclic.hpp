#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "butterfly/core.hpp"
#include "butterfly/lym.hpp"

namespace butterfly::cyclic {

// A cyclic arrangement of {1,...,n}, stored rotated so element 1 comes first;
// with that normalization there are (n-1)! distinct arrangements.
class CyclicPerm {
public:
    // accepts any rotation of a permutation of 1..n and canonicalizes it
    CyclicPerm(GroundSize n, std::vector<int> order);

    static CyclicPerm identity(GroundSize n);
    static CyclicPerm parse(GroundSize n, const std::string& text);  // "1,3,2,4"

    GroundSize ground() const { return n_; }
    const std::vector<int>& order() const { return order_; }
    int position_of(int element) const;  // 0-based slot in order()
    std::string to_string() const;

    friend bool operator==(const CyclicPerm& a, const CyclicPerm& b) {
        return a.order_ == b.order_;
    }

private:
    GroundSize n_;
    std::vector<int> order_;
    std::vector<int> position_;  // element-1 -> slot
};

// all (n-1)! arrangements; capped at n <= 8
std::vector<CyclicPerm> all_cyclic_perms(GroundSize n);

// true iff the slots occupied by s form one cyclically contiguous block;
// the empty set is outside the definition and rejected
bool is_interval(const Subset& s, const CyclicPerm& cp);

// the subfamily of f whose nonempty members are intervals along cp
Family intervals_of(const Family& f, const CyclicPerm& cp);

// A family whose members are all nonempty intervals along one arrangement.
// The full set is allowed here; checkers that need it absent say so.
class IntervalFamily {
public:
    IntervalFamily(CyclicPerm cp, Family members);  // validates every member

    const CyclicPerm& perm() const { return cp_; }
    const Family& members() const { return members_; }

private:
    CyclicPerm cp_;
    Family members_;
};

// Chains here are towers L_1 c L_2 c ... c L_n with |L_i| = i and every L_i
// an interval along cp: a starting singleton followed by left/right
// extension choices. Enumeration visits each exactly once, so the closed
// form n*2^(n-2) is checkable by counting. Needs n >= 2.
void for_each_interval_chain(const CyclicPerm& cp,
                             const std::function<void(const std::vector<Bits>&)>& fn);

std::int64_t count_interval_chains(int n);

// chains whose level-|f| entry is exactly f; f must be a proper nonempty
// interval along cp
std::int64_t count_chains_through(const CyclicPerm& cp, const Subset& f);

// chains passing through both a and b, where a is a proper nonempty
// subinterval of b and b is a proper interval
std::int64_t count_chains_through_pair(const CyclicPerm& cp, const Subset& a, const Subset& b);

// Weighted count of an interval family: maximal members cost 1, the rest
// cost 1/2, and under the hypotheses (no member inside two others, full set
// absent) the total stays at or below n.
struct IntervalWeightReport {
    int maximal_count = 0;
    int non_maximal_count = 0;
    lym::InequalityVerdict verdict;  // maximal_count + non_maximal_count/2 <= n
};

IntervalWeightReport check_interval_weight(const IntervalFamily& fam);

// Star-satisfying interval families without the full set have at most 2n
// members. Hypothesis codes: "violates_star", "contains_full_set".
lym::InequalityVerdict check_interval_family_size(const IntervalFamily& fam);

// Both sides of the incidence double count between arrangements and members:
// summing |F|!(n-|F|)! per member must equal the enumerated number of
// (arrangement, member) pairs where the member is an interval, and for
// star families that total fits in the budget (n-1)!*2n.
struct DoubleCountAudit {
    mpz_class member_weight_sum;  // sum of |F|!(n-|F|)! over members
    mpz_class incidence_count;    // enumerated interval incidences
    mpz_class budget;             // (n-1)!*2n
};

// requires {} and the full set absent, and n <= 8
DoubleCountAudit double_count_audit(const Family& f);

}  // namespace butterfly::cyclic
