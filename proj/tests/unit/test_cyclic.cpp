#include <doctest.h>

#include <random>
#include <set>

#include "butterfly/cyclic.hpp"
#include "butterfly/fixtures.hpp"
#include "test_helpers.hpp"

using namespace butterfly;
using namespace butterfly::cyclic;

namespace {

// every interval mask along cp, built directly from (start, length) blocks
std::set<Bits> interval_masks(const CyclicPerm& cp) {
    const int n = cp.ground().value();
    std::set<Bits> out;
    for (int start = 0; start < n; ++start)
        for (int len = 1; len <= n; ++len) {
            Bits m = 0;
            for (int t = 0; t < len; ++t)
                m |= Bits(1) << (cp.order()[static_cast<std::size_t>((start + t) % n)] - 1);
            out.insert(m);
        }
    return out;
}

}  // namespace

TEST_CASE("cyclic arrangements canonicalize to start at 1") {
    const GroundSize n(3);
    const CyclicPerm a(n, {3, 1, 2});
    CHECK(a.order() == std::vector<int>{1, 2, 3});
    CHECK(a == CyclicPerm::identity(n));
    CHECK(a.position_of(3) == 2);

    const CyclicPerm b(n, {2, 1, 3});
    CHECK(b.order() == std::vector<int>{1, 3, 2});
    CHECK(b.to_string() == "1,3,2");
    CHECK(CyclicPerm::parse(n, "1,3,2") == b);
    CHECK(CyclicPerm::parse(n, "3,2,1") == b);

    CHECK_THROWS_AS(CyclicPerm(n, {1, 2}), DomainError);
    CHECK_THROWS_AS(CyclicPerm(n, {1, 2, 2}), DomainError);
    CHECK_THROWS_AS(CyclicPerm(n, {0, 1, 2}), DomainError);
    CHECK_THROWS_AS(CyclicPerm::parse(n, "1,2,x"), DomainError);
    CHECK_THROWS_AS(CyclicPerm::parse(n, ""), DomainError);
}

TEST_CASE("there are (n-1)! arrangements") {
    for (int n = 1; n <= 6; ++n) {
        const auto perms = all_cyclic_perms(GroundSize(n));
        mpz_class expected = factorial(n - 1);
        CHECK(mpz_class(static_cast<long>(perms.size())) == expected);
        std::set<std::string> uniq;
        for (const auto& cp : perms) {
            CHECK(cp.order().front() == 1);
            uniq.insert(cp.to_string());
        }
        CHECK(uniq.size() == perms.size());
    }
    CHECK_THROWS_AS(all_cyclic_perms(GroundSize(9)), DomainError);
}

TEST_CASE("interval recognition examples") {
    const GroundSize n3(3);
    const CyclicPerm c3 = CyclicPerm::identity(n3);
    CHECK(is_interval(Subset::of(n3, {3, 1}), c3));  // wraps around
    CHECK(is_interval(Subset::full(n3), c3));
    CHECK(is_interval(Subset::of(n3, {2}), c3));

    const GroundSize n4(4);
    const CyclicPerm c4 = CyclicPerm::identity(n4);
    CHECK(!is_interval(Subset::of(n4, {1, 3}), c4));
    CHECK(is_interval(Subset::of(n4, {1, 3}), CyclicPerm(n4, {1, 3, 2, 4})));
    CHECK(is_interval(Subset::of(n4, {4, 1, 2}), c4));
    CHECK_THROWS_AS(is_interval(Subset::empty(n4), c4), DomainError);
    CHECK_THROWS_AS(is_interval(Subset::empty(n3), c3), DomainError);
}

TEST_CASE("interval recognition agrees with direct block construction") {
    for (int n = 3; n <= 5; ++n) {
        const GroundSize gs(n);
        for (const CyclicPerm& cp : all_cyclic_perms(gs)) {
            const auto blocks = interval_masks(cp);
            for (Bits b = 1; b <= gs.full_mask(); ++b)
                CHECK(is_interval(Subset(gs, b), cp) == (blocks.count(b) > 0));
        }
    }
}

TEST_CASE("interval subfamily extraction") {
    const GroundSize n3(3);
    const CyclicPerm c3 = CyclicPerm::identity(n3);
    CHECK(intervals_of(level(n3, 1), c3) == level(n3, 1));
    CHECK(intervals_of(Family::from_bits(n3, {0b101}), c3) ==
          Family::from_bits(n3, {0b101}));
    const GroundSize n4(4);
    CHECK(intervals_of(Family::from_bits(n4, {0b0101}), CyclicPerm::identity(n4)).empty());
    // the empty set never counts as an interval and is silently dropped
    CHECK(intervals_of(Family::from_bits(n3, {0b000, 0b001}), c3) ==
          Family::from_bits(n3, {0b001}));

    std::mt19937_64 gen(31337);
    for (int trial = 0; trial < 60; ++trial) {
        const Family f = test_helpers::random_star_family(GroundSize(5), gen);
        for (const CyclicPerm& cp : {CyclicPerm::identity(GroundSize(5)),
                                     CyclicPerm(GroundSize(5), {1, 4, 2, 5, 3})}) {
            const Family g = intervals_of(f, cp);
            CHECK(conditions::satisfies_star(g));
            for (const Subset& s : g.members()) CHECK(is_interval(s, cp));
        }
    }
}

TEST_CASE("interval family type validates members") {
    const GroundSize n4(4);
    const CyclicPerm c4 = CyclicPerm::identity(n4);
    CHECK_NOTHROW(IntervalFamily(c4, Family::from_bits(n4, {0b0011, 0b1001, 0b1111})));
    CHECK_THROWS_AS(IntervalFamily(c4, Family::from_bits(n4, {0b0101})), DomainError);
    CHECK_THROWS_AS(IntervalFamily(c4, Family::from_bits(n4, {0b0000, 0b0001})), DomainError);
    CHECK_THROWS_AS(IntervalFamily(c4, Family(GroundSize(3))), DomainError);
}

TEST_CASE("chain enumeration yields n*2^(n-2) distinct valid chains") {
    for (int n = 2; n <= 12; ++n)
        CHECK(count_interval_chains(n) == static_cast<std::int64_t>(n) << (n - 2));
    CHECK(count_interval_chains(3) == 6);
    CHECK(count_interval_chains(4) == 16);
    CHECK_THROWS_AS(count_interval_chains(1), DomainError);

    const GroundSize n5(5);
    const CyclicPerm cp(n5, {1, 3, 5, 2, 4});
    std::set<std::vector<Bits>> seen;
    for_each_interval_chain(cp, [&](const std::vector<Bits>& chain) {
        REQUIRE(chain.size() == 5);
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const Subset s(n5, chain[i]);
            CHECK(s.size() == static_cast<int>(i) + 1);
            CHECK(is_interval(s, cp));
            if (i > 0) CHECK(is_proper_subset_of(Subset(n5, chain[i - 1]), s));
        }
        seen.insert(chain);
    });
    CHECK(seen.size() == 40);  // 5 * 2^3
}

TEST_CASE("every proper interval lies on exactly 2^(n-2) chains") {
    for (int n = 3; n <= 10; ++n) {
        const GroundSize gs(n);
        for (const CyclicPerm& cp :
             {CyclicPerm::identity(gs), CyclicPerm(gs, [n] {
                  std::vector<int> v;
                  for (int i = n; i >= 1; --i) v.push_back(i);
                  return v;
              }())}) {
            for (int start = 0; start < n; ++start)
                for (int len = 1; len <= n - 1; ++len) {
                    Bits m = 0;
                    for (int t = 0; t < len; ++t)
                        m |= Bits(1)
                             << (cp.order()[static_cast<std::size_t>((start + t) % n)] - 1);
                    CHECK(count_chains_through(cp, Subset(gs, m)) ==
                          std::int64_t{1} << (n - 2));
                }
        }
    }
    const GroundSize n4(4);
    const CyclicPerm c4 = CyclicPerm::identity(n4);
    CHECK(count_chains_through(c4, Subset::of(n4, {1, 2})) == 4);
    CHECK_THROWS_AS(count_chains_through(c4, Subset::full(n4)), DomainError);
    CHECK_THROWS_AS(count_chains_through(c4, Subset::of(n4, {1, 3})), DomainError);
}

TEST_CASE("chains through a nested interval pair stay within 2^(n-3)") {
    for (int n = 3; n <= 10; ++n) {
        const GroundSize gs(n);
        const CyclicPerm cp = CyclicPerm::identity(gs);
        std::vector<Subset> intervals;
        for (int start = 0; start < n; ++start)
            for (int len = 1; len <= n - 1; ++len) {
                Bits m = 0;
                for (int t = 0; t < len; ++t) m |= Bits(1) << ((start + t) % n);
                intervals.emplace_back(gs, m);
            }
        for (const Subset& a : intervals)
            for (const Subset& b : intervals) {
                if (!is_proper_subset_of(a, b)) continue;
                const auto through = count_chains_through_pair(cp, a, b);
                CHECK(through >= 0);
                CHECK(through <= std::int64_t{1} << (n - 3));
            }
    }
    const GroundSize n4(4);
    const CyclicPerm c4 = CyclicPerm::identity(n4);
    CHECK(count_chains_through_pair(c4, Subset::of(n4, {1}), Subset::of(n4, {1, 2})) == 2);
    CHECK_THROWS_AS(
        count_chains_through_pair(c4, Subset::of(n4, {1}), Subset::of(n4, {1})), DomainError);
    CHECK_THROWS_AS(
        count_chains_through_pair(c4, Subset::of(n4, {1, 2}), Subset::of(n4, {2, 3})),
        DomainError);
    CHECK_THROWS_AS(
        count_chains_through_pair(c4, Subset::of(n4, {1}), Subset::full(n4)), DomainError);
}

TEST_CASE("interval weight report on small examples") {
    const GroundSize n4(4);
    const CyclicPerm c4 = CyclicPerm::identity(n4);

    const auto r1 = check_interval_weight(
        IntervalFamily(c4, Family(n4, {Subset::of(n4, {1, 2}), Subset::of(n4, {3, 4}),
                                       Subset::of(n4, {1})})));
    CHECK(r1.maximal_count == 2);
    CHECK(r1.non_maximal_count == 1);
    CHECK(r1.verdict.lhs == Rat(5, 2));
    CHECK(r1.verdict.rhs == Rat(4));
    CHECK(r1.verdict.holds);
    CHECK(r1.verdict.hypotheses_ok);

    const auto r2 = check_interval_weight(IntervalFamily(c4, level(n4, 1)));
    CHECK(r2.maximal_count == 4);
    CHECK(r2.non_maximal_count == 0);
    CHECK(r2.verdict.equality);

    const auto r3 = check_interval_weight(
        IntervalFamily(c4, Family(n4, {Subset::of(n4, {1}), Subset::of(n4, {1, 2}),
                                       Subset::of(n4, {4, 1})})));
    CHECK(!r3.verdict.hypotheses_ok);
    CHECK(r3.verdict.hypothesis_failures == std::vector<std::string>{"member_contained_twice"});

    const auto r4 = check_interval_weight(IntervalFamily(c4, Family(n4, {Subset::full(n4)})));
    CHECK(!r4.verdict.hypotheses_ok);
    CHECK(r4.verdict.hypothesis_failures == std::vector<std::string>{"contains_full_set"});
}

TEST_CASE("interval family size bound on small examples") {
    const GroundSize n4(4);
    const CyclicPerm c4 = CyclicPerm::identity(n4);
    std::vector<Subset> short_intervals;
    for (int start = 0; start < 4; ++start)
        for (int len = 1; len <= 2; ++len) {
            Bits m = 0;
            for (int t = 0; t < len; ++t) m |= Bits(1) << ((start + t) % 4);
            short_intervals.emplace_back(n4, m);
        }
    const auto v = check_interval_family_size(IntervalFamily(c4, Family(n4, short_intervals)));
    CHECK(v.hypotheses_ok);
    CHECK(v.lhs == Rat(8));
    CHECK(v.rhs == Rat(8));
    CHECK(v.equality);

    const auto ve = check_interval_family_size(IntervalFamily(c4, Family(n4)));
    CHECK(ve.holds);
    CHECK(ve.lhs == Rat(0));
}

TEST_CASE("exhaustive interval family sweep on four points") {
    const GroundSize n4(4);
    const CyclicPerm c4 = CyclicPerm::identity(n4);
    std::vector<Bits> proper;  // the 12 proper nonempty intervals
    for (int start = 0; start < 4; ++start)
        for (int len = 1; len <= 3; ++len) {
            Bits m = 0;
            for (int t = 0; t < len; ++t) m |= Bits(1) << ((start + t) % 4);
            proper.push_back(m);
        }
    REQUIRE(proper.size() == 12);

    int weight_applicable = 0, size_applicable = 0;
    for (std::uint32_t pick = 0; pick < (1u << 12); ++pick) {
        std::vector<Bits> bits;
        for (int i = 0; i < 12; ++i)
            if ((pick >> i) & 1u) bits.push_back(proper[static_cast<std::size_t>(i)]);
        const IntervalFamily fam(c4, Family::from_bits(n4, bits));

        const auto weight = check_interval_weight(fam);
        CHECK(weight.maximal_count + weight.non_maximal_count == fam.members().size());
        if (weight.verdict.hypotheses_ok) {
            ++weight_applicable;
            CHECK(weight.verdict.holds);
        }

        // mirrored form: if every member contains at most one other member,
        // the complemented family meets the original hypotheses
        const IntervalFamily mirrored(c4, complement_family(fam.members()));
        const auto mirrored_weight = check_interval_weight(mirrored);
        if (mirrored_weight.verdict.hypotheses_ok) CHECK(mirrored_weight.verdict.holds);

        const auto size = check_interval_family_size(fam);
        if (size.hypotheses_ok) {
            ++size_applicable;
            CHECK(size.holds);
        }
    }
    CHECK(weight_applicable > 100);
    CHECK(size_applicable > 100);
}

TEST_CASE("double count audit on the worked examples") {
    const auto a3 = double_count_audit(two_levels(GroundSize(3), 1));
    CHECK(a3.member_weight_sum == 12);
    CHECK(a3.incidence_count == 12);
    CHECK(a3.budget == 12);

    const auto single = double_count_audit(Family::from_bits(GroundSize(4), {0b0001}));
    CHECK(single.member_weight_sum == 6);
    CHECK(single.incidence_count == 6);

    const auto a4 = double_count_audit(two_levels(GroundSize(4), 2));
    CHECK(a4.member_weight_sum == 48);
    CHECK(a4.incidence_count == 48);
    CHECK(a4.budget == 48);

    CHECK_THROWS_AS(double_count_audit(Family::from_bits(GroundSize(3), {0b000})), DomainError);
    CHECK_THROWS_AS(double_count_audit(Family::from_bits(GroundSize(3), {0b111})), DomainError);
    CHECK_THROWS_AS(double_count_audit(Family(GroundSize(9))), DomainError);
}

TEST_CASE("double count identity holds for arbitrary families, budget for star ones") {
    std::mt19937_64 gen(5150);
    for (int trial = 0; trial < 80; ++trial) {
        const GroundSize n(4 + static_cast<int>(gen() % 3));  // 4..6
        std::vector<Bits> bits;
        for (Bits b = 1; b < n.full_mask(); ++b)
            if (gen() % 100 < 35) bits.push_back(b);
        const Family f = Family::from_bits(n, bits);
        const auto audit = double_count_audit(f);
        CHECK(audit.member_weight_sum == audit.incidence_count);

        const Family g = test_helpers::random_star_family(n, gen, true, true);
        const auto star_audit = double_count_audit(g);
        CHECK(star_audit.member_weight_sum == star_audit.incidence_count);
        CHECK(star_audit.member_weight_sum <= star_audit.budget);
    }
}
