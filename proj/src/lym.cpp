#include "butterfly/lym.hpp"

#include <algorithm>

namespace butterfly::lym {

namespace {

Rat level_weight(GroundSize n, const Subset& s) {
    return Rat(1, static_cast<long>(binomial(n.value(), s.size())));
}

void finish(InequalityVerdict& v) {
    v.holds = v.lhs <= v.rhs;
    v.equality = v.lhs == v.rhs;
}

// shared hypothesis validation for the annotated shape
std::vector<std::string> annotated_failures(const Family& m, const Family& mid,
                                            const conditions::SupersetMap& f) {
    if (!(m.ground() == mid.ground()))
        throw DomainError("annotated antichains live on different ground sets");
    std::vector<std::string> codes;
    const auto add = [&codes](const char* c) {
        if (std::find(codes.begin(), codes.end(), c) == codes.end()) codes.emplace_back(c);
    };

    if (!conditions::is_antichain(m)) add("m_not_antichain");
    if (!conditions::is_antichain(mid)) add("mid_not_antichain");
    for (const Subset& s : mid.members())
        if (m.contains(s)) add("families_not_disjoint");
    if (m.contains_bits(m.ground().full_mask())) add("m_contains_full_set");

    for (const Subset& a : mid.members())
        if (!f.contains(a)) add("f_missing_for_mid_member");
    // the annotated shape requires each mid member to sit below exactly one
    // member of m; with two containers the chain double count is no longer
    // bounded the way the inequalities need
    for (const Subset& a : mid.members()) {
        int containers = 0;
        for (const Subset& s : m.members())
            if (is_proper_subset_of(a, s) && ++containers == 2) {
                add("superset_in_m_not_unique");
                break;
            }
    }
    for (const auto& [a, fa] : f) {
        if (!(a.ground() == m.ground()) || !(fa.ground() == m.ground()))
            throw DomainError("annotated map entry on a different ground set");
        if (!mid.contains(a)) add("f_key_not_in_mid");
        if (!m.contains(fa)) add("f_image_not_in_m");
        if (!is_proper_subset_of(a, fa)) add("f_image_not_strict_superset");
    }
    return codes;
}

}  // namespace

nlohmann::ordered_json InequalityVerdict::to_json() const {
    nlohmann::ordered_json j;
    j["lhs"] = lhs.str();
    j["rhs"] = rhs.str();
    j["holds"] = holds;
    j["equality"] = equality;
    j["hypotheses_ok"] = hypotheses_ok;
    j["hypothesis_failures"] = hypothesis_failures;
    return j;
}

Rat lym_sum(const Family& f) {
    Rat sum(0);
    for (const Subset& s : f.members()) sum = sum + level_weight(f.ground(), s);
    return sum;
}

InequalityVerdict check_star_lym(const Family& f) {
    InequalityVerdict v;
    v.lhs = lym_sum(f);
    v.rhs = Rat(2);
    if (!conditions::satisfies_star(f)) v.hypothesis_failures.emplace_back("violates_star");
    if (f.contains_bits(0)) v.hypothesis_failures.emplace_back("contains_empty_set");
    if (f.contains_bits(f.ground().full_mask()))
        v.hypothesis_failures.emplace_back("contains_full_set");
    v.hypotheses_ok = v.hypothesis_failures.empty();
    finish(v);
    return v;
}

AnnotatedLymReport annotated_lym_check(const AnnotatedAntichains& x) {
    const GroundSize n = x.m.ground();
    AnnotatedLymReport report;
    const auto failures = annotated_failures(x.m, x.mid, x.f);

    Rat base(0);
    for (const Subset& s : x.m.members()) base = base + level_weight(n, s);

    Rat linear = base, binom = base;
    for (const Subset& a : x.mid.members()) {
        const int gap_to_top = n.value() - a.size();
        if (gap_to_top > 0)
            linear = linear + level_weight(n, a) * (Rat(1) - Rat(1, gap_to_top));

        const auto it = x.f.find(a);
        if (it == x.f.end() || !is_proper_subset_of(a, it->second)) continue;
        const Subset& fa = it->second;
        const long ways = binomial(gap_to_top, n.value() - fa.size());
        binom = binom + level_weight(n, a) * (Rat(1) - Rat(1, ways));
        report.notes.push_back(MidMemberNote{
            a, fa, fa.size() - a.size(), ways == gap_to_top,
            fa.size() == n.value() - 1, fa.size() == a.size() + 1});
    }

    report.linear_form.lhs = linear;
    report.linear_form.rhs = Rat(1);
    report.linear_form.hypothesis_failures = failures;
    report.linear_form.hypotheses_ok = failures.empty();
    finish(report.linear_form);

    report.binomial_form.lhs = binom;
    report.binomial_form.rhs = Rat(1);
    report.binomial_form.hypothesis_failures = failures;
    report.binomial_form.hypotheses_ok = failures.empty();
    finish(report.binomial_form);
    return report;
}

HalvedLymReport halved_lym_check(const Family& m, const Family& mid,
                                 const conditions::SupersetMap& f) {
    const GroundSize n = m.ground();
    HalvedLymReport report;
    const auto failures = annotated_failures(m, mid, f);

    Rat lhs(0);
    for (const Subset& s : m.members()) lhs = lhs + level_weight(n, s);
    for (const Subset& a : mid.members()) lhs = lhs + level_weight(n, a) * Rat(1, 2);

    bool condition = true;
    for (const Subset& a : mid.members()) {
        if (a.size() != n.value() - 2) condition = false;
        const auto it = f.find(a);
        if (it == f.end() || it->second.size() != n.value() - 1) condition = false;
    }

    report.verdict.lhs = lhs;
    report.verdict.rhs = Rat(1);
    report.verdict.hypothesis_failures = failures;
    report.verdict.hypotheses_ok = failures.empty();
    finish(report.verdict);
    report.stated_equality_condition = condition;
    return report;
}

Rat fork_free_level_capacity(int n, int i) {
    if (n < 2) throw DomainError("fork_free_level_capacity: n must be at least 2");
    if (i < 0 || i > n - 2)
        throw DomainError("fork_free_level_capacity: i must be between 0 and n-2");
    return Rat(big_binomial(n, i)) * Rat(n - i, n - i - 1);
}

int capacity_argmax(int n) {
    if (n < 4) throw DomainError("capacity_argmax: n must be at least 4");
    int best = 1;
    Rat best_value = fork_free_level_capacity(n, 1);
    for (int i = 2; i <= n - 2; ++i) {
        const Rat value = fork_free_level_capacity(n, i);
        if (value > best_value) {
            best = i;
            best_value = value;
        }
    }
    return best;
}

Rat fork_free_bound(int n) {
    if (n < 4) throw DomainError("fork_free_bound: n must be at least 4");
    return Rat(big_binomial(n, n / 2)) * (Rat(1) + Rat(2, n - 3));
}

}  // namespace butterfly::lym
