#include "butterfly/cyclic.hpp"

#include <algorithm>
#include <charconv>

#include "butterfly/conditions.hpp"

namespace butterfly::cyclic {

CyclicPerm::CyclicPerm(GroundSize n, std::vector<int> order) : n_(n), order_(std::move(order)) {
    if (!is_permutation_of_ground(order_, n))
        throw DomainError("cyclic arrangement must be a permutation of {1,...," +
                          std::to_string(n.value()) + "}");
    const auto one = std::find(order_.begin(), order_.end(), 1);
    std::rotate(order_.begin(), one, order_.end());
    position_.resize(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i)
        position_[static_cast<std::size_t>(order_[i] - 1)] = static_cast<int>(i);
}

CyclicPerm CyclicPerm::identity(GroundSize n) {
    std::vector<int> order(static_cast<std::size_t>(n.value()));
    for (int i = 0; i < n.value(); ++i) order[static_cast<std::size_t>(i)] = i + 1;
    return CyclicPerm(n, std::move(order));
}

CyclicPerm CyclicPerm::parse(GroundSize n, const std::string& text) {
    std::vector<int> order;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw DomainError("bad cyclic arrangement element \"" + tok + "\"");
        order.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return CyclicPerm(n, std::move(order));
}

int CyclicPerm::position_of(int element) const {
    if (element < 1 || element > n_.value())
        throw DomainError("element " + std::to_string(element) + " outside the ground set");
    return position_[static_cast<std::size_t>(element - 1)];
}

std::string CyclicPerm::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < order_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(order_[i]);
    }
    return out;
}

std::vector<CyclicPerm> all_cyclic_perms(GroundSize n) {
    if (n.value() > 8) throw DomainError("all_cyclic_perms: ground size above 8");
    std::vector<int> rest;
    for (int i = 2; i <= n.value(); ++i) rest.push_back(i);
    std::vector<CyclicPerm> out;
    do {
        std::vector<int> order{1};
        order.insert(order.end(), rest.begin(), rest.end());
        out.emplace_back(n, std::move(order));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

bool is_interval(const Subset& s, const CyclicPerm& cp) {
    if (!(s.ground() == cp.ground())) throw DomainError("subset and arrangement ground mismatch");
    if (s.is_empty()) throw DomainError("the empty set is not an interval");
    const int n = cp.ground().value();
    Bits pos = 0;
    for (int e : s.elements()) pos |= Bits(1) << cp.position_of(e);
    if (pos == cp.ground().full_mask()) return true;
    int falling_edges = 0;
    for (int i = 0; i < n; ++i) {
        const bool cur = (pos >> i) & 1u;
        const bool next = (pos >> ((i + 1) % n)) & 1u;
        if (cur && !next) ++falling_edges;
    }
    return falling_edges == 1;
}

Family intervals_of(const Family& f, const CyclicPerm& cp) {
    std::vector<Subset> kept;
    for (const Subset& s : f.members())
        if (!s.is_empty() && is_interval(s, cp)) kept.push_back(s);
    return Family(f.ground(), std::move(kept));
}

IntervalFamily::IntervalFamily(CyclicPerm cp, Family members)
    : cp_(std::move(cp)), members_(std::move(members)) {
    if (!(cp_.ground() == members_.ground()))
        throw DomainError("interval family ground mismatch");
    for (const Subset& s : members_.members()) {
        if (s.is_empty()) throw DomainError("interval family may not contain the empty set");
        if (!is_interval(s, cp_))
            throw DomainError("member " + s.to_string() + " is not an interval along " +
                              cp_.to_string());
    }
}

void for_each_interval_chain(const CyclicPerm& cp,
                             const std::function<void(const std::vector<Bits>&)>& fn) {
    const int n = cp.ground().value();
    if (n < 2) throw DomainError("interval chains need a ground size of at least 2");
    const auto& order = cp.order();
    std::vector<Bits> chain;

    const auto mask_of = [&](int start, int len) {
        Bits m = 0;
        for (int t = 0; t < len; ++t)
            m |= Bits(1) << (order[static_cast<std::size_t>((start + t) % n)] - 1);
        return m;
    };

    const std::function<void(int, int)> extend = [&](int start, int len) {
        chain.push_back(mask_of(start, len));
        if (len == n - 1) {
            chain.push_back(cp.ground().full_mask());
            fn(chain);
            chain.pop_back();
        } else {
            extend(start, len + 1);            // grow to the right
            extend((start + n - 1) % n, len + 1);  // grow to the left
        }
        chain.pop_back();
    };

    for (int start = 0; start < n; ++start) extend(start, 1);
}

std::int64_t count_interval_chains(int n) {
    if (n < 2) throw DomainError("count_interval_chains: n must be at least 2");
    std::int64_t count = 0;
    for_each_interval_chain(CyclicPerm::identity(GroundSize(n)),
                            [&count](const std::vector<Bits>&) { ++count; });
    return count;
}

namespace {
void require_proper_interval(const Subset& s, const CyclicPerm& cp, const char* role) {
    if (!is_interval(s, cp))
        throw DomainError(std::string(role) + " " + s.to_string() +
                          " is not an interval along " + cp.to_string());
    if (s.is_full())
        throw DomainError(std::string(role) + " may not be the full ground set");
}
}  // namespace

std::int64_t count_chains_through(const CyclicPerm& cp, const Subset& f) {
    require_proper_interval(f, cp, "chain anchor");
    const std::size_t idx = static_cast<std::size_t>(f.size() - 1);
    std::int64_t count = 0;
    for_each_interval_chain(cp, [&](const std::vector<Bits>& chain) {
        if (chain[idx] == f.bits()) ++count;
    });
    return count;
}

std::int64_t count_chains_through_pair(const CyclicPerm& cp, const Subset& a, const Subset& b) {
    require_proper_interval(a, cp, "lower anchor");
    require_proper_interval(b, cp, "upper anchor");
    if (!is_proper_subset_of(a, b))
        throw DomainError("lower anchor must be a strict subset of the upper anchor");
    const std::size_t ia = static_cast<std::size_t>(a.size() - 1);
    const std::size_t ib = static_cast<std::size_t>(b.size() - 1);
    std::int64_t count = 0;
    for_each_interval_chain(cp, [&](const std::vector<Bits>& chain) {
        if (chain[ia] == a.bits() && chain[ib] == b.bits()) ++count;
    });
    return count;
}

IntervalWeightReport check_interval_weight(const IntervalFamily& fam) {
    const Family& f = fam.members();
    const GroundSize n = f.ground();
    IntervalWeightReport report;

    int maximal = 0;
    bool contained_twice = false;
    for (const Subset& s : f.members()) {
        int containers = 0;
        for (const Subset& t : f.members())
            if (is_proper_subset_of(s, t)) ++containers;
        if (containers == 0) ++maximal;
        if (containers >= 2) contained_twice = true;
    }
    report.maximal_count = maximal;
    report.non_maximal_count = f.size() - maximal;

    auto& v = report.verdict;
    v.lhs = Rat(maximal) + Rat(report.non_maximal_count, 2);
    v.rhs = Rat(n.value());
    if (contained_twice) v.hypothesis_failures.emplace_back("member_contained_twice");
    if (f.contains_bits(n.full_mask())) v.hypothesis_failures.emplace_back("contains_full_set");
    v.hypotheses_ok = v.hypothesis_failures.empty();
    v.holds = v.lhs <= v.rhs;
    v.equality = v.lhs == v.rhs;
    return report;
}

lym::InequalityVerdict check_interval_family_size(const IntervalFamily& fam) {
    const Family& f = fam.members();
    lym::InequalityVerdict v;
    v.lhs = Rat(f.size());
    v.rhs = Rat(2L * f.ground().value());
    if (!conditions::satisfies_star(f)) v.hypothesis_failures.emplace_back("violates_star");
    if (f.contains_bits(f.ground().full_mask()))
        v.hypothesis_failures.emplace_back("contains_full_set");
    v.hypotheses_ok = v.hypothesis_failures.empty();
    v.holds = v.lhs <= v.rhs;
    v.equality = v.lhs == v.rhs;
    return v;
}

DoubleCountAudit double_count_audit(const Family& f) {
    const GroundSize n = f.ground();
    if (n.value() > 8)
        throw DomainError("double_count_audit iterates (n-1)! arrangements; n must be at most 8");
    if (f.contains_bits(0))
        throw DomainError("double_count_audit: family may not contain the empty set");
    if (f.contains_bits(n.full_mask()))
        throw DomainError("double_count_audit: family may not contain the full set");

    DoubleCountAudit audit;
    audit.member_weight_sum = 0;
    for (const Subset& s : f.members())
        audit.member_weight_sum += factorial(s.size()) * factorial(n.value() - s.size());

    audit.incidence_count = 0;
    for (const CyclicPerm& cp : all_cyclic_perms(n))
        for (const Subset& s : f.members())
            if (is_interval(s, cp)) audit.incidence_count += 1;

    audit.budget = factorial(n.value() - 1) * (2 * n.value());
    return audit;
}

}  // namespace butterfly::cyclic
