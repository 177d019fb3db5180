#include "butterfly/core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <ostream>
#include <sstream>

namespace butterfly {

GroundSize::GroundSize(int n) : n_(n) {
    if (n < 1 || n > kMax)
        throw DomainError("ground size must be between 1 and " + std::to_string(kMax) +
                          ", got " + std::to_string(n));
}

Subset::Subset(GroundSize n, Bits bits) : n_(n), bits_(bits) {
    if ((bits & ~n.full_mask()) != 0)
        throw DomainError("subset has bits outside the ground set {1,...," +
                          std::to_string(n.value()) + "}");
}

Subset Subset::of(GroundSize n, std::initializer_list<int> elements) {
    return of(n, std::vector<int>(elements));
}

Subset Subset::of(GroundSize n, const std::vector<int>& elements) {
    Bits b = 0;
    for (int e : elements) {
        if (e < 1 || e > n.value())
            throw DomainError("element " + std::to_string(e) + " outside {1,...," +
                              std::to_string(n.value()) + "}");
        b |= Bits(1) << (e - 1);
    }
    return Subset(n, b);
}

int Subset::size() const { return std::popcount(bits_); }

bool Subset::contains(int element) const {
    return element >= 1 && element <= n_.value() && (bits_ >> (element - 1)) & 1u;
}

std::vector<int> Subset::elements() const {
    std::vector<int> out;
    for (Bits m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
}

std::string Subset::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first) s += ",";
        s += std::to_string(e);
        first = false;
    }
    return s + "}";
}

bool canonical_bits_less(Bits a, Bits b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
}

std::strong_ordering operator<=>(const Subset& a, const Subset& b) {
    if (a.n_.value() != b.n_.value()) return a.n_.value() <=> b.n_.value();
    if (canonical_bits_less(a.bits_, b.bits_)) return std::strong_ordering::less;
    if (canonical_bits_less(b.bits_, a.bits_)) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool operator==(const Subset& a, const Subset& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
}

namespace {
GroundSize common_ground(const Subset& a, const Subset& b) {
    if (!(a.ground() == b.ground())) throw DomainError("mismatched ground sizes");
    return a.ground();
}
}  // namespace

Subset operator|(const Subset& a, const Subset& b) {
    return Subset(common_ground(a, b), a.bits() | b.bits());
}

Subset operator&(const Subset& a, const Subset& b) {
    return Subset(common_ground(a, b), a.bits() & b.bits());
}

Subset complement(const Subset& s) {
    return Subset(s.ground(), s.bits() ^ s.ground().full_mask());
}

bool is_subset_of(const Subset& a, const Subset& b) {
    common_ground(a, b);
    return (a.bits() & ~b.bits()) == 0;
}

bool is_proper_subset_of(const Subset& a, const Subset& b) {
    return is_subset_of(a, b) && a.bits() != b.bits();
}

Family::Family(GroundSize n, std::vector<Subset> members) : n_(n), members_(std::move(members)) {
    for (const Subset& s : members_)
        if (!(s.ground() == n)) throw DomainError("family member has a different ground size");
    std::sort(members_.begin(), members_.end(),
              [](const Subset& a, const Subset& b) { return canonical_bits_less(a.bits(), b.bits()); });
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Family Family::from_bits(GroundSize n, const std::vector<Bits>& bits) {
    std::vector<Subset> ms;
    ms.reserve(bits.size());
    for (Bits b : bits) ms.emplace_back(n, b);
    return Family(n, std::move(ms));
}

bool Family::contains(const Subset& s) const {
    return s.ground() == n_ && contains_bits(s.bits());
}

bool Family::contains_bits(Bits b) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), b,
                               [](const Subset& m, Bits v) { return canonical_bits_less(m.bits(), v); });
    return it != members_.end() && it->bits() == b;
}

Family Family::with(const Subset& s) const {
    std::vector<Subset> ms = members_;
    ms.push_back(s);
    return Family(n_, std::move(ms));
}

Family Family::without(const Subset& s) const {
    std::vector<Subset> ms;
    ms.reserve(members_.size());
    for (const Subset& m : members_)
        if (!(m == s)) ms.push_back(m);
    return Family(n_, std::move(ms));
}

std::string Family::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) out += ", ";
        out += members_[i].to_string();
    }
    return out + "}";
}

bool operator==(const Family& a, const Family& b) {
    return a.n_ == b.n_ && a.members_ == b.members_;
}

std::strong_ordering operator<=>(const Family& a, const Family& b) {
    if (a.n_.value() != b.n_.value()) return a.n_.value() <=> b.n_.value();
    const std::size_t k = std::min(a.members_.size(), b.members_.size());
    for (std::size_t i = 0; i < k; ++i) {
        auto c = a.members_[i] <=> b.members_[i];
        if (c != std::strong_ordering::equal) return c;
    }
    return a.members_.size() <=> b.members_.size();
}

bool is_permutation_of_ground(const Permutation& p, GroundSize n) {
    if (static_cast<int>(p.size()) != n.value()) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n.value()) + 1, false);
    for (int v : p) {
        if (v < 1 || v > n.value() || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

namespace {
Bits apply_permutation_bits(Bits bits, const Permutation& p) {
    Bits out = 0;
    for (Bits m = bits; m != 0; m &= m - 1)
        out |= Bits(1) << (p[static_cast<std::size_t>(std::countr_zero(m))] - 1);
    return out;
}

void require_permutation(const Permutation& p, GroundSize n) {
    if (!is_permutation_of_ground(p, n))
        throw DomainError("not a permutation of {1,...," + std::to_string(n.value()) + "}");
}
}  // namespace

Subset apply_permutation(const Subset& s, const Permutation& p) {
    require_permutation(p, s.ground());
    return Subset(s.ground(), apply_permutation_bits(s.bits(), p));
}

Family apply_permutation(const Family& f, const Permutation& p) {
    require_permutation(p, f.ground());
    std::vector<Bits> bits;
    bits.reserve(f.members().size());
    for (const Subset& s : f.members()) bits.push_back(apply_permutation_bits(s.bits(), p));
    return Family::from_bits(f.ground(), bits);
}

std::vector<Permutation> all_permutations(GroundSize n) {
    if (n.value() > 8) throw DomainError("all_permutations: ground size above 8");
    Permutation p(static_cast<std::size_t>(n.value()));
    std::iota(p.begin(), p.end(), 1);
    std::vector<Permutation> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Family canonical_form(const Family& f) {
    const int n = f.ground().value();
    if (n > 8) throw DomainError("canonical_form: ground size above 8 (walks all n! relabelings)");
    Permutation perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);

    const auto vec_less = [](const std::vector<Bits>& a, const std::vector<Bits>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            canonical_bits_less);
    };

    std::vector<Bits> best, img;
    bool have = false;
    do {
        img.clear();
        for (const Subset& s : f.members()) img.push_back(apply_permutation_bits(s.bits(), perm));
        std::sort(img.begin(), img.end(), canonical_bits_less);
        if (!have || vec_less(img, best)) {
            best = img;
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Family::from_bits(f.ground(), best);
}

Family complement_family(const Family& f) {
    std::vector<Bits> bits;
    bits.reserve(f.members().size());
    for (const Subset& s : f.members()) bits.push_back(s.bits() ^ f.ground().full_mask());
    return Family::from_bits(f.ground(), bits);
}

Family level(GroundSize n, int k) {
    if (k < 0 || k > n.value())
        throw DomainError("level: k must be between 0 and " + std::to_string(n.value()));
    std::vector<Bits> bits;
    for (Bits b = 0; b <= n.full_mask(); ++b)
        if (std::popcount(b) == k) bits.push_back(b);
    return Family::from_bits(n, bits);
}

Family two_levels(GroundSize n, int k) {
    if (k < 0 || k + 1 > n.value())
        throw DomainError("two_levels: needs 0 <= k and k+1 <= " + std::to_string(n.value()));
    std::vector<Bits> bits;
    for (Bits b = 0; b <= n.full_mask(); ++b) {
        const int p = std::popcount(b);
        if (p == k || p == k + 1) bits.push_back(b);
    }
    return Family::from_bits(n, bits);
}

std::vector<Subset> all_subsets(GroundSize n) {
    std::vector<Bits> bits;
    bits.reserve(static_cast<std::size_t>(n.full_mask()) + 1);
    for (Bits b = 0; b <= n.full_mask(); ++b) bits.push_back(b);
    std::sort(bits.begin(), bits.end(), canonical_bits_less);
    std::vector<Subset> out;
    out.reserve(bits.size());
    for (Bits b : bits) out.emplace_back(n, b);
    return out;
}

bool is_two_consecutive_levels(const Family& f) {
    if (f.empty()) return false;
    const int k = f.members().front().size();
    if (k + 1 > f.ground().value()) return false;
    return f == two_levels(f.ground(), k);
}

namespace {
struct BinomialTables {
    std::array<std::array<std::int64_t, 21>, 21> choose{};
    std::vector<mpz_class> fact;

    BinomialTables() : fact(21) {
        for (int n = 0; n <= 20; ++n) {
            choose[static_cast<std::size_t>(n)][0] = 1;
            for (int k = 1; k <= n; ++k)
                choose[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
                    (k == n) ? 1
                             : choose[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] +
                                   choose[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
        }
        fact[0] = 1;
        for (int n = 1; n <= 20; ++n) fact[static_cast<std::size_t>(n)] = fact[static_cast<std::size_t>(n - 1)] * n;
    }
};

const BinomialTables& tables() {
    static const BinomialTables t;
    return t;
}
}  // namespace

std::int64_t binomial(int n, int k) {
    if (n < 0 || n > 20) throw DomainError("binomial: n must be between 0 and 20");
    if (k < 0 || k > n) return 0;
    return tables().choose[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

const mpz_class& factorial(int n) {
    if (n < 0 || n > 20) throw DomainError("factorial: n must be between 0 and 20");
    return tables().fact[static_cast<std::size_t>(n)];
}

mpz_class big_binomial(int n, int k) {
    if (n < 0) throw DomainError("big_binomial: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Rat::Rat(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b == Rat(0)) throw DomainError("division by zero");
    return Rat(mpq_class(a.q_ / b.q_));
}

std::string Rat::str() const {
    return numerator().get_str() + "/" + denominator().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }
std::ostream& operator<<(std::ostream& os, const Subset& s) { return os << s.to_string(); }
std::ostream& operator<<(std::ostream& os, const Family& f) { return os << f.to_string(); }

}  // namespace butterfly
