#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace butterfly {

using Bits = std::uint32_t;

// Thrown when an argument falls outside an operation's stated domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Size n of the ground set {1,...,n}. Capped at 16 so every subset fits in
// one machine word and factorial-scale enumerations stay at desk scale.
class GroundSize {
public:
    static constexpr int kMax = 16;

    explicit GroundSize(int n);

    int value() const { return n_; }
    Bits full_mask() const { return static_cast<Bits>((1u << n_) - 1u); }

    friend bool operator==(GroundSize, GroundSize) = default;

private:
    int n_;
};

// A subset of {1,...,n}. Element i lives in bit i-1, so {1} has bit value 1,
// {2} has 2, {1,2} has 3 and so on.
class Subset {
public:
    Subset(GroundSize n, Bits bits);

    static Subset empty(GroundSize n) { return Subset(n, 0); }
    static Subset full(GroundSize n) { return Subset(n, n.full_mask()); }
    static Subset of(GroundSize n, std::initializer_list<int> elements);
    static Subset of(GroundSize n, const std::vector<int>& elements);

    GroundSize ground() const { return n_; }
    Bits bits() const { return bits_; }
    int size() const;
    bool is_empty() const { return bits_ == 0; }
    bool is_full() const { return bits_ == n_.full_mask(); }
    bool contains(int element) const;
    std::vector<int> elements() const;  // ascending
    std::string to_string() const;      // "{1,3}", "{}" for the empty set

    // Canonical order: cardinality first, then numeric bit value.
    friend std::strong_ordering operator<=>(const Subset& a, const Subset& b);
    friend bool operator==(const Subset& a, const Subset& b);

private:
    GroundSize n_;
    Bits bits_;
};

Subset operator|(const Subset& a, const Subset& b);  // union
Subset operator&(const Subset& a, const Subset& b);  // intersection
Subset complement(const Subset& s);
bool is_subset_of(const Subset& a, const Subset& b);
bool is_proper_subset_of(const Subset& a, const Subset& b);

// true when a precedes b in the canonical (cardinality, bit value) order
bool canonical_bits_less(Bits a, Bits b);

// A duplicate-free set of subsets of one ground set. Members are kept sorted
// in the canonical (cardinality, bit value) order, which makes serialized
// output and canonical forms reproducible.
class Family {
public:
    explicit Family(GroundSize n) : n_(n) {}
    Family(GroundSize n, std::vector<Subset> members);
    static Family from_bits(GroundSize n, const std::vector<Bits>& bits);

    GroundSize ground() const { return n_; }
    const std::vector<Subset>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    bool contains(const Subset& s) const;
    bool contains_bits(Bits b) const;
    Family with(const Subset& s) const;     // copy plus one member
    Family without(const Subset& s) const;  // copy minus one member
    std::string to_string() const;          // "{{}, {1}, {1,2}}"

    friend bool operator==(const Family& a, const Family& b);
    friend std::strong_ordering operator<=>(const Family& a, const Family& b);

private:
    GroundSize n_;
    std::vector<Subset> members_;
};

// perm[i-1] is the image of element i; a Permutation must be a bijection of
// {1,...,n} to be applied.
using Permutation = std::vector<int>;

bool is_permutation_of_ground(const Permutation& p, GroundSize n);
Subset apply_permutation(const Subset& s, const Permutation& p);
Family apply_permutation(const Family& f, const Permutation& p);
std::vector<Permutation> all_permutations(GroundSize n);  // n! of them, n <= 8

// Lexicographically least relabeling of f under the canonical member order.
// Two families are isomorphic exactly when their canonical forms are equal.
// Walks all n! relabelings, so the ground set is capped at 8.
Family canonical_form(const Family& f);

Family complement_family(const Family& f);
Family level(GroundSize n, int k);              // all k-element subsets
Family two_levels(GroundSize n, int k);         // levels k and k+1
std::vector<Subset> all_subsets(GroundSize n);  // canonical order
bool is_two_consecutive_levels(const Family& f);

std::int64_t binomial(int n, int k);   // exact, 0 <= n <= 20; 0 outside 0<=k<=n
const mpz_class& factorial(int n);     // exact, 0 <= n <= 20
mpz_class big_binomial(int n, int k);  // exact for any n >= 0

// Exact rational number: always reduced, denominator always positive.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(long value) : q_(value) {}
    Rat(long num, long den);
    Rat(const mpz_class& num, const mpz_class& den);
    explicit Rat(const mpz_class& value) : q_(value) {}

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    std::string str() const;  // "p/q"; the denominator is always printed

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const { return Rat(mpq_class(-q_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    explicit Rat(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);
std::ostream& operator<<(std::ostream& os, const Subset& s);
std::ostream& operator<<(std::ostream& os, const Family& f);

}  // namespace butterfly
