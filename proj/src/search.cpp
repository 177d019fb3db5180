#include "butterfly/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>

#include "butterfly/conditions.hpp"
#include "butterfly/family_io.hpp"

namespace butterfly::search {

namespace {

using conditions::ForkFilter;
using conditions::StarFilter;
using Clock = std::chrono::steady_clock;

std::vector<Bits> canonical_candidates(GroundSize n) {
    std::vector<Bits> masks;
    masks.reserve(std::size_t{1} << n.value());
    for (Bits m = 0;; ++m) {
        masks.push_back(m);
        if (m == n.full_mask()) break;
    }
    std::sort(masks.begin(), masks.end(),
              [](Bits a, Bits b) { return canonical_bits_less(a, b); });
    return masks;
}

Family seed_family(GroundSize n, Predicate pred) {
    const int k = n.value() / 2;
    return pred == Predicate::star ? two_levels(n, k) : level(n, k);
}

struct BudgetGate {
    std::uint64_t max_nodes;
    Clock::time_point deadline;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stopped{false};

    explicit BudgetGate(const SearchBudget& b)
        : max_nodes(b.max_nodes == 0 ? std::numeric_limits<std::uint64_t>::max() : b.max_nodes),
          deadline(b.max_seconds <= 0.0
                       ? Clock::time_point::max()
                       : Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                            std::chrono::duration<double>(b.max_seconds))) {}

    bool tick() {
        if (stopped.load(std::memory_order_relaxed)) return false;
        const std::uint64_t seen = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (seen > max_nodes || ((seen & 1023u) == 0 && deadline != Clock::time_point::max() &&
                                 Clock::now() >= deadline)) {
            stopped.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }

    bool live() const { return !stopped.load(std::memory_order_relaxed); }
};

// One depth-first searcher. Candidates are scanned in canonical order; each
// tree node owns the list of candidate indices that are still individually
// addable (feasibility is monotone: a set rejected once stays rejected in any
// superfamily, so the lists only shrink going down). target < 0 means
// maximize; target >= 0 means collect families of exactly that size, and a
// node of target size with a still-addable candidate left proves the claimed
// optimum wrong.
template <class Filter>
class Walker {
public:
    Walker(const std::vector<Bits>& cands, GroundSize n, BudgetGate& gate, std::atomic<int>& best,
           int target, bool first_hit_only)
        : cands_(cands),
          gate_(gate),
          best_(best),
          target_(target),
          first_hit_only_(first_hit_only),
          filter_(n) {
        pool_.resize(cands.size() + 2);
    }

    void run_branch(int rep_index) {
        filter_.push(cands_[rep_index]);
        auto& avail = pool_[0];
        avail.clear();
        for (std::size_t j = rep_index + 1; j < cands_.size(); ++j)
            if (filter_.can_add(cands_[j])) avail.push_back(static_cast<int>(j));
        extend(0);
        filter_.pop();
    }

    bool done() const { return first_hit_only_ && !hits.empty(); }

    int local_best = -1;
    std::vector<Bits> witness_bits;
    std::vector<Family> hits;

private:
    void extend(int depth) {
        if (!gate_.tick()) return;
        const std::vector<int>& avail = pool_[depth];
        const int cur = filter_.size();
        if (target_ < 0) {
            if (cur > local_best) {
                local_best = cur;
                witness_bits = filter_.members();
                int b = best_.load(std::memory_order_relaxed);
                while (cur > b && !best_.compare_exchange_weak(b, cur, std::memory_order_relaxed)) {
                }
            }
        } else if (cur == target_) {
            if (!avail.empty())
                throw std::logic_error(
                    "enumerate_max_families: found a family larger than the claimed optimum");
            hits.push_back(filter_.family());
            return;
        }
        auto& next = pool_[depth + 1];
        for (std::size_t i = 0; i < avail.size(); ++i) {
            if (!gate_.live()) return;
            const int reach = cur + static_cast<int>(avail.size() - i);
            if (target_ < 0 ? reach <= best_.load(std::memory_order_relaxed) : reach < target_)
                break;
            filter_.push(cands_[avail[i]]);
            next.clear();
            for (std::size_t j = i + 1; j < avail.size(); ++j)
                if (filter_.can_add(cands_[avail[j]])) next.push_back(avail[j]);
            extend(depth + 1);
            filter_.pop();
            if (done()) return;
        }
    }

    const std::vector<Bits>& cands_;
    BudgetGate& gate_;
    std::atomic<int>& best_;
    int target_;
    bool first_hit_only_;
    Filter filter_;
    std::vector<std::vector<int>> pool_;
};

struct WorkerOutcome {
    int local_best = -1;
    std::vector<Bits> witness_bits;
    std::vector<Family> hits;
    std::exception_ptr error;
};

// Root relabeling reduction: the first member of a family in canonical order
// has the minimum member size s, and some relabeling maps it to {1,...,s}, so
// it is enough to explore one branch per s with that set forced first and only
// later candidates allowed afterwards.
template <class Filter>
std::vector<WorkerOutcome> run_workers(GroundSize n, const std::vector<Bits>& cands,
                                       BudgetGate& gate, std::atomic<int>& best, int target,
                                       int threads, bool first_hit_only) {
    std::vector<int> reps;
    for (int s = 0; s <= n.value(); ++s) {
        const Bits rep = s == 0 ? 0u : static_cast<Bits>((1u << s) - 1u);
        const auto it = std::find(cands.begin(), cands.end(), rep);
        reps.push_back(static_cast<int>(it - cands.begin()));
    }
    const int workers = std::clamp(threads, 1, static_cast<int>(reps.size()));
    std::vector<WorkerOutcome> outcomes(workers);
    std::atomic<int> next_branch{0};
    std::atomic<bool> found_one{false};
    auto body = [&](int wid) {
        Walker<Filter> w(cands, n, gate, best, target, first_hit_only);
        try {
            for (;;) {
                if (!gate.live() || (first_hit_only && found_one.load())) break;
                const int b = next_branch.fetch_add(1, std::memory_order_relaxed);
                if (b >= static_cast<int>(reps.size())) break;
                w.run_branch(reps[b]);
                if (w.done()) {
                    found_one.store(true);
                    break;
                }
            }
        } catch (...) {
            outcomes[wid].error = std::current_exception();
            gate.stopped.store(true, std::memory_order_relaxed);
        }
        outcomes[wid].local_best = w.local_best;
        outcomes[wid].witness_bits = std::move(w.witness_bits);
        outcomes[wid].hits = std::move(w.hits);
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int wid = 0; wid < workers; ++wid) pool.emplace_back(body, wid);
        for (auto& t : pool) t.join();
    }
    for (const auto& o : outcomes)
        if (o.error) std::rethrow_exception(o.error);
    return outcomes;
}

std::vector<WorkerOutcome> run_predicate(GroundSize n, Predicate pred,
                                         const std::vector<Bits>& cands, BudgetGate& gate,
                                         std::atomic<int>& best, int target, int threads,
                                         bool first_hit_only) {
    return pred == Predicate::star
               ? run_workers<StarFilter>(n, cands, gate, best, target, threads, first_hit_only)
               : run_workers<ForkFilter>(n, cands, gate, best, target, threads, first_hit_only);
}

bool predicate_holds(Predicate pred, const Family& f) {
    return pred == Predicate::star ? conditions::satisfies_star(f) : conditions::is_fork_free(f);
}

std::pair<int, std::vector<Family>> brute_force_scan(GroundSize n, Predicate pred) {
    if (n.value() > 4) throw DomainError("brute force enumeration is capped at ground size 4");
    const std::vector<Subset> subs = all_subsets(n);
    const int m = static_cast<int>(subs.size());
    int best = 0;
    std::vector<Family> winners;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        const int count = std::popcount(mask);
        if (count < best) continue;
        std::vector<Subset> members;
        members.reserve(count);
        for (int k = 0; k < m; ++k)
            if (mask >> k & 1u) members.push_back(subs[k]);
        Family f(n, std::move(members));
        if (!predicate_holds(pred, f)) continue;
        if (count > best) {
            best = count;
            winners.clear();
        }
        winners.push_back(std::move(f));
    }
    return {best, std::move(winners)};
}

}  // namespace

std::string predicate_name(Predicate p) {
    return p == Predicate::star ? "star" : "fork_free";
}

SearchResult max_family(GroundSize n, Predicate pred, const SearchBudget& budget, int threads) {
    if (n.value() < 2 || n.value() > 6)
        throw DomainError("max_family: ground size must be between 2 and 6");
    const Family seed = seed_family(n, pred);
    const auto cands = canonical_candidates(n);
    BudgetGate gate(budget);
    std::atomic<int> best{seed.size()};
    const auto outcomes = run_predicate(n, pred, cands, gate, best, -1, threads, false);
    const int optimum = best.load();
    const bool complete = gate.live();
    std::uint64_t nodes = gate.nodes.load();

    Family witness = seed;
    if (optimum > seed.size()) {
        bool picked = false;
        if (complete) {
            // rerun single-threaded for the first family of optimum size, so
            // the witness does not depend on thread scheduling
            BudgetGate witness_gate{SearchBudget{}};
            std::atomic<int> unused{0};
            const auto hit =
                run_predicate(n, pred, cands, witness_gate, unused, optimum, 1, true);
            nodes += witness_gate.nodes.load();
            for (const auto& o : hit)
                if (!o.hits.empty()) {
                    witness = o.hits.front();
                    picked = true;
                    break;
                }
        }
        if (!picked) {
            for (const auto& o : outcomes)
                if (o.local_best == optimum) {
                    Family found = Family::from_bits(n, o.witness_bits);
                    if (!picked || found < witness) {
                        witness = std::move(found);
                        picked = true;
                    }
                }
        }
    }
    return SearchResult{n, pred, optimum, std::move(witness), nodes, complete};
}

ExtremalCatalog enumerate_max_families(GroundSize n, Predicate pred, int optimum,
                                       const SearchBudget& budget, int threads) {
    if (n.value() < 2 || n.value() > 5)
        throw DomainError("enumerate_max_families: ground size must be between 2 and 5");
    if (optimum < 0) throw DomainError("enumerate_max_families: optimum must be nonnegative");
    if (optimum == 0)
        throw std::logic_error(
            "enumerate_max_families: a single member always fits, optimum 0 is inconsistent");
    if (optimum > (std::int64_t{1} << n.value()))
        throw std::logic_error(
            "enumerate_max_families: claimed optimum exceeds the number of subsets");
    const auto cands = canonical_candidates(n);
    BudgetGate gate(budget);
    std::atomic<int> unused{0};
    const auto outcomes = run_predicate(n, pred, cands, gate, unused, optimum, threads, false);
    std::vector<Family> classes;
    for (const auto& o : outcomes)
        for (const auto& f : o.hits) classes.push_back(canonical_form(f));
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    const bool complete = gate.live();
    if (complete && classes.empty())
        throw std::logic_error(
            "enumerate_max_families: no family of the claimed optimum size exists");
    return ExtremalCatalog{n, pred, optimum, std::move(classes), gate.nodes.load(), complete};
}

int brute_force_max(GroundSize n, Predicate pred) {
    return brute_force_scan(n, pred).first;
}

std::vector<Family> brute_force_max_families(GroundSize n, Predicate pred) {
    return brute_force_scan(n, pred).second;
}

TwoLevelOptimumReport verify_two_level_optimum(GroundSize n, const SearchBudget& budget,
                                               int threads) {
    if (n.value() < 3 || n.value() > 5)
        throw DomainError("verify_two_level_optimum covers ground sizes 3 through 5");
    SearchResult res = max_family(n, Predicate::star, budget, threads);
    const int k = n.value() / 2;
    const std::int64_t expected = binomial(n.value(), k) + binomial(n.value(), k + 1);
    const bool conclusive = res.proof_complete;
    const bool matches = conclusive && res.optimum == expected;
    return TwoLevelOptimumReport{std::move(res), expected, conclusive, matches};
}

ClassificationReport verify_extremal_classification(GroundSize n, const SearchBudget& budget,
                                                    int threads) {
    if (n.value() < 3 || n.value() > 5)
        throw DomainError("verify_extremal_classification covers ground sizes 3 through 5");
    SearchResult res = max_family(n, Predicate::star, budget, threads);
    if (!res.proof_complete) {
        ExtremalCatalog catalog{n, Predicate::star, res.optimum, {}, res.nodes_explored, false};
        return ClassificationReport{std::move(catalog), {}, false, false};
    }
    ExtremalCatalog catalog = enumerate_max_families(n, Predicate::star, res.optimum, budget, threads);
    std::vector<lym::InequalityVerdict> verdicts;
    verdicts.reserve(catalog.classes.size());
    bool all_two = !catalog.classes.empty();
    for (const Family& c : catalog.classes) {
        verdicts.push_back(lym::check_star_lym(c));
        all_two = all_two && is_two_consecutive_levels(c);
    }
    const bool conclusive = catalog.proof_complete;
    return ClassificationReport{std::move(catalog), std::move(verdicts), all_two, conclusive};
}

std::uint64_t rng_below(std::mt19937_64& g, std::uint64_t bound) {
    if (bound == 0) throw DomainError("rng_below: bound must be positive");
    const std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = top - top % bound;
    std::uint64_t x = g();
    while (x >= limit) x = g();
    return x % bound;
}

double unit_real(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

Family random_family(GroundSize n, std::uint64_t seed, const RandomFamilyOptions& opts) {
    std::mt19937_64 g(seed);
    std::vector<Bits> picked;
    for (Bits m = 0;; ++m) {
        const bool excluded =
            (opts.exclude_empty && m == 0) || (opts.exclude_full && m == n.full_mask());
        if (!excluded && unit_real(g) < opts.density) picked.push_back(m);
        if (m == n.full_mask()) break;
    }
    return Family::from_bits(n, picked);
}

namespace {

template <class Filter>
Family random_filtered_family(GroundSize n, std::uint64_t seed, const RandomFamilyOptions& opts) {
    std::mt19937_64 g(seed);
    std::vector<Bits> cand;
    cand.reserve(std::size_t{1} << n.value());
    for (Bits m = 0;; ++m) {
        const bool excluded =
            (opts.exclude_empty && m == 0) || (opts.exclude_full && m == n.full_mask());
        if (!excluded) cand.push_back(m);
        if (m == n.full_mask()) break;
    }
    for (std::size_t i = cand.size(); i > 1; --i)
        std::swap(cand[i - 1], cand[rng_below(g, i)]);
    Filter filter(n);
    for (Bits c : cand) {
        if (unit_real(g) >= opts.density) continue;
        if (filter.can_add(c)) filter.push(c);
    }
    return filter.family();
}

}  // namespace

Family random_star_family(GroundSize n, std::uint64_t seed, const RandomFamilyOptions& opts) {
    return random_filtered_family<StarFilter>(n, seed, opts);
}

Family random_fork_free_family(GroundSize n, std::uint64_t seed, const RandomFamilyOptions& opts) {
    return random_filtered_family<ForkFilter>(n, seed, opts);
}

nlohmann::ordered_json SearchResult::to_json() const {
    return nlohmann::ordered_json{{"n", n.value()},
                                  {"predicate", predicate_name(predicate)},
                                  {"optimum", optimum},
                                  {"witness", family_to_json(witness)},
                                  {"nodes_explored", nodes_explored},
                                  {"proof_complete", proof_complete}};
}

nlohmann::ordered_json ExtremalCatalog::to_json() const {
    nlohmann::ordered_json classes_json = nlohmann::ordered_json::array();
    for (const Family& c : classes) classes_json.push_back(family_to_json(c));
    return nlohmann::ordered_json{{"n", n.value()},
                                  {"predicate", predicate_name(predicate)},
                                  {"size", size},
                                  {"class_count", class_count()},
                                  {"classes", std::move(classes_json)},
                                  {"nodes_explored", nodes_explored},
                                  {"proof_complete", proof_complete}};
}

nlohmann::ordered_json TwoLevelOptimumReport::to_json() const {
    return nlohmann::ordered_json{{"search", result.to_json()},
                                  {"expected", expected},
                                  {"conclusive", conclusive},
                                  {"matches", matches}};
}

nlohmann::ordered_json ClassificationReport::to_json() const {
    nlohmann::ordered_json bounds = nlohmann::ordered_json::array();
    for (const auto& v : class_lym) bounds.push_back(v.to_json());
    return nlohmann::ordered_json{{"catalog", catalog.to_json()},
                                  {"class_bounds", std::move(bounds)},
                                  {"all_two_levels", all_two_levels},
                                  {"conclusive", conclusive}};
}

}  // namespace butterfly::search
