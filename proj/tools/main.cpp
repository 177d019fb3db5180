#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "butterfly/conditions.hpp"
#include "butterfly/core.hpp"
#include "butterfly/cyclic.hpp"
#include "butterfly/family_io.hpp"
#include "butterfly/fixtures.hpp"
#include "butterfly/lym.hpp"
#include "butterfly/search.hpp"

namespace {

using nlohmann::ordered_json;
using namespace butterfly;

// exit codes: 0 pass, 1 mathematical violation or internal inconsistency,
// 2 input or usage error, 3 budget exhausted

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Family load_family(const std::string& arg) {
    if (auto fixture = fixture_by_name(arg)) return *fixture;
    std::string text;
    if (arg == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(arg);
        if (!in) throw UsageError("cannot open '" + arg + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return family_from_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("family JSON: ") + e.what());
        }
    }
    return parse_family_text(text);
}

ordered_json subset_json(const Subset& s) { return ordered_json(s.elements()); }

// family file format, so anything we print re-parses to an equal family
std::string family_block(const Family& f) {
    std::string text = family_to_text(f);
    while (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
}

class ReportBuilder {
public:
    explicit ReportBuilder(std::string command) : start_(std::chrono::steady_clock::now()) {
        j_["command"] = std::move(command);
        j_["inputs"] = ordered_json::object();
        j_["verdicts"] = ordered_json::array();
    }

    ordered_json& inputs() { return j_["inputs"]; }
    void add_verdict(ordered_json v) { j_["verdicts"].push_back(std::move(v)); }
    void set_seed(std::uint64_t s) { j_["seed"] = s; }

    void emit(bool json_mode, const std::vector<std::string>& human) {
        j_["timing_ms"] = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start_)
                              .count();
        if (json_mode) {
            std::cout << j_.dump(2) << "\n";
        } else {
            for (const auto& line : human) std::cout << line << "\n";
        }
    }

private:
    ordered_json j_;
    std::chrono::steady_clock::time_point start_;
};

int run_check(const std::string& family_arg, const std::string& condition, bool json_mode) {
    const Family f = load_family(family_arg);
    ReportBuilder report("check");
    report.inputs()["source"] = family_arg;
    report.inputs()["condition"] = condition;
    report.inputs()["family"] = family_to_json(f);

    ordered_json verdict;
    verdict["condition"] = condition;
    std::vector<std::string> human;
    bool satisfied = false;

    if (condition == "star") {
        const auto v = conditions::find_star_violation(f);
        satisfied = !v.has_value();
        if (v) {
            verdict["witness"] = ordered_json{{"a", subset_json(v->a)},
                                              {"b", subset_json(v->b)},
                                              {"c", subset_json(v->c)},
                                              {"d", subset_json(v->d)}};
            human.push_back("star: violated");
            human.push_back("  " + v->a.to_string() + " and " + v->b.to_string() +
                            " both lie under " + v->c.to_string() + " intersect " +
                            v->d.to_string());
        } else {
            human.push_back("star: satisfied");
        }
    } else if (condition == "fork") {
        const auto v = conditions::find_fork_violation(f);
        satisfied = !v.has_value();
        if (v) {
            verdict["witness"] = ordered_json{
                {"a", subset_json(v->a)}, {"b", subset_json(v->b)}, {"c", subset_json(v->c)}};
            human.push_back("fork-free: violated");
            human.push_back("  " + v->a.to_string() + " is strictly inside both " +
                            v->b.to_string() + " and " + v->c.to_string());
        } else {
            human.push_back("fork-free: satisfied");
        }
    } else {  // antichain
        const auto v = conditions::find_comparable_pair(f);
        satisfied = !v.has_value();
        if (v) {
            verdict["witness"] =
                ordered_json{{"a", subset_json(v->first)}, {"b", subset_json(v->second)}};
            human.push_back("antichain: violated");
            human.push_back("  " + v->first.to_string() + " is contained in " +
                            v->second.to_string());
        } else {
            human.push_back("antichain: satisfied");
        }
    }
    verdict["satisfied"] = satisfied;
    report.add_verdict(std::move(verdict));
    report.emit(json_mode, human);
    return satisfied ? 0 : 1;
}

int run_lym(const std::string& family_arg, bool bound, bool json_mode) {
    const Family f = load_family(family_arg);
    ReportBuilder report("lym");
    report.inputs()["source"] = family_arg;
    report.inputs()["family"] = family_to_json(f);
    report.inputs()["bound"] = bound;

    const Rat sum = lym::lym_sum(f);
    report.add_verdict(ordered_json{{"lym_sum", sum.str()}});
    std::vector<std::string> human;
    human.push_back("weighted sum: " + sum.str());

    int exit_code = 0;
    if (bound) {
        const auto v = lym::check_star_lym(f);
        report.add_verdict(v.to_json());
        if (!v.hypotheses_ok) {
            std::string codes;
            for (const auto& c : v.hypothesis_failures) codes += " " + c;
            human.push_back("bound 2: out of scope:" + codes);
        } else {
            human.push_back(std::string("bound 2: ") +
                            (v.holds ? (v.equality ? "holds with equality" : "holds")
                                     : "violated"));
            if (!v.holds) exit_code = 1;
        }
    }
    report.emit(json_mode, human);
    return exit_code;
}

int run_audit_family(const std::string& family_arg, bool json_mode) {
    const Family f = load_family(family_arg);
    ReportBuilder report("audit");
    report.inputs()["source"] = family_arg;
    report.inputs()["family"] = family_to_json(f);

    const auto audit = cyclic::double_count_audit(f);
    const bool star = conditions::satisfies_star(f);
    const bool identity_ok = audit.member_weight_sum == audit.incidence_count;
    const bool within_budget = audit.member_weight_sum <= audit.budget;
    const bool equality = audit.member_weight_sum == audit.budget;

    report.add_verdict(ordered_json{{"member_weight_sum", audit.member_weight_sum.get_str()},
                                    {"incidence_count", audit.incidence_count.get_str()},
                                    {"identity_holds", identity_ok},
                                    {"budget", audit.budget.get_str()},
                                    {"within_budget", within_budget},
                                    {"equality", equality},
                                    {"satisfies_star", star}});

    std::vector<std::string> human;
    human.push_back("member weight sum: " + audit.member_weight_sum.get_str() +
                    ", enumerated incidences: " + audit.incidence_count.get_str() +
                    (identity_ok ? " (identical)" : " (MISMATCH)"));
    human.push_back("arrangement budget: " + audit.budget.get_str() +
                    (equality ? " (met with equality)"
                              : within_budget ? " (within)" : " (exceeded)"));
    if (!star) human.push_back("note: the family does not satisfy the star condition");
    report.emit(json_mode, human);

    if (!identity_ok) return 1;
    if (star && !within_budget) return 1;
    return 0;
}

int run_audit_all_intervals(int n, bool json_mode) {
    if (n < 2 || n > 4)
        throw UsageError("--all-intervals runs the exhaustive sweep only for 2 <= n <= 4");
    const GroundSize gs(n);
    const auto cp = cyclic::CyclicPerm::identity(gs);

    std::vector<Bits> proper_intervals;
    for (Bits m = 1; m < gs.full_mask(); ++m)
        if (cyclic::is_interval(Subset(gs, m), cp)) proper_intervals.push_back(m);

    const std::uint32_t total = 1u << proper_intervals.size();
    long star_families = 0, size_counterexamples = 0;
    long weight_checked = 0, weight_counterexamples = 0;
    int max_star_size = 0;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        std::vector<Bits> bits;
        for (std::size_t k = 0; k < proper_intervals.size(); ++k)
            if (mask >> k & 1u) bits.push_back(proper_intervals[k]);
        const Family fam = Family::from_bits(gs, bits);
        if (!conditions::satisfies_star(fam)) continue;
        ++star_families;
        if (fam.size() > max_star_size) max_star_size = fam.size();
        const cyclic::IntervalFamily ifam(cp, fam);
        const auto size_verdict = cyclic::check_interval_family_size(ifam);
        if (size_verdict.hypotheses_ok && !size_verdict.holds) ++size_counterexamples;
        const auto weight = cyclic::check_interval_weight(ifam);
        if (weight.verdict.hypotheses_ok) {
            ++weight_checked;
            if (!weight.verdict.holds) ++weight_counterexamples;
        }
    }

    ReportBuilder report("audit");
    report.inputs()["all_intervals"] = n;
    report.add_verdict(ordered_json{{"proper_intervals", proper_intervals.size()},
                                    {"families_checked", total},
                                    {"star_families", star_families},
                                    {"max_star_size", max_star_size},
                                    {"size_bound", 2 * n},
                                    {"size_counterexamples", size_counterexamples},
                                    {"weight_checked", weight_checked},
                                    {"weight_counterexamples", weight_counterexamples}});
    std::vector<std::string> human;
    human.push_back("all " + std::to_string(total) + " interval families checked, " +
                    std::to_string(size_counterexamples + weight_counterexamples) +
                    " counterexamples");
    human.push_back("largest star interval family: " + std::to_string(max_star_size) +
                    " members of allowed " + std::to_string(2 * n));
    report.emit(json_mode, human);
    return size_counterexamples + weight_counterexamples > 0 ? 1 : 0;
}

search::SearchBudget parse_budget(const std::string& text) {
    search::SearchBudget budget;
    if (text.empty()) return budget;
    try {
        if (text.back() == 's') {
            std::size_t used = 0;
            budget.max_seconds = std::stod(text.substr(0, text.size() - 1), &used);
            if (used + 1 != text.size() || budget.max_seconds < 0)
                throw UsageError("bad budget '" + text + "'");
        } else {
            std::size_t used = 0;
            budget.max_nodes = std::stoull(text, &used);
            if (used != text.size()) throw UsageError("bad budget '" + text + "'");
        }
    } catch (const std::invalid_argument&) {
        throw UsageError("bad budget '" + text + "': use a node count or seconds like '2.5s'");
    } catch (const std::out_of_range&) {
        throw UsageError("budget '" + text + "' out of range");
    }
    return budget;
}

int run_search(int n, const std::string& predicate_arg, bool enumerate,
               const std::string& budget_arg, int threads, bool json_mode) {
    search::Predicate pred;
    if (predicate_arg == "star")
        pred = search::Predicate::star;
    else if (predicate_arg == "fork_free" || predicate_arg == "fork")
        pred = search::Predicate::fork_free;
    else
        throw UsageError("predicate must be 'star' or 'fork_free'");
    const auto budget = parse_budget(budget_arg);
    if (enumerate && (n < 2 || n > 5))
        throw UsageError("--enumerate catalogs classes only for 2 <= n <= 5");

    ReportBuilder report("search");
    report.inputs()["n"] = n;
    report.inputs()["predicate"] = search::predicate_name(pred);
    report.inputs()["enumerate"] = enumerate;
    report.inputs()["threads"] = threads;
    if (!budget_arg.empty()) report.inputs()["budget"] = budget_arg;

    const auto res = search::max_family(GroundSize(n), pred, budget, threads);
    report.add_verdict(res.to_json());

    std::vector<std::string> human;
    human.push_back("optimum " + std::to_string(res.optimum) +
                    (res.proof_complete ? " (certified, " : " (budget exhausted, best found, ") +
                    std::to_string(res.nodes_explored) + " nodes)");
    human.push_back("witness:");
    human.push_back(family_block(res.witness));

    int exit_code = res.proof_complete ? 0 : 3;
    if (enumerate && res.proof_complete) {
        const auto cat =
            search::enumerate_max_families(GroundSize(n), pred, res.optimum, budget, threads);
        report.add_verdict(cat.to_json());
        if (!cat.proof_complete) exit_code = 3;
        human.push_back("classes: " + std::to_string(cat.class_count()) +
                        (cat.proof_complete ? "" : " (incomplete, budget exhausted)"));
        for (std::size_t i = 0; i < cat.classes.size(); ++i) {
            human.push_back("class " + std::to_string(i + 1) + " of " +
                            std::to_string(cat.classes.size()) + ":");
            human.push_back(family_block(cat.classes[i]));
        }
    } else if (enumerate) {
        human.push_back("classes: skipped, the optimum is not certified");
    }
    report.emit(json_mode, human);
    return exit_code;
}

template <class StillFails>
Family shrink_family(Family f, const StillFails& still_fails) {
    bool changed = true;
    while (changed) {
        changed = false;
        const std::vector<Subset> members = f.members();
        for (const Subset& s : members) {
            const Family smaller = f.without(s);
            if (still_fails(smaller)) {
                f = smaller;
                changed = true;
                break;
            }
        }
    }
    return f;
}

int run_proptest(int n, int cases, std::uint64_t seed, bool json_mode) {
    if (cases < 1) throw UsageError("--cases must be at least 1");
    const GroundSize gs(n);
    ReportBuilder report("proptest");
    report.inputs()["n"] = n;
    report.inputs()["cases"] = cases;
    report.set_seed(seed);

    std::vector<std::string> human;
    int exit_code = 0;
    std::mt19937_64 master(seed);
    const double densities[] = {1.0, 0.7, 0.4};

    {
        Rat max_sum(0);
        std::optional<Family> counterexample;
        for (int i = 0; i < cases && !counterexample; ++i) {
            search::RandomFamilyOptions opts;
            opts.density = densities[i % 3];
            opts.exclude_empty = true;
            opts.exclude_full = true;
            const Family fam = search::random_star_family(gs, master(), opts);
            const auto v = lym::check_star_lym(fam);
            if (v.lhs > max_sum) max_sum = v.lhs;
            if (v.hypotheses_ok && !v.holds) {
                counterexample = shrink_family(fam, [](const Family& g) {
                    const auto w = lym::check_star_lym(g);
                    return w.hypotheses_ok && !w.holds;
                });
            }
        }
        ordered_json verdict{{"suite", "star_weighted_sum"},
                             {"cases", cases},
                             {"max_lhs", max_sum.str()},
                             {"bound", "2/1"}};
        if (counterexample) {
            verdict["counterexample"] = family_to_json(*counterexample);
            exit_code = 1;
            human.push_back("star weighted-sum suite: COUNTEREXAMPLE (shrunk):");
            human.push_back(family_block(*counterexample));
        } else {
            verdict["counterexample"] = nullptr;
            human.push_back("star weighted-sum suite: " + std::to_string(cases) +
                            " cases, max observed " + max_sum.str() + " of allowed 2/1");
        }
        report.add_verdict(std::move(verdict));
    }

    if (n >= 4) {
        const Rat bound = lym::fork_free_bound(n);
        int max_size = 0;
        std::optional<Family> counterexample;
        for (int i = 0; i < cases && !counterexample; ++i) {
            search::RandomFamilyOptions opts;
            opts.density = densities[(i + 1) % 3];
            opts.exclude_full = true;
            const Family fam = search::random_fork_free_family(gs, master(), opts);
            if (fam.size() > max_size) max_size = fam.size();
            if (Rat(fam.size()) > bound) {
                counterexample = shrink_family(fam, [&bound](const Family& g) {
                    return conditions::is_fork_free(g) && Rat(g.size()) > bound;
                });
            }
        }
        ordered_json verdict{{"suite", "fork_free_size"},
                             {"cases", cases},
                             {"max_size", max_size},
                             {"bound", bound.str()}};
        if (counterexample) {
            verdict["counterexample"] = family_to_json(*counterexample);
            exit_code = 1;
            human.push_back("fork-free size suite: COUNTEREXAMPLE (shrunk):");
            human.push_back(family_block(*counterexample));
        } else {
            verdict["counterexample"] = nullptr;
            human.push_back("fork-free size suite: " + std::to_string(cases) +
                            " cases, max size " + std::to_string(max_size) + " of allowed " +
                            bound.str());
        }
        report.add_verdict(std::move(verdict));
    }

    if (n == 2) {
        const int exhaustive_max = search::brute_force_max(gs, search::Predicate::star);
        const std::int64_t two_level = binomial(2, 1) + binomial(2, 2);
        report.add_verdict(
            ordered_json{{"suite", "small_ground_exhaustive"},
                         {"max_size", exhaustive_max},
                         {"two_level_size", two_level},
                         {"note", "on two points the whole power set qualifies, so the maximum "
                                  "exceeds the two adjacent levels; the two-level count is the "
                                  "optimum only from three points on"}});
        human.push_back("exhaustive sweep on two points: max size " +
                        std::to_string(exhaustive_max) + " beats the two-level count " +
                        std::to_string(two_level) +
                        " (the two-level optimum starts at three points)");
    }

    report.emit(json_mode, human);
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for set families in which no two members lie jointly below "
                 "two other members"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "test a family against a structural condition");
    std::string check_family, check_condition = "star";
    bool check_json = false;
    check->add_option("family", check_family,
                      "family file, '-' for stdin, or a fixture like two-levels:5:2")
        ->required();
    check->add_option("-c,--condition", check_condition, "star, fork, or antichain")
        ->check(CLI::IsMember({"star", "fork", "antichain"}));
    check->add_flag("--json", check_json, "emit the report as JSON");

    auto* lym_cmd = app.add_subcommand("lym", "exact level-weighted sum of a family");
    std::string lym_family;
    bool lym_bound = false, lym_json = false;
    lym_cmd->add_option("family", lym_family, "family file, '-' for stdin, or a fixture")
        ->required();
    lym_cmd->add_flag("--bound", lym_bound, "also verdict the weighted sum against 2");
    lym_cmd->add_flag("--json", lym_json, "emit the report as JSON");

    auto* audit = app.add_subcommand(
        "audit", "arrangement double count for a family, or the exhaustive interval sweep");
    std::string audit_family;
    int audit_all_n = 0;
    bool audit_json = false;
    auto* audit_family_opt =
        audit->add_option("family", audit_family, "family file, '-' for stdin, or a fixture");
    auto* audit_all_opt = audit->add_option(
        "--all-intervals", audit_all_n, "sweep every interval family on n points (n <= 4)");
    audit_family_opt->excludes(audit_all_opt);
    audit->add_flag("--json", audit_json, "emit the report as JSON");

    auto* search_cmd =
        app.add_subcommand("search", "certified maximum family size for a predicate");
    int search_n = 0, search_threads = 1;
    std::string search_predicate = "star", search_budget;
    bool search_enumerate = false, search_json = false;
    search_cmd->add_option("n", search_n, "ground set size")->required();
    search_cmd->add_option("predicate", search_predicate, "star or fork_free");
    search_cmd->add_flag("--enumerate", search_enumerate,
                         "also catalog every maximum family up to relabeling");
    search_cmd->add_option("--budget", search_budget, "node count, or seconds like '30s'");
    search_cmd->add_option("--threads", search_threads, "worker count")
        ->check(CLI::PositiveNumber);
    search_cmd->add_flag("--json", search_json, "emit the report as JSON");

    auto* prop = app.add_subcommand("proptest", "seeded randomized property suites");
    int prop_n = 0, prop_cases = 1000;
    std::uint64_t prop_seed = 0;
    bool prop_json = false;
    prop->add_option("n", prop_n, "ground set size")->required();
    prop->add_option("--cases", prop_cases, "cases per suite");
    prop->add_option("--seed", prop_seed, "random seed");
    prop->add_flag("--json", prop_json, "emit the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*check) return run_check(check_family, check_condition, check_json);
        if (*lym_cmd) return run_lym(lym_family, lym_bound, lym_json);
        if (*audit) {
            if (audit_all_opt->count() > 0) return run_audit_all_intervals(audit_all_n, audit_json);
            if (audit_family_opt->count() > 0) return run_audit_family(audit_family, audit_json);
            throw UsageError("audit needs a family or --all-intervals <n>");
        }
        if (*search_cmd)
            return run_search(search_n, search_predicate, search_enumerate, search_budget,
                              search_threads, search_json);
        if (*prop) return run_proptest(prop_n, prop_cases, prop_seed, prop_json);
    } catch (const FamilyParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
