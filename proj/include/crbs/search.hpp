#ifndef CRBS_SEARCH_HPP
#define CRBS_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "crbs/heuristics.hpp"
#include "crbs/model.hpp"
#include "crbs/propagate.hpp"

namespace crbs {

/**
 * Geometric restart schedule on failure counts. After the k-th restart the
 * cutoff becomes floor(previous + init_cutoff * rho^k).
 */
struct RestartPolicy {
    bool enabled = true;
    std::int64_t init_cutoff = 10;
    double rho = 1.1;
    std::int64_t current_cutoff = 10;
    int restarts = 0;

    static RestartPolicy geometric(std::int64_t init_cutoff = 10, double rho = 1.1);
    static RestartPolicy disabled();

    /// Advances to the next restart and returns the new cutoff.
    std::int64_t next_cutoff();
};

/// Parses "init:rho" (e.g. "10:1.1") or "off".
RestartPolicy parse_restart_policy(std::string_view text);

struct Budget {
    std::optional<double> time_limit_s;
    std::optional<std::int64_t> max_nodes;
};

struct SearchStats {
    std::int64_t nodes = 0;     // applied decisions, both polarities
    std::int64_t failures = 0;  // conflicts
    std::int64_t restarts = 0;
    double time_s = 0.0;
};

enum class SearchStatus { sat, unsat, timeout };

std::string_view to_string(SearchStatus status);

struct SearchOutcome {
    SearchStatus status = SearchStatus::timeout;
    std::vector<Value> solution;  // filled when sat
    SearchStats stats;
};

/// Thrown by count_solutions when the budget runs out before enumeration completes.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted() : std::runtime_error("search budget exhausted") {}
};

/**
 * Binary-branching depth-first search: pick a variable with the heuristic,
 * try x = min(dom(x)) then x != min(dom(x)), propagate after each branch and
 * feed the outcome to the heuristic. Restarts unwind to the root and keep
 * the heuristic's learned state.
 */
class Solver {
public:
    Solver(const Problem& problem, HeuristicConfig config, RestartPolicy restart = RestartPolicy::geometric(),
           Budget budget = {});

    SearchOutcome solve();

    /// Exhaustive enumeration without restarts; throws BudgetExhausted.
    std::int64_t count_solutions();

    const Heuristic& heuristic() const { return heuristic_; }
    const SearchStats& stats() const { return stats_; }
    const RestartPolicy& restart_policy() const { return restart_; }

    /// Called before every variable selection; used by tests to inspect the search state.
    std::function<void(const SearchState&)> on_node;

private:
    enum class Step { resume, exhausted, restarted, out_of_budget };

    bool out_of_budget() const;
    bool apply(SearchState& state, const Decision& d);
    Step close_branch(SearchState& state, bool after_conflict);
    SearchStatus run(bool counting, std::int64_t& solutions, std::vector<Value>& solution);

    const Problem* problem_;
    Heuristic heuristic_;
    RestartPolicy restart_;
    Budget budget_;
    SearchStats stats_;

    std::vector<Decision> path_;
    std::int64_t open_assignments_ = 0;
    std::int64_t failures_since_restart_ = 0;
    bool allow_restarts_ = true;
    std::int64_t start_ns_ = 0;
};

SearchOutcome solve(const Problem& problem, const HeuristicConfig& config,
                    RestartPolicy restart = RestartPolicy::geometric(), Budget budget = {});

std::int64_t count_solutions(const Problem& problem, const HeuristicConfig& config, Budget budget = {});

}  // namespace crbs

#endif
