#include "crbs/search.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace crbs {

namespace {

std::int64_t now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

RestartPolicy RestartPolicy::geometric(std::int64_t init_cutoff, double rho) {
    if (init_cutoff < 1) {
        throw std::invalid_argument("restart cutoff must be positive");
    }
    if (!(rho > 1.0)) {
        throw std::invalid_argument("restart growth factor must exceed 1");
    }
    RestartPolicy p;
    p.init_cutoff = init_cutoff;
    p.rho = rho;
    p.current_cutoff = init_cutoff;
    return p;
}

RestartPolicy RestartPolicy::disabled() {
    RestartPolicy p;
    p.enabled = false;
    return p;
}

std::int64_t RestartPolicy::next_cutoff() {
    ++restarts;
    const double grown = static_cast<double>(current_cutoff) +
                         static_cast<double>(init_cutoff) * std::pow(rho, static_cast<double>(restarts));
    // The epsilon keeps exact results such as 10 + 10 * 1.1 = 21 from flooring to 20.
    current_cutoff = static_cast<std::int64_t>(std::floor(grown + 1e-9));
    return current_cutoff;
}

RestartPolicy parse_restart_policy(std::string_view text) {
    if (text == "off" || text == "none") {
        return RestartPolicy::disabled();
    }
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("restart policy must be 'init:rho' or 'off'");
    }
    try {
        const std::string init(text.substr(0, colon));
        const std::string rho(text.substr(colon + 1));
        std::size_t used_init = 0;
        std::size_t used_rho = 0;
        const long long cutoff = std::stoll(init, &used_init);
        const double growth = std::stod(rho, &used_rho);
        if (used_init != init.size() || used_rho != rho.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return RestartPolicy::geometric(cutoff, growth);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad restart policy '" + std::string(text) + "'");
    }
}

std::string_view to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::sat:
            return "SAT";
        case SearchStatus::unsat:
            return "UNSAT";
        case SearchStatus::timeout:
            return "TIMEOUT";
    }
    return "?";
}

Solver::Solver(const Problem& problem, HeuristicConfig config, RestartPolicy restart, Budget budget)
    : problem_(&problem), heuristic_(problem, config), restart_(restart), budget_(budget) {}

bool Solver::out_of_budget() const {
    if (budget_.max_nodes && stats_.nodes >= *budget_.max_nodes) {
        return true;
    }
    if (budget_.time_limit_s) {
        const double elapsed = static_cast<double>(now_ns() - start_ns_) * 1e-9;
        return elapsed >= *budget_.time_limit_s;
    }
    return false;
}

bool Solver::apply(SearchState& state, const Decision& d) {
    ++stats_.nodes;
    const auto report = state.decide_and_propagate(d);
    heuristic_.observe(d, report, state);
    path_.push_back(d);
    if (d.polarity == Polarity::assign) {
        ++open_assignments_;
    }
    if (report.conflict) {
        ++stats_.failures;
        ++failures_since_restart_;
    }
    return !report.conflict;
}

// The decision on top of the path heads a finished subtree (it failed, or it
// is the last decision of an enumerated solution). Moves to the next open
// right branch, restarting instead when the failure cutoff is reached.
Solver::Step Solver::close_branch(SearchState& state, bool after_conflict) {
    bool conflict = after_conflict;
    while (true) {
        if (conflict && allow_restarts_ && open_assignments_ > 0 &&
            failures_since_restart_ >= restart_.current_cutoff) {
            state.backtrack_to_root();
            path_.clear();
            open_assignments_ = 0;
            failures_since_restart_ = 0;
            restart_.next_cutoff();
            ++stats_.restarts;
            return Step::restarted;
        }
        while (!path_.empty() && path_.back().polarity == Polarity::refute) {
            path_.pop_back();
            state.backtrack();
        }
        if (path_.empty()) {
            return Step::exhausted;
        }
        const Decision left = path_.back();
        path_.pop_back();
        --open_assignments_;
        state.backtrack();
        if (out_of_budget()) {
            return Step::out_of_budget;
        }
        if (apply(state, Decision{left.var, left.value, Polarity::refute})) {
            return Step::resume;
        }
        conflict = true;
    }
}

SearchStatus Solver::run(bool counting, std::int64_t& solutions, std::vector<Value>& solution) {
    stats_ = {};
    start_ns_ = now_ns();
    path_.clear();
    open_assignments_ = 0;
    failures_since_restart_ = 0;

    auto finish = [this](SearchStatus status) {
        stats_.time_s = static_cast<double>(now_ns() - start_ns_) * 1e-9;
        return status;
    };

    SearchState state(*problem_);
    if (!state.propagate_root()) {
        return finish(SearchStatus::unsat);
    }

    while (true) {
        if (on_node) {
            on_node(state);
        }
        const auto var = heuristic_.select_variable(state);
        Step step = Step::resume;
        if (!var) {
            if (!counting) {
                solution.resize(state.num_variables());
                for (std::size_t i = 0; i < solution.size(); ++i) {
                    solution[i] = state.domain(static_cast<VarId>(i)).min();
                }
                return finish(SearchStatus::sat);
            }
            ++solutions;
            step = close_branch(state, false);
        } else {
            if (out_of_budget()) {
                return finish(SearchStatus::timeout);
            }
            const Decision left{*var, state.domain(*var).min(), Polarity::assign};
            if (!apply(state, left)) {
                step = close_branch(state, true);
            }
        }
        if (step == Step::exhausted) {
            return finish(SearchStatus::unsat);
        }
        if (step == Step::out_of_budget) {
            return finish(SearchStatus::timeout);
        }
    }
}

SearchOutcome Solver::solve() {
    allow_restarts_ = restart_.enabled;
    SearchOutcome outcome;
    std::int64_t unused = 0;
    outcome.status = run(false, unused, outcome.solution);
    outcome.stats = stats_;
    if (outcome.status == SearchStatus::sat && !check_assignment(*problem_, outcome.solution)) {
        throw std::logic_error("search produced an assignment that violates a constraint");
    }
    return outcome;
}

std::int64_t Solver::count_solutions() {
    allow_restarts_ = false;
    std::int64_t solutions = 0;
    std::vector<Value> unused;
    if (run(true, solutions, unused) == SearchStatus::timeout) {
        throw BudgetExhausted();
    }
    return solutions;
}

SearchOutcome solve(const Problem& problem, const HeuristicConfig& config, RestartPolicy restart, Budget budget) {
    return Solver(problem, config, restart, budget).solve();
}

std::int64_t count_solutions(const Problem& problem, const HeuristicConfig& config, Budget budget) {
    return Solver(problem, config, RestartPolicy::disabled(), budget).count_solutions();
}

}  // namespace crbs
