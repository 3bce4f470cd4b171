#include "crbs/heuristics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace crbs {

std::string_view to_string(HeuristicKind kind) {
    switch (kind) {
        case HeuristicKind::crbs_sum:
            return "crbs-sum";
        case HeuristicKind::crbs_max:
            return "crbs-max";
        case HeuristicKind::dom:
            return "dom";
        case HeuristicKind::dom_deg:
            return "dom-deg";
        case HeuristicKind::dom_wdeg:
            return "dom-wdeg";
        case HeuristicKind::abs:
            return "abs";
    }
    return "?";
}

HeuristicKind parse_heuristic(std::string_view name) {
    for (const auto kind : all_heuristics) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    // Common spellings.
    if (name == "dom/deg") return HeuristicKind::dom_deg;
    if (name == "dom/wdeg") return HeuristicKind::dom_wdeg;
    throw std::invalid_argument("unknown heuristic '" + std::string(name) + "'");
}

CorrelationMatrix::CorrelationMatrix(std::size_t n) : n_(n), a_(n * n, 0), row_sum_(n, 0) {}

void CorrelationMatrix::check_var(VarId i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= n_) {
        throw std::invalid_argument("variable " + std::to_string(i) + " outside the correlation matrix");
    }
}

void CorrelationMatrix::add_pair(VarId i, VarId j, std::int64_t delta) {
    a_[index(i, j)] += delta;
    a_[index(j, i)] += delta;
    row_sum_[static_cast<std::size_t>(i)] += delta;
    row_sum_[static_cast<std::size_t>(j)] += delta;
}

void CorrelationMatrix::update_no_conflict(VarId i, const PropagationReport& report) {
    check_var(i);
    if (report.updated.size() + report.unchanged.size() + 1 != n_) {
        throw std::invalid_argument("report does not cover every variable but the decision variable");
    }
    update_no_conflict(i, report.updated, report.unchanged);
}

void CorrelationMatrix::update_no_conflict(VarId i, std::span<const VarId> updated, std::span<const VarId> unchanged) {
    check_var(i);
    std::vector<char> seen(n_, 0);
    seen[static_cast<std::size_t>(i)] = 1;
    for (const auto set : {updated, unchanged}) {
        for (const VarId j : set) {
            check_var(j);
            if (seen[static_cast<std::size_t>(j)]) {
                throw std::invalid_argument("report sets overlap or contain the decision variable");
            }
            seen[static_cast<std::size_t>(j)] = 1;
        }
    }
    for (const VarId j : updated) {
        add_pair(i, j, +1);
    }
    for (const VarId j : unchanged) {
        add_pair(i, j, -1);
    }
    a_[index(i, i)] -= 1;
    row_sum_[static_cast<std::size_t>(i)] -= 1;
    ++updates_;
}

void CorrelationMatrix::update_conflict(VarId i) {
    check_var(i);
    for (std::size_t j = 0; j < n_; ++j) {
        if (static_cast<VarId>(j) != i) {
            add_pair(i, static_cast<VarId>(j), +1);
        }
    }
    a_[index(i, i)] += 2;
    row_sum_[static_cast<std::size_t>(i)] += 2;
    ++updates_;
}

bool CorrelationMatrix::is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (a_[i * n_ + j] != a_[j * n_ + i]) {
                return false;
            }
        }
    }
    return true;
}

double crbs_sum_score(const CorrelationMatrix& m, VarId i, std::span<const VarId> past,
                      std::span<const VarId> future, double theta) {
    std::int64_t past_sum = 0;
    for (const VarId j : past) {
        past_sum += m.at(i, j);
    }
    std::int64_t future_sum = 0;
    for (const VarId j : future) {
        future_sum += m.at(i, j);
    }
    return static_cast<double>(past_sum) + theta * static_cast<double>(future_sum);
}

double crbs_max_score(const CorrelationMatrix& m, VarId i, std::span<const VarId> past) {
    if (past.empty()) {
        return 0.0;
    }
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (const VarId j : past) {
        best = std::max(best, m.at(i, j));
    }
    return static_cast<double>(best);
}

void WdegState::on_wipeout(ConstraintId c) {
    if (c < 0 || static_cast<std::size_t>(c) >= weight_.size()) {
        throw std::invalid_argument("unknown constraint " + std::to_string(c));
    }
    ++weight_[static_cast<std::size_t>(c)];
}

std::int64_t WdegState::wdeg(VarId x, const SearchState& state) const {
    std::int64_t total = 0;
    for (const ConstraintId c : state.problem().constraints_of(x)) {
        const auto& scope = state.problem().constraint(c).scope;
        const bool live = std::any_of(scope.begin(), scope.end(), [&](VarId y) { return y != x && !state.is_past(y); });
        if (live) {
            total += weight_[static_cast<std::size_t>(c)];
        }
    }
    return total;
}

void AbsState::update(const PropagationReport& report, double gamma, const SearchState& state) {
    for (const VarId j : report.updated) {
        activity_[static_cast<std::size_t>(j)] += 1.0;
    }
    for (const VarId j : report.unchanged) {
        if (!state.is_past(j)) {
            activity_[static_cast<std::size_t>(j)] *= gamma;
        }
    }
}

namespace {

bool uses_matrix(HeuristicKind kind) { return kind == HeuristicKind::crbs_sum || kind == HeuristicKind::crbs_max; }

}  // namespace

Heuristic::Heuristic(const Problem& problem, HeuristicConfig config)
    : problem_(&problem),
      config_(config),
      matrix_(uses_matrix(config.kind) ? problem.num_variables() : 0),
      wdeg_(problem.num_constraints()),
      abs_(problem.num_variables()) {
    if (!(config.theta >= 0.0 && config.theta <= 1.0)) {
        throw std::invalid_argument("theta must lie in [0, 1]");
    }
    if (!(config.gamma >= 0.0 && config.gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1]");
    }
}

void Heuristic::set_matrix(CorrelationMatrix matrix) {
    if (matrix.size() != matrix_.size()) {
        throw std::invalid_argument("correlation matrix size mismatch");
    }
    matrix_ = std::move(matrix);
}

double Heuristic::score(VarId x, const SearchState& state) const {
    switch (config_.kind) {
        case HeuristicKind::crbs_sum: {
            std::int64_t past_sum = 0;
            for (const VarId j : state.past()) {
                past_sum += matrix_.at(x, j);
            }
            // Past and future partition X, so the future sum is the rest of the row.
            const std::int64_t future_sum = matrix_.row_sum(x) - past_sum;
            return static_cast<double>(past_sum) + config_.theta * static_cast<double>(future_sum);
        }
        case HeuristicKind::crbs_max:
            return crbs_max_score(matrix_, x, state.past());
        case HeuristicKind::abs:
            return abs_.activity(x);
        default:
            throw std::logic_error("score is defined for crbs-sum, crbs-max and abs only");
    }
}

std::optional<VarId> Heuristic::select_variable(const SearchState& state) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const bool maximise = config_.kind == HeuristicKind::crbs_sum || config_.kind == HeuristicKind::crbs_max ||
                          config_.kind == HeuristicKind::abs;

    std::optional<VarId> best;
    double best_key = 0.0;
    for (std::size_t i = 0; i < state.num_variables(); ++i) {
        const auto x = static_cast<VarId>(i);
        if (state.is_past(x)) {
            continue;
        }
        const auto size = static_cast<double>(state.domain(x).size());
        double key = 0.0;
        switch (config_.kind) {
            case HeuristicKind::dom:
                key = size;
                break;
            case HeuristicKind::dom_deg: {
                const auto deg = problem_->constraints_of(x).size();
                key = deg == 0 ? inf : size / static_cast<double>(deg);
                break;
            }
            case HeuristicKind::dom_wdeg: {
                const auto w = wdeg_.wdeg(x, state);
                key = w == 0 ? inf : size / static_cast<double>(w);
                break;
            }
            default:
                key = score(x, state) / size;
                break;
        }
        if (!best || (maximise ? key > best_key : key < best_key)) {
            best = x;
            best_key = key;
        }
    }
    return best;
}

void Heuristic::observe(const Decision& decision, const PropagationReport& report, const SearchState& state) {
    switch (config_.kind) {
        case HeuristicKind::crbs_sum:
        case HeuristicKind::crbs_max:
            if (decision.polarity != Polarity::assign) {
                break;
            }
            if (report.conflict) {
                matrix_.update_conflict(decision.var);
            } else if (config_.correlate_past) {
                matrix_.update_no_conflict(decision.var, report);
            } else {
                filtered_.clear();
                for (const VarId j : report.unchanged) {
                    if (!state.is_past(j)) {
                        filtered_.push_back(j);
                    }
                }
                matrix_.update_no_conflict(decision.var, report.updated, filtered_);
            }
            break;
        case HeuristicKind::dom_wdeg:
            if (report.conflict && report.wiped_constraint) {
                wdeg_.on_wipeout(*report.wiped_constraint);
            }
            break;
        case HeuristicKind::abs:
            abs_.update(report, config_.gamma, state);
            break;
        case HeuristicKind::dom:
        case HeuristicKind::dom_deg:
            break;
    }
}

}  // namespace crbs
