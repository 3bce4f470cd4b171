#include "crbs/propagate.hpp"

#include <algorithm>
#include <limits>

namespace crbs {

namespace {

bool is_not_equal_family(PredicateKind kind) {
    return kind == PredicateKind::not_equal || kind == PredicateKind::not_equal_offset ||
           kind == PredicateKind::abs_diff_not_equal;
}

// Values of the other variable that the predicate forbids when this side takes a.
// first: a belongs to scope[0].
std::size_t forbidden_present(const BinaryPredicate& pred, bool first, std::int64_t a, const Domain& other) {
    const std::int64_t k = pred.offset;
    switch (pred.kind) {
        case PredicateKind::not_equal:
            return other.contains(a) ? 1 : 0;
        case PredicateKind::not_equal_offset:
            return other.contains(first ? a - k : a + k) ? 1 : 0;
        case PredicateKind::abs_diff_not_equal:
            if (k < 0) {
                return 0;
            }
            if (k == 0) {
                return other.contains(a) ? 1 : 0;
            }
            return (other.contains(a - k) ? 1 : 0) + (other.contains(a + k) ? 1 : 0);
        default:
            return 0;
    }
}

constexpr std::int64_t saturation = std::int64_t{1} << 62;

}  // namespace

SearchState::SearchState(const Problem& problem)
    : problem_(&problem),
      domains_(problem.initial_domains()),
      is_past_(problem.num_variables(), 0),
      in_queue_(problem.num_constraints(), 0),
      trigger_(problem.num_constraints(), -1) {}

void SearchState::shuffle_queue(std::optional<std::uint64_t> seed) {
    if (seed) {
        shuffle_.emplace(*seed);
    } else {
        shuffle_.reset();
    }
}

bool SearchState::remove(VarId x, Value v) {
    if (domains_[static_cast<std::size_t>(x)].remove(v)) {
        trail_.push(x, v);
        return true;
    }
    return false;
}

void SearchState::enqueue_neighbours(VarId x, std::optional<ConstraintId> except) {
    for (const ConstraintId c : problem_->constraints_of(x)) {
        if (c == except) {
            continue;
        }
        auto& trigger = trigger_[static_cast<std::size_t>(c)];
        if (in_queue_[static_cast<std::size_t>(c)]) {
            if (trigger != x) trigger = -1;
            continue;
        }
        trigger = x;
        in_queue_[static_cast<std::size_t>(c)] = 1;
        queue_.push_back(c);
    }
}

bool SearchState::run_queue(std::optional<ConstraintId>& wiped) {
    bool ok = true;
    while (!queue_.empty()) {
        ConstraintId c;
        if (shuffle_) {
            const auto pick = static_cast<std::size_t>(shuffle_->below(queue_.size()));
            std::swap(queue_[pick], queue_.back());
            c = queue_.back();
            queue_.pop_back();
        } else {
            c = queue_.front();
            queue_.pop_front();
        }
        in_queue_[static_cast<std::size_t>(c)] = 0;

        changed_.clear();
        if (!revise(c)) {
            wiped = c;
            ok = false;
            break;
        }
        for (const VarId x : changed_) {
            enqueue_neighbours(x, c);
        }
    }
    for (const ConstraintId c : queue_) {
        in_queue_[static_cast<std::size_t>(c)] = 0;
    }
    queue_.clear();
    return ok;
}

bool SearchState::revise(ConstraintId c) {
    const auto& con = problem_->constraint(c);
    if (const auto* pred = std::get_if<BinaryPredicate>(&con.relation)) {
        return revise_binary(c, *pred);
    }
    return revise_table(c, std::get<Table>(con.relation));
}

bool SearchState::revise_binary(ConstraintId c, const BinaryPredicate& pred) {
    const auto& scope = problem_->constraint(c).scope;
    // Revise the variable that did not trigger the revision first, so a wipeout lands on it.
    const int first_side = trigger_[static_cast<std::size_t>(c)] == scope[0] ? 1 : 0;
    for (int k = 0; k < 2; ++k) {
        const int side = k == 0 ? first_side : 1 - first_side;
        const bool first = side == 0;
        const VarId x = scope[first ? 0 : 1];
        const VarId y = scope[first ? 1 : 0];
        const Domain& dx = domains_[static_cast<std::size_t>(x)];
        const Domain& dy = domains_[static_cast<std::size_t>(y)];

        scratch_.clear();
        if (is_not_equal_family(pred.kind)) {
            // At most two values of y are forbidden for any value of x.
            if (dy.size() > 2) {
                continue;
            }
            for (std::size_t pos = 0; pos < dx.size(); ++pos) {
                const Value a = dx.at(pos);
                if (dy.size() <= forbidden_present(pred, first, a, dy)) {
                    scratch_.push_back(a);
                }
            }
        } else if (pred.kind == PredicateKind::equal) {
            for (std::size_t pos = 0; pos < dx.size(); ++pos) {
                if (!dy.contains(dx.at(pos))) {
                    scratch_.push_back(dx.at(pos));
                }
            }
        } else {
            // x < y: x needs a larger y, y needs a smaller x.
            const Value bound = first ? dy.max() : dy.min();
            for (std::size_t pos = 0; pos < dx.size(); ++pos) {
                const Value a = dx.at(pos);
                if (first ? a >= bound : a <= bound) {
                    scratch_.push_back(a);
                }
            }
        }
        if (scratch_.empty()) {
            continue;
        }
        for (const Value v : scratch_) {
            remove(x, v);
        }
        changed_.push_back(x);
        if (dx.empty()) {
            return false;
        }
    }
    return true;
}

bool SearchState::revise_table(ConstraintId c, const Table& table) {
    const auto& scope = problem_->constraint(c).scope;
    const std::size_t arity = scope.size();
    if (counts_.size() < arity) {
        counts_.resize(arity);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t p = 0; p < arity; ++p) {
            counts_[p].assign(domains_[static_cast<std::size_t>(scope[p])].universe().size(), 0);
        }
        for (const auto& tuple : table.tuples) {
            bool valid = true;
            for (std::size_t p = 0; p < arity && valid; ++p) {
                valid = domains_[static_cast<std::size_t>(scope[p])].contains(tuple[p]);
            }
            if (!valid) {
                continue;
            }
            for (std::size_t p = 0; p < arity; ++p) {
                ++counts_[p][static_cast<std::size_t>(domains_[static_cast<std::size_t>(scope[p])].universe_index(tuple[p]))];
            }
        }

        // Tuples in the cartesian product of the other domains, per position.
        std::vector<std::int64_t> others(arity, 1);
        if (!table.positive) {
            for (std::size_t p = 0; p < arity; ++p) {
                for (std::size_t q = 0; q < arity; ++q) {
                    if (q != p) {
                        const auto s = static_cast<std::int64_t>(domains_[static_cast<std::size_t>(scope[q])].size());
                        others[p] = others[p] > saturation / std::max<std::int64_t>(s, 1) ? saturation : others[p] * s;
                    }
                }
            }
        }

        for (std::size_t p = 0; p < arity; ++p) {
            const VarId x = scope[p];
            const Domain& dx = domains_[static_cast<std::size_t>(x)];
            scratch_.clear();
            for (std::size_t pos = 0; pos < dx.size(); ++pos) {
                const Value a = dx.at(pos);
                const std::int64_t hits = counts_[p][static_cast<std::size_t>(dx.universe_index(a))];
                const bool supported = table.positive ? hits > 0 : hits < others[p];
                if (!supported) {
                    scratch_.push_back(a);
                }
            }
            if (scratch_.empty()) {
                continue;
            }
            for (const Value v : scratch_) {
                remove(x, v);
            }
            changed = true;
            if (std::find(changed_.begin(), changed_.end(), x) == changed_.end()) {
                changed_.push_back(x);
            }
            if (dx.empty()) {
                return false;
            }
        }
    }
    return true;
}

bool SearchState::propagate_root() {
    for (std::size_t c = 0; c < problem_->num_constraints(); ++c) {
        in_queue_[c] = 1;
        trigger_[c] = -1;
        queue_.push_back(static_cast<ConstraintId>(c));
    }
    std::optional<ConstraintId> wiped;
    return run_queue(wiped);
}

PropagationReport SearchState::decide_and_propagate(const Decision& decision) {
    const VarId x = decision.var;
    if (x < 0 || static_cast<std::size_t>(x) >= domains_.size()) {
        throw std::invalid_argument("decision on unknown variable");
    }
    if (is_past(x)) {
        throw std::invalid_argument("decision on a past variable");
    }
    Domain& dx = domains_[static_cast<std::size_t>(x)];
    if (!dx.contains(decision.value)) {
        throw std::invalid_argument("decision value not in the current domain");
    }

    sizes_before_.resize(domains_.size());
    for (std::size_t i = 0; i < domains_.size(); ++i) {
        sizes_before_[i] = domains_[i].size();
    }

    trail_.push_mark();
    mark_made_past_.push_back(0);

    if (decision.polarity == Polarity::assign) {
        scratch_ = dx.values();
        for (const Value v : scratch_) {
            if (v != decision.value) {
                remove(x, v);
            }
        }
    } else {
        remove(x, decision.value);
    }

    PropagationReport report;
    report.decision_var = x;
    if (dx.empty()) {
        report.conflict = true;
    } else {
        enqueue_neighbours(x, std::nullopt);
        report.conflict = !run_queue(report.wiped_constraint);
    }

    if (!report.conflict && decision.polarity == Polarity::assign) {
        past_.push_back(x);
        is_past_[static_cast<std::size_t>(x)] = 1;
        mark_made_past_.back() = 1;
    }

    // Removal is the only domain operation, so a changed domain is a smaller one.
    for (std::size_t i = 0; i < domains_.size(); ++i) {
        if (static_cast<VarId>(i) == x) {
            continue;
        }
        (domains_[i].size() != sizes_before_[i] ? report.updated : report.unchanged).push_back(static_cast<VarId>(i));
    }
    return report;
}

void SearchState::backtrack() {
    if (trail_.num_marks() == 0) {
        throw std::logic_error("backtrack on empty trail");
    }
    trail_.pop_to_mark([this](VarId x, Value v) { domains_[static_cast<std::size_t>(x)].restore(v); });
    if (mark_made_past_.back()) {
        is_past_[static_cast<std::size_t>(past_.back())] = 0;
        past_.pop_back();
    }
    mark_made_past_.pop_back();
}

void SearchState::backtrack_to_root() {
    while (trail_.num_marks() > 0) {
        backtrack();
    }
}

}  // namespace crbs
