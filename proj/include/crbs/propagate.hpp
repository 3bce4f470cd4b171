#ifndef CRBS_PROPAGATE_HPP
#define CRBS_PROPAGATE_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "crbs/model.hpp"
#include "crbs/rng.hpp"

namespace crbs {

/// Undo log of value removals with nested marks.
class Trail {
public:
    struct Entry {
        VarId var;
        Value value;
    };

    void push(VarId var, Value value) { entries_.push_back({var, value}); }
    void push_mark() { marks_.push_back(entries_.size()); }

    std::size_t num_marks() const { return marks_.size(); }
    std::size_t size() const { return entries_.size(); }

    /// Pops every entry above the latest mark, newest first, then the mark itself.
    template <class Undo>
    void pop_to_mark(Undo&& undo) {
        if (marks_.empty()) {
            throw std::logic_error("backtrack on empty trail");
        }
        const std::size_t mark = marks_.back();
        marks_.pop_back();
        while (entries_.size() > mark) {
            const Entry e = entries_.back();
            entries_.pop_back();
            undo(e.var, e.value);
        }
    }

private:
    std::vector<Entry> entries_;
    std::vector<std::size_t> marks_;
};

enum class Polarity { assign, refute };

struct Decision {
    VarId var = 0;
    Value value = 0;
    Polarity polarity = Polarity::assign;
};

/**
 * Outcome of one decision's propagation. updated (U) and unchanged (N)
 * partition every variable except the decision variable, comparing domains
 * before the decision against the domains at the end of propagation.
 */
struct PropagationReport {
    VarId decision_var = 0;
    std::vector<VarId> updated;
    std::vector<VarId> unchanged;
    bool conflict = false;
    std::optional<ConstraintId> wiped_constraint;
};

/**
 * Mutable search-time view of a problem: current domains, the trail and the
 * stack of past (decision-assigned) variables. The problem must outlive it.
 */
class SearchState {
public:
    explicit SearchState(const Problem& problem);

    const Problem& problem() const { return *problem_; }
    std::size_t num_variables() const { return domains_.size(); }

    const Domain& domain(VarId x) const { return domains_[static_cast<std::size_t>(x)]; }
    const std::vector<Domain>& domains() const { return domains_; }

    bool is_past(VarId x) const { return is_past_[static_cast<std::size_t>(x)] != 0; }
    std::span<const VarId> past() const { return past_; }

    /// Number of decisions currently applied.
    std::size_t depth() const { return trail_.num_marks(); }

    /// Enforces arc consistency on the initial domains. Removals stay below every mark.
    bool propagate_root();

    /**
     * Applies x = v (assign) or x != v (refute) under a fresh trail mark and
     * runs propagation to fixpoint, stopping at the first wipeout. The
     * decision stays applied even on conflict; call backtrack() to undo it.
     */
    PropagationReport decide_and_propagate(const Decision& decision);

    /// Undoes the most recent decision. Throws std::logic_error at the root.
    void backtrack();
    void backtrack_to_root();

    /// When set, the propagation queue is popped in a seeded random order.
    void shuffle_queue(std::optional<std::uint64_t> seed);

private:
    bool remove(VarId x, Value v);
    void enqueue_neighbours(VarId x, std::optional<ConstraintId> except);
    bool run_queue(std::optional<ConstraintId>& wiped);
    bool revise(ConstraintId c);
    bool revise_binary(ConstraintId c, const BinaryPredicate& pred);
    bool revise_table(ConstraintId c, const Table& table);

    const Problem* problem_;
    std::vector<Domain> domains_;
    Trail trail_;
    std::vector<VarId> past_;
    std::vector<char> is_past_;
    std::vector<char> mark_made_past_;

    std::deque<ConstraintId> queue_;
    std::vector<char> in_queue_;
    std::vector<VarId> trigger_;  // sole variable whose change queued the constraint, or -1
    std::vector<VarId> changed_;
    std::optional<Rng> shuffle_;

    std::vector<std::size_t> sizes_before_;
    std::vector<Value> scratch_;
    std::vector<std::vector<std::int64_t>> counts_;
};

}  // namespace crbs

#endif
