#ifndef CRBS_HEURISTICS_HPP
#define CRBS_HEURISTICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "crbs/model.hpp"
#include "crbs/propagate.hpp"

namespace crbs {

enum class HeuristicKind { crbs_sum, crbs_max, dom, dom_deg, dom_wdeg, abs };

inline constexpr HeuristicKind all_heuristics[] = {HeuristicKind::crbs_sum, HeuristicKind::crbs_max,
                                                   HeuristicKind::dom,      HeuristicKind::dom_deg,
                                                   HeuristicKind::dom_wdeg, HeuristicKind::abs};

std::string_view to_string(HeuristicKind kind);

/// Accepts the names produced by to_string ("crbs-sum", "dom-wdeg", ...).
HeuristicKind parse_heuristic(std::string_view name);

struct HeuristicConfig {
    HeuristicKind kind = HeuristicKind::crbs_sum;
    double theta = 0.1;   // future-correlation weight, crbs-sum only
    double gamma = 0.999; // activity decay, abs only
    /// When false, past variables are left out of the unchanged set before
    /// correlations are updated after a successful assignment.
    bool correlate_past = true;
};

/**
 * Symmetric n x n integer matrix of pairwise correlations, zero at
 * construction. Entries only ever move by +-1 (+2 on the diagonal after a
 * conflict), so int64 cannot overflow in practice.
 */
class CorrelationMatrix {
public:
    explicit CorrelationMatrix(std::size_t n);

    std::size_t size() const { return n_; }
    std::int64_t at(VarId i, VarId j) const { return a_[index(i, j)]; }

    /// Sum of row i over all columns, diagonal included.
    std::int64_t row_sum(VarId i) const { return row_sum_[static_cast<std::size_t>(i)]; }

    /// Successful assignment of i. The report must cover exactly X \ {i}.
    void update_no_conflict(VarId i, const PropagationReport& report);

    /// Same rule over explicit sets; they must be disjoint and exclude i but need not cover X \ {i}.
    void update_no_conflict(VarId i, std::span<const VarId> updated, std::span<const VarId> unchanged);

    /// Assignment of i ended in a conflict.
    void update_conflict(VarId i);

    std::uint64_t updates_applied() const { return updates_; }

    bool is_symmetric() const;

    friend bool operator==(const CorrelationMatrix&, const CorrelationMatrix&) = default;

private:
    std::size_t index(VarId i, VarId j) const { return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j); }
    void add_pair(VarId i, VarId j, std::int64_t delta);
    void check_var(VarId i) const;

    std::size_t n_;
    std::vector<std::int64_t> a_;
    std::vector<std::int64_t> row_sum_;
    std::uint64_t updates_ = 0;
};

/// Past correlation plus theta times future correlation of i; the future sum includes a[i][i].
double crbs_sum_score(const CorrelationMatrix& m, VarId i, std::span<const VarId> past,
                      std::span<const VarId> future, double theta);

/// Largest correlation of i with a past variable, 0 when there is none.
double crbs_max_score(const CorrelationMatrix& m, VarId i, std::span<const VarId> past);

/// Constraint weights, all 1 initially, bumped on every wipeout a constraint causes.
class WdegState {
public:
    explicit WdegState(std::size_t num_constraints) : weight_(num_constraints, 1) {}

    void on_wipeout(ConstraintId c);
    std::int64_t weight(ConstraintId c) const { return weight_[static_cast<std::size_t>(c)]; }

    /// Sum of weights of constraints on x that involve at least one other future variable.
    std::int64_t wdeg(VarId x, const SearchState& state) const;

private:
    std::vector<std::int64_t> weight_;
};

/// Per-variable activity counters.
class AbsState {
public:
    explicit AbsState(std::size_t n) : activity_(n, 0.0) {}

    /// U gains 1; future variables in N decay by gamma. Past variables are left as is.
    void update(const PropagationReport& report, double gamma, const SearchState& state);

    double activity(VarId x) const { return activity_[static_cast<std::size_t>(x)]; }
    std::span<const double> activities() const { return activity_; }

private:
    std::vector<double> activity_;
};

/**
 * One variable-ordering heuristic with its learned state. The learned state
 * (matrix, weights, activities) is never rolled back by backtracking or
 * restarts.
 */
class Heuristic {
public:
    Heuristic(const Problem& problem, HeuristicConfig config);

    const HeuristicConfig& config() const { return config_; }

    /**
     * Best future variable, smallest id on exact ties; nullopt when every
     * variable is past. crbs-* and abs maximise score/|dom|; dom, dom-deg and
     * dom-wdeg minimise |dom|, |dom|/deg and |dom|/wdeg.
     */
    std::optional<VarId> select_variable(const SearchState& state) const;

    /// Feeds one decision's propagation outcome into the learned state.
    void observe(const Decision& decision, const PropagationReport& report, const SearchState& state);

    /// Score f(x) used by the maximising heuristics (crbs-sum, crbs-max, abs).
    double score(VarId x, const SearchState& state) const;

    const CorrelationMatrix& matrix() const { return matrix_; }
    /// Replaces the learned correlations, e.g. to warm-start a crbs-* heuristic. Sizes must match.
    void set_matrix(CorrelationMatrix matrix);
    const WdegState& wdeg() const { return wdeg_; }
    const AbsState& abs() const { return abs_; }

private:
    const Problem* problem_;
    HeuristicConfig config_;
    CorrelationMatrix matrix_;
    WdegState wdeg_;
    AbsState abs_;
    mutable std::vector<VarId> filtered_;
};

}  // namespace crbs

#endif
