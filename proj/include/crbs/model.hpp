#ifndef CRBS_MODEL_HPP
#define CRBS_MODEL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "crbs/domain.hpp"

namespace crbs {

using VarId = int;
using ConstraintId = int;

struct Variable {
    VarId id = 0;
    std::string name;

    friend bool operator==(const Variable&, const Variable&) = default;
};

enum class PredicateKind {
    not_equal,           // x != y
    not_equal_offset,    // x != y + k
    abs_diff_not_equal,  // |x - y| != k
    equal,               // x == y
    less_than,           // x < y
};

/// Binary relation over scope [x, y].
struct BinaryPredicate {
    PredicateKind kind = PredicateKind::not_equal;
    Value offset = 0;

    bool accepts(Value x, Value y) const;

    friend bool operator==(const BinaryPredicate&, const BinaryPredicate&) = default;
};

/// Extensional relation. Positive tables list allowed tuples, negative tables forbidden ones.
struct Table {
    bool positive = true;
    std::vector<std::vector<Value>> tuples;

    friend bool operator==(const Table&, const Table&) = default;
};

using Relation = std::variant<BinaryPredicate, Table>;

struct Constraint {
    std::vector<VarId> scope;
    Relation relation;

    /// Whether the relation accepts a tuple given in scope order.
    bool accepts(std::span<const Value> tuple) const;

    static Constraint binary(PredicateKind kind, VarId x, VarId y, Value offset = 0);
    static Constraint table(std::vector<VarId> scope, std::vector<std::vector<Value>> tuples, bool positive);

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/**
 * Validated (C, X, D) triplet. Immutable once built; shareable across threads.
 */
class Problem {
public:
    std::size_t num_variables() const { return variables_.size(); }
    std::size_t num_constraints() const { return constraints_.size(); }

    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Domain>& initial_domains() const { return domains_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    const Domain& initial_domain(VarId x) const { return domains_[static_cast<std::size_t>(x)]; }
    const Constraint& constraint(ConstraintId c) const { return constraints_[static_cast<std::size_t>(c)]; }

    /// Ids of the constraints whose scope contains x, ascending.
    std::span<const ConstraintId> constraints_of(VarId x) const { return adjacency_[static_cast<std::size_t>(x)]; }

    friend bool operator==(const Problem& a, const Problem& b) {
        return a.variables_ == b.variables_ && a.domains_ == b.domains_ && a.constraints_ == b.constraints_;
    }

private:
    friend Problem build_problem(std::vector<Variable>, std::vector<Domain>, std::vector<Constraint>);

    std::vector<Variable> variables_;
    std::vector<Domain> domains_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<ConstraintId>> adjacency_;
};

/**
 * Validates and assembles a problem. Table tuples are sorted and deduplicated.
 * Throws std::invalid_argument on unknown variables, arity mismatches,
 * repeated scope variables, empty domains or tuple values outside the
 * initial domains. Offsets of predicates that do not use one are reset to 0.
 */
Problem build_problem(std::vector<Variable> variables, std::vector<Domain> domains,
                      std::vector<Constraint> constraints);

/// True iff every constraint accepts the projection of the full assignment.
bool check_assignment(const Problem& problem, std::span<const Value> assignment);

/// Incremental construction helper used by the generators and the readers.
class ProblemBuilder {
public:
    VarId add_variable(Domain domain, std::string name = {});
    VarId add_variable(Value lo, Value hi, std::string name = {});
    ConstraintId add(Constraint c);

    ConstraintId not_equal(VarId x, VarId y) { return add(Constraint::binary(PredicateKind::not_equal, x, y)); }

    std::size_t num_variables() const { return variables_.size(); }

    Problem build() &&;

private:
    std::vector<Variable> variables_;
    std::vector<Domain> domains_;
    std::vector<Constraint> constraints_;
};

}  // namespace crbs

#endif
