#include "crbs/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace crbs {

bool BinaryPredicate::accepts(Value x, Value y) const {
    const std::int64_t a = x;
    const std::int64_t b = y;
    switch (kind) {
        case PredicateKind::not_equal:
            return a != b;
        case PredicateKind::not_equal_offset:
            return a != b + offset;
        case PredicateKind::abs_diff_not_equal:
            return std::llabs(a - b) != offset;
        case PredicateKind::equal:
            return a == b;
        case PredicateKind::less_than:
            return a < b;
    }
    return false;
}

bool Constraint::accepts(std::span<const Value> tuple) const {
    if (const auto* pred = std::get_if<BinaryPredicate>(&relation)) {
        return pred->accepts(tuple[0], tuple[1]);
    }
    const auto& table = std::get<Table>(relation);
    const bool listed = std::binary_search(
        table.tuples.begin(), table.tuples.end(), tuple,
        [](const auto& a, const auto& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); });
    return listed == table.positive;
}

Constraint Constraint::binary(PredicateKind kind, VarId x, VarId y, Value offset) {
    return Constraint{{x, y}, BinaryPredicate{kind, offset}};
}

Constraint Constraint::table(std::vector<VarId> scope, std::vector<std::vector<Value>> tuples, bool positive) {
    return Constraint{std::move(scope), Table{positive, std::move(tuples)}};
}

Problem build_problem(std::vector<Variable> variables, std::vector<Domain> domains,
                      std::vector<Constraint> constraints) {
    if (variables.size() != domains.size()) {
        throw std::invalid_argument("variable and domain counts differ");
    }
    const auto n = variables.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (variables[i].id != static_cast<VarId>(i)) {
            throw std::invalid_argument("variable ids must be contiguous from 0");
        }
        if (domains[i].empty()) {
            throw std::invalid_argument("empty initial domain for variable " + std::to_string(i));
        }
        if (variables[i].name.empty()) {
            variables[i].name = "x" + std::to_string(i);
        }
    }

    std::vector<std::vector<ConstraintId>> adjacency(n);
    for (std::size_t c = 0; c < constraints.size(); ++c) {
        auto& con = constraints[c];
        const std::string where = "constraint " + std::to_string(c) + ": ";
        if (con.scope.empty()) {
            throw std::invalid_argument(where + "empty scope");
        }
        for (const VarId x : con.scope) {
            if (x < 0 || static_cast<std::size_t>(x) >= n) {
                throw std::invalid_argument(where + "unknown variable " + std::to_string(x));
            }
        }
        auto sorted = con.scope;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument(where + "repeated variable in scope");
        }
        if (auto* pred = std::get_if<BinaryPredicate>(&con.relation)) {
            if (con.scope.size() != 2) {
                throw std::invalid_argument(where + "arity mismatch: binary predicate needs 2 variables");
            }
            if (pred->kind != PredicateKind::not_equal_offset && pred->kind != PredicateKind::abs_diff_not_equal) {
                pred->offset = 0;
            }
        } else {
            auto& table = std::get<Table>(con.relation);
            for (const auto& tuple : table.tuples) {
                if (tuple.size() != con.scope.size()) {
                    throw std::invalid_argument(where + "arity mismatch: tuple of size " + std::to_string(tuple.size()) +
                                                " over scope of size " + std::to_string(con.scope.size()));
                }
                for (std::size_t p = 0; p < tuple.size(); ++p) {
                    if (domains[static_cast<std::size_t>(con.scope[p])].universe_index(tuple[p]) < 0) {
                        throw std::invalid_argument(where + "tuple value " + std::to_string(tuple[p]) +
                                                    " outside the initial domain");
                    }
                }
            }
            std::sort(table.tuples.begin(), table.tuples.end());
            table.tuples.erase(std::unique(table.tuples.begin(), table.tuples.end()), table.tuples.end());
        }
        for (const VarId x : con.scope) {
            adjacency[static_cast<std::size_t>(x)].push_back(static_cast<ConstraintId>(c));
        }
    }

    Problem p;
    p.variables_ = std::move(variables);
    p.domains_ = std::move(domains);
    p.constraints_ = std::move(constraints);
    p.adjacency_ = std::move(adjacency);
    return p;
}

bool check_assignment(const Problem& problem, std::span<const Value> assignment) {
    if (assignment.size() != problem.num_variables()) {
        throw std::invalid_argument("assignment size differs from variable count");
    }
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (problem.initial_domain(static_cast<VarId>(i)).universe_index(assignment[i]) < 0) {
            throw std::invalid_argument("assigned value outside the initial domain of variable " + std::to_string(i));
        }
    }
    std::vector<Value> tuple;
    for (const auto& c : problem.constraints()) {
        tuple.clear();
        for (const VarId x : c.scope) {
            tuple.push_back(assignment[static_cast<std::size_t>(x)]);
        }
        if (!c.accepts(tuple)) {
            return false;
        }
    }
    return true;
}

VarId ProblemBuilder::add_variable(Domain domain, std::string name) {
    const auto id = static_cast<VarId>(variables_.size());
    variables_.push_back(Variable{id, std::move(name)});
    domains_.push_back(std::move(domain));
    return id;
}

VarId ProblemBuilder::add_variable(Value lo, Value hi, std::string name) {
    return add_variable(Domain::range(lo, hi), std::move(name));
}

ConstraintId ProblemBuilder::add(Constraint c) {
    constraints_.push_back(std::move(c));
    return static_cast<ConstraintId>(constraints_.size() - 1);
}

Problem ProblemBuilder::build() && {
    return build_problem(std::move(variables_), std::move(domains_), std::move(constraints_));
}

}  // namespace crbs
