#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "crbs/instances.hpp"
#include "crbs/model.hpp"
#include "oracles.hpp"

using namespace crbs;

namespace {

std::string build_error(std::vector<Domain> doms, std::vector<Constraint> cons) {
    std::vector<Variable> vars;
    for (std::size_t i = 0; i < doms.size(); ++i) vars.push_back({static_cast<VarId>(i), {}});
    try {
        build_problem(std::move(vars), std::move(doms), std::move(cons));
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("two variables with one not-equal constraint") {
    ProblemBuilder b;
    b.add_variable(0, 1);
    b.add_variable(0, 1);
    b.not_equal(0, 1);
    const Problem p = std::move(b).build();
    CHECK(p.num_variables() == 2);
    CHECK(p.num_constraints() == 1);
    for (VarId x = 0; x < 2; ++x) {
        REQUIRE(p.constraints_of(x).size() == 1);
        CHECK(p.constraints_of(x)[0] == 0);
    }
    CHECK(p.variables()[1].name == "x1");
}

TEST_CASE("build_problem rejects malformed input") {
    const auto d = Domain::range(0, 2);
    CHECK_THAT(build_error({d, d, d}, {Constraint::binary(PredicateKind::not_equal, 0, 5)}),
               Catch::Matchers::ContainsSubstring("unknown variable"));
    CHECK_THAT(build_error({d, d, d}, {Constraint::table({0, 1, 2}, {{0, 1}}, true)}),
               Catch::Matchers::ContainsSubstring("arity mismatch"));
    CHECK_THAT(build_error({d, Domain{}}, {}), Catch::Matchers::ContainsSubstring("empty initial domain"));
    CHECK_THAT(build_error({d, d}, {Constraint::binary(PredicateKind::not_equal, 1, 1)}),
               Catch::Matchers::ContainsSubstring("repeated variable"));
    CHECK_FALSE(build_error({d, d}, {Constraint::table({0, 1}, {{0, 7}}, false)}).empty());
    CHECK_FALSE(build_error({d}, {Constraint{{0}, BinaryPredicate{}}}).empty());
}

TEST_CASE("adjacency is the inverse of the scopes") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Problem p = oracle::random_problem(rng);
        for (VarId x = 0; x < static_cast<VarId>(p.num_variables()); ++x) {
            std::vector<ConstraintId> expected;
            for (ConstraintId c = 0; c < static_cast<ConstraintId>(p.num_constraints()); ++c) {
                const auto& s = p.constraint(c).scope;
                if (std::find(s.begin(), s.end(), x) != s.end()) expected.push_back(c);
            }
            const auto adj = p.constraints_of(x);
            CHECK(std::vector<ConstraintId>(adj.begin(), adj.end()) == expected);
        }
    }
}

TEST_CASE("check_assignment hand cases") {
    const Problem q2 = generate(QueensSpec{2});
    CHECK_FALSE(check_assignment(q2, std::vector<Value>{0, 1}));

    const Problem q4 = generate(QueensSpec{4});
    CHECK(check_assignment(q4, std::vector<Value>{1, 3, 0, 2}));

    ProblemBuilder b;
    b.add_variable(0, 5);
    b.add_variable(0, 5);
    b.not_equal(0, 1);
    const Problem ne = std::move(b).build();
    CHECK_FALSE(check_assignment(ne, std::vector<Value>{3, 3}));
    CHECK(check_assignment(ne, std::vector<Value>{3, 4}));
    CHECK_THROWS_AS(check_assignment(ne, std::vector<Value>{3}), std::invalid_argument);
    CHECK_THROWS_AS(check_assignment(ne, std::vector<Value>{3, 9}), std::invalid_argument);
}

TEST_CASE("4-queens has exactly two solutions under brute force") {
    const Problem q4 = generate(QueensSpec{4});
    std::vector<std::vector<Value>> sols;
    oracle::enumerate(oracle::initial(q4), [&](const std::vector<Value>& a) {
        if (check_assignment(q4, a)) sols.push_back(a);
        return true;
    });
    CHECK(sols == std::vector<std::vector<Value>>{{2, 0, 3, 1}, {1, 3, 0, 2}});
}

TEST_CASE("check_assignment agrees with the oracle and ignores constraint order") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Problem p = oracle::random_problem(rng, 5, 3);
        auto cons = p.constraints();
        std::shuffle(cons.begin(), cons.end(), rng);
        const Problem shuffled = build_problem(p.variables(), p.initial_domains(), cons);
        oracle::enumerate(oracle::initial(p), [&](const std::vector<Value>& a) {
            const bool expected = oracle::satisfies(p, a);
            CHECK(check_assignment(p, a) == expected);
            CHECK(check_assignment(shuffled, a) == expected);
            return true;
        });
    }
}

TEST_CASE("domain removals round-trip through marks") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Value> init;
        const int size = 1 + static_cast<int>(rng() % 12);
        for (int k = 0; k < size; ++k) init.push_back(static_cast<Value>(rng() % 40) - 20);
        Domain d(init);
        std::sort(init.begin(), init.end());
        init.erase(std::unique(init.begin(), init.end()), init.end());
        CHECK(d.values() == init);

        // Random removals, then nested marks with more removals, unwound in reverse.
        std::vector<std::pair<std::size_t, Domain>> snapshots;
        for (int level = 0; level < 4; ++level) {
            snapshots.emplace_back(d.mark(), d);
            const int removals = static_cast<int>(rng() % 4);
            for (int r = 0; r < removals && !d.empty(); ++r) {
                const Value v = d.at(rng() % d.size());
                CHECK(d.remove(v));
                CHECK_FALSE(d.contains(v));
                CHECK_FALSE(d.remove(v));
            }
        }
        while (!snapshots.empty()) {
            d.restore_to(snapshots.back().first);
            CHECK(d == snapshots.back().second);
            CHECK(d.values() == snapshots.back().second.values());
            snapshots.pop_back();
        }
        CHECK(d.values() == init);
    }
}

TEST_CASE("domain restore undoes single removals in reverse order") {
    Domain d = Domain::range(-2, 3);
    d.remove(0);
    d.remove(3);
    CHECK(d.values() == std::vector<Value>{-2, -1, 1, 2});
    CHECK(d.min() == -2);
    CHECK(d.max() == 2);
    CHECK_THROWS_AS(d.restore(0), std::logic_error);
    d.restore(3);
    d.restore(0);
    CHECK(d.values() == std::vector<Value>{-2, -1, 0, 1, 2, 3});
    CHECK_FALSE(d.contains(1LL << 40));
    CHECK(d.universe_index(7) == -1);
}
