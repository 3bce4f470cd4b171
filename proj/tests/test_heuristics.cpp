#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "crbs/heuristics.hpp"
#include "crbs/instances.hpp"
#include "oracles.hpp"

using namespace crbs;

namespace {

using Rows = std::vector<std::vector<long long>>;

Rows dense(const CorrelationMatrix& m) {
    Rows a(m.size(), std::vector<long long>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) a[i][j] = m.at(static_cast<VarId>(i), static_cast<VarId>(j));
    return a;
}

std::vector<VarId> ids(std::initializer_list<VarId> v) { return v; }

Problem free_vars(std::vector<int> sizes) {
    ProblemBuilder b;
    for (const int s : sizes) b.add_variable(0, s - 1);
    return std::move(b).build();
}

/// Matrix with arbitrary contents, reached through the public update rules.
CorrelationMatrix random_matrix(std::mt19937_64& rng, int n) {
    CorrelationMatrix m(static_cast<std::size_t>(n));
    for (const auto& e : oracle::random_events(rng, n, 40)) {
        if (e.conflict) m.update_conflict(e.var);
        else m.update_no_conflict(e.var, e.updated, e.unchanged);
    }
    return m;
}

}  // namespace

TEST_CASE("no-conflict update hand cases") {
    CorrelationMatrix m(3);
    m.update_no_conflict(0, ids({1}), ids({2}));
    CHECK(dense(m) == Rows{{-1, 1, -1}, {1, 0, 0}, {-1, 0, 0}});
    m.update_no_conflict(0, ids({1}), ids({2}));
    CHECK(m.at(0, 1) == 2);
    CHECK(m.at(0, 2) == -2);
    CHECK(m.at(0, 0) == -2);

    CorrelationMatrix z(3);
    z.update_no_conflict(0, ids({}), ids({1, 2}));
    CHECK(dense(z) == Rows{{-1, -1, -1}, {-1, 0, 0}, {-1, 0, 0}});
}

TEST_CASE("conflict update hand cases") {
    CorrelationMatrix m(3);
    m.update_conflict(1);
    CHECK(dense(m) == Rows{{0, 1, 0}, {1, 2, 1}, {0, 1, 0}});

    CorrelationMatrix c(3);
    c.update_no_conflict(0, ids({1}), ids({2}));
    c.update_conflict(0);
    CHECK(c.at(0, 1) == 2);
    CHECK(c.at(0, 2) == 0);
    CHECK(c.at(0, 0) == 1);

    CorrelationMatrix two(2);
    two.update_conflict(0);
    CHECK(dense(two) == Rows{{2, 1}, {1, 0}});
}

TEST_CASE("repeated conflicts grow linearly") {
    CorrelationMatrix m(5);
    for (int k = 1; k <= 7; ++k) {
        m.update_conflict(3);
        CHECK(m.at(3, 3) == 2 * k);
        for (VarId j = 0; j < 5; ++j)
            if (j != 3) CHECK(m.at(3, j) == k);
    }
}

TEST_CASE("update preconditions") {
    CorrelationMatrix m(3);
    CHECK_THROWS_AS(m.update_no_conflict(0, ids({0}), ids({})), std::invalid_argument);
    CHECK_THROWS_AS(m.update_no_conflict(0, ids({1}), ids({1})), std::invalid_argument);
    CHECK_THROWS_AS(m.update_conflict(3), std::invalid_argument);
    PropagationReport partial{0, {1}, {}, false, std::nullopt};
    CHECK_THROWS_AS(m.update_no_conflict(0, partial), std::invalid_argument);
    PropagationReport full{0, {1}, {2}, false, std::nullopt};
    m.update_no_conflict(0, full);
    CHECK(m.at(0, 2) == -1);
}

TEST_CASE("incremental matrix equals the straight-line replay") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const auto events = oracle::random_events(rng, n, static_cast<int>(rng() % 300));
        CorrelationMatrix m(static_cast<std::size_t>(n));
        std::uint64_t applied = 0;
        for (const auto& e : events) {
            if (e.conflict) m.update_conflict(e.var);
            else m.update_no_conflict(e.var, e.updated, e.unchanged);
            ++applied;
            REQUIRE(m.is_symmetric());
        }
        const Rows a = dense(m);
        CHECK(a == oracle::replay(n, events));
        for (VarId i = 0; i < n; ++i) {
            long long sum = 0;
            for (VarId j = 0; j < n; ++j) {
                sum += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                CHECK(static_cast<std::uint64_t>(std::llabs(m.at(i, j))) <= 2 * applied);
            }
            CHECK(m.row_sum(i) == sum);
        }
    }
}

TEST_CASE("crbs-sum score") {
    CorrelationMatrix zero(4);
    for (VarId i = 0; i < 4; ++i) CHECK(crbs_sum_score(zero, i, ids({}), ids({0, 1, 2, 3}), 0.1) == 0.0);

    // a[0][1]=4, a[0][2]=2, a[0][0]=-1, reached through partial no-conflict updates.
    CorrelationMatrix m(3);
    for (int k = 0; k < 4; ++k) m.update_no_conflict(1, ids({0}), ids({}));
    for (int k = 0; k < 2; ++k) m.update_no_conflict(2, ids({0}), ids({}));
    m.update_no_conflict(0, ids({}), ids({}));
    REQUIRE(m.at(0, 1) == 4);
    REQUIRE(m.at(0, 2) == 2);
    REQUIRE(m.at(0, 0) == -1);

    CHECK(crbs_sum_score(m, 0, ids({1}), ids({0, 2}), 0.1) == 4 + 0.1 * (-1 + 2));
    CHECK(crbs_sum_score(m, 0, ids({1}), ids({0, 2}), 0.1) == Catch::Approx(4.1));
    CHECK(crbs_sum_score(m, 0, ids({1}), ids({0, 2}), 0.0) == 4.0);
}

TEST_CASE("crbs-max score") {
    CorrelationMatrix m(3);
    // a[0][1] = -3, a[0][2] = 5
    for (int k = 0; k < 3; ++k) m.update_no_conflict(1, ids({}), ids({0}));
    for (int k = 0; k < 5; ++k) m.update_no_conflict(2, ids({0}), ids({}));
    CHECK(crbs_max_score(m, 0, ids({1, 2})) == 5.0);
    CHECK(crbs_max_score(m, 0, ids({})) == 0.0);

    CorrelationMatrix neg(3);
    neg.update_no_conflict(1, ids({}), ids({0, 2}));
    neg.update_no_conflict(1, ids({}), ids({0, 2}));
    CHECK(crbs_max_score(neg, 0, ids({1})) == -2.0);
}

TEST_CASE("theta=0 selection ignores future-future entries") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        std::vector<int> sizes;
        for (int i = 0; i < n; ++i) sizes.push_back(2 + static_cast<int>(rng() % 3));
        const Problem p = free_vars(sizes);
        SearchState s(p);
        std::vector<VarId> future;
        for (VarId x = 0; x < n; ++x) {
            if (rng() % 3 == 0 && x + 1 < n) s.decide_and_propagate({x, 0, Polarity::assign});
            else future.push_back(x);
        }
        const auto base = random_matrix(rng, n);
        auto perturbed = base;
        for (int k = 0; k < 20; ++k) {
            const VarId i = future[rng() % future.size()];
            const VarId j = future[rng() % future.size()];
            if (i == j) perturbed.update_no_conflict(i, ids({}), ids({}));
            else if (rng() % 2) perturbed.update_no_conflict(i, std::vector<VarId>{j}, ids({}));
            else perturbed.update_no_conflict(i, ids({}), std::vector<VarId>{j});
        }
        Heuristic h(p, {HeuristicKind::crbs_sum, 0.0});
        h.set_matrix(base);
        const auto before = h.select_variable(s);
        h.set_matrix(perturbed);
        CHECK(h.select_variable(s) == before);
    }
}

TEST_CASE("crbs-max only reads past columns") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        std::vector<VarId> past, future;
        for (VarId x = 0; x < n; ++x) (rng() % 2 ? past : future).push_back(x);
        if (future.empty()) future.push_back(past.back()), past.pop_back();
        const auto base = random_matrix(rng, n);
        auto perturbed = base;
        for (int k = 0; k < 20; ++k) {
            // Symmetric updates touch a[i][j] and a[j][i], so both ends stay outside the past set.
            const VarId i = future[rng() % future.size()];
            const VarId j = future[rng() % future.size()];
            if (i == j) perturbed.update_no_conflict(i, ids({}), ids({}));
            else if (rng() % 2) perturbed.update_no_conflict(i, std::vector<VarId>{j}, ids({}));
            else perturbed.update_no_conflict(i, ids({}), std::vector<VarId>{j});
        }
        for (const VarId x : future) CHECK(crbs_max_score(base, x, past) == crbs_max_score(perturbed, x, past));
    }
}

TEST_CASE("selection ratios and tie-breaking") {
    SECTION("dom picks the smallest domain, lowest id on ties") {
        const Problem p = free_vars({3, 2, 2});
        SearchState s(p);
        Heuristic h(p, {HeuristicKind::dom});
        CHECK(h.select_variable(s) == 1);
    }
    SECTION("equal scores and domains give the lowest id") {
        const Problem p = free_vars({2, 2, 2});
        SearchState s(p);
        for (const auto kind : all_heuristics) {
            Heuristic h(p, {kind});
            CHECK(h.select_variable(s) == 0);
        }
    }
    SECTION("crbs-sum divides the score by the domain size") {
        // Assigning x2 prunes one value from x0 and x1, so both gain the same correlation with x2.
        ProblemBuilder b;
        b.add_variable(0, 2);
        b.add_variable(0, 3);
        b.add_variable(0, 1);
        b.not_equal(2, 0);
        b.not_equal(2, 1);
        const Problem p = std::move(b).build();
        SearchState s(p);
        Heuristic h(p, {HeuristicKind::crbs_sum, 0.1});
        const Decision d{2, 0, Polarity::assign};
        h.observe(d, s.decide_and_propagate(d), s);
        REQUIRE(s.domain(0).size() == 2);
        REQUIRE(s.domain(1).size() == 3);
        CHECK(h.score(0, s) == h.score(1, s));
        CHECK(h.score(0, s) > 0);
        CHECK(h.select_variable(s) == 0);
    }
    SECTION("no future variable left") {
        const Problem p = free_vars({1, 1});
        SearchState s(p);
        s.decide_and_propagate({0, 0, Polarity::assign});
        s.decide_and_propagate({1, 0, Polarity::assign});
        Heuristic h(p, {HeuristicKind::dom_wdeg});
        CHECK_FALSE(h.select_variable(s));
    }
}

TEST_CASE("heuristic score matches the free scoring functions") {
    std::mt19937_64 rng(8);
    const Problem p = generate(QueensSpec{6});
    for (const auto kind : {HeuristicKind::crbs_sum, HeuristicKind::crbs_max}) {
        Heuristic h(p, {kind, 0.3});
        SearchState s(p);
        s.propagate_root();
        for (int step = 0; step < 40; ++step) {
            std::vector<VarId> past(s.past().begin(), s.past().end());
            std::vector<VarId> future;
            for (VarId x = 0; x < 6; ++x)
                if (!s.is_past(x)) future.push_back(x);
            if (future.empty() || (s.depth() > 0 && rng() % 3 == 0)) {
                if (s.depth() == 0) break;
                s.backtrack();
                continue;
            }
            for (const VarId x : future) {
                const double expected = kind == HeuristicKind::crbs_sum
                                            ? crbs_sum_score(h.matrix(), x, past, future, 0.3)
                                            : crbs_max_score(h.matrix(), x, past);
                CHECK(h.score(x, s) == Catch::Approx(expected).margin(1e-12));
            }
            const VarId x = future[rng() % future.size()];
            const Decision d{x, s.domain(x).min(), Polarity::assign};
            const auto r = s.decide_and_propagate(d);
            h.observe(d, r, s);
            if (r.conflict) s.backtrack();
        }
        CHECK(h.matrix().updates_applied() > 0);
        CHECK(h.matrix().is_symmetric());
    }
}

TEST_CASE("wdeg weights") {
    WdegState w(5);
    w.on_wipeout(3);
    CHECK(w.weight(3) == 2);
    for (ConstraintId c : {0, 1, 2, 4}) CHECK(w.weight(c) == 1);
    w.on_wipeout(0);
    w.on_wipeout(0);
    CHECK(w.weight(0) == 3);
    CHECK_THROWS_AS(w.on_wipeout(5), std::invalid_argument);

    ProblemBuilder b;
    for (int i = 0; i < 3; ++i) b.add_variable(0, 2);
    b.not_equal(0, 1);
    b.not_equal(0, 2);
    const Problem p = std::move(b).build();
    WdegState pw(2);
    pw.on_wipeout(0);
    pw.on_wipeout(0);
    SearchState s(p);
    CHECK(pw.wdeg(0, s) == 4);
    s.decide_and_propagate({2, 0, Polarity::assign});
    CHECK(pw.wdeg(0, s) == 3);
}

TEST_CASE("activity updates") {
    const Problem p = free_vars({2, 2, 2});
    SearchState s(p);
    AbsState a(3);
    a.update(PropagationReport{0, {1}, {2}, false, std::nullopt}, 0.999, s);
    CHECK(a.activity(0) == 0.0);
    CHECK(a.activity(1) == 1.0);
    CHECK(a.activity(2) == 0.0);

    a.update(PropagationReport{0, {1}, {}, false, std::nullopt}, 0.5, s);
    a.update(PropagationReport{0, {2}, {}, false, std::nullopt}, 0.5, s);
    REQUIRE(a.activity(1) == 2.0);
    REQUIRE(a.activity(2) == 1.0);
    a.update(PropagationReport{0, {1}, {2}, false, std::nullopt}, 0.5, s);
    CHECK(a.activity(1) == 3.0);
    CHECK(a.activity(2) == 0.5);

    // Past variables in N keep their activity.
    s.decide_and_propagate({2, 0, Polarity::assign});
    a.update(PropagationReport{0, {}, {1, 2}, false, std::nullopt}, 0.5, s);
    CHECK(a.activity(1) == 1.5);
    CHECK(a.activity(2) == 0.5);
}

TEST_CASE("abs selects the largest activity per domain value") {
    const Problem p = free_vars({2, 2, 2});
    SearchState s(p);
    Heuristic h(p, {HeuristicKind::abs, 0.1, 0.5});
    // Drive activities to [0, 3, 0.5] through observe().
    for (int k = 0; k < 2; ++k) h.observe({0, 0, Polarity::refute}, {0, {1}, {2}, false, std::nullopt}, s);
    h.observe({0, 0, Polarity::refute}, {0, {2}, {1}, false, std::nullopt}, s);
    h.observe({0, 0, Polarity::refute}, {0, {1}, {2}, false, std::nullopt}, s);
    CHECK(h.abs().activity(1) == 2.0);
    CHECK(h.abs().activity(2) == 0.5);
    CHECK(h.select_variable(s) == 1);
}

TEST_CASE("parameter validation and names") {
    const Problem p = free_vars({2});
    CHECK_THROWS_AS(Heuristic(p, {HeuristicKind::crbs_sum, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(Heuristic(p, {HeuristicKind::abs, 0.1, -0.1}), std::invalid_argument);
    for (const auto kind : all_heuristics) CHECK(parse_heuristic(to_string(kind)) == kind);
    CHECK(parse_heuristic("dom/wdeg") == HeuristicKind::dom_wdeg);
    CHECK_THROWS_AS(parse_heuristic("ibs"), std::invalid_argument);
}

TEST_CASE("matrix learning fires on assignments only") {
    const Problem p = generate(QueensSpec{5});
    SearchState s(p);
    Heuristic h(p, {HeuristicKind::crbs_sum});
    const Decision refute{0, 0, Polarity::refute};
    const auto r = s.decide_and_propagate(refute);
    h.observe(refute, r, s);
    CHECK(h.matrix().updates_applied() == 0);
    const Decision assign{1, s.domain(1).min(), Polarity::assign};
    const auto r2 = s.decide_and_propagate(assign);
    h.observe(assign, r2, s);
    CHECK(h.matrix().updates_applied() == 1);
}

TEST_CASE("excluding past variables leaves their correlations untouched") {
    const Problem p = free_vars({2, 2, 2});
    for (const bool include : {true, false}) {
        SearchState s(p);
        HeuristicConfig cfg{HeuristicKind::crbs_sum};
        cfg.correlate_past = include;
        Heuristic h(p, cfg);
        Decision d{0, 0, Polarity::assign};
        h.observe(d, s.decide_and_propagate(d), s);
        d = {1, 0, Polarity::assign};
        h.observe(d, s.decide_and_propagate(d), s);
        CHECK(h.matrix().at(1, 0) == (include ? -2 : -1));
        CHECK(h.matrix().at(1, 2) == -1);
    }
}
