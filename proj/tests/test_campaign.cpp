#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "crbs/campaign.hpp"

using namespace crbs;

namespace {

RunRow row(std::string family, std::string id, std::string heuristic, std::string status, double time_ms,
           std::int64_t nodes) {
    RunRow r;
    r.family = std::move(family);
    r.instance_id = std::move(id);
    r.heuristic = std::move(heuristic);
    r.status = std::move(status);
    r.time_ms = time_ms;
    r.nodes = nodes;
    return r;
}

CampaignConfig small_config() {
    CampaignConfig c;
    c.instances = {QueensSpec{6}, PigeonholeSpec{4}};
    c.heuristics = {HeuristicConfig{HeuristicKind::crbs_sum}, HeuristicConfig{HeuristicKind::dom_wdeg}};
    c.budget.max_nodes = 100000;
    return c;
}

}  // namespace

TEST_CASE("campaign emits one row per instance and heuristic") {
    const auto rows = run_campaign(small_config());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].instance_id == "queens:n=6");
    CHECK(rows[0].heuristic == "crbs-sum");
    CHECK(rows[1].heuristic == "dom-wdeg");
    CHECK(rows[2].family == "pigeonhole");
    CHECK(rows[0].status == "SAT");
    CHECK(rows[3].status == "UNSAT");

    const auto summary = summarize(rows, heuristic_labels(small_config().heuristics));
    CHECK(summary.families.size() == 2);
    const auto text = format_summary(summary);
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("solved by all (1)"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("Faster than dom-wdeg"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("Second fastest"));
}

TEST_CASE("parallel workers reproduce the sequential node counts") {
    auto config = small_config();
    config.instances.push_back(RandomBinarySpec{15, 5, 0.5, 0.3, 3});
    const auto sequential = run_campaign(config);
    config.workers = 3;
    const auto parallel = run_campaign(config);
    REQUIRE(sequential.size() == parallel.size());
    for (std::size_t i = 0; i < sequential.size(); ++i) {
        CHECK(sequential[i].instance_id == parallel[i].instance_id);
        CHECK(sequential[i].heuristic == parallel[i].heuristic);
        CHECK(sequential[i].nodes == parallel[i].nodes);
        CHECK(sequential[i].status == parallel[i].status);
    }
}

TEST_CASE("timeouts are counted and excluded from the solved-by-all means") {
    const std::vector<RunRow> rows = {
        row("q", "a", "h1", "SAT", 10, 100),    row("q", "a", "h2", "SAT", 20, 200),
        row("q", "b", "h1", "SAT", 30, 300),    row("q", "b", "h2", "TIMEOUT", 1000, 9000),
        row("q", "c", "h1", "UNSAT", 50, 500),  row("q", "c", "h2", "UNSAT", 70, 700),
    };
    const auto s = summarize(rows, {"h1", "h2"});
    REQUIRE(s.families.size() == 1);
    const auto& f = s.families[0];
    CHECK(f.instances == 3);
    CHECK(f.solved_by_all == 2);
    CHECK(f.per_heuristic[1].timeouts == 1);
    CHECK(f.per_heuristic[0].solved_by_all_time_ms == Catch::Approx(30.0));
    CHECK(f.per_heuristic[1].solved_by_all_time_ms == Catch::Approx(45.0));
    CHECK(f.per_heuristic[1].solved_by_all_nodes == Catch::Approx(450.0));
    CHECK(f.per_heuristic[0].mean_time_ms == Catch::Approx(30.0));
    CHECK(s.faster[0][1] == 1);
    CHECK(s.faster[1][0] == 0);
    CHECK(s.fastest == std::vector<int>{1, 0});
    CHECK(s.second_fastest == std::vector<int>{0, 1});
    CHECK_THAT(format_summary(s), Catch::Matchers::ContainsSubstring("1 TO"));
}

TEST_CASE("duplicate heuristics produce identical columns") {
    auto config = small_config();
    config.heuristics = {HeuristicConfig{HeuristicKind::abs}, HeuristicConfig{HeuristicKind::abs}};
    const auto labels = heuristic_labels(config.heuristics);
    CHECK(labels == std::vector<std::string>{"abs", "abs#2"});
    const auto rows = run_campaign(config);
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        CHECK(rows[i].nodes == rows[i + 1].nodes);
        CHECK(rows[i].status == rows[i + 1].status);
    }
    const auto s = summarize(rows, labels, RankBy::nodes);
    CHECK(s.faster[0][1] == 0);
    CHECK(s.faster[1][0] == 0);
}

TEST_CASE("failures become error rows") {
    CampaignConfig config;
    config.instances = {NativeFileSpec{"/nonexistent/instance.csp"}, QueensSpec{5}};
    config.heuristics = {HeuristicConfig{}};
    const auto rows = run_campaign(config);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].status == "ERROR");
    CHECK_FALSE(rows[0].error.empty());
    CHECK(rows[1].status == "SAT");
}

TEST_CASE("invalid campaign configurations") {
    CampaignConfig empty;
    CHECK_THROWS_AS(validate(empty), std::invalid_argument);
    auto c = small_config();
    c.budget.max_nodes = 0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = small_config();
    c.budget.time_limit_s = -1.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = small_config();
    c.theta_grid = {0.5, 1.5};
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("csv round trip") {
    auto rows = run_campaign(small_config());
    rows[0].instance_id = "odd,\"id\"";
    std::stringstream buf;
    write_csv(buf, rows);
    CHECK(buf.str().rfind("family,instance_id,heuristic,theta,status,nodes,failures,restarts,time_ms,seed\n", 0) == 0);
    const auto back = read_csv(buf);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].instance_id == rows[i].instance_id);
        CHECK(back[i].heuristic == rows[i].heuristic);
        CHECK(back[i].theta == rows[i].theta);
        CHECK(back[i].status == rows[i].status);
        CHECK(back[i].nodes == rows[i].nodes);
        CHECK(back[i].failures == rows[i].failures);
        CHECK(back[i].restarts == rows[i].restarts);
        CHECK(back[i].seed == rows[i].seed);
    }
    std::istringstream bad("not,a,header\n");
    CHECK_THROWS(read_csv(bad));
}

TEST_CASE("theta sweep") {
    CampaignConfig config;
    config.instances = quasigroup_suite(5, 3, 6, 16);
    config.budget.max_nodes = 20000;
    const auto sweep = run_theta_sweep(config);
    REQUIRE(sweep.rows.size() == 11);
    CHECK(sweep.runs.size() == 33);
    for (std::size_t t = 0; t < 11; ++t) CHECK(sweep.rows[t].theta == Catch::Approx(t / 10.0));

    // theta = 0 row against an ordinary campaign at theta = 0.
    CampaignConfig direct = config;
    direct.heuristics = {HeuristicConfig{HeuristicKind::crbs_sum, 0.0}};
    const auto rows = run_campaign(direct);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(sweep.runs[i].nodes == rows[i].nodes);

    std::ostringstream csv;
    write_sweep_csv(csv, sweep.rows);
    CHECK(csv.str().rfind("theta,mean_time_ms,mean_nodes,solved,timeouts,instances\n", 0) == 0);

    // One instance, one theta: the single row is run_single.
    CampaignConfig single;
    single.instances = {QueensSpec{10}};
    single.theta_grid = {0.4};
    const auto one = run_theta_sweep(single);
    REQUIRE(one.rows.size() == 1);
    const auto direct_row = run_single(QueensSpec{10}, HeuristicConfig{HeuristicKind::crbs_sum, 0.4},
                                       RestartPolicy::geometric(), {});
    CHECK(one.rows[0].mean_nodes == static_cast<double>(direct_row.nodes));
}
