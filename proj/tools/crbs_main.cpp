// crbs: run single instances, heuristic campaigns and theta sweeps.
//
//   crbs solve --family queens --n 8 --heuristic crbs-sum
//   crbs campaign --suite desk --max-nodes 20000 --csv runs.csv
//   crbs sweep --suite quasigroup --csv sweep.csv

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "crbs/campaign.hpp"
#include "crbs/instances.hpp"
#include "crbs/search.hpp"

namespace {

constexpr int exit_error = 3;

struct SearchFlags {
    std::string heuristic = "crbs-sum";
    std::string heuristics;
    double theta = 0.1;
    double gamma = 0.999;
    bool exclude_past = false;
    double timeout_s = 0.0;
    long long max_nodes = 0;
    std::string restart = "10:1.1";
    int workers = 1;
};

struct InstanceFlags {
    std::string family;
    int n = 8;
    int order = 5;
    int holes = 10;
    int k = 3;
    int d = 5;
    double p1 = 0.5;
    double p2 = 0.3;
    double p = 0.3;
    int vertices = 20;
    int myciel = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> specs;
    std::vector<std::string> files;
    std::vector<std::string> dimacs;
    std::string instances_file;
    std::string suite;
    int per_family = 5;
};

void add_search_flags(CLI::App* app, SearchFlags& f, bool single) {
    if (single) {
        app->add_option("--heuristic", f.heuristic, "crbs-sum, crbs-max, dom, dom-deg, dom-wdeg or abs");
    } else {
        app->add_option("--heuristics", f.heuristics, "comma-separated heuristics (default: all six)");
    }
    app->add_option("--theta", f.theta, "crbs-sum future weight")->check(CLI::Range(0.0, 1.0));
    app->add_option("--gamma", f.gamma, "abs activity decay")->check(CLI::Range(0.0, 1.0));
    app->add_flag("--exclude-past", f.exclude_past, "leave past variables out of correlation decrements");
    app->add_option("--timeout-s", f.timeout_s, "wall-clock budget per run in seconds")->check(CLI::PositiveNumber);
    app->add_option("--max-nodes", f.max_nodes, "node budget per run")->check(CLI::PositiveNumber);
    app->add_option("--restart", f.restart, "geometric restarts 'init:rho' or 'off'");
    if (!single) {
        app->add_option("--workers", f.workers, "parallel runs")->check(CLI::PositiveNumber);
    }
}

void add_instance_flags(CLI::App* app, InstanceFlags& f, bool single) {
    app->add_option("--family", f.family, "queens, latin, quasigroup, coloring, random-binary, pigeonhole");
    app->add_option("--n", f.n, "queens size, pigeonhole holes, random-binary variables");
    app->add_option("--order", f.order, "latin / quasigroup order");
    app->add_option("--holes", f.holes, "quasigroup holes");
    app->add_option("--k", f.k, "colors");
    app->add_option("--d", f.d, "random-binary domain size");
    app->add_option("--p1", f.p1, "random-binary density");
    app->add_option("--p2", f.p2, "random-binary tightness");
    app->add_option("--p", f.p, "random graph edge probability");
    app->add_option("--vertices", f.vertices, "random graph vertices");
    app->add_option("--myciel", f.myciel, "use the Mycielski graph of this index for coloring");
    app->add_option("--seed", f.seed, "generator seed");
    app->add_option("--instance", f.specs, "instance spec such as queens:n=8 (repeatable)");
    app->add_option("--file", f.files, "native instance file (repeatable)");
    app->add_option("--dimacs", f.dimacs, "DIMACS graph to color with --k colors (repeatable)");
    if (!single) {
        app->add_option("--instances-file", f.instances_file, "file with one instance spec per line");
        app->add_option("--suite", f.suite, "built-in suite: desk or quasigroup");
        app->add_option("--per-family", f.per_family, "instances per family in built-in suites")->check(CLI::PositiveNumber);
    }
}

crbs::InstanceSpec family_spec(const InstanceFlags& f) {
    using namespace crbs;
    if (f.family == "queens") return QueensSpec{f.n};
    if (f.family == "pigeonhole") return PigeonholeSpec{f.n};
    if (f.family == "latin") return LatinSpec{f.order, {}};
    if (f.family == "quasigroup") return QuasigroupSpec{f.order, f.holes, f.seed};
    if (f.family == "random-binary") return RandomBinarySpec{f.n, f.d, f.p1, f.p2, f.seed};
    if (f.family == "coloring") {
        if (f.myciel > 0) return ColoringSpec{MycielGraph{f.myciel}, f.k};
        return ColoringSpec{RandomGraph{f.vertices, f.p, f.seed}, f.k};
    }
    throw std::invalid_argument("unknown family '" + f.family + "'");
}

std::vector<crbs::InstanceSpec> collect_instances(const InstanceFlags& f, const std::string& default_suite) {
    using namespace crbs;
    std::vector<InstanceSpec> out;
    if (!f.family.empty()) out.push_back(family_spec(f));
    for (const auto& s : f.specs) out.push_back(parse_instance_spec(s));
    for (const auto& path : f.files) out.push_back(NativeFileSpec{path});
    for (const auto& path : f.dimacs) out.push_back(ColoringSpec{DimacsGraph{path}, f.k});
    if (!f.instances_file.empty()) {
        std::ifstream in(f.instances_file);
        if (!in) throw std::runtime_error("cannot open '" + f.instances_file + "'");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            out.push_back(parse_instance_spec(line));
        }
    }
    const std::string suite = !f.suite.empty() ? f.suite : (out.empty() ? default_suite : "");
    if (suite == "desk") {
        auto s = desk_suite(f.seed, f.per_family);
        out.insert(out.end(), s.begin(), s.end());
    } else if (suite == "quasigroup") {
        auto s = quasigroup_suite(f.seed, f.per_family);
        out.insert(out.end(), s.begin(), s.end());
    } else if (!suite.empty()) {
        throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    return out;
}

crbs::HeuristicConfig heuristic_config(const SearchFlags& f, const std::string& name) {
    crbs::HeuristicConfig h;
    h.kind = crbs::parse_heuristic(name);
    h.theta = f.theta;
    h.gamma = f.gamma;
    h.correlate_past = !f.exclude_past;
    return h;
}

crbs::Budget budget_of(const SearchFlags& f) {
    crbs::Budget b;
    if (f.timeout_s > 0) b.time_limit_s = f.timeout_s;
    if (f.max_nodes > 0) b.max_nodes = f.max_nodes;
    return b;
}

std::vector<crbs::HeuristicConfig> heuristic_list(const SearchFlags& f) {
    std::vector<crbs::HeuristicConfig> out;
    if (f.heuristics.empty()) {
        for (const auto kind : crbs::all_heuristics) out.push_back(heuristic_config(f, std::string(crbs::to_string(kind))));
        return out;
    }
    std::stringstream ss(f.heuristics);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (!name.empty()) out.push_back(heuristic_config(f, name));
    }
    return out;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

int run_solve(const InstanceFlags& inst, const SearchFlags& search, const std::string& csv, bool print_solution) {
    const auto instances = collect_instances(inst, "");
    if (instances.size() != 1) throw std::invalid_argument("solve needs exactly one instance");
    const auto& spec = instances.front();
    const auto h = heuristic_config(search, search.heuristic);
    const auto restart = crbs::parse_restart_policy(search.restart);

    const crbs::Problem problem = crbs::generate(spec);
    if (const auto* c = std::get_if<crbs::ColoringSpec>(&spec); c && std::holds_alternative<crbs::DimacsGraph>(c->graph)) {
        for (const auto& w : crbs::read_dimacs_graph(std::get<crbs::DimacsGraph>(c->graph).path).warnings) {
            std::cerr << "warning: " << w << "\n";
        }
    }
    const auto outcome = crbs::Solver(problem, h, restart, budget_of(search)).solve();

    crbs::RunRow row;
    row.family = crbs::family_name(spec);
    row.instance_id = crbs::to_string(spec);
    row.heuristic = std::string(crbs::to_string(h.kind));
    row.theta = h.theta;
    row.status = std::string(crbs::to_string(outcome.status));
    row.nodes = outcome.stats.nodes;
    row.failures = outcome.stats.failures;
    row.restarts = outcome.stats.restarts;
    row.time_ms = outcome.stats.time_s * 1e3;
    row.seed = crbs::instance_seed(spec);

    std::cout << row.instance_id << "  " << row.heuristic << "  status=" << row.status << " nodes=" << row.nodes
              << " failures=" << row.failures << " restarts=" << row.restarts << " time_ms=" << row.time_ms << "\n";
    if (print_solution && outcome.status == crbs::SearchStatus::sat) {
        for (std::size_t i = 0; i < outcome.solution.size(); ++i) {
            std::cout << (i ? " " : "") << outcome.solution[i];
        }
        std::cout << "\n";
    }
    if (!csv.empty()) {
        auto out = open_output(csv);
        crbs::write_csv(out, {row});
    }
    switch (outcome.status) {
        case crbs::SearchStatus::sat:
            return 0;
        case crbs::SearchStatus::unsat:
            return 1;
        case crbs::SearchStatus::timeout:
            return 2;
    }
    return exit_error;
}

crbs::CampaignConfig campaign_config(const InstanceFlags& inst, const SearchFlags& search, const std::string& suite) {
    crbs::CampaignConfig config;
    config.instances = collect_instances(inst, suite);
    config.heuristics = heuristic_list(search);
    config.budget = budget_of(search);
    config.restart = crbs::parse_restart_policy(search.restart);
    config.workers = search.workers;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlation-based variable ordering for constraint satisfaction"};
    app.require_subcommand(1);

    InstanceFlags inst;
    SearchFlags search;
    std::string csv;
    std::string runs_csv;
    std::string summary_path;
    std::string rank_by = "time";
    std::string thetas;
    bool print_solution = false;

    auto* solve = app.add_subcommand("solve", "solve one instance");
    add_instance_flags(solve, inst, true);
    add_search_flags(solve, search, true);
    solve->add_option("--csv", csv, "write the result row as CSV");
    solve->add_flag("--print-solution", print_solution, "print the solution values");

    auto* campaign = app.add_subcommand("campaign", "compare heuristics over an instance set");
    add_instance_flags(campaign, inst, false);
    add_search_flags(campaign, search, false);
    campaign->add_option("--csv", csv, "per-run CSV output");
    campaign->add_option("--summary", summary_path, "write the summary tables to this file");
    campaign->add_option("--rank-by", rank_by, "compare heuristics by time or nodes")->check(CLI::IsMember({"time", "nodes"}));

    auto* sweep = app.add_subcommand("sweep", "crbs-sum theta sensitivity");
    add_instance_flags(sweep, inst, false);
    add_search_flags(sweep, search, false);
    sweep->add_option("--csv", csv, "per-theta CSV output");
    sweep->add_option("--runs-csv", runs_csv, "per-run CSV output");
    sweep->add_option("--thetas", thetas, "comma-separated theta grid (default 0,0.1,...,1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : std::max(code, exit_error);
    }

    try {
        if (*solve) {
            return run_solve(inst, search, csv, print_solution);
        }
        if (*campaign) {
            auto config = campaign_config(inst, search, "desk");
            config.rank_by = rank_by == "nodes" ? crbs::RankBy::nodes : crbs::RankBy::time;
            const auto rows = crbs::run_campaign(config);
            for (const auto& r : rows) {
                if (r.status == "ERROR") std::cerr << r.instance_id << " " << r.heuristic << ": " << r.error << "\n";
            }
            if (!csv.empty()) {
                auto out = open_output(csv);
                crbs::write_csv(out, rows);
            }
            const auto text =
                crbs::format_summary(crbs::summarize(rows, crbs::heuristic_labels(config.heuristics), config.rank_by));
            std::cout << text;
            if (!summary_path.empty()) {
                open_output(summary_path) << text;
            }
            return 0;
        }
        if (*sweep) {
            auto config = campaign_config(inst, search, "quasigroup");
            config.heuristics = {heuristic_config(search, "crbs-sum")};
            if (!thetas.empty()) {
                std::stringstream ss(thetas);
                std::string item;
                while (std::getline(ss, item, ',')) config.theta_grid.push_back(std::stod(item));
            }
            const auto result = crbs::run_theta_sweep(config);
            crbs::write_sweep_csv(std::cout, result.rows);
            if (!csv.empty()) {
                auto out = open_output(csv);
                crbs::write_sweep_csv(out, result.rows);
            }
            if (!runs_csv.empty()) {
                auto out = open_output(runs_csv);
                crbs::write_csv(out, result.runs);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
