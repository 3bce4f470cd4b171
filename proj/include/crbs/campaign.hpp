#ifndef CRBS_CAMPAIGN_HPP
#define CRBS_CAMPAIGN_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crbs/heuristics.hpp"
#include "crbs/instances.hpp"
#include "crbs/search.hpp"

namespace crbs {

/// One (instance, heuristic) run. status is SAT, UNSAT, TIMEOUT or ERROR.
struct RunRow {
    std::string family;
    std::string instance_id;
    std::string heuristic;
    double theta = 0.0;
    std::string status;
    std::int64_t nodes = 0;
    std::int64_t failures = 0;
    std::int64_t restarts = 0;
    double time_ms = 0.0;
    std::uint64_t seed = 0;
    std::string error;

    bool solved() const { return status == "SAT" || status == "UNSAT"; }
};

enum class RankBy { time, nodes };

struct CampaignConfig {
    std::vector<InstanceSpec> instances;
    std::vector<HeuristicConfig> heuristics;
    Budget budget;
    RestartPolicy restart = RestartPolicy::geometric();
    std::vector<double> theta_grid;  // sweeps only
    int workers = 1;
    RankBy rank_by = RankBy::time;
};

/// Throws std::invalid_argument when the config has no instances or heuristics or a non-positive budget.
void validate(const CampaignConfig& config);

/// Column label per configured heuristic; repeated names get a "#k" suffix.
std::vector<std::string> heuristic_labels(const std::vector<HeuristicConfig>& heuristics);

RunRow run_single(const InstanceSpec& instance, const HeuristicConfig& heuristic, const RestartPolicy& restart,
                  const Budget& budget);

/// Runs every (instance, heuristic) pair on a bounded worker pool. Rows come back instance-major, in config order.
std::vector<RunRow> run_campaign(const CampaignConfig& config);

struct HeuristicFamilyStats {
    int instances = 0;
    int timeouts = 0;
    int errors = 0;
    double mean_time_ms = 0.0;   // over all instances of the family
    double mean_nodes = 0.0;
    double solved_by_all_time_ms = 0.0;
    double solved_by_all_nodes = 0.0;
};

struct FamilySummary {
    std::string family;
    int instances = 0;
    int solved_by_all = 0;
    std::vector<HeuristicFamilyStats> per_heuristic;  // indexed like CampaignSummary::heuristics
};

struct CampaignSummary {
    std::vector<std::string> heuristics;
    std::vector<FamilySummary> families;
    /// faster[a][b]: families on which heuristic a beats heuristic b.
    std::vector<std::vector<int>> faster;
    std::vector<int> fastest;
    std::vector<int> second_fastest;
};

/**
 * Per-family means (all instances, and only the instances every heuristic
 * solved), timeout counts, and pairwise comparisons. On a family, a beats b
 * when it has fewer timeouts, or as many and a lower mean over all instances
 * (time or nodes, per rank_by).
 */
CampaignSummary summarize(const std::vector<RunRow>& rows, const std::vector<std::string>& heuristics,
                          RankBy rank_by = RankBy::time);

void write_csv(std::ostream& out, const std::vector<RunRow>& rows);
std::vector<RunRow> read_csv(std::istream& in);
std::string format_summary(const CampaignSummary& summary);

struct SweepRow {
    double theta = 0.0;
    int instances = 0;
    int solved = 0;
    int timeouts = 0;
    double mean_time_ms = 0.0;
    double mean_nodes = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<RunRow> runs;
};

/// Runs crbs-sum at every theta of the grid over the instance set.
SweepResult run_theta_sweep(const CampaignConfig& config);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// 0, 0.1, ..., 1.0
std::vector<double> default_theta_grid();

}  // namespace crbs

#endif
