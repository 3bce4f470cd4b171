#include "crbs/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <iomanip>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace crbs {

namespace {

const char* const csv_header = "family,instance_id,heuristic,theta,status,nodes,failures,restarts,time_ms,seed";

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    return fields;
}

RunRow make_row(const InstanceSpec& spec, const HeuristicConfig& h, const std::string& label) {
    RunRow row;
    row.family = family_name(spec);
    row.instance_id = to_string(spec);
    row.heuristic = label;
    row.theta = h.theta;
    row.seed = instance_seed(spec);
    return row;
}

void fill_outcome(RunRow& row, const SearchOutcome& outcome) {
    row.status = std::string(to_string(outcome.status));
    row.nodes = outcome.stats.nodes;
    row.failures = outcome.stats.failures;
    row.restarts = outcome.stats.restarts;
    row.time_ms = outcome.stats.time_s * 1e3;
}

std::vector<RunRow> run_jobs(const std::vector<InstanceSpec>& instances, const std::vector<HeuristicConfig>& heuristics,
                             const std::vector<std::string>& labels, const RestartPolicy& restart, const Budget& budget,
                             int workers) {
    // Instances are generated once and shared read-only between workers.
    std::vector<std::shared_ptr<const Problem>> problems(instances.size());
    std::vector<std::string> generation_errors(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        try {
            problems[i] = std::make_shared<const Problem>(generate(instances[i]));
        } catch (const std::exception& e) {
            generation_errors[i] = e.what();
        }
    }

    const std::size_t jobs = instances.size() * heuristics.size();
    std::vector<RunRow> rows(jobs);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const std::size_t i = job / heuristics.size();
            const std::size_t h = job % heuristics.size();
            RunRow row = make_row(instances[i], heuristics[h], labels[h]);
            if (!problems[i]) {
                row.status = "ERROR";
                row.error = generation_errors[i];
            } else {
                try {
                    fill_outcome(row, Solver(*problems[i], heuristics[h], restart, budget).solve());
                } catch (const std::exception& e) {
                    row.status = "ERROR";
                    row.error = e.what();
                }
            }
            rows[job] = std::move(row);
        }
    };

    const auto pool = static_cast<std::size_t>(std::max(1, workers));
    if (pool == 1) {
        work();
    } else {
        std::vector<std::jthread> threads;
        for (std::size_t t = 0; t < std::min(pool, std::max<std::size_t>(jobs, 1)); ++t) {
            threads.emplace_back(work);
        }
    }
    return rows;
}

double mean(double total, int count) { return count > 0 ? total / count : 0.0; }

}  // namespace

void validate(const CampaignConfig& config) {
    if (config.instances.empty()) throw std::invalid_argument("campaign needs at least one instance");
    if (config.heuristics.empty()) throw std::invalid_argument("campaign needs at least one heuristic");
    if (config.budget.time_limit_s && !(*config.budget.time_limit_s > 0.0)) {
        throw std::invalid_argument("time budget must be positive");
    }
    if (config.budget.max_nodes && *config.budget.max_nodes <= 0) {
        throw std::invalid_argument("node budget must be positive");
    }
    for (const double theta : config.theta_grid) {
        if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta grid values must lie in [0, 1]");
    }
}

std::vector<std::string> heuristic_labels(const std::vector<HeuristicConfig>& heuristics) {
    std::vector<std::string> labels;
    std::map<std::string, int> seen;
    for (const auto& h : heuristics) {
        std::string name(to_string(h.kind));
        const int count = ++seen[name];
        labels.push_back(count == 1 ? name : name + "#" + std::to_string(count));
    }
    return labels;
}

RunRow run_single(const InstanceSpec& instance, const HeuristicConfig& heuristic, const RestartPolicy& restart,
                  const Budget& budget) {
    RunRow row = make_row(instance, heuristic, std::string(to_string(heuristic.kind)));
    const Problem problem = generate(instance);
    fill_outcome(row, Solver(problem, heuristic, restart, budget).solve());
    return row;
}

std::vector<RunRow> run_campaign(const CampaignConfig& config) {
    validate(config);
    return run_jobs(config.instances, config.heuristics, heuristic_labels(config.heuristics), config.restart,
                    config.budget, config.workers);
}

CampaignSummary summarize(const std::vector<RunRow>& rows, const std::vector<std::string>& heuristics, RankBy rank_by) {
    CampaignSummary summary;
    summary.heuristics = heuristics;
    const std::size_t k = heuristics.size();
    std::map<std::string, std::size_t> heuristic_index;
    for (std::size_t h = 0; h < k; ++h) heuristic_index[heuristics[h]] = h;

    // family -> instance id -> per-heuristic row, in order of first appearance.
    std::vector<std::string> family_order;
    std::map<std::string, std::vector<std::string>> instance_order;
    std::map<std::pair<std::string, std::string>, std::vector<const RunRow*>> table;
    for (const auto& row : rows) {
        const auto it = heuristic_index.find(row.heuristic);
        if (it == heuristic_index.end()) continue;
        if (!instance_order.count(row.family)) family_order.push_back(row.family);
        auto& ids = instance_order[row.family];
        auto& slot = table[{row.family, row.instance_id}];
        if (slot.empty()) {
            ids.push_back(row.instance_id);
            slot.assign(k, nullptr);
        }
        slot[it->second] = &row;
    }

    summary.faster.assign(k, std::vector<int>(k, 0));
    summary.fastest.assign(k, 0);
    summary.second_fastest.assign(k, 0);

    for (const auto& family : family_order) {
        FamilySummary fs;
        fs.family = family;
        fs.per_heuristic.resize(k);
        std::vector<double> total_time(k, 0.0), total_nodes(k, 0.0), all_time(k, 0.0), all_nodes(k, 0.0);
        for (const auto& id : instance_order[family]) {
            const auto& slot = table[{family, id}];
            ++fs.instances;
            const bool by_all = std::all_of(slot.begin(), slot.end(), [](const RunRow* r) { return r && r->solved(); });
            if (by_all) ++fs.solved_by_all;
            for (std::size_t h = 0; h < k; ++h) {
                const RunRow* r = slot[h];
                if (!r) continue;
                auto& st = fs.per_heuristic[h];
                ++st.instances;
                if (r->status == "TIMEOUT") ++st.timeouts;
                if (r->status == "ERROR") ++st.errors;
                total_time[h] += r->time_ms;
                total_nodes[h] += static_cast<double>(r->nodes);
                if (by_all) {
                    all_time[h] += r->time_ms;
                    all_nodes[h] += static_cast<double>(r->nodes);
                }
            }
        }
        for (std::size_t h = 0; h < k; ++h) {
            auto& st = fs.per_heuristic[h];
            st.mean_time_ms = mean(total_time[h], st.instances);
            st.mean_nodes = mean(total_nodes[h], st.instances);
            st.solved_by_all_time_ms = mean(all_time[h], fs.solved_by_all);
            st.solved_by_all_nodes = mean(all_nodes[h], fs.solved_by_all);
        }

        auto key = [&](std::size_t h) {
            const auto& st = fs.per_heuristic[h];
            return std::pair{st.timeouts + st.errors, rank_by == RankBy::time ? st.mean_time_ms : st.mean_nodes};
        };
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) {
                if (a != b && key(a) < key(b)) ++summary.faster[a][b];
            }
        }
        std::vector<std::size_t> order(k);
        for (std::size_t h = 0; h < k; ++h) order[h] = h;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
        if (k > 0) ++summary.fastest[order[0]];
        if (k > 1) ++summary.second_fastest[order[1]];

        summary.families.push_back(std::move(fs));
    }
    return summary;
}

void write_csv(std::ostream& out, const std::vector<RunRow>& rows) {
    out << csv_header << "\n";
    for (const auto& r : rows) {
        out << csv_field(r.family) << ',' << csv_field(r.instance_id) << ',' << csv_field(r.heuristic) << ','
            << format_double(r.theta) << ',' << r.status << ',' << r.nodes << ',' << r.failures << ',' << r.restarts
            << ',' << std::fixed << std::setprecision(3) << r.time_ms << std::defaultfloat << ',' << r.seed << "\n";
    }
}

std::vector<RunRow> read_csv(std::istream& in) {
    std::vector<RunRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    if (line != csv_header && line != std::string(csv_header) + "\r") {
        throw std::runtime_error("unexpected CSV header");
    }
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 10) throw std::runtime_error("CSV line " + std::to_string(lineno) + ": expected 10 fields");
        RunRow r;
        r.family = f[0];
        r.instance_id = f[1];
        r.heuristic = f[2];
        r.theta = std::stod(f[3]);
        r.status = f[4];
        r.nodes = std::stoll(f[5]);
        r.failures = std::stoll(f[6]);
        r.restarts = std::stoll(f[7]);
        r.time_ms = std::stod(f[8]);
        r.seed = std::stoull(f[9]);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

std::string compact_count(double v) {
    std::ostringstream s;
    if (v >= 1e6) {
        s << std::fixed << std::setprecision(0) << v / 1e6 << "M";
    } else if (v >= 1e3) {
        s << std::fixed << std::setprecision(0) << v / 1e3 << "K";
    } else {
        s << std::fixed << std::setprecision(0) << v;
    }
    return s.str();
}

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

}  // namespace

std::string format_summary(const CampaignSummary& summary) {
    const std::size_t k = summary.heuristics.size();
    std::size_t width = 10;
    for (const auto& h : summary.heuristics) width = std::max(width, h.size() + 2);

    std::ostringstream out;
    out << std::left << std::setw(16) << "family" << std::setw(22) << "";
    out << "mean time (ms)" << std::string(k * width > 14 ? k * width - 14 : 1, ' ') << "| nodes\n";
    out << std::setw(16) << "" << std::setw(22) << "";
    for (const auto& h : summary.heuristics) out << std::right << std::setw(static_cast<int>(width)) << h;
    out << " |";
    for (const auto& h : summary.heuristics) out << std::right << std::setw(static_cast<int>(width)) << h;
    out << "\n";

    for (const auto& fs : summary.families) {
        const std::string total_label = "total (" + std::to_string(fs.instances) + ")";
        const std::string all_label = "solved by all (" + std::to_string(fs.solved_by_all) + ")";

        out << std::left << std::setw(16) << fs.family << std::setw(22) << total_label;
        for (const auto& st : fs.per_heuristic) {
            const int failed = st.timeouts + st.errors;
            out << std::right << std::setw(static_cast<int>(width))
                << (failed > 0 ? std::to_string(failed) + " TO" : fixed(st.mean_time_ms, 2));
        }
        out << " |";
        for (const auto& st : fs.per_heuristic) {
            const int failed = st.timeouts + st.errors;
            out << std::right << std::setw(static_cast<int>(width)) << (failed > 0 ? "-" : compact_count(st.mean_nodes));
        }
        out << "\n";

        out << std::left << std::setw(16) << "" << std::setw(22) << all_label;
        for (const auto& st : fs.per_heuristic) {
            out << std::right << std::setw(static_cast<int>(width))
                << (fs.solved_by_all > 0 ? fixed(st.solved_by_all_time_ms, 2) : "-");
        }
        out << " |";
        for (const auto& st : fs.per_heuristic) {
            out << std::right << std::setw(static_cast<int>(width))
                << (fs.solved_by_all > 0 ? compact_count(st.solved_by_all_nodes) : "-");
        }
        out << "\n";
    }

    out << "\n" << std::left << std::setw(28) << "";
    for (const auto& h : summary.heuristics) out << std::right << std::setw(static_cast<int>(width)) << h;
    out << "\n";
    for (std::size_t b = 0; b < k; ++b) {
        out << std::left << std::setw(28) << ("Faster than " + summary.heuristics[b]);
        for (std::size_t a = 0; a < k; ++a) {
            out << std::right << std::setw(static_cast<int>(width))
                << (a == b ? std::string("-") : std::to_string(summary.faster[a][b]));
        }
        out << "\n";
    }
    out << std::left << std::setw(28) << "Fastest";
    for (const int c : summary.fastest) out << std::right << std::setw(static_cast<int>(width)) << c;
    out << "\n" << std::left << std::setw(28) << "Second fastest";
    for (const int c : summary.second_fastest) out << std::right << std::setw(static_cast<int>(width)) << c;
    out << "\n";
    return out.str();
}

std::vector<double> default_theta_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    return grid;
}

SweepResult run_theta_sweep(const CampaignConfig& config) {
    if (config.instances.empty()) throw std::invalid_argument("sweep needs at least one instance");
    CampaignConfig checked = config;
    if (checked.theta_grid.empty()) checked.theta_grid = default_theta_grid();
    if (checked.heuristics.empty()) checked.heuristics.push_back({});
    validate(checked);

    // Every grid point reuses the first heuristic config's remaining settings.
    std::vector<HeuristicConfig> configs;
    std::vector<std::string> labels;
    for (const double theta : checked.theta_grid) {
        HeuristicConfig h = checked.heuristics.front();
        h.kind = HeuristicKind::crbs_sum;
        h.theta = theta;
        configs.push_back(h);
        labels.emplace_back(to_string(HeuristicKind::crbs_sum));
    }

    SweepResult result;
    auto runs = run_jobs(checked.instances, configs, labels, checked.restart, checked.budget, checked.workers);
    const std::size_t g = configs.size();
    for (std::size_t t = 0; t < g; ++t) {
        SweepRow row;
        row.theta = checked.theta_grid[t];
        double time = 0.0;
        double nodes = 0.0;
        for (std::size_t i = 0; i < checked.instances.size(); ++i) {
            const auto& r = runs[i * g + t];
            ++row.instances;
            if (r.solved()) ++row.solved;
            if (r.status == "TIMEOUT") ++row.timeouts;
            time += r.time_ms;
            nodes += static_cast<double>(r.nodes);
        }
        row.mean_time_ms = mean(time, row.instances);
        row.mean_nodes = mean(nodes, row.instances);
        result.rows.push_back(row);
    }
    // Theta-major order reads naturally when the per-run CSV is plotted.
    for (std::size_t t = 0; t < g; ++t) {
        for (std::size_t i = 0; i < checked.instances.size(); ++i) {
            result.runs.push_back(runs[i * g + t]);
        }
    }
    return result;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "theta,mean_time_ms,mean_nodes,solved,timeouts,instances\n";
    for (const auto& r : rows) {
        out << format_double(r.theta) << ',' << fixed(r.mean_time_ms, 3) << ',' << fixed(r.mean_nodes, 3) << ','
            << r.solved << ',' << r.timeouts << ',' << r.instances << "\n";
    }
}

}  // namespace crbs
