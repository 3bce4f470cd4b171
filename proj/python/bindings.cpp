#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "crbs/campaign.hpp"
#include "crbs/heuristics.hpp"
#include "crbs/instances.hpp"
#include "crbs/model.hpp"
#include "crbs/search.hpp"

namespace py = pybind11;

namespace {

crbs::Budget make_budget(std::optional<double> time_limit_s, std::optional<std::int64_t> max_nodes) {
    crbs::Budget b;
    b.time_limit_s = time_limit_s;
    b.max_nodes = max_nodes;
    return b;
}

std::vector<crbs::InstanceSpec> parse_specs(const std::vector<std::string>& specs) {
    std::vector<crbs::InstanceSpec> out;
    for (const auto& s : specs) out.push_back(crbs::parse_instance_spec(s));
    return out;
}

py::dict row_to_dict(const crbs::RunRow& r) {
    py::dict d;
    d["family"] = r.family;
    d["instance_id"] = r.instance_id;
    d["heuristic"] = r.heuristic;
    d["theta"] = r.theta;
    d["status"] = r.status;
    d["nodes"] = r.nodes;
    d["failures"] = r.failures;
    d["restarts"] = r.restarts;
    d["time_ms"] = r.time_ms;
    d["seed"] = r.seed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Correlation-based variable ordering for constraint satisfaction";

    py::class_<crbs::Problem>(m, "Problem")
        .def_property_readonly("num_variables", &crbs::Problem::num_variables)
        .def_property_readonly("num_constraints", &crbs::Problem::num_constraints)
        .def("initial_domain", [](const crbs::Problem& p, crbs::VarId x) { return p.initial_domain(x).values(); })
        .def("check_assignment",
             [](const crbs::Problem& p, const std::vector<crbs::Value>& a) { return crbs::check_assignment(p, a); })
        .def("__eq__", [](const crbs::Problem& a, const crbs::Problem& b) { return a == b; });

    m.def("generate", [](const std::string& spec) { return crbs::generate(crbs::parse_instance_spec(spec)); },
          py::arg("spec"), "Build an instance from a spec such as 'queens:n=8'.");
    m.def(
        "parse_native",
        [](const std::string& text) {
            std::istringstream in(text);
            return crbs::parse_native(in);
        },
        py::arg("text"));
    m.def(
        "write_native",
        [](const crbs::Problem& p) {
            std::ostringstream out;
            crbs::write_native(p, out);
            return out.str();
        },
        py::arg("problem"));

    py::enum_<crbs::HeuristicKind>(m, "HeuristicKind")
        .value("crbs_sum", crbs::HeuristicKind::crbs_sum)
        .value("crbs_max", crbs::HeuristicKind::crbs_max)
        .value("dom", crbs::HeuristicKind::dom)
        .value("dom_deg", crbs::HeuristicKind::dom_deg)
        .value("dom_wdeg", crbs::HeuristicKind::dom_wdeg)
        .value("abs", crbs::HeuristicKind::abs);

    py::class_<crbs::HeuristicConfig>(m, "HeuristicConfig")
        .def(py::init([](const std::string& kind, double theta, double gamma, bool correlate_past) {
                 return crbs::HeuristicConfig{crbs::parse_heuristic(kind), theta, gamma, correlate_past};
             }),
             py::arg("kind") = "crbs-sum", py::arg("theta") = 0.1, py::arg("gamma") = 0.999,
             py::arg("correlate_past") = true)
        .def_readwrite("kind", &crbs::HeuristicConfig::kind)
        .def_readwrite("theta", &crbs::HeuristicConfig::theta)
        .def_readwrite("gamma", &crbs::HeuristicConfig::gamma)
        .def_readwrite("correlate_past", &crbs::HeuristicConfig::correlate_past);

    py::class_<crbs::RestartPolicy>(m, "RestartPolicy")
        .def_static("geometric", &crbs::RestartPolicy::geometric, py::arg("init_cutoff") = 10, py::arg("rho") = 1.1)
        .def_static("disabled", &crbs::RestartPolicy::disabled)
        .def_static("parse", [](const std::string& text) { return crbs::parse_restart_policy(text); })
        .def("next_cutoff", &crbs::RestartPolicy::next_cutoff)
        .def_readonly("enabled", &crbs::RestartPolicy::enabled)
        .def_readonly("current_cutoff", &crbs::RestartPolicy::current_cutoff)
        .def_readonly("restarts", &crbs::RestartPolicy::restarts);

    py::class_<crbs::Budget>(m, "Budget")
        .def(py::init(&make_budget), py::arg("time_limit_s") = py::none(), py::arg("max_nodes") = py::none())
        .def_readwrite("time_limit_s", &crbs::Budget::time_limit_s)
        .def_readwrite("max_nodes", &crbs::Budget::max_nodes);

    py::enum_<crbs::SearchStatus>(m, "SearchStatus")
        .value("sat", crbs::SearchStatus::sat)
        .value("unsat", crbs::SearchStatus::unsat)
        .value("timeout", crbs::SearchStatus::timeout);

    py::class_<crbs::SearchStats>(m, "SearchStats")
        .def_readonly("nodes", &crbs::SearchStats::nodes)
        .def_readonly("failures", &crbs::SearchStats::failures)
        .def_readonly("restarts", &crbs::SearchStats::restarts)
        .def_readonly("time_s", &crbs::SearchStats::time_s);

    py::class_<crbs::SearchOutcome>(m, "SearchOutcome")
        .def_readonly("status", &crbs::SearchOutcome::status)
        .def_readonly("solution", &crbs::SearchOutcome::solution)
        .def_readonly("stats", &crbs::SearchOutcome::stats);

    m.def("solve", &crbs::solve, py::arg("problem"), py::arg("config") = crbs::HeuristicConfig{},
          py::arg("restart") = crbs::RestartPolicy::geometric(), py::arg("budget") = crbs::Budget{},
          py::call_guard<py::gil_scoped_release>());
    m.def("count_solutions", &crbs::count_solutions, py::arg("problem"), py::arg("config") = crbs::HeuristicConfig{},
          py::arg("budget") = crbs::Budget{}, py::call_guard<py::gil_scoped_release>());

    py::class_<crbs::CorrelationMatrix>(m, "CorrelationMatrix")
        .def(py::init<std::size_t>(), py::arg("n"))
        .def_property_readonly("size", &crbs::CorrelationMatrix::size)
        .def("at", &crbs::CorrelationMatrix::at)
        .def("update_no_conflict",
             [](crbs::CorrelationMatrix& mat, crbs::VarId i, const std::vector<crbs::VarId>& updated,
                const std::vector<crbs::VarId>& unchanged) {
                 crbs::PropagationReport r;
                 r.decision_var = i;
                 r.updated = updated;
                 r.unchanged = unchanged;
                 mat.update_no_conflict(i, r);
             },
             py::arg("i"), py::arg("updated"), py::arg("unchanged"))
        .def("update_conflict", &crbs::CorrelationMatrix::update_conflict, py::arg("i"))
        .def("is_symmetric", &crbs::CorrelationMatrix::is_symmetric)
        .def("to_list", [](const crbs::CorrelationMatrix& mat) {
            std::vector<std::vector<std::int64_t>> rows(mat.size(), std::vector<std::int64_t>(mat.size()));
            for (std::size_t i = 0; i < mat.size(); ++i)
                for (std::size_t j = 0; j < mat.size(); ++j)
                    rows[i][j] = mat.at(static_cast<crbs::VarId>(i), static_cast<crbs::VarId>(j));
            return rows;
        });

    m.def(
        "crbs_sum_score",
        [](const crbs::CorrelationMatrix& mat, crbs::VarId i, const std::vector<crbs::VarId>& past,
           const std::vector<crbs::VarId>& future, double theta) { return crbs::crbs_sum_score(mat, i, past, future, theta); },
        py::arg("matrix"), py::arg("i"), py::arg("past"), py::arg("future"), py::arg("theta") = 0.1);
    m.def(
        "crbs_max_score",
        [](const crbs::CorrelationMatrix& mat, crbs::VarId i, const std::vector<crbs::VarId>& past) {
            return crbs::crbs_max_score(mat, i, past);
        },
        py::arg("matrix"), py::arg("i"), py::arg("past"));

    m.def(
        "run_campaign",
        [](const std::vector<std::string>& instances, const std::vector<std::string>& heuristics, double theta,
           std::optional<std::int64_t> max_nodes, std::optional<double> time_limit_s, const std::string& restart,
           int workers) {
            crbs::CampaignConfig config;
            config.instances = parse_specs(instances);
            for (const auto& h : heuristics) {
                crbs::HeuristicConfig hc;
                hc.kind = crbs::parse_heuristic(h);
                hc.theta = theta;
                config.heuristics.push_back(hc);
            }
            config.budget = make_budget(time_limit_s, max_nodes);
            config.restart = crbs::parse_restart_policy(restart);
            config.workers = workers;
            std::vector<crbs::RunRow> rows;
            {
                py::gil_scoped_release release;
                rows = crbs::run_campaign(config);
            }
            py::list out;
            for (const auto& r : rows) out.append(row_to_dict(r));
            return out;
        },
        py::arg("instances"), py::arg("heuristics"), py::arg("theta") = 0.1, py::arg("max_nodes") = py::none(),
        py::arg("time_limit_s") = py::none(), py::arg("restart") = "10:1.1", py::arg("workers") = 1);

    m.def(
        "run_theta_sweep",
        [](const std::vector<std::string>& instances, const std::vector<double>& thetas,
           std::optional<std::int64_t> max_nodes, const std::string& restart) {
            crbs::CampaignConfig config;
            config.instances = parse_specs(instances);
            config.theta_grid = thetas;
            config.budget = make_budget(std::nullopt, max_nodes);
            config.restart = crbs::parse_restart_policy(restart);
            crbs::SweepResult result;
            {
                py::gil_scoped_release release;
                result = crbs::run_theta_sweep(config);
            }
            py::list out;
            for (const auto& r : result.rows) {
                py::dict d;
                d["theta"] = r.theta;
                d["mean_time_ms"] = r.mean_time_ms;
                d["mean_nodes"] = r.mean_nodes;
                d["solved"] = r.solved;
                d["timeouts"] = r.timeouts;
                d["instances"] = r.instances;
                out.append(d);
            }
            return out;
        },
        py::arg("instances"), py::arg("thetas") = crbs::default_theta_grid(), py::arg("max_nodes") = py::none(),
        py::arg("restart") = "10:1.1");
}
