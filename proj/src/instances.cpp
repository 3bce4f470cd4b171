#include "crbs/instances.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "crbs/rng.hpp"

namespace crbs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class T>
bool parse_number(std::string_view text, T& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last && first != last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// ceil with a guard against products such as 0.4 * 28 landing a hair above an integer.
std::int64_t ceil_count(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9)); }

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

Problem coloring_problem(const Graph& g, int k) {
    require(k >= 1, "coloring needs k >= 1");
    ProblemBuilder b;
    for (int v = 0; v < g.vertices; ++v) {
        b.add_variable(0, k - 1, "v" + std::to_string(v));
    }
    for (const auto& [u, v] : g.edges) {
        b.not_equal(u, v);
    }
    return std::move(b).build();
}

Problem latin_problem(const LatinSpec& spec) {
    const int n = spec.order;
    require(n >= 1, "latin order must be >= 1");
    std::map<std::pair<int, int>, Value> fixed;
    for (const auto& cell : spec.prefilled) {
        require(cell.row >= 0 && cell.row < n && cell.col >= 0 && cell.col < n, "prefilled cell outside the grid");
        require(cell.value >= 0 && cell.value < n, "prefilled value outside 0..order-1");
        require(fixed.emplace(std::pair{cell.row, cell.col}, cell.value).second, "cell prefilled twice");
    }
    ProblemBuilder b;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const std::string name = "c" + std::to_string(r) + "_" + std::to_string(c);
            const auto it = fixed.find({r, c});
            if (it != fixed.end()) {
                b.add_variable(Domain({it->second}), name);
            } else {
                b.add_variable(0, n - 1, name);
            }
        }
    }
    for (int r = 0; r < n; ++r) {
        for (int c1 = 0; c1 < n; ++c1) {
            for (int c2 = c1 + 1; c2 < n; ++c2) {
                b.not_equal(latin_cell(n, r, c1), latin_cell(n, r, c2));
            }
        }
    }
    for (int c = 0; c < n; ++c) {
        for (int r1 = 0; r1 < n; ++r1) {
            for (int r2 = r1 + 1; r2 < n; ++r2) {
                b.not_equal(latin_cell(n, r1, c), latin_cell(n, r2, c));
            }
        }
    }
    return std::move(b).build();
}

Problem random_binary_problem(const RandomBinarySpec& spec) {
    require(spec.n >= 1 && spec.d >= 1, "random-binary needs n >= 1 and d >= 1");
    require(spec.p1 >= 0.0 && spec.p1 <= 1.0 && spec.p2 >= 0.0 && spec.p2 <= 1.0, "density and tightness must lie in [0, 1]");
    Rng rng(spec.seed);
    ProblemBuilder b;
    for (int i = 0; i < spec.n; ++i) {
        b.add_variable(0, spec.d - 1, "x" + std::to_string(i));
    }

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < spec.n; ++i) {
        for (int j = i + 1; j < spec.n; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    const auto m = static_cast<std::size_t>(
        std::min<std::int64_t>(ceil_count(spec.p1 * static_cast<double>(pairs.size())), static_cast<std::int64_t>(pairs.size())));
    rng.partial_shuffle(pairs, m);
    pairs.resize(m);
    std::sort(pairs.begin(), pairs.end());

    const auto cells = static_cast<std::size_t>(spec.d) * static_cast<std::size_t>(spec.d);
    const auto t = static_cast<std::size_t>(
        std::min<std::int64_t>(ceil_count(spec.p2 * static_cast<double>(cells)), static_cast<std::int64_t>(cells)));
    for (const auto& [x, y] : pairs) {
        std::vector<std::vector<Value>> tuples;
        for (int a = 0; a < spec.d; ++a) {
            for (int c = 0; c < spec.d; ++c) {
                tuples.push_back({a, c});
            }
        }
        rng.partial_shuffle(tuples, t);
        tuples.resize(t);
        b.add(Constraint::table({x, y}, std::move(tuples), false));
    }
    return std::move(b).build();
}

}  // namespace

// ---------------------------------------------------------------------------
// Graphs

Graph parse_dimacs_graph(std::istream& in) {
    Graph g;
    std::set<std::pair<int, int>> seen;
    bool header = false;
    long long declared_edges = 0;
    long long edge_lines = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tok = split_ws(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (header || tok.size() != 4 || (tok[1] != "edge" && tok[1] != "col") ||
                !parse_number(tok[2], g.vertices) || !parse_number(tok[3], declared_edges) || g.vertices < 0 ||
                declared_edges < 0) {
                throw ParseError(lineno, "malformed header");
            }
            header = true;
        } else if (tok[0] == "e") {
            if (!header) throw ParseError(lineno, "malformed header: edge before 'p edge N M'");
            int u = 0;
            int v = 0;
            if (tok.size() != 3 || !parse_number(tok[1], u) || !parse_number(tok[2], v)) {
                throw ParseError(lineno, "malformed edge line");
            }
            if (u < 1 || u > g.vertices || v < 1 || v > g.vertices) {
                throw ParseError(lineno, "edge endpoint out of range");
            }
            if (u == v) throw ParseError(lineno, "self-loop on vertex " + std::to_string(u));
            ++edge_lines;
            seen.insert({std::min(u, v) - 1, std::max(u, v) - 1});
        } else if (tok[0] == "n") {
            // vertex weights, irrelevant for coloring
        } else {
            throw ParseError(lineno, "unknown line type '" + std::string(tok[0]) + "'");
        }
    }
    if (!header) throw ParseError(lineno, "malformed header: missing 'p edge N M'");
    if (edge_lines != declared_edges) {
        g.warnings.push_back("header declares " + std::to_string(declared_edges) + " edges but " +
                             std::to_string(edge_lines) + " were listed");
    }
    g.edges.assign(seen.begin(), seen.end());
    return g;
}

Graph read_dimacs_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
    return parse_dimacs_graph(in);
}

Graph myciel_graph(int m) {
    require(m >= 2, "myciel graphs start at m = 2");
    Graph g;
    g.vertices = 2;
    g.edges = {{0, 1}};
    // Mycielski step: shadow u' of every u adjacent to N(u), plus a hub joined to every shadow.
    for (int step = 1; step < m; ++step) {
        const int n = g.vertices;
        auto edges = g.edges;
        for (const auto& [u, v] : g.edges) {
            edges.emplace_back(u, n + v);
            edges.emplace_back(v, n + u);
        }
        for (int u = 0; u < n; ++u) {
            edges.emplace_back(n + u, 2 * n);
        }
        for (auto& [u, v] : edges) {
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        g.vertices = 2 * n + 1;
        g.edges = std::move(edges);
    }
    return g;
}

Graph random_graph(int vertices, double p, std::uint64_t seed) {
    require(vertices >= 0, "vertex count must be >= 0");
    require(p >= 0.0 && p <= 1.0, "edge probability must lie in [0, 1]");
    Rng rng(seed);
    Graph g;
    g.vertices = vertices;
    for (int u = 0; u < vertices; ++u) {
        for (int v = u + 1; v < vertices; ++v) {
            if (rng.uniform() < p) g.edges.emplace_back(u, v);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Specs

std::string family_name(const InstanceSpec& spec) {
    return std::visit(overloaded{
                          [](const QueensSpec&) { return std::string("queens"); },
                          [](const LatinSpec&) { return std::string("latin"); },
                          [](const QuasigroupSpec&) { return std::string("quasigroup"); },
                          [](const ColoringSpec&) { return std::string("coloring"); },
                          [](const RandomBinarySpec&) { return std::string("random-binary"); },
                          [](const PigeonholeSpec&) { return std::string("pigeonhole"); },
                          [](const NativeFileSpec&) { return std::string("file"); },
                      },
                      spec);
}

std::uint64_t instance_seed(const InstanceSpec& spec) {
    if (const auto* q = std::get_if<QuasigroupSpec>(&spec)) return q->seed;
    if (const auto* r = std::get_if<RandomBinarySpec>(&spec)) return r->seed;
    if (const auto* c = std::get_if<ColoringSpec>(&spec)) {
        if (const auto* g = std::get_if<RandomGraph>(&c->graph)) return g->seed;
    }
    return 0;
}

std::string to_string(const InstanceSpec& spec) {
    return std::visit(
        overloaded{
            [](const QueensSpec& s) { return "queens:n=" + std::to_string(s.n); },
            [](const LatinSpec& s) {
                std::string out = "latin:order=" + std::to_string(s.order);
                if (!s.prefilled.empty()) {
                    out += ",cells=";
                    for (std::size_t i = 0; i < s.prefilled.size(); ++i) {
                        const auto& c = s.prefilled[i];
                        out += (i ? ";" : "") + std::to_string(c.row) + "." + std::to_string(c.col) + "." +
                               std::to_string(c.value);
                    }
                }
                return out;
            },
            [](const QuasigroupSpec& s) {
                return "quasigroup:order=" + std::to_string(s.order) + ",holes=" + std::to_string(s.holes) +
                       ",seed=" + std::to_string(s.seed);
            },
            [](const ColoringSpec& s) {
                std::string out = "coloring:k=" + std::to_string(s.k) + ",";
                std::visit(overloaded{
                               [&](const DimacsGraph& g) { out += "dimacs=" + g.path; },
                               [&](const MycielGraph& g) { out += "myciel=" + std::to_string(g.m); },
                               [&](const RandomGraph& g) {
                                   out += "vertices=" + std::to_string(g.vertices) + ",p=" + format_double(g.p) +
                                          ",seed=" + std::to_string(g.seed);
                               },
                           },
                           s.graph);
                return out;
            },
            [](const RandomBinarySpec& s) {
                return "random-binary:n=" + std::to_string(s.n) + ",d=" + std::to_string(s.d) +
                       ",p1=" + format_double(s.p1) + ",p2=" + format_double(s.p2) + ",seed=" + std::to_string(s.seed);
            },
            [](const PigeonholeSpec& s) { return "pigeonhole:n=" + std::to_string(s.n); },
            [](const NativeFileSpec& s) { return "file:" + s.path; },
        },
        spec);
}

InstanceSpec parse_instance_spec(std::string_view text) {
    const auto colon = text.find(':');
    const std::string family(text.substr(0, colon));
    const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (family == "file") {
        require(!rest.empty(), "file spec needs a path");
        return NativeFileSpec{std::string(rest)};
    }

    std::map<std::string, std::string, std::less<>> kv;
    if (!rest.empty()) {
        for (const auto item : split(rest, ',')) {
            const auto eq = item.find('=');
            require(eq != std::string_view::npos, "expected key=value in '" + std::string(item) + "'");
            kv[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
        }
    }
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        auto value = it->second;
        kv.erase(it);
        return value;
    };
    auto num = [&]<class T>(const std::string& key, T fallback) {
        const auto raw = take(key);
        if (!raw) return fallback;
        T out{};
        require(parse_number(*raw, out), "bad value for '" + key + "': '" + *raw + "'");
        return out;
    };

    InstanceSpec spec;
    if (family == "queens") {
        spec = QueensSpec{num("n", 8)};
    } else if (family == "pigeonhole") {
        spec = PigeonholeSpec{num("n", 5)};
    } else if (family == "latin") {
        LatinSpec s{num("order", 4), {}};
        if (const auto cells = take("cells"); cells && !cells->empty()) {
            for (const auto cell : split(*cells, ';')) {
                const auto parts = split(cell, '.');
                PrefilledCell pc;
                require(parts.size() == 3 && parse_number(parts[0], pc.row) && parse_number(parts[1], pc.col) &&
                            parse_number(parts[2], pc.value),
                        "bad prefilled cell '" + std::string(cell) + "', expected row.col.value");
                s.prefilled.push_back(pc);
            }
        }
        spec = std::move(s);
    } else if (family == "quasigroup") {
        spec = QuasigroupSpec{num("order", 5), num("holes", 10), num("seed", std::uint64_t{0})};
    } else if (family == "random-binary") {
        spec = RandomBinarySpec{num("n", 10), num("d", 5), num("p1", 0.5), num("p2", 0.3), num("seed", std::uint64_t{0})};
    } else if (family == "coloring") {
        ColoringSpec s;
        s.k = num("k", 3);
        if (auto path = take("dimacs")) {
            s.graph = DimacsGraph{*path};
        } else if (kv.count("myciel")) {
            s.graph = MycielGraph{num("myciel", 3)};
        } else {
            s.graph = RandomGraph{num("vertices", 10), num("p", 0.5), num("seed", std::uint64_t{0})};
        }
        spec = std::move(s);
    } else {
        throw std::invalid_argument("unknown instance family '" + family + "'");
    }
    if (!kv.empty()) {
        throw std::invalid_argument("unknown parameter '" + kv.begin()->first + "' for family " + family);
    }
    return spec;
}

std::vector<std::vector<Value>> random_latin_square(int order, std::uint64_t seed) {
    require(order >= 1, "latin order must be >= 1");
    Rng rng(seed);
    std::vector<int> rows(static_cast<std::size_t>(order));
    std::vector<int> cols(rows.size());
    std::vector<int> symbols(rows.size());
    for (int i = 0; i < order; ++i) {
        rows[static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)] = symbols[static_cast<std::size_t>(i)] = i;
    }
    rng.shuffle(rows);
    rng.shuffle(cols);
    rng.shuffle(symbols);
    // Isotope of the cyclic group table.
    std::vector<std::vector<Value>> square(rows.size(), std::vector<Value>(rows.size()));
    for (int r = 0; r < order; ++r) {
        for (int c = 0; c < order; ++c) {
            const int base = (rows[static_cast<std::size_t>(r)] + cols[static_cast<std::size_t>(c)]) % order;
            square[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = symbols[static_cast<std::size_t>(base)];
        }
    }
    return square;
}

Problem generate(const InstanceSpec& spec) {
    return std::visit(
        overloaded{
            [](const QueensSpec& s) {
                require(s.n >= 1, "queens needs n >= 1");
                ProblemBuilder b;
                for (int i = 0; i < s.n; ++i) b.add_variable(0, s.n - 1, "q" + std::to_string(i));
                for (int i = 0; i < s.n; ++i) {
                    for (int j = i + 1; j < s.n; ++j) {
                        b.not_equal(i, j);
                        b.add(Constraint::binary(PredicateKind::abs_diff_not_equal, i, j, j - i));
                    }
                }
                return std::move(b).build();
            },
            [](const LatinSpec& s) { return latin_problem(s); },
            [](const QuasigroupSpec& s) {
                require(s.order >= 1, "quasigroup order must be >= 1");
                require(s.holes >= 0 && s.holes <= s.order * s.order, "holes must lie in 0..order^2");
                const auto square = random_latin_square(s.order, s.seed);
                std::vector<int> cells(static_cast<std::size_t>(s.order * s.order));
                for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<int>(i);
                // Distinct stream from the square so holes and square vary independently.
                Rng rng(s.seed ^ 0x9e3779b97f4a7c15ULL);
                rng.partial_shuffle(cells, static_cast<std::size_t>(s.holes));
                std::vector<char> hole(cells.size(), 0);
                for (int i = 0; i < s.holes; ++i) hole[static_cast<std::size_t>(cells[static_cast<std::size_t>(i)])] = 1;
                LatinSpec latin{s.order, {}};
                for (int r = 0; r < s.order; ++r) {
                    for (int c = 0; c < s.order; ++c) {
                        if (!hole[static_cast<std::size_t>(latin_cell(s.order, r, c))]) {
                            latin.prefilled.push_back({r, c, square[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]});
                        }
                    }
                }
                return latin_problem(latin);
            },
            [](const ColoringSpec& s) {
                const Graph g = std::visit(overloaded{
                                               [](const DimacsGraph& d) { return read_dimacs_graph(d.path); },
                                               [](const MycielGraph& m) { return myciel_graph(m.m); },
                                               [](const RandomGraph& r) { return random_graph(r.vertices, r.p, r.seed); },
                                           },
                                           s.graph);
                return coloring_problem(g, s.k);
            },
            [](const RandomBinarySpec& s) { return random_binary_problem(s); },
            [](const PigeonholeSpec& s) {
                require(s.n >= 1, "pigeonhole needs n >= 1");
                ProblemBuilder b;
                for (int i = 0; i <= s.n; ++i) b.add_variable(0, s.n - 1, "p" + std::to_string(i));
                for (int i = 0; i <= s.n; ++i) {
                    for (int j = i + 1; j <= s.n; ++j) b.not_equal(i, j);
                }
                return std::move(b).build();
            },
            [](const NativeFileSpec& s) { return read_native(s.path); },
        },
        spec);
}

// ---------------------------------------------------------------------------
// Native format

Problem parse_native(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1;
    std::vector<std::optional<Domain>> domains;
    std::vector<std::string> names;
    std::vector<Constraint> constraints;
    Table* open_table = nullptr;

    auto var_arg = [&](std::string_view tok) {
        VarId x = 0;
        if (!parse_number(tok, x)) throw ParseError(lineno, "bad variable id '" + std::string(tok) + "'");
        if (x < 0 || x >= n) throw ParseError(lineno, "unknown variable " + std::string(tok));
        return x;
    };
    auto int_arg = [&](std::string_view tok) {
        Value v = 0;
        if (!parse_number(tok, v)) throw ParseError(lineno, "bad integer '" + std::string(tok) + "'");
        return v;
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto tok = split_ws(line);
        if (tok.empty() || tok[0].front() == '#') continue;
        const auto& kw = tok[0];

        if (kw == "t") {
            if (!open_table) throw ParseError(lineno, "tuple line outside a table");
            const auto arity = constraints.back().scope.size();
            if (tok.size() - 1 != arity) {
                throw ParseError(lineno, "arity mismatch: tuple of size " + std::to_string(tok.size() - 1) +
                                             " for scope of size " + std::to_string(arity));
            }
            std::vector<Value> tuple;
            for (std::size_t i = 1; i < tok.size(); ++i) tuple.push_back(int_arg(tok[i]));
            open_table->tuples.push_back(std::move(tuple));
            continue;
        }
        open_table = nullptr;

        if (kw == "vars") {
            if (n >= 0) throw ParseError(lineno, "duplicate 'vars' line");
            if (tok.size() != 2 || !parse_number(tok[1], n) || n < 0) throw ParseError(lineno, "expected 'vars N'");
            domains.assign(static_cast<std::size_t>(n), std::nullopt);
            names.assign(static_cast<std::size_t>(n), {});
            continue;
        }
        if (n < 0) throw ParseError(lineno, "expected 'vars N' before '" + std::string(kw) + "'");

        auto expect_args = [&](std::size_t count) {
            if (tok.size() != count + 1) {
                throw ParseError(lineno, "'" + std::string(kw) + "' takes " + std::to_string(count) + " arguments");
            }
        };

        if (kw == "dom") {
            if (tok.size() < 3) throw ParseError(lineno, "'dom' needs a variable and at least one value");
            const VarId x = var_arg(tok[1]);
            if (domains[static_cast<std::size_t>(x)]) throw ParseError(lineno, "domain of variable " + std::to_string(x) + " given twice");
            std::vector<Value> values;
            for (std::size_t i = 2; i < tok.size(); ++i) values.push_back(int_arg(tok[i]));
            try {
                domains[static_cast<std::size_t>(x)] = Domain(std::move(values));
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, e.what());
            }
        } else if (kw == "name") {
            expect_args(2);
            names[static_cast<std::size_t>(var_arg(tok[1]))] = std::string(tok[2]);
        } else if (kw == "ne" || kw == "eq" || kw == "lt") {
            expect_args(2);
            const auto kind = kw == "ne" ? PredicateKind::not_equal
                              : kw == "eq" ? PredicateKind::equal
                                           : PredicateKind::less_than;
            constraints.push_back(Constraint::binary(kind, var_arg(tok[1]), var_arg(tok[2])));
        } else if (kw == "neoff" || kw == "absne") {
            expect_args(3);
            const auto kind = kw == "neoff" ? PredicateKind::not_equal_offset : PredicateKind::abs_diff_not_equal;
            constraints.push_back(Constraint::binary(kind, var_arg(tok[1]), var_arg(tok[2]), int_arg(tok[3])));
        } else if (kw == "table") {
            if (tok.size() < 3 || (tok[1] != "+" && tok[1] != "-")) {
                throw ParseError(lineno, "expected 'table +|- i j ...'");
            }
            std::vector<VarId> scope;
            for (std::size_t i = 2; i < tok.size(); ++i) scope.push_back(var_arg(tok[i]));
            constraints.push_back(Constraint::table(std::move(scope), {}, tok[1] == "+"));
            open_table = &std::get<Table>(constraints.back().relation);
        } else {
            throw ParseError(lineno, "unknown predicate kind '" + std::string(kw) + "'");
        }
    }

    if (n < 0) throw ParseError(lineno, "missing 'vars N' line");
    std::vector<Variable> variables;
    std::vector<Domain> doms;
    for (std::size_t i = 0; i < domains.size(); ++i) {
        if (!domains[i]) throw ParseError(lineno, "no domain given for variable " + std::to_string(i));
        variables.push_back(Variable{static_cast<VarId>(i), names[i]});
        doms.push_back(std::move(*domains[i]));
    }
    try {
        return build_problem(std::move(variables), std::move(doms), std::move(constraints));
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
    }
}

void write_native(const Problem& problem, std::ostream& out) {
    out << "# crbs native instance\n";
    out << "vars " << problem.num_variables() << "\n";
    for (const auto& v : problem.variables()) {
        out << "dom " << v.id;
        for (const Value x : problem.initial_domain(v.id).universe()) out << ' ' << x;
        out << "\n";
        if (v.name != "x" + std::to_string(v.id)) out << "name " << v.id << ' ' << v.name << "\n";
    }
    for (const auto& c : problem.constraints()) {
        if (const auto* p = std::get_if<BinaryPredicate>(&c.relation)) {
            switch (p->kind) {
                case PredicateKind::not_equal: out << "ne"; break;
                case PredicateKind::not_equal_offset: out << "neoff"; break;
                case PredicateKind::abs_diff_not_equal: out << "absne"; break;
                case PredicateKind::equal: out << "eq"; break;
                case PredicateKind::less_than: out << "lt"; break;
            }
            out << ' ' << c.scope[0] << ' ' << c.scope[1];
            if (p->kind == PredicateKind::not_equal_offset || p->kind == PredicateKind::abs_diff_not_equal) {
                out << ' ' << p->offset;
            }
            out << "\n";
        } else {
            const auto& t = std::get<Table>(c.relation);
            out << "table " << (t.positive ? '+' : '-');
            for (const VarId x : c.scope) out << ' ' << x;
            out << "\n";
            for (const auto& tuple : t.tuples) {
                out << 't';
                for (const Value v : tuple) out << ' ' << v;
                out << "\n";
            }
        }
    }
}

Problem read_native(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
    return parse_native(in);
}

void write_native(const Problem& problem, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file '" + path + "'");
    write_native(problem, out);
}

// ---------------------------------------------------------------------------
// Suites

std::vector<InstanceSpec> desk_suite(std::uint64_t seed, int per_family) {
    std::vector<InstanceSpec> suite;
    const auto nth = [seed](int i) { return seed + static_cast<std::uint64_t>(i); };
    for (int i = 0; i < per_family; ++i) suite.push_back(QueensSpec{12 + 4 * i});
    for (int i = 0; i < per_family; ++i) suite.push_back(LatinSpec{6 + 2 * i, {}});
    for (int i = 0; i < per_family; ++i) suite.push_back(QuasigroupSpec{12, 58 + 4 * i, nth(i)});
    for (int i = 0; i < per_family; ++i) suite.push_back(ColoringSpec{RandomGraph{40, 0.3, nth(i)}, 5});
    for (int i = 0; i < per_family; ++i) suite.push_back(RandomBinarySpec{30, 10, 0.3, 0.38, nth(i)});
    for (int i = 0; i < per_family; ++i) suite.push_back(PigeonholeSpec{5 + i});
    return suite;
}

std::vector<InstanceSpec> quasigroup_suite(std::uint64_t seed, int count, int order, int holes) {
    std::vector<InstanceSpec> suite;
    for (int i = 0; i < count; ++i) {
        suite.push_back(QuasigroupSpec{order, holes, seed + static_cast<std::uint64_t>(i)});
    }
    return suite;
}

}  // namespace crbs
