#ifndef CRBS_INSTANCES_HPP
#define CRBS_INSTANCES_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "crbs/model.hpp"

namespace crbs {

struct Graph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;  // 0-based, u < v, deduplicated
    std::vector<std::string> warnings;
};

/// Raised for malformed instance files; the message carries the line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

Graph parse_dimacs_graph(std::istream& in);
Graph read_dimacs_graph(const std::string& path);

/// Mycielski graph in DIMACS numbering: myciel_graph(3) has 11 vertices and chromatic number 4.
Graph myciel_graph(int m);

/// Erdos-Renyi G(n, p) under a seed.
Graph random_graph(int vertices, double p, std::uint64_t seed);

struct QueensSpec {
    int n = 8;
};

struct PrefilledCell {
    int row = 0;
    int col = 0;
    Value value = 0;
};

struct LatinSpec {
    int order = 4;
    std::vector<PrefilledCell> prefilled;
};

struct QuasigroupSpec {
    int order = 5;
    int holes = 10;
    std::uint64_t seed = 0;
};

struct DimacsGraph {
    std::string path;
};

struct MycielGraph {
    int m = 3;
};

struct RandomGraph {
    int vertices = 10;
    double p = 0.5;
    std::uint64_t seed = 0;
};

struct ColoringSpec {
    std::variant<DimacsGraph, MycielGraph, RandomGraph> graph;
    int k = 3;
};

/// Model B: exactly ceil(p1 * n(n-1)/2) constrained pairs, each forbidding exactly ceil(p2 * d^2) tuples.
struct RandomBinarySpec {
    int n = 10;
    int d = 5;
    double p1 = 0.5;
    double p2 = 0.3;
    std::uint64_t seed = 0;
};

struct PigeonholeSpec {
    int n = 5;
};

struct NativeFileSpec {
    std::string path;
};

using InstanceSpec = std::variant<QueensSpec, LatinSpec, QuasigroupSpec, ColoringSpec, RandomBinarySpec,
                                  PigeonholeSpec, NativeFileSpec>;

/// "queens", "latin", "quasigroup", "coloring", "random-binary", "pigeonhole" or "file".
std::string family_name(const InstanceSpec& spec);

/// Seed the instance was generated with, 0 for unseeded families.
std::uint64_t instance_seed(const InstanceSpec& spec);

/**
 * Compact text form "family:key=value,...", e.g. "queens:n=8",
 * "quasigroup:order=7,holes=20,seed=3", "coloring:k=4,myciel=3",
 * "coloring:k=3,dimacs=graph.col", "random-binary:n=8,d=4,p1=0.5,p2=0.3,seed=1",
 * "file:path.csp". Latin prefills are "cells=r.c.v;r.c.v".
 */
InstanceSpec parse_instance_spec(std::string_view text);
std::string to_string(const InstanceSpec& spec);

/// Throws std::invalid_argument for out-of-range parameters and std::runtime_error for unreadable files.
Problem generate(const InstanceSpec& spec);

/// Random complete Latin square of the given order, rows of symbols 0..order-1.
std::vector<std::vector<Value>> random_latin_square(int order, std::uint64_t seed);

/// Latin square cell (r, c) variable id used by the latin and quasigroup generators.
inline VarId latin_cell(int order, int row, int col) { return row * order + col; }

/**
 * Line-oriented native format:
 *   vars N
 *   dom i v1 v2 ...
 *   name i label          (optional)
 *   ne i j | neoff i j k | absne i j k | eq i j | lt i j
 *   table + i j k         (or "table -" for forbidden tuples), followed by
 *   t v1 v2 v3            one line per tuple
 * Blank lines and lines starting with '#' are ignored.
 */
Problem parse_native(std::istream& in);
void write_native(const Problem& problem, std::ostream& out);
Problem read_native(const std::string& path);
void write_native(const Problem& problem, const std::string& path);

/// Built-in benchmark suites: per_family instances of each of six families.
std::vector<InstanceSpec> desk_suite(std::uint64_t seed, int per_family);
std::vector<InstanceSpec> quasigroup_suite(std::uint64_t seed, int count, int order = 12, int holes = 64);

}  // namespace crbs

#endif
