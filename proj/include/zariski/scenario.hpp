#pragma once

// Line-based scenario files: named clusters, divisors, elements and
// filtrations, followed by an ordered list of tasks. The grammar is
// documented in docs/scenario_grammar.md.

#include "zariski/filtration.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zariski {

/// Malformed or inconsistent scenario text; line() is 1-based.
class ScenarioError : public Error {
public:
    ScenarioError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct NamedCluster {
    ClusterPtr cluster;
    std::vector<std::string> point_names;  // by point index
};

struct Task {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> args;  // in source order
    std::size_t line = 0;

    const std::string* find(std::string_view key) const;
    /// Echo of the task as written, e.g. "degree_limits filtration=F nmax=60".
    std::string describe() const;
};

struct Scenario {
    std::map<std::string, NamedCluster> clusters;
    std::map<std::string, ExcDivisor> divisors;
    std::map<std::string, PlaneElement> elements;
    std::map<std::string, FiltrationSpec> filtrations;
    std::vector<Task> tasks;
    std::vector<std::string> warnings;
};

/// Task kinds understood by run(), sorted.
const std::vector<std::string>& task_kinds();

Scenario parse_scenario(std::string_view text);

enum class OutputFormat { table, csv };

struct RunOptions {
    OutputFormat format = OutputFormat::table;
    std::optional<unsigned> nmax;  // overrides every task's nmax
    bool parallel = false;
};

inline constexpr unsigned default_nmax = 50;

/// Executes the tasks in order, writing results to `out` and per-task
/// failures to `log`. Returns 0 when every task succeeded, 1 otherwise.
int run(const Scenario& scenario, std::ostream& out, std::ostream& log, const RunOptions& options = {});

/// Valuation columns a sweep over n = 1..nmax reports: every curve that
/// appears in some realized cluster.
std::size_t curve_count(const FiltrationSpec& spec, unsigned nmax);

/// The scenario behind the `example42` command: the star family with default
/// parameters, a multiplicity/degree sweep, a commutation check against
/// `element` and the Rees valuation union.
Scenario star_family_scenario(unsigned nmax, const std::string& element = "x");

}  // namespace zariski
