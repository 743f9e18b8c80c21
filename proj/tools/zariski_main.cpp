// Command-line front end: runs scenario files, reproduces the star-family
// counterexample, and runs randomized self-checks.

#include "zariski/random.hpp"
#include "zariski/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_task_failure = 1;
constexpr int exit_config = 2;

struct OutputArgs {
    std::string format = "table";
    std::string output;
    bool parallel = false;
};

void add_output_options(CLI::App& app, OutputArgs& args) {
    app.add_option("--format", args.format, "Output format")->check(CLI::IsMember({"table", "csv"}))->capture_default_str();
    app.add_option("--output", args.output, "Write results here instead of standard output");
    app.add_flag("--parallel", args.parallel, "Evaluate each n-sweep concurrently");
}

int execute(const zariski::Scenario& scenario, const OutputArgs& args, std::optional<unsigned> nmax) {
    for (const auto& w : scenario.warnings)
        std::cerr << "warning: " << w << '\n';
    zariski::RunOptions options;
    options.format = args.format == "csv" ? zariski::OutputFormat::csv : zariski::OutputFormat::table;
    options.nmax = nmax;
    options.parallel = args.parallel;
    if (args.output.empty())
        return zariski::run(scenario, std::cout, std::cerr, options);
    std::ofstream file(args.output, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open " << args.output << " for writing\n";
        return exit_config;
    }
    const int status = zariski::run(scenario, file, std::cerr, options);
    file.close();
    if (!file) {
        std::cerr << "error: failed writing " << args.output << '\n';
        return exit_config;
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact intersection theory on resolutions of plane singularities"};
    app.require_subcommand(0, 1);

    std::string scenario_path;
    OutputArgs main_args;
    std::optional<unsigned> main_nmax;
    app.add_option("--scenario", scenario_path, "Scenario file to run")->check(CLI::ExistingFile);
    app.add_option("--nmax", main_nmax, "Override every task's nmax")->check(CLI::PositiveNumber);
    add_output_options(app, main_args);

    auto* star = app.add_subcommand("example42", "Star-family sweep, commutation check and Rees valuation union");
    unsigned star_nmax = 10;
    std::string element = "x";
    OutputArgs star_args;
    star_args.format = "csv";
    star->add_option("--nmax", star_nmax, "Largest n")->check(CLI::PositiveNumber)->capture_default_str();
    star->add_option("--element", element, "Polynomial f for the commutation check")->capture_default_str();
    add_output_options(*star, star_args);

    auto* check = app.add_subcommand("selfcheck", "Randomized unloading and nef-envelope property checks");
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    check->add_option("--seed", seed, "Random seed")->capture_default_str();
    check->add_option("--trials", trials, "Number of random clusters")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*star)
            return execute(zariski::star_family_scenario(star_nmax, element), star_args, std::nullopt);

        if (*check) {
            int status = exit_ok;
            std::cout << "selfcheck seed=" << seed << " trials=" << trials << '\n';
            for (const auto& t : zariski::self_check(seed, trials)) {
                std::cout << (t.failed ? "FAIL " : "ok   ") << t.name << " checked=" << t.checked
                          << " failed=" << t.failed << '\n';
                if (t.failed)
                    status = exit_task_failure;
            }
            return status;
        }

        if (scenario_path.empty()) {
            std::cerr << "error: --scenario FILE is required (or use a subcommand; see --help)\n";
            return exit_config;
        }
        std::ifstream in(scenario_path, std::ios::binary);
        std::stringstream text;
        text << in.rdbuf();
        if (!in) {
            std::cerr << "error: cannot read " << scenario_path << '\n';
            return exit_config;
        }
        return execute(zariski::parse_scenario(text.str()), main_args, main_nmax);
    } catch (const zariski::ScenarioError& e) {
        std::cerr << "error: " << (scenario_path.empty() ? "" : scenario_path + ": ") << e.what() << '\n';
        return exit_config;
    } catch (const zariski::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
}
