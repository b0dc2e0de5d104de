#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dsq/config.hpp"
#include "dsq/error.hpp"
#include "dsq/scenario.hpp"

namespace {

enum Exit { Ok = 0, Invalid = 1, Numeric = 2 };

std::string escape(std::string s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') c = ' ';
        out += c;
    }
    return out;
}

int fail(const char* kind, const std::string& msg, int code) {
    std::cerr << "dsq: error=" << kind << " message=\"" << escape(msg) << "\"\n";
    return code;
}

struct Common {
    std::string config;
    std::string out = ".";
    long points = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "key = value or JSON config file")->check(CLI::ExistingFile);
    app->add_option("--out", c.out, "output directory");
    app->add_option("--points", c.points, "override the number of sweep or time points")->check(CLI::PositiveNumber);
    app->add_option("--seed", c.seed, "seed for randomized helpers (never affects physics)");
    app->add_option("--threads", c.threads, "worker threads (0 = all cores)");
}

dsq::RunOptions run_options(const Common& c) {
    dsq::RunOptions o;
    o.out_dir = c.out;
    o.points = c.points;
    o.seed = c.seed;
    o.threads = c.threads;
    return o;
}

dsq::Config load_config(const Common& c) { return c.config.empty() ? dsq::Config{} : dsq::Config::load(c.config); }

void print_summary(const dsq::RunSummary& r) {
    for (const auto& f : r.files) std::cout << "file=" << f.string() << '\n';
    for (const auto& [k, v] : r.summary) std::cout << k << '=' << v << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dark-soliton qubit entanglement simulator"};
    app.set_version_flag("--version", std::string(DSQ_VERSION));
    app.require_subcommand(1);

    Common common;
    const char* commands[] = {"rates", "decay", "driven", "steady", "gpe-boundstates", "gpe-multisoliton"};
    const char* help[] = {"collective damping and exchange coupling versus separation",
                          "undriven two-qubit trajectories",
                          "driven two-qubit trajectories",
                          "steady-state concurrence sweep over omega or d",
                          "impurity bound states in a soliton (imaginary time)",
                          "multi-soliton box stability run"};
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        auto* sub = app.add_subcommand(commands[i], help[i]);
        add_common(sub, common);
        subs.push_back(sub);
    }

    std::string scenario_name;
    auto* run = app.add_subcommand("run", "run a built-in figure scenario");
    run->add_option("scenario", scenario_name, "scenario name (see `dsq list`)")->required();
    add_common(run, common);

    auto* list = app.add_subcommand("list", "list built-in scenarios");

    auto* validate = app.add_subcommand("validate", "report qubit-window, RWA and rate checks");
    add_common(validate, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), Invalid);
    }

    try {
        if (*list) {
            for (const auto& n : dsq::preset_names()) {
                const auto s = dsq::preset(n);
                std::cout << n << ' ' << s.command << '\n';
            }
            return Ok;
        }
        if (*validate) {
            const auto params = dsq::model_params_from(load_config(common));
            const auto report = dsq::validate_params(params);
            std::cout << report.text();
            return report.qubit_window_ok ? Ok : Invalid;
        }
        if (*run) {
            auto s = dsq::with_overrides(dsq::preset(scenario_name), load_config(common));
            print_summary(dsq::run_scenario(s, run_options(common)));
            return Ok;
        }
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (!*subs[i]) continue;
            const auto s = dsq::make_scenario(commands[i], load_config(common));
            print_summary(dsq::run_scenario(s, run_options(common)));
            return Ok;
        }
    } catch (const dsq::NumericError& e) {
        return fail("numeric", e.what(), Numeric);
    } catch (const dsq::ValidationError& e) {
        return fail("validation", e.what(), Invalid);
    } catch (const dsq::ParameterError& e) {
        return fail("parameter", e.what(), Invalid);
    } catch (const std::exception& e) {
        return fail("numeric", e.what(), Numeric);
    }
    return fail("usage", "no subcommand", Invalid);
}
