#include <npsim/cli.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include <npsim/report.hpp>
#include <npsim/transport.hpp>
#include <npsim/version.hpp>

namespace npsim {

namespace {

FailureModel parse_failure_flag(const std::string& text) {
    FailureModel model;
    if (text == "none") {
        model.mode = FailureModel::Mode::None;
        return model;
    }
    if (text == "random") {
        model.mode = FailureModel::Mode::RandomPerSession;
        return model;
    }
    if (text.starts_with("path=")) {
        const std::string value = text.substr(5);
        std::size_t consumed = 0;
        int path = 0;
        try {
            path = std::stoi(value, &consumed);
        } catch (const std::exception&) {
            throw ConfigError("--fail path= needs a path number, got '" + value + "'");
        }
        if (consumed != value.size()) {
            throw ConfigError("--fail path= needs a path number, got '" + value + "'");
        }
        model.mode = FailureModel::Mode::Fixed;
        model.fixed.failed_path = path;
        return model;
    }
    throw ConfigError("unrecognized --fail value '" + text + "' (expected none, path=P or random)");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open output file: " + path);
    }
    file << text;
    if (!file) {
        throw ConfigError("failed writing output file: " + path);
    }
}

struct RunOptions {
    std::string strategy;
    int paths = 0;
    int sessions = 1;
    std::string fail = "none";
    std::uint64_t seed = 0;
    std::size_t payload_bytes = 8;
    std::optional<int> dedicated_path;
    std::string out_path;
    std::string trace_path;
};

int cmd_run(const RunOptions& options, std::ostream& out) {
    SimulationConfig config;
    config.strategy = *strategy_from_string(options.strategy);
    config.n = options.paths;
    config.sessions = options.sessions;
    config.failure = parse_failure_flag(options.fail);
    config.rng_seed = options.seed;
    config.payload_width = options.payload_bytes;
    if (options.dedicated_path) config.dedicated_path = *options.dedicated_path;
    config = resolved_config(config);

    const SimulationResult result = run_simulation(config);
    const RunManifest manifest = make_manifest(config);

    const std::string report_text = report_document(manifest, result.reports).dump(2) + "\n";
    if (options.out_path.empty()) {
        out << report_text;
    } else {
        write_text_file(options.out_path, report_text);
    }

    if (!options.trace_path.empty()) {
        std::ostringstream trace_text;
        write_trace(trace_text, manifest, result.trace);
        write_text_file(options.trace_path, trace_text.str());
    }
    return exit_code_for(result.reports);
}

struct SweepOptions {
    std::string strategy;
    int paths_min = 0;
    int paths_max = 0;
    std::uint64_t seed = 0;
    std::size_t payload_bytes = 8;
    std::string out_path;
};

int cmd_sweep(const SweepOptions& options, std::ostream& out) {
    if (options.paths_min < 2) {
        throw ConfigError("--paths-min must be at least 2");
    }
    if (options.paths_max < options.paths_min) {
        throw ConfigError("--paths-max must be at least --paths-min");
    }

    Json params;
    params["strategy"] = options.strategy;
    params["paths_min"] = options.paths_min;
    params["paths_max"] = options.paths_max;
    params["payload_bytes"] = options.payload_bytes;
    params["seed"] = options.seed;

    Json capacity_table = Json::array();
    Json recovery_matrix = Json::array();
    bool all_recovered = true;
    int scenarios = 0;
    int exit_code = 0;

    for (int n = options.paths_min; n <= options.paths_max; ++n) {
        SimulationConfig config;
        config.strategy = *strategy_from_string(options.strategy);
        config.n = n;
        config.sessions = 1;  // one session per failure position
        config.failure.mode = FailureModel::Mode::Exhaustive;
        config.rng_seed = options.seed;
        config.payload_width = options.payload_bytes;
        config = resolved_config(config);

        const SimulationResult result = run_simulation(config);
        capacity_table.push_back(
            Json{{"paths", n},
                 {"capacity", Json{{"num", result.reports.front().normalized_capacity.num()},
                                   {"den", result.reports.front().normalized_capacity.den()}}}});
        for (const SessionReport& report : result.reports) {
            recovery_matrix.push_back(
                Json{{"paths", n},
                     {"failed_path",
                      report.failed_path ? Json(*report.failed_path) : Json(nullptr)},
                     {"recovered", report.recovery_success}});
            all_recovered = all_recovered && report.recovery_success;
            ++scenarios;
        }
        if (exit_code_for(result.reports) != 0) exit_code = 2;
    }

    Json document;
    document["tool"] = kToolName;
    document["version"] = kToolVersion;
    document["sweep"] = params;
    document["params_hash"] = [&] {
        std::uint64_t h = fnv1a64(params.dump());
        static constexpr char digits[] = "0123456789abcdef";
        std::string hex(16, '0');
        for (int i = 15; i >= 0; --i) {
            hex[i] = digits[h & 0x0f];
            h >>= 4;
        }
        return hex;
    }();
    document["scenarios"] = scenarios;
    document["all_recovered"] = all_recovered;
    document["capacity_table"] = std::move(capacity_table);
    document["recovery_matrix"] = std::move(recovery_matrix);

    const std::string text = document.dump(2) + "\n";
    if (options.out_path.empty()) {
        out << text;
    } else {
        write_text_file(options.out_path, text);
    }
    return exit_code;
}

struct RenderOptions {
    std::string strategy;
    int paths = 0;
    std::optional<int> dedicated_path;
};

int cmd_render_schedule(const RenderOptions& options, std::ostream& out) {
    const StrategyKind strategy = *strategy_from_string(options.strategy);
    std::optional<PathId> dedicated;
    if (options.dedicated_path) {
        dedicated = *options.dedicated_path;
    } else if (strategy == StrategyKind::Nps1Dedicated) {
        dedicated = options.paths;
    }
    const TransmissionSchedule schedule = build_schedule(strategy, options.paths, dedicated);
    out << render_schedule(schedule);
    return 0;
}

}  // namespace

std::string render_schedule(const TransmissionSchedule& schedule) {
    const int n = schedule.path_count();

    // Working rows first, the extra protection path last.
    std::vector<PathId> rows;
    for (PathId p = 1; p <= n; ++p) rows.push_back(p);
    if (schedule.extra_path_present()) rows.push_back(kExtraPath);

    auto label_of = [](PathId p) {
        if (p == kExtraPath) return std::string("s -> r");
        return "s" + std::to_string(p) + " -> r" + std::to_string(p);
    };
    auto cell_of = [&](PathId p, int round) {
        const SlotAssignment& slot = schedule.slot(p, round);
        if (slot.kind == SlotAssignment::Kind::Parity) {
            return "y" + std::to_string(round);
        }
        return "x" + std::to_string(p) + "^" + std::to_string(slot.data_index);
    };

    std::size_t label_width = 0;
    for (PathId p : rows) label_width = std::max(label_width, label_of(p).size());
    std::size_t cell_width = std::string("round ").size() + std::to_string(n).size();
    for (PathId p : rows) {
        for (int r = 1; r <= n; ++r) cell_width = std::max(cell_width, cell_of(p, r).size());
    }

    auto pad = [](const std::string& text, std::size_t width) {
        return text + std::string(width - text.size(), ' ');
    };

    std::string table = pad("", label_width);
    for (int r = 1; r <= n; ++r) {
        table += "  " + pad("round " + std::to_string(r), cell_width);
    }
    table += '\n';
    for (PathId p : rows) {
        table += pad(label_of(p), label_width);
        for (int r = 1; r <= n; ++r) {
            table += "  " + pad(cell_of(p, r), cell_width);
        }
        table += '\n';
    }
    return table;
}

int exit_code_for(const std::vector<SessionReport>& reports) {
    for (const SessionReport& report : reports) {
        if (!report.recovery_success) return 2;
    }
    return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deterministic simulator for XOR parity protection of disjoint-path "
                 "connections against a single link failure",
                 kToolName};
    app.require_subcommand(1);

    static const std::vector<std::string> kStrategies{"nps1-extra", "nps1-dedicated", "nps2"};

    RunOptions run_options;
    CLI::App* run = app.add_subcommand("run", "Simulate sessions and write a report");
    run->add_option("--strategy", run_options.strategy, "protection strategy")
        ->required()
        ->check(CLI::IsMember(kStrategies));
    run->add_option("--paths", run_options.paths, "number of working paths (n)")->required();
    run->add_option("--sessions", run_options.sessions, "sessions to simulate");
    run->add_option("--fail", run_options.fail, "failure model: none, path=P or random");
    run->add_option("--seed", run_options.seed, "RNG seed");
    run->add_option("--payload-bytes", run_options.payload_bytes, "bytes per data unit");
    run->add_option("--dedicated-path", run_options.dedicated_path,
                    "parity path for nps1-dedicated (default: n)");
    run->add_option("--out", run_options.out_path, "report file (default: stdout)");
    run->add_option("--trace", run_options.trace_path, "write the packet trace to this file");

    SweepOptions sweep_options;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Run every failure position once per path count and aggregate");
    sweep->add_option("--strategy", sweep_options.strategy, "protection strategy")
        ->required()
        ->check(CLI::IsMember(kStrategies));
    sweep->add_option("--paths-min", sweep_options.paths_min, "smallest path count")->required();
    sweep->add_option("--paths-max", sweep_options.paths_max, "largest path count")->required();
    sweep->add_option("--seed", sweep_options.seed, "RNG seed");
    sweep->add_option("--payload-bytes", sweep_options.payload_bytes, "bytes per data unit");
    sweep->add_option("--out", sweep_options.out_path, "report file (default: stdout)");

    RenderOptions render_options;
    CLI::App* render = app.add_subcommand("render-schedule", "Print a schedule table");
    render->add_option("--strategy", render_options.strategy, "protection strategy")
        ->required()
        ->check(CLI::IsMember(kStrategies));
    render->add_option("--paths", render_options.paths, "number of working paths (n)")
        ->required();
    render->add_option("--dedicated-path", render_options.dedicated_path,
                       "parity path for nps1-dedicated (default: n)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(run_options, out);
        if (sweep->parsed()) return cmd_sweep(sweep_options, out);
        if (render->parsed()) return cmd_render_schedule(render_options, out);
        throw std::logic_error("no subcommand dispatched");
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const InvalidInputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const UnsupportedFailureError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const CorruptedTraceError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace npsim
