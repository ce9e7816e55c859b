#include "buddynet/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "buddynet/graph.hpp"
#include "buddynet/motif.hpp"
#include "buddynet/nullmodel.hpp"
#include "buddynet/stats.hpp"
#include "buddynet/synth.hpp"
#include "buddynet/validate.hpp"

namespace buddynet {

namespace {

using nlohmann::ordered_json;

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

ordered_json input_digest(const std::string& path) {
    return {{"path", path}, {"fnv1a64", hex64(fnv1a64_file(path))}};
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << text;
    if (!out.flush()) throw Error("write failed: " + path);
}

struct ReportSink {
    std::string out_path;  // empty: stdout

    void emit(const ordered_json& report, std::ostream& stdout_stream) const {
        const std::string text = report.dump(2) + "\n";
        if (out_path.empty()) {
            stdout_stream << text;
        } else {
            write_text_file(out_path, text);
        }
    }
};

struct Timer {
    std::chrono::steady_clock::time_point begin = std::chrono::steady_clock::now();

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    }
};

ordered_json run_report(const std::string& command, ordered_json inputs, ordered_json parameters,
                        ordered_json outputs, double wall_time) {
    return {{"command", command},
            {"inputs", std::move(inputs)},
            {"parameters", std::move(parameters)},
            {"outputs", std::move(outputs)},
            {"wall_time", wall_time}};
}

int default_parallel() {
    if (const char* env = std::getenv("BUDDYNET_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::uint64_t generate_seed() {
    std::random_device rd;
    const std::uint64_t hi = rd();
    const std::uint64_t lo = rd();
    return (hi << 32) ^ lo ^
           static_cast<std::uint64_t>(
               std::chrono::steady_clock::now().time_since_epoch().count());
}

RatioMode parse_ratio_mode(const std::string& text) {
    if (text == "pooled") return RatioMode::Pooled;
    if (text == "mean") return RatioMode::PerPairMean;
    throw Error("--ratio-mode must be 'pooled' or 'mean'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"buddy-relation census and conditional uniform graph test "
                 "for timestamped backer->project networks"};
    app.require_subcommand(1);

    // Common options, bound per subcommand.
    std::string backings_path, projects_path, out_path;

    auto add_graph_inputs = [&](CLI::App* cmd) {
        cmd->add_option("--backings", backings_path, "backings.csv path")
            ->required();
        cmd->add_option("--projects", projects_path, "projects.csv path")
            ->required();
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
    };

    // validate
    auto* cmd_validate = app.add_subcommand("validate", "consistency report for a dataset");
    add_graph_inputs(cmd_validate);
    add_out(cmd_validate);

    // stats
    auto* cmd_stats = app.add_subcommand("stats", "degree distribution summary");
    std::string side_text = "project";
    std::string format = "json";
    std::string hist_out;
    add_graph_inputs(cmd_stats);
    add_out(cmd_stats);
    cmd_stats->add_option("--side", side_text, "project | backer")
        ->check(CLI::IsMember({"project", "backer"}));
    cmd_stats->add_option("--format", format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_stats->add_option("--hist-out", hist_out, "write degree,count CSV here");

    // buddy
    auto* cmd_buddy = app.add_subcommand("buddy", "buddy-relation census and ratios");
    std::string cases_out;
    bool exclude_founder_w = false;
    add_graph_inputs(cmd_buddy);
    add_out(cmd_buddy);
    cmd_buddy->add_option("--cases-out", cases_out, "write the per-case CSV here");
    cmd_buddy->add_flag("--exclude-founder-w", exclude_founder_w,
                        "count only co-backers who never founded a project");

    // cug
    auto* cmd_cug = app.add_subcommand("cug", "conditional uniform graph significance test");
    int trials = 100;
    std::optional<std::uint64_t> seed_opt;
    std::string ratio_mode_text = "pooled";
    int parallel = default_parallel();
    std::string cug_hist_out;
    std::size_t hist_bins = 20;
    add_graph_inputs(cmd_cug);
    add_out(cmd_cug);
    cmd_cug->add_option("--trials", trials, "number of Monte Carlo trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_cug->add_option("--seed", seed_opt, "master seed (generated and reported if omitted)");
    cmd_cug->add_option("--ratio-mode", ratio_mode_text, "pooled | mean")
        ->check(CLI::IsMember({"pooled", "mean"}))
        ->capture_default_str();
    cmd_cug->add_option("--parallel", parallel,
                        "worker threads (default: BUDDYNET_THREADS, else all cores)")
        ->check(CLI::PositiveNumber);
    cmd_cug->add_flag("--exclude-founder-w", exclude_founder_w,
                      "census variant for both observed and simulated graphs");
    cmd_cug->add_option("--hist-out", cug_hist_out, "write simulated-ratio histogram CSV here");
    cmd_cug->add_option("--hist-bins", hist_bins, "histogram bin count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // synth
    auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic dataset");
    std::string config_path, out_prefix;
    std::optional<std::uint64_t> synth_seed_opt;
    cmd_synth->add_option("--config", config_path, "generator config JSON")->required();
    cmd_synth->add_option("--seed", synth_seed_opt, "overrides the config seed");
    cmd_synth->add_option("--out-prefix", out_prefix, "output file prefix")->required();
    add_out(cmd_synth);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);  // CLI11's vector overload expects reversed arguments
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        const Timer timer;
        ReportSink sink{out_path};

        if (cmd_validate->parsed()) {
            ordered_json inputs = {{"backings", input_digest(backings_path)},
                                   {"projects", input_digest(projects_path)}};
            const auto graph = TemporalBipartiteGraph::load_files(backings_path, projects_path);
            const ValidationReport report = validate(graph);
            sink.emit(run_report("validate", std::move(inputs), ordered_json::object(),
                                 to_json(report), timer.seconds()),
                      out);
            return 0;
        }

        if (cmd_stats->parsed()) {
            ordered_json inputs = {{"backings", input_digest(backings_path)},
                                   {"projects", input_digest(projects_path)}};
            const auto graph = TemporalBipartiteGraph::load_files(backings_path, projects_path);
            const DegreeSide side =
                side_text == "project" ? DegreeSide::ProjectIn : DegreeSide::BackerOut;
            const DegreeSummary summary = degree_summary(graph, side);
            if (!hist_out.empty()) {
                write_text_file(hist_out, histogram_csv(degree_histogram(graph, side)));
            }
            if (format == "csv") {
                if (out_path.empty()) {
                    out << to_csv(summary);
                } else {
                    write_text_file(out_path, to_csv(summary));
                }
            } else {
                ordered_json parameters = {{"side", side_text}, {"format", format}};
                sink.emit(run_report("stats", std::move(inputs), std::move(parameters),
                                     to_json(summary), timer.seconds()),
                          out);
            }
            return 0;
        }

        if (cmd_buddy->parsed()) {
            ordered_json inputs = {{"backings", input_digest(backings_path)},
                                   {"projects", input_digest(projects_path)}};
            const auto graph = TemporalBipartiteGraph::load_files(backings_path, projects_path);
            CensusOptions options;
            options.collect_cases = !cases_out.empty();
            options.exclude_founder_w = exclude_founder_w;
            const BuddyCensus census = enumerate_buddy_cases(graph, options);
            if (!cases_out.empty()) {
                std::ofstream cases(cases_out, std::ios::binary);
                if (!cases) throw Error("cannot open file for writing: " + cases_out);
                write_cases_csv(graph, census, cases);
            }
            ordered_json parameters = {{"exclude_founder_w", exclude_founder_w}};
            sink.emit(run_report("buddy", std::move(inputs), std::move(parameters),
                                 buddy_report_json(census), timer.seconds()),
                      out);
            return 0;
        }

        if (cmd_cug->parsed()) {
            ordered_json inputs = {{"backings", input_digest(backings_path)},
                                   {"projects", input_digest(projects_path)}};
            const auto graph = TemporalBipartiteGraph::load_files(backings_path, projects_path);
            CugOptions options;
            options.trials = trials;
            options.master_seed = seed_opt ? *seed_opt : generate_seed();
            options.ratio_mode = parse_ratio_mode(ratio_mode_text);
            options.parallel = parallel;
            options.exclude_founder_w = exclude_founder_w;
            const CugResult result = cug_test(graph, options);
            if (!cug_hist_out.empty()) {
                write_text_file(cug_hist_out, simulated_ratio_histogram_csv(result, hist_bins));
            }
            ordered_json parameters = {{"trials", options.trials},
                                       {"seed", options.master_seed},
                                       {"seed_generated", !seed_opt.has_value()},
                                       {"ratio_mode", ratio_mode_text},
                                       {"parallel", options.parallel},
                                       {"exclude_founder_w", exclude_founder_w}};
            sink.emit(run_report("cug", std::move(inputs), std::move(parameters), to_json(result),
                                 timer.seconds()),
                      out);
            return 0;
        }

        if (cmd_synth->parsed()) {
            std::ifstream config_in(config_path, std::ios::binary);
            if (!config_in) throw Error("cannot open file: " + config_path);
            nlohmann::json config_json;
            try {
                config_in >> config_json;
            } catch (const nlohmann::json::exception& e) {
                throw Error(config_path + ": invalid JSON: " + e.what());
            }
            SynthConfig config = synth_config_from_json(config_json);
            if (synth_seed_opt) config.seed = *synth_seed_opt;

            const SynthResult result = generate(config);
            const std::string backings_file = out_prefix + ".backings.csv";
            const std::string projects_file = out_prefix + ".projects.csv";
            const std::string truth_file = out_prefix + ".truth.json";
            result.graph.save_files(backings_file, projects_file);
            write_text_file(truth_file, truth_to_json(config, result).dump(2) + "\n");

            ordered_json inputs = {{"config", input_digest(config_path)}};
            ordered_json outputs = {{"backings", backings_file},
                                    {"projects", projects_file},
                                    {"truth", truth_file},
                                    {"edges", result.graph.n_edges()},
                                    {"backers", result.graph.n_backers()},
                                    {"projects_count", result.graph.n_projects()},
                                    {"planted_count", result.truth.planted.size()},
                                    {"skipped_events", result.truth.skipped_events}};
            sink.emit(run_report("synth", std::move(inputs), to_json(config), std::move(outputs),
                                 timer.seconds()),
                      out);
            return 0;
        }

        err << "usage error: no subcommand\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace buddynet
