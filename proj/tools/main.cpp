#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cohost/chart_render.hpp"
#include "cohost/serve.hpp"
#include "cohost/simulator.hpp"
#include "cohost/wire.hpp"

namespace fs = std::filesystem;
using namespace cohost;

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw MeetingError(MeetingError::Kind::validation, "cannot open '" + path + "'");
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw MeetingError(MeetingError::Kind::validation, "cannot write '" + path.string() + "'");
    }
    out << content;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    if (!out) {
        throw MeetingError(MeetingError::Kind::validation, "cannot write '" + path.string() + "'");
    }
    for (const auto& line : lines) out << line << "\n";
}

// Rendered copies of every chart that reached its receiver, in delivery order.
void write_charts(const fs::path& dir, const std::vector<OutputAction>& actions) {
    fs::create_directories(dir);
    int index = 0;
    for (const auto& action : actions) {
        const auto* dm = std::get_if<DirectMessage>(&action.body);
        if (!dm || !dm->chart) continue;
        char name[32];
        std::snprintf(name, sizeof(name), "chart_%03d", index++);
        write_file(dir / (std::string(name) + ".svg"), render_chart(*dm->chart, ChartFormat::Svg));
        write_file(dir / (std::string(name) + ".txt"), render_chart(*dm->chart, ChartFormat::Text));
    }
}

int cmd_simulate(const std::string& scenario_path, std::uint64_t seed, bool seed_set,
                 const std::string& out_dir) {
    auto scenario = sim::load_scenario(scenario_path);
    if (seed_set) scenario.seed = seed;

    const auto result = sim::run(scenario);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_lines(dir / "events.ndjson", result.event_lines);
    write_lines(dir / "actions.ndjson", result.action_lines);
    write_file(dir / "report.json", wire::report_to_json(*result.report).dump(2) + "\n");
    write_charts(dir / "charts", result.actions);
    std::cout << "wrote " << (dir / "events.ndjson").string() << ", actions.ndjson, report.json, charts/"
              << "\n";
    return 0;
}

int cmd_replay(const std::string& events_path, const std::string& out_path) {
    const auto result = sim::replay_lines(read_lines(events_path));
    if (out_path.empty()) {
        for (const auto& line : result.action_lines) std::cout << line << "\n";
    } else {
        write_lines(out_path, result.action_lines);
    }
    return 0;
}

int cmd_oracle(const std::string& scenario_path, const std::string& out_path) {
    const auto report = sim::oracle_report(sim::load_scenario(scenario_path));
    const std::string text = sim::oracle_to_json(report).dump() + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
    return 0;
}

int cmd_compare(const std::string& sim_dir, const std::string& oracle_path) {
    const auto result = sim::replay_lines(read_lines((fs::path(sim_dir) / "events.ndjson").string()));

    std::ifstream in(oracle_path);
    if (!in) {
        throw MeetingError(MeetingError::Kind::validation, "cannot open '" + oracle_path + "'");
    }
    const auto oracle = sim::oracle_from_json(nlohmann::json::parse(in));

    const auto divergences = sim::compare(result, oracle);
    if (divergences.empty()) {
        std::cout << "no divergence\n";
        return 0;
    }
    for (const auto& line : divergences) std::cout << line << "\n";
    return 1;
}

int cmd_render(const std::string& spec_path, const std::string& format) {
    std::ifstream in(spec_path);
    if (!in) {
        throw MeetingError(MeetingError::Kind::validation, "cannot open '" + spec_path + "'");
    }
    const auto spec = wire::chart_from_json(nlohmann::json::parse(in));
    std::cout << render_chart(spec, chart_format_from_name(format));
    return 0;
}

int cmd_serve(bool stdio, const std::string& listen) {
    if (stdio || listen.empty()) {
        return wire::serve_stream(std::cin, std::cout);
    }
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos) {
        std::cerr << "--listen expects HOST:PORT\n";
        return 1;
    }
    const std::string host = listen.substr(0, colon);
    const int port = std::stoi(listen.substr(colon + 1));
    return wire::serve_listen(host, static_cast<std::uint16_t>(port));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cohost: a deterministic meeting co-host engine with a simulation harness"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "sim_out";
    std::uint64_t seed = 0;
    auto* simulate = app.add_subcommand("simulate", "run a scenario through the engine");
    simulate->add_option("scenario", scenario_path, "scenario JSON file")->required();
    auto* seed_opt = simulate->add_option("--seed", seed, "override the scenario seed");
    simulate->add_option("--out", out_dir, "output directory (default sim_out)");

    std::string events_path;
    std::string replay_out;
    auto* replay = app.add_subcommand("replay", "feed a recorded event log to the engine");
    replay->add_option("eventlog", events_path, "events.ndjson file")->required();
    replay->add_option("--out", replay_out, "write actions to a file instead of stdout");

    std::string oracle_scenario;
    std::string oracle_out;
    auto* oracle = app.add_subcommand("oracle", "emit the brute-force oracle report");
    oracle->add_option("scenario", oracle_scenario, "scenario JSON file")->required();
    oracle->add_option("--out", oracle_out, "write the report to a file instead of stdout");

    std::string compare_dir;
    std::string compare_oracle;
    auto* compare = app.add_subcommand("compare", "diff a simulate output directory against an oracle report");
    compare->add_option("sim", compare_dir, "simulate output directory")->required();
    compare->add_option("oracle", compare_oracle, "oracle report JSON file")->required();

    std::string render_spec;
    std::string render_format = "text";
    auto* render = app.add_subcommand("render", "render a chart spec");
    render->add_option("spec", render_spec, "chart spec JSON file")->required();
    render->add_option("--format", render_format, "svg or text")->required();

    bool serve_stdio = false;
    std::string serve_addr;
    auto* serve = app.add_subcommand("serve", "speak the wire protocol on stdio or a TCP socket");
    serve->add_flag("--stdio", serve_stdio, "serve on stdin/stdout (default)");
    serve->add_option("--listen", serve_addr, "listen on HOST:PORT for one connection");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return cmd_simulate(scenario_path, seed, seed_opt->count() > 0, out_dir);
        }
        if (replay->parsed()) return cmd_replay(events_path, replay_out);
        if (oracle->parsed()) return cmd_oracle(oracle_scenario, oracle_out);
        if (compare->parsed()) return cmd_compare(compare_dir, compare_oracle);
        if (render->parsed()) return cmd_render(render_spec, render_format);
        if (serve->parsed()) return cmd_serve(serve_stdio, serve_addr);
    } catch (const wire::WireError& err) {
        std::cerr << "error in " << err.field << ": " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
