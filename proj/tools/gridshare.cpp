#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <unistd.h>

#include "gridshare/report.hpp"

namespace {

bool use_color() { return std::getenv("GRIDSHARE_NO_COLOR") == nullptr && isatty(STDERR_FILENO) != 0; }

void print_error(const std::string& message) {
    if (use_color()) {
        std::cerr << "\033[1;31merror:\033[0m " << message << "\n";
    } else {
        std::cerr << "error: " << message << "\n";
    }
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resource-element accounting for LTE/5G/6G spectrum sharing"};
    app.set_version_flag("--version", "gridshare 1.0.0");

    std::string command;
    std::string scenario_path;
    std::string format = "md";
    std::string output_path;
    std::string per_slot_path;
    std::optional<std::uint64_t> seed;

    app.add_option("command", command, "budget | overhead | classify | simulate | interference | sweep")->required();
    app.add_option("-s,--scenario", scenario_path, "Scenario JSON file")->required();
    app.add_option("-f,--format", format, "Output format: md, csv or json");
    app.add_option("-o,--output", output_path, "Write the report to this file instead of stdout");
    app.add_option("--seed", seed, "Override the scenario seed");
    app.add_option("--per-slot", per_slot_path, "simulate: write the per-slot trace as CSV to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::ifstream in(scenario_path, std::ios::binary);
    if (!in) {
        print_error("cannot read scenario file " + scenario_path);
        return 1;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    gridshare::cli::RunOptions options;
    options.per_slot = !per_slot_path.empty();
    const auto result = gridshare::cli::run_document(command, buffer.str(), format, seed, options);
    if (result.exit_code != 0) {
        print_error(scenario_path + ": " + result.error);
        return result.exit_code;
    }
    if (options.per_slot && !write_file(per_slot_path, result.per_slot_csv)) {
        print_error("cannot write " + per_slot_path);
        return 2;
    }
    if (output_path.empty()) {
        std::cout << result.text;
    } else if (!write_file(output_path, result.text)) {
        print_error("cannot write " + output_path);
        return 2;
    }
    return 0;
}
