#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gridshare/ratio.hpp"
#include "gridshare/scenario.hpp"

namespace gridshare::cli {

enum class Command : std::uint8_t { Budget, Overhead, Classify, Simulate, Interference, Sweep };
enum class Format : std::uint8_t { Md, Csv, Json };

std::optional<Command> command_from_string(std::string_view name);
std::optional<Format> format_from_string(std::string_view name);
std::string_view to_string(Command command);
std::string_view to_string(Format format);

/// Percentage printed with 2 decimals.
struct Pct {
    Ratio value;
};

/// Fixed-point number with `decimals` decimals.
struct Fixed {
    Ratio value;
    int decimals = 2;
};

using Cell = std::variant<std::int64_t, std::string, Pct, Fixed>;

struct Column {
    std::string key;
    /// Markdown header; the CSV and JSON outputs use `key`.
    std::string header;
    bool numeric = true;
};

struct Table {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    std::optional<std::vector<Cell>> total;
    /// Context printed above markdown tables and under "meta" in JSON.
    std::vector<std::pair<std::string, Cell>> meta;
};

struct Report {
    Command command = Command::Budget;
    Table table;
};

struct RunOptions {
    /// Per-slot scheduler trace, rendered as CSV by `simulate`.
    bool per_slot = false;
};

struct RunOutput {
    std::string text;
    /// Per-slot CSV when requested.
    std::string per_slot_csv;
    int exit_code = 0;
    std::string error;
};

/// Computes the report for one command. Throws on invalid input or computation failure.
Report build_report(Command command, const Scenario& scenario);
std::string render(const Report& report, Format format);
/// Scheduler trace with columns slot,pool,demand_5g,demand_6g,grant_5g,grant_6g,unused.
std::string per_slot_csv(const Scenario& scenario);

/// Error-safe entry point: 0 success, 1 invalid input, 2 computation failure.
RunOutput run(std::string_view command, const Scenario& scenario, std::string_view format,
              const RunOptions& options = {});
/// Parses the document first; `seed` overrides the document seed when set.
RunOutput run_document(std::string_view command, std::string_view document, std::string_view format,
                       std::optional<std::uint64_t> seed = std::nullopt, const RunOptions& options = {});

}  // namespace gridshare::cli
