#include "gridshare/report.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "gridshare/budget.hpp"
#include "gridshare/coexist.hpp"
#include "gridshare/errors.hpp"
#include "gridshare/grid.hpp"
#include "gridshare/lte.hpp"
#include "gridshare/nr.hpp"

namespace gridshare::cli {

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 6> kCommands = {{
    {Command::Budget, "budget"},
    {Command::Overhead, "overhead"},
    {Command::Classify, "classify"},
    {Command::Simulate, "simulate"},
    {Command::Interference, "interference"},
    {Command::Sweep, "sweep"},
}};

constexpr std::array<std::pair<Format, std::string_view>, 3> kFormats = {{
    {Format::Md, "md"},
    {Format::Csv, "csv"},
    {Format::Json, "json"},
}};

std::string with_separators(std::int64_t v) {
    std::string digits = std::to_string(v < 0 ? -v : v);
    std::string out;
    const auto n = digits.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && (n - i) % 3 == 0) {
            out += ',';
        }
        out += digits[i];
    }
    return v < 0 ? "-" + out : out;
}

std::string plain_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, Pct>) {
                return v.value.to_string(2);
            } else {
                return v.value.to_string(v.decimals);
            }
        },
        cell);
}

std::string md_text(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        return with_separators(*i);
    }
    if (const auto* p = std::get_if<Pct>(&cell)) {
        return p->value.to_string(2) + "%";
    }
    return plain_text(cell);
}

Json json_value(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::int64_t>) {
                return v;
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, Pct>) {
                return v.value.rounded(2);
            } else {
                return v.value.rounded(v.decimals);
            }
        },
        cell);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string render_md(const Table& t) {
    std::ostringstream os;
    for (const auto& [key, value] : t.meta) {
        os << key << ": " << md_text(value) << "\n";
    }
    if (!t.meta.empty()) {
        os << "\n";
    }
    std::vector<std::vector<std::string>> body;
    for (const auto& row : t.rows) {
        std::vector<std::string> r;
        for (const auto& c : row) {
            r.push_back(md_text(c));
        }
        body.push_back(std::move(r));
    }
    if (t.total) {
        std::vector<std::string> r;
        for (const auto& c : *t.total) {
            r.push_back(md_text(c));
        }
        body.push_back(std::move(r));
    }
    std::vector<std::size_t> width;
    for (const auto& c : t.columns) {
        width.push_back(std::max<std::size_t>(c.header.size(), 3));
    }
    for (const auto& r : body) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            width[i] = std::max(width[i], r[i].size());
        }
    }
    auto line = [&](const std::vector<std::string>& cells) {
        os << "|";
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto pad = std::string(width[i] - cells[i].size(), ' ');
            os << " " << (t.columns[i].numeric ? pad + cells[i] : cells[i] + pad) << " |";
        }
        os << "\n";
    };
    std::vector<std::string> header;
    for (const auto& c : t.columns) {
        header.push_back(c.header);
    }
    line(header);
    os << "|";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (t.columns[i].numeric ? " " + std::string(width[i] - 1, '-') + ": |" : " " + std::string(width[i], '-') + " |");
    }
    os << "\n";
    for (const auto& r : body) {
        line(r);
    }
    return os.str();
}

std::string render_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "," : "") << csv_field(t.columns[i].key);
    }
    os << "\n";
    auto row = [&](const std::vector<Cell>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << (i ? "," : "") << csv_field(plain_text(cells[i]));
        }
        os << "\n";
    };
    for (const auto& r : t.rows) {
        row(r);
    }
    if (t.total) {
        row(*t.total);
    }
    return os.str();
}

Json json_row(const Table& t, const std::vector<Cell>& cells) {
    Json o = Json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        o[t.columns[i].key] = json_value(cells[i]);
    }
    return o;
}

std::string render_json(Command command, const Table& t) {
    Json doc;
    doc["command"] = std::string(to_string(command));
    Json meta = Json::object();
    for (const auto& [key, value] : t.meta) {
        meta[key] = json_value(value);
    }
    doc["meta"] = meta;
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        rows.push_back(json_row(t, r));
    }
    doc["rows"] = rows;
    if (t.total) {
        doc["total"] = json_row(t, *t.total);
    }
    return doc.dump(2) + "\n";
}

std::string carrier_summary(const CarrierConfig& c) {
    std::string s = std::to_string(c.n_prb) + " PRB, " + std::to_string(c.numerology.scs_khz) + " kHz, " +
                    (c.duplex == Duplex::Fdd ? "FDD" : "TDD " + c.tdd_pattern->cycle_string()) + ", " +
                    std::to_string(c.span_ms) + " ms";
    return s;
}

std::string int_list(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? " " : "") + std::to_string(v[i]);
    }
    return s;
}

Table budget_table(const Scenario& s) {
    Table t;
    t.columns = {{"crs_ports", "No. of LTE CRS ports"},
                 {"dss_re", "No. of NR PDSCH REs on DSS carrier"},
                 {"nr_re", "No. of NR PDSCH REs on NR carrier"},
                 {"lte_re", "No. of NR PDSCH REs on LTE carrier"},
                 {"loss_vs_nr", "NR DSS loss vs. NR carrier"},
                 {"loss_vs_lte", "NR DSS loss vs. LTE carrier"}};
    t.meta = {{"dmrs_symbols", int_list(s.dss.resolved_dmrs())},
              {"lte_pdcch_symbols", std::int64_t{s.dss.lte_pdcch}},
              {"nr_pdcch_symbols", std::int64_t{s.dss.nr_pdcch}}};
    for (const auto& r : budget::dss_table(s.dss)) {
        t.rows.push_back({std::int64_t{r.crs_ports}, r.dss_re, r.nr_re, r.lte_re, Pct{r.loss_vs_nr}, Pct{r.loss_vs_lte}});
    }
    return t;
}

Table overhead_table(const Scenario& s) {
    if (!s.nr) {
        throw ValidationError("nr", "the overhead command needs an nr section");
    }
    const auto report = budget::nr_overhead(s.carrier, *s.nr);
    budget::verify_overhead(s.carrier, *s.nr, report);
    Table t;
    t.columns = {{"signal", "Signal / channel", false},
                 {"configuration", "Configuration", false},
                 {"re_count", "Total RE in " + std::to_string(report.period_ms) + " ms"},
                 {"pct_of_total", "Overhead vs. total RE (%)"},
                 {"pct_of_downlink", "Overhead vs. total downlink RE (%)"}};
    t.meta = {{"carrier", carrier_summary(s.carrier)},
              {"period_ms", std::int64_t{report.period_ms}},
              {"total_re", report.total_re},
              {"downlink_re", report.downlink_re}};
    auto row = [](const budget::OverheadRow& r) -> std::vector<Cell> {
        return {r.display_name, r.config_summary, r.re_count, Pct{r.pct_of_total}, Pct{r.pct_of_downlink}};
    };
    for (const auto& r : report.rows) {
        t.rows.push_back(row(r));
    }
    t.total = row(report.total_row);
    return t;
}

coexist::MrssCategoryMap build_map(const Scenario& s) {
    if (!s.mrss) {
        throw ValidationError("mrss", "this command needs an mrss section");
    }
    auto grid = make_grid(s.carrier);
    if (s.lte) {
        grid = lte::apply_lte(std::move(grid), s.lte->cell);
    }
    if (s.nr) {
        grid = nr::apply_nr(std::move(grid), *s.nr);
    }
    const auto& m = *s.mrss;
    auto map = coexist::classify_mrss(grid, m.reserved, m.control_mode, m.control, m.carrier_6g);
    for (const auto& iot : m.iot) {
        map = coexist::reserve_iot(std::move(map), iot.prbs, iot.slots);
    }
    if (!m.sixg_ssb.empty()) {
        map = coexist::place_6g_ssb(std::move(map), m.sixg_ssb);
    }
    return map;
}

Table classify_table(const Scenario& s) {
    const auto map = build_map(s);
    const auto dl = map.downlink_count();
    Table t;
    t.columns = {{"category", "Category", false}, {"re_count", "REs"}, {"pct_of_downlink", "Share of downlink RE (%)"}};
    t.meta = {{"carrier", carrier_summary(s.carrier)},
              {"control_mode", std::string(to_string(map.control_mode().kind))},
              {"control_footprint_5g", map.control_footprint()}};
    const std::array<std::pair<const char*, std::int64_t>, 3> rows = {{
        {"shared", map.shared_count()},
        {"reserved", map.reserved_count()},
        {"control", map.control_count()},
    }};
    for (const auto& [name, n] : rows) {
        t.rows.push_back({std::string(name), n, Pct{Ratio::percent(n, dl)}});
    }
    t.total = std::vector<Cell>{std::string("downlink"), dl, Pct{Ratio::percent(dl, dl)}};
    return t;
}

coexist::SimResult run_simulation(const Scenario& s) {
    if (!s.traffic) {
        throw ValidationError("traffic", "the simulate command needs a traffic section");
    }
    const auto map = build_map(s);
    const int n_slots = s.sim_slots.value_or(s.carrier.n_slots());
    return coexist::simulate(map, *s.traffic, s.policy.value_or(coexist::SchedPolicy::ProportionalShare), n_slots);
}

Table simulate_table(const Scenario& s) {
    const auto r = run_simulation(s);
    Table t;
    t.columns = {{"rat", "RAT", false},
                 {"demand", "Demand (RE)"},
                 {"granted", "Granted (RE)"},
                 {"dropped", "Dropped (RE)"},
                 {"efficiency_vs_pure", "Efficiency vs. pure carrier"}};
    t.meta = {{"policy", std::string(to_string(s.policy.value_or(coexist::SchedPolicy::ProportionalShare)))},
              {"slots", static_cast<std::int64_t>(r.pool.size())},
              {"seed", static_cast<std::int64_t>(s.seed)},
              {"shared_pool", r.shared_pool_size},
              {"unused_shared", r.unused_shared}};
    auto sum = [](const std::vector<std::int64_t>& v) {
        std::int64_t acc = 0;
        for (auto x : v) {
            acc += x;
        }
        return acc;
    };
    t.rows.push_back({std::string("5G"), sum(r.demand_5g), r.total_5g, r.dropped_5g, Fixed{r.efficiency_5g, 2}});
    t.rows.push_back({std::string("6G"), sum(r.demand_6g), r.total_6g, r.dropped_6g, Fixed{r.efficiency_6g, 2}});
    return t;
}

Table interference_table(const Scenario& s) {
    if (!s.lte) {
        throw ValidationError("lte", "the interference command needs an lte section");
    }
    auto params = s.dss;
    params.lte_pdcch = s.lte->cell.pdcch_symbols;
    const auto mitigation = s.mitigation.value_or(coexist::Mitigation::serving_only());
    const auto r = coexist::neighbor_interference(s.lte->cell, s.lte->neighbors, mitigation, params.layout());
    Table t;
    t.columns = {{"mitigation", "Mitigation", false},
                 {"pool", "NR data RE per PRB"},
                 {"clean", "Clean"},
                 {"sacrificed", "Sacrificed"},
                 {"dirty", "Dirty"},
                 {"dirty_pct", "Dirty share (%)"}};
    std::string neighbors;
    for (const auto& n : s.lte->neighbors) {
        neighbors += (neighbors.empty() ? "" : " ") + std::to_string(n.cell_id) + "/" + std::to_string(n.crs_ports);
    }
    t.meta = {{"serving_cell", std::int64_t{s.lte->cell.cell_id}},
              {"serving_crs_ports", std::int64_t{s.lte->cell.crs_ports}},
              {"neighbors", neighbors.empty() ? std::string("none") : neighbors}};
    if (mitigation.kind == coexist::Mitigation::Kind::ReceiverCancellation) {
        t.meta.emplace_back("effectiveness", Fixed{Ratio(static_cast<std::int64_t>(mitigation.effectiveness * 10000 + 0.5), 10000), 2});
    }
    t.rows.push_back({std::string(to_string(mitigation.kind)), r.pool, r.clean, r.sacrificed, r.dirty,
                      Pct{r.pool == 0 ? Ratio(0, 1) : Ratio::percent(r.dirty, r.pool)}});
    return t;
}

Json::json_pointer pointer_for(const std::string& dotted) {
    std::string p;
    std::size_t start = 0;
    while (start <= dotted.size()) {
        const auto dot = dotted.find('.', start);
        p += "/" + dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (dot == std::string::npos) {
            break;
        }
        start = dot + 1;
    }
    return Json::json_pointer(p);
}

Table build_table(Command command, const Scenario& s);

Table sweep_table(const Scenario& s) {
    if (!s.sweep) {
        throw ValidationError("sweep", "the sweep command needs a sweep section");
    }
    const auto& sweep = *s.sweep;
    const auto sub = *command_from_string(sweep.command);
    Json base = to_json(s);
    base.erase("sweep");

    Table t;
    t.columns.push_back({"point", "Point"});
    for (const auto& p : sweep.parameters) {
        t.columns.push_back({p.path, p.path, false});
    }
    t.columns.push_back({"row", "Row", false});
    t.columns.push_back({"metric", "Metric", false});
    t.columns.push_back({"value", "Value"});
    t.meta = {{"command", sweep.command}};

    std::vector<std::size_t> index(sweep.parameters.size(), 0);
    std::int64_t point = 0;
    while (true) {
        Json doc = base;
        std::vector<Cell> prefix{point};
        for (std::size_t i = 0; i < index.size(); ++i) {
            const auto& param = sweep.parameters[i];
            const auto& value = param.values[index[i]];
            const auto ptr = pointer_for(param.path);
            if (!doc.contains(ptr.parent_pointer())) {
                throw ValidationError("sweep.parameters." + std::to_string(i) + ".path",
                                      "no such section \"" + param.path + "\"");
            }
            doc[ptr] = value;
            prefix.emplace_back(value.is_string() ? value.get<std::string>() : value.dump());
        }
        Scenario point_scenario;
        try {
            point_scenario = scenario_from_json(doc);
        } catch (const ValidationError& e) {
            const std::string detail = std::string(e.what()).substr(e.path().size() + 2);
            throw ValidationError(e.path(), detail + " (sweep point " + std::to_string(point) + ")");
        }
        const Table inner = build_table(sub, point_scenario);
        auto emit = [&](const std::vector<Cell>& r) {
            const std::string row_name = plain_text(r.front());
            for (std::size_t c = 1; c < r.size(); ++c) {
                auto line = prefix;
                line.emplace_back(row_name);
                line.emplace_back(inner.columns[c].key);
                line.emplace_back(plain_text(r[c]));
                t.rows.push_back(std::move(line));
            }
        };
        for (const auto& r : inner.rows) {
            emit(r);
        }
        if (inner.total) {
            emit(*inner.total);
        }
        ++point;
        // Odometer over the parameter value lists, last parameter fastest.
        std::size_t k = index.size();
        while (k > 0) {
            --k;
            if (++index[k] < sweep.parameters[k].values.size()) {
                break;
            }
            index[k] = 0;
            if (k == 0) {
                return t;
            }
        }
    }
}

Table build_table(Command command, const Scenario& s) {
    switch (command) {
        case Command::Budget:
            return budget_table(s);
        case Command::Overhead:
            return overhead_table(s);
        case Command::Classify:
            return classify_table(s);
        case Command::Simulate:
            return simulate_table(s);
        case Command::Interference:
            return interference_table(s);
        case Command::Sweep:
            return sweep_table(s);
    }
    throw Error("unknown command");
}

}  // namespace

std::optional<Command> command_from_string(std::string_view name) {
    for (const auto& [c, n] : kCommands) {
        if (n == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::optional<Format> format_from_string(std::string_view name) {
    for (const auto& [f, n] : kFormats) {
        if (n == name) {
            return f;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Command command) {
    for (const auto& [c, n] : kCommands) {
        if (c == command) {
            return n;
        }
    }
    return "?";
}

std::string_view to_string(Format format) {
    for (const auto& [f, n] : kFormats) {
        if (f == format) {
            return n;
        }
    }
    return "?";
}

Report build_report(Command command, const Scenario& scenario) { return {command, build_table(command, scenario)}; }

std::string render(const Report& report, Format format) {
    switch (format) {
        case Format::Md:
            return render_md(report.table);
        case Format::Csv:
            return render_csv(report.table);
        case Format::Json:
            return render_json(report.command, report.table);
    }
    return {};
}

std::string per_slot_csv(const Scenario& scenario) {
    const auto r = run_simulation(scenario);
    std::ostringstream os;
    os << "slot,pool,demand_5g,demand_6g,grant_5g,grant_6g,unused\n";
    for (std::size_t i = 0; i < r.pool.size(); ++i) {
        os << i << ',' << r.pool[i] << ',' << r.demand_5g[i] << ',' << r.demand_6g[i] << ',' << r.grant_5g[i] << ','
           << r.grant_6g[i] << ',' << r.unused[i] << '\n';
    }
    return os.str();
}

namespace {

RunOutput failure(int code, std::string message) { return {{}, {}, code, std::move(message)}; }

template <typename Fn>
RunOutput guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        return failure(1, std::string("validation error at ") + e.what());
    } catch (const ParseError& e) {
        return failure(1, e.what());
    } catch (const ConfigError& e) {
        return failure(1, std::string("invalid configuration: ") + e.what());
    } catch (const Error& e) {
        return failure(2, std::string("computation error: ") + e.what());
    } catch (const std::exception& e) {
        return failure(2, std::string("internal error: ") + e.what());
    }
}

}  // namespace

RunOutput run(std::string_view command, const Scenario& scenario, std::string_view format, const RunOptions& options) {
    const auto cmd = command_from_string(command);
    if (!cmd) {
        return failure(1, "unknown command \"" + std::string(command) + "\"");
    }
    const auto fmt = format_from_string(format);
    if (!fmt) {
        return failure(1, "unknown format \"" + std::string(format) + "\" (expected md, csv or json)");
    }
    if (options.per_slot && *cmd != Command::Simulate) {
        return failure(1, "per-slot output is only available for simulate");
    }
    return guarded([&] {
        RunOutput out;
        out.text = render(build_report(*cmd, scenario), *fmt);
        if (options.per_slot) {
            out.per_slot_csv = per_slot_csv(scenario);
        }
        return out;
    });
}

RunOutput run_document(std::string_view command, std::string_view document, std::string_view format,
                       std::optional<std::uint64_t> seed, const RunOptions& options) {
    if (!command_from_string(command)) {
        return failure(1, "unknown command \"" + std::string(command) + "\"");
    }
    Scenario scenario;
    auto parsed = guarded([&] {
        scenario = parse_scenario(document);
        return RunOutput{};
    });
    if (parsed.exit_code != 0) {
        return parsed;
    }
    if (seed) {
        scenario.set_seed(*seed);
    }
    return run(command, scenario, format, options);
}

}  // namespace gridshare::cli
