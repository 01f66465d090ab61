// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gridshare/budget.hpp"
#include "gridshare/coexist.hpp"
#include "gridshare/errors.hpp"
#include "gridshare/report.hpp"
#include "oracle.hpp"

using namespace gridshare;

namespace {

struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) {
            failures.push_back(what);
        }
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string scenario(const std::string& name) { return slurp(std::string(GRIDSHARE_SOURCE_DIR) + "/scenarios/" + name); }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CarrierConfig small_tdd(int n_prb, int span_ms) {
    return CarrierConfig{Numerology{30}, n_prb, Duplex::Tdd, TddPattern::from_string("DDDSU", {6, 4, 4}), span_ms};
}

// Returns nullopt when the random overlays do not fit the carrier.
std::optional<ResourceGrid> random_overlay_grid(const CarrierConfig& carrier, int period_ms) {
    const int prb = carrier.n_prb;
    nr::NrOverlaySet s;
    s.period_ms = period_ms;
    s.ssb = {oracle::uniform(0, 2), oracle::uniform(1, prb), oracle::uniform(1, 4), period_ms};
    s.coreset0 = {oracle::uniform(0, 1), oracle::uniform(1, prb), oracle::uniform(1, 2)};
    s.sib1 = {oracle::uniform(0, 1), oracle::uniform(1, prb), oracle::uniform(1, 2)};
    s.coreset1 = {oracle::uniform(0, prb), oracle::uniform(1, 2), std::nullopt};
    s.dmrs_symbols = {oracle::uniform(2, 4)};
    s.csi_rs = {oracle::uniform(0, 4), 1, oracle::uniform(1, prb), oracle::uniform(0, 1)};
    s.trs = {oracle::uniform(1, prb), 1, oracle::uniform(0, 3), 1, oracle::uniform(0, 1)};
    try {
        return nr::apply_nr(make_grid(carrier), s);
    } catch (const Error&) {
        return std::nullopt;
    }
}

using Runner = std::function<std::string(Check&)>;

// 1. Table 1 golden values through the CLI entry point.
std::string criterion1(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = cli::run_document("budget", scenario("table1.json"), "csv");
    const double dt = seconds_since(t0);
    c.expect(out.exit_code == 0, "budget exited with " + std::to_string(out.exit_code) + ": " + out.error);
    const std::vector<std::string> expected = {
        "crs_ports,dss_re,nr_re,lte_re,loss_vs_nr,loss_vs_lte",
        "1,102,132,138,22.73,26.09",
        "2,96,132,132,27.27,27.27",
        "4,92,132,128,30.30,28.13",
    };
    c.expect(lines(out.text) == expected, "rows differ:\n" + out.text);
    c.expect(dt < 1.0, "runtime " + std::to_string(dt) + " s");
    std::ostringstream msg;
    msg << "Table 1 rows exact (" << dt << " s)";
    return msg.str();
}

// 2. Table 3 golden values, including grid verification at 273 PRB x 40 slots.
std::string criterion2(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = cli::run_document("overhead", scenario("table3.json"), "csv");
    const double dt = seconds_since(t0);
    c.expect(out.exit_code == 0, "overhead exited with " + std::to_string(out.exit_code) + ": " + out.error);
    const auto ls = lines(out.text);
    const std::vector<std::tuple<std::int64_t, std::string, std::string>> rows = {
        {3840, "0.21", "0.31"},    {4608, "0.25", "0.37"}, {4608, "0.25", "0.37"}, {207360, "11.30", "16.48"},
        {8704, "0.47", "0.69"},    {4992, "0.27", "0.40"}, {234112, "12.76", "18.61"},
    };
    c.expect(ls.size() == rows.size() + 1, "expected 8 csv lines, got " + std::to_string(ls.size()));
    for (std::size_t i = 0; i < rows.size() && i + 1 < ls.size(); ++i) {
        const auto& [n, p_total, p_dl] = rows[i];
        const auto suffix = "," + std::to_string(n) + "," + p_total + "," + p_dl;
        c.expect(ls[i + 1].ends_with(suffix), "row " + std::to_string(i) + ": " + ls[i + 1] + " does not end with " + suffix);
    }
    c.expect(dt < 5.0, "runtime " + std::to_string(dt) + " s");
    std::ostringstream msg;
    msg << "Table 3 rows exact with grid verification (" << dt << " s)";
    return msg.str();
}

// 3. CORESET1 dominance.
std::string criterion3(Check& c) {
    const auto s = cli::parse_scenario(scenario("table3.json"));
    const auto r = budget::nr_overhead(s.carrier, *s.nr);
    const Ratio share = budget::dominance_share(r, "CORESET 1");
    const double v = share.to_double();
    c.expect(std::abs(v - 88.57) <= 0.1, "share " + share.to_string(2));
    c.expect(oracle::pct(207360, 234112) == share.to_string(2), "oracle disagrees: " + oracle::pct(207360, 234112));
    return "CORESET1 share of overhead " + share.to_string(2) + "%";
}

// 4. 4-port loss vs pure NR.
std::string criterion4(Check& c) {
    const auto rows = budget::dss_table();
    const auto it = std::ranges::find_if(rows, [](const auto& r) { return r.crs_ports == 4; });
    c.expect(it != rows.end(), "no 4-port row");
    const auto v = it != rows.end() ? it->loss_vs_nr.to_string(2) : "";
    c.expect(v == "30.30", "loss " + v);
    c.expect(oracle::loss(92, 132) == "30.30", "oracle loss " + oracle::loss(92, 132));
    return "4-port DSS loss vs NR " + v + "%";
}

// 5. Closed forms equal grid enumeration.
std::string criterion5(Check& c) {
    int configs = 0;
    int attempts = 0;
    while (configs < 250 && attempts < 5000) {
        ++attempts;
        const int ports = std::array{1, 2, 4}[static_cast<std::size_t>(oracle::uniform(0, 2))];
        const int n_prb = oracle::uniform(1, 8);
        budget::DssParams p;
        p.lte_pdcch = oracle::uniform(1, 3);
        p.nr_pdcch = oracle::uniform(0, 2);
        p.dmrs_count = oracle::uniform(0, 3);
        if (oracle::uniform(0, 1) == 1) {
            std::vector<int> free;
            const auto crs = nr::crs_symbols(ports);
            for (int s = p.lte_pdcch + p.nr_pdcch; s < 14; ++s) {
                if (std::ranges::find(crs, s) == crs.end()) {
                    free.push_back(s);
                }
            }
            std::ranges::shuffle(free, oracle::rng());
            if (static_cast<int>(free.size()) < p.dmrs_count) {
                continue;
            }
            p.dmrs_symbols = std::vector<int>(free.begin(), free.begin() + p.dmrs_count);
        }
        try {
            p.validate(ports);
        } catch (const ConfigError&) {
            continue;
        }
        const auto closed = budget::dss_row_closed_form(ports, p);
        c.expect(closed == budget::dss_row_enumerated(ports, p), "dss mismatch at ports " + std::to_string(ports));
        c.expect(closed.dss_re == oracle::dss_pool(ports, p.lte_pdcch, p.nr_pdcch, p.resolved_dmrs()),
                 "oracle dss mismatch at ports " + std::to_string(ports));

        // The same DSS layout over the whole n_prb carrier.
        lte::LteCellConfig cell;
        cell.crs_ports = ports;
        cell.pdcch_symbols = p.lte_pdcch;
        cell.sync_signals = false;
        const CarrierConfig carrier{Numerology{15}, n_prb, Duplex::Fdd, std::nullopt, 1};
        auto grid = lte::apply_lte(make_grid(carrier), cell);
        c.expect(count_labels(grid)[ReLabel::Unlabeled] == n_prb * closed.lte_re, "lte pool mismatch");
        grid = nr::nr_dss_slot(std::move(grid), cell, p.layout());
        c.expect(count_labels(grid)[ReLabel::Unlabeled] == n_prb * closed.dss_re,
                 "dss pool mismatch at " + std::to_string(n_prb) + " PRB");

        // NR overhead closed forms against the placed grid.
        const auto tdd = small_tdd(n_prb, 5);
        nr::NrOverlaySet s;
        s.period_ms = 5;
        s.ssb = {oracle::uniform(0, 2), oracle::uniform(1, n_prb), oracle::uniform(1, 4), 5};
        s.coreset1 = {oracle::uniform(0, n_prb), std::max(p.nr_pdcch, 1), std::nullopt};
        s.csi_rs = {oracle::uniform(0, 4), 1, oracle::uniform(1, n_prb), oracle::uniform(0, 1)};
        s.trs = {oracle::uniform(1, n_prb), 1, oracle::uniform(0, 3), 1, oracle::uniform(0, 1)};
        try {
            const auto report = budget::nr_overhead(tdd, s);
            budget::verify_overhead(tdd, s, report);
        } catch (const PlacementError&) {
            // The random footprint does not fit; the DSS part above still counts.
        } catch (const Error& e) {
            c.expect(false, std::string("overhead mismatch: ") + e.what());
        }
        ++configs;
    }
    c.expect(configs >= 200, "only " + std::to_string(configs) + " configurations");
    return std::to_string(configs) + " randomized configurations, closed form == enumeration";
}

// Small random MRSS map; nullopt if the random layout cannot be placed.
std::optional<coexist::MrssCategoryMap> random_map() {
    const int n_prb = oracle::uniform(1, 8);
    const auto carrier = small_tdd(n_prb, 10);
    auto grid = random_overlay_grid(carrier, 10);
    if (!grid) {
        return std::nullopt;
    }
    const int mode = oracle::uniform(0, 2);
    const auto cm = mode == 0   ? coexist::ControlMode::fully_overlapping()
                    : mode == 1 ? coexist::ControlMode::partially_overlapping(oracle::uniform(0, 4) / 4.0)
                                : coexist::ControlMode::separate();
    try {
        return coexist::classify_mrss(*grid, coexist::default_reserved_labels(), cm, coexist::default_control_labels());
    } catch (const PlacementError&) {
        return std::nullopt;
    }
}

// 6. Scheduler properties.
std::string criterion6(Check& c) {
    int scenarios = 0;
    while (scenarios < 120) {
        auto map = random_map();
        if (!map) {
            continue;
        }
        ++scenarios;
        const int n_slots = oracle::uniform(1, 20);
        coexist::TrafficModel t;
        const std::int64_t cap = 8 * 12 * 14;
        t.load_5g = oracle::uniform(0, 1) ? coexist::LoadModel::uniform(0, oracle::uniform(0, cap))
                                          : coexist::LoadModel::constant(oracle::uniform(0, cap));
        t.load_6g = coexist::LoadModel::uniform(0, oracle::uniform(0, cap));
        t.seed = static_cast<std::uint64_t>(oracle::uniform(0, 1 << 30));
        const auto pool = map->shared_per_slot();

        std::array<coexist::SimResult, 3> r;
        const std::array policies = {coexist::SchedPolicy::Priority5G, coexist::SchedPolicy::ProportionalShare,
                                     coexist::SchedPolicy::Priority6G};
        for (std::size_t i = 0; i < 3; ++i) {
            r[i] = coexist::simulate(*map, t, policies[i], n_slots);
            c.expect(r[i] == coexist::simulate(*map, t, policies[i], n_slots), "non-deterministic result");
            for (std::size_t k = 0; k < static_cast<std::size_t>(n_slots); ++k) {
                c.expect(r[i].grant_5g[k] + r[i].grant_6g[k] + r[i].unused[k] == pool[k], "conservation violated");
                c.expect(r[i].grant_5g[k] <= r[i].demand_5g[k] && r[i].grant_6g[k] <= r[i].demand_6g[k],
                         "grant above demand");
                // Unused cells only while some demand is unmet by nobody.
                c.expect(r[i].unused[k] == 0 || (r[i].grant_5g[k] == r[i].demand_5g[k] && r[i].grant_6g[k] == r[i].demand_6g[k]),
                         "idle cells with unmet demand");
            }
        }
        for (std::size_t k = 0; k < static_cast<std::size_t>(n_slots); ++k) {
            c.expect(r[0].grant_5g[k] >= r[1].grant_5g[k] && r[1].grant_5g[k] >= r[2].grant_5g[k], "5G dominance order");
            c.expect(r[0].grant_6g[k] <= r[1].grant_6g[k] && r[1].grant_6g[k] <= r[2].grant_6g[k], "6G dominance order");
            const auto ref = oracle::proportional(pool[k], r[1].demand_5g[k], r[1].demand_6g[k]);
            c.expect(ref.g5 == r[1].grant_5g[k] && ref.g6 == r[1].grant_6g[k], "proportional split differs from reference");
        }

        // Idle 6G: 5G is granted exactly what it would get alone.
        auto idle = t;
        idle.load_6g = coexist::LoadModel::constant(0);
        for (auto policy : policies) {
            const auto x = coexist::simulate(*map, idle, policy, n_slots);
            for (std::size_t k = 0; k < static_cast<std::size_t>(n_slots); ++k) {
                c.expect(x.grant_5g[k] == std::min(x.demand_5g[k], pool[k]), "idle 6G not reclaimed");
            }
            c.expect(x.efficiency_5g == Ratio(1, 1), "efficiency " + x.efficiency_5g.to_string(2));
        }
        auto idle5 = t;
        idle5.load_5g = coexist::LoadModel::constant(0);
        const auto y = coexist::simulate(*map, idle5, coexist::SchedPolicy::Priority5G, n_slots);
        c.expect(y.efficiency_6g == Ratio(1, 1), "idle 5G not reclaimed");
    }
    return std::to_string(scenarios) + " randomized scenarios: conservation, dominance, reclamation, determinism";
}

lte::LteCellConfig cell(int id, int ports) {
    lte::LteCellConfig x;
    x.cell_id = id;
    x.crs_ports = ports;
    return x;
}

// 7. Interference properties.
std::string criterion7(Check& c) {
    using coexist::Mitigation;
    for (int ports : {1, 2, 4}) {
        for (int id = 0; id < 6; ++id) {
            const std::vector co = {cell(id + 6, ports)};
            c.expect(coexist::neighbor_interference(cell(id, ports), co, Mitigation::serving_only()).dirty == 0,
                     "co-shift neighbor produced dirty cells");
        }
    }
    const std::vector shift3 = {cell(3, 1)};
    const auto na = coexist::neighbor_interference(cell(0, 1), shift3, Mitigation::neighbor_aware());
    c.expect(na.sacrificed == 6, "shift-3 sacrifice " + std::to_string(na.sacrificed));

    // Oracle: serving pool cells hit by the neighbor CRS.
    int hits = 0;
    const auto neighbor = oracle::crs(3, 1);
    const auto serving = oracle::crs(0, 1);
    for (int sym = 3; sym < 14; ++sym) {
        if (sym == 3 || sym == 12) {
            continue;
        }
        for (int sc = 0; sc < 12; ++sc) {
            hits += !serving.contains({sym, sc}) && neighbor.contains({sym, sc}) ? 1 : 0;
        }
    }
    c.expect(hits == 6, "oracle shift-3 sacrifice " + std::to_string(hits));

    int sets = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int sp = std::array{1, 2, 4}[static_cast<std::size_t>(oracle::uniform(0, 2))];
        std::vector<lte::LteCellConfig> ns;
        for (int i = oracle::uniform(0, 4); i > 0; --i) {
            ns.push_back(cell(oracle::uniform(0, 503), std::array{1, 2, 4}[static_cast<std::size_t>(oracle::uniform(0, 2))]));
        }
        const auto s = cell(oracle::uniform(0, 503), sp);
        const auto so = coexist::neighbor_interference(s, ns, Mitigation::serving_only());
        const auto a = coexist::neighbor_interference(s, ns, Mitigation::neighbor_aware());
        const auto m = coexist::neighbor_interference(s, ns, Mitigation::symbol_level_mute());
        c.expect(so.sacrificed <= a.sacrificed && a.sacrificed <= m.sacrificed, "sacrifice ordering violated");
        c.expect(a.dirty == 0, "dirty cells under neighbor-aware rate matching");
        c.expect(a.sacrificed == so.dirty, "neighbor-aware sacrifice differs from serving-only dirty count");
        for (const auto* r : {&so, &a, &m}) {
            c.expect(r->clean + r->sacrificed + r->dirty == r->pool, "report does not partition the pool");
        }
        ++sets;
    }
    return "co-shift, shift-3 (6 RE/PRB), zero-dirty and ordering over " + std::to_string(sets) + " neighbor sets";
}

void check_partition(Check& c, const coexist::MrssCategoryMap& m, const std::string& name) {
    const auto& g = m.grid();
    std::array<std::int64_t, 4> counts{};
    std::int64_t dl = 0;
    for (int slot = 0; slot < g.n_slots(); ++slot) {
        dl += std::int64_t{g.config().downlink_symbols(slot)} * g.n_subcarriers();
        for (int sym = 0; sym < 14; ++sym) {
            for (int sc = 0; sc < g.n_subcarriers(); ++sc) {
                const auto cat = m.at({slot, sym, sc});
                ++counts[static_cast<std::size_t>(cat)];
                c.expect((cat == coexist::Category::NotDownlink) == !g.is_downlink(slot, sym), name + ": downlink mismatch");
            }
        }
    }
    c.expect(counts[1] == m.shared_count() && counts[2] == m.reserved_count() && counts[3] == m.control_count(),
             name + ": category counts differ");
    c.expect(counts[1] + counts[2] + counts[3] == dl, name + ": categories do not cover the downlink");
}

// 8. Partition invariant over the scenario corpus and small random scenarios.
std::string criterion8(Check& c) {
    int checked = 0;
    const auto dir = std::filesystem::path(GRIDSHARE_SOURCE_DIR) / "scenarios";
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.path().extension() == ".json") {
            files.push_back(e.path());
        }
    }
    std::ranges::sort(files);
    for (const auto& f : files) {
        const auto s = cli::parse_scenario(slurp(f.string()));
        auto grid = make_grid(s.carrier);
        if (s.lte) {
            grid = lte::apply_lte(std::move(grid), s.lte->cell);
        }
        if (s.nr) {
            grid = nr::apply_nr(std::move(grid), *s.nr);
        }
        const auto name = f.filename().string();
        if (s.mrss) {
            auto m = coexist::classify_mrss(grid, s.mrss->reserved, s.mrss->control_mode, s.mrss->control);
            for (const auto& iot : s.mrss->iot) {
                m = coexist::reserve_iot(std::move(m), iot.prbs, iot.slots);
            }
            m = coexist::place_6g_ssb(std::move(m), s.mrss->sixg_ssb);
            check_partition(c, m, name);
            ++checked;
        }
        for (const auto& mode : {coexist::ControlMode::fully_overlapping(), coexist::ControlMode::partially_overlapping(0.5),
                                 coexist::ControlMode::separate()}) {
            try {
                check_partition(c,
                                coexist::classify_mrss(grid, coexist::default_reserved_labels(), mode,
                                                       coexist::default_control_labels()),
                                name);
                ++checked;
            } catch (const PlacementError&) {
            }
        }
    }
    for (int i = 0; i < 100; ++i) {
        if (auto m = random_map()) {
            check_partition(c, *m, "random");
            ++checked;
        }
    }
    return std::to_string(checked) + " classified maps partition the downlink exactly";
}

}  // namespace

int main() {
    const std::vector<Runner> criteria = {criterion1, criterion2, criterion3, criterion4,
                                          criterion5, criterion6, criterion7, criterion8};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        std::string summary;
        try {
            summary = criteria[i](c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const bool ok = c.failures.empty();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << summary << "\n";
        for (const auto& f : c.failures) {
            std::cout << "    " << f << "\n";
        }
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
