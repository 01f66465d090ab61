#include "gridshare/budget.hpp"

#include <algorithm>
#include <array>

#include "gridshare/errors.hpp"
#include "gridshare/lte.hpp"

namespace gridshare::budget {

namespace {

CarrierConfig one_prb_subframe() { return CarrierConfig{Numerology{15}, 1, Duplex::Fdd, std::nullopt, 1}; }

lte::LteCellConfig table_lte_cell(int crs_ports, int pdcch_symbols) {
    lte::LteCellConfig cfg;
    cfg.crs_ports = crs_ports;
    cfg.pdcch_symbols = pdcch_symbols;
    // A plain data subframe: no sync footprint, no MBSFN.
    cfg.sync_signals = false;
    return cfg;
}

std::vector<ReIndex> symbols_of(int slot, const std::vector<int>& symbols, int n_subcarriers) {
    std::vector<ReIndex> out;
    for (int sym : symbols) {
        const auto row = block_cells(slot, sym, 1, 0, n_subcarriers);
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

std::vector<int> range(int begin, int end) {
    std::vector<int> out;
    for (int i = begin; i < end; ++i) {
        out.push_back(i);
    }
    return out;
}

BudgetRow make_row(int crs_ports, std::int64_t dss, std::int64_t nr, std::int64_t lte) {
    return BudgetRow{crs_ports, dss, nr, lte, Ratio::percent(nr - dss, nr), Ratio::percent(lte - dss, lte)};
}

std::string plural(std::int64_t n, const std::string& word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

std::string summarize_tdd(const CarrierConfig& carrier) {
    if (!carrier.tdd_pattern) {
        return "FDD";
    }
    const auto& p = *carrier.tdd_pattern;
    const auto& s = p.special_split;
    const bool has_special = std::ranges::find(p.cycle, SlotKind::Special) != p.cycle.end();
    if (!has_special) {
        return p.cycle_string();
    }
    return p.cycle_string() + "; S slot with " + std::to_string(s.dl_symbols) + " downlink symbols, " +
           std::to_string(s.guard_symbols) + " guard symbols, and " + std::to_string(s.ul_symbols) + " uplink symbols";
}

}  // namespace

std::vector<int> DssParams::resolved_dmrs() const {
    if (dmrs_symbols) {
        auto out = *dmrs_symbols;
        std::ranges::sort(out);
        return out;
    }
    return nr::default_dmrs_symbols(dmrs_count, lte_pdcch + nr_pdcch);
}

nr::DssLayout DssParams::layout() const {
    nr::DssLayout layout;
    layout.nr_pdcch_start = lte_pdcch;
    layout.nr_pdcch_symbols = nr_pdcch;
    layout.dmrs_symbols = resolved_dmrs();
    return layout;
}

void DssParams::validate(int crs_ports) const {
    if (crs_ports != 0 && crs_ports != 1 && crs_ports != 2 && crs_ports != 4) {
        throw ConfigError("dss: crs_ports must be 0 (no LTE), 1, 2 or 4");
    }
    if (crs_ports == 0 ? lte_pdcch != 0 : (lte_pdcch < 1 || lte_pdcch > 3)) {
        throw ConfigError(crs_ports == 0 ? "dss: lte_pdcch must be 0 without an LTE incumbent"
                                         : "dss: lte_pdcch must be in 1..3");
    }
    if (nr_pdcch < 0 || dmrs_count < 0) {
        throw ConfigError("dss: nr_pdcch and dmrs_count must be >= 0");
    }
    const int control_end = lte_pdcch + nr_pdcch;
    if (control_end > kSymbolsPerSlot) {
        throw ConfigError("dss: control region exceeds the slot");
    }
    if (dmrs_symbols && static_cast<int>(dmrs_symbols->size()) != dmrs_count) {
        throw ConfigError("dss: dmrs_symbols lists " + std::to_string(dmrs_symbols->size()) +
                          " symbols but dmrs_count is " + std::to_string(dmrs_count));
    }
    const auto dmrs = resolved_dmrs();
    const auto crs = nr::crs_symbols(crs_ports);
    for (std::size_t i = 0; i < dmrs.size(); ++i) {
        const int sym = dmrs[i];
        if (sym < control_end || sym >= kSymbolsPerSlot) {
            throw ConfigError("dss: DMRS symbol " + std::to_string(sym) + " outside the data region");
        }
        if (std::ranges::find(crs, sym) != crs.end()) {
            throw ConfigError("dss: DMRS symbol " + std::to_string(sym) + " collides with LTE CRS");
        }
        if (i > 0 && dmrs[i - 1] == sym) {
            throw ConfigError("dss: duplicate DMRS symbol " + std::to_string(sym));
        }
    }
}

BudgetRow dss_row_closed_form(int crs_ports, const DssParams& params) {
    params.validate(crs_ports);
    const auto dmrs = params.resolved_dmrs();
    const int control_end = params.lte_pdcch + params.nr_pdcch;
    auto crs = [&](int sym) { return crs_ports == 0 ? 0 : lte::crs_per_prb_on_symbol(crs_ports, sym); };

    std::int64_t dss = 0;
    for (int sym = control_end; sym < kSymbolsPerSlot; ++sym) {
        if (std::ranges::find(dmrs, sym) == dmrs.end()) {
            dss += kSubcarriersPerPrb - crs(sym);
        }
    }
    const std::int64_t nr = std::int64_t{kSymbolsPerSlot - params.nr_pdcch - params.dmrs_count} * kSubcarriersPerPrb;
    std::int64_t lte = 0;
    for (int sym = params.lte_pdcch; sym < kSymbolsPerSlot; ++sym) {
        lte += kSubcarriersPerPrb - crs(sym);
    }
    if (crs_ports == 0) {
        lte = dss;
    }
    return make_row(crs_ports, dss, nr, lte);
}

BudgetRow dss_row_enumerated(int crs_ports, const DssParams& params) {
    params.validate(crs_ports);
    const auto carrier = one_prb_subframe();
    const int n_sc = carrier.n_subcarriers();
    const auto dmrs = params.resolved_dmrs();

    std::int64_t dss = 0;
    std::int64_t lte = 0;
    if (crs_ports == 0) {
        auto grid = make_grid(carrier);
        grid = apply_overlay(std::move(grid), symbols_of(0, range(0, params.nr_pdcch), n_sc), ReLabel::NrPdcchCoreset1);
        grid = apply_overlay(std::move(grid), symbols_of(0, dmrs, n_sc), ReLabel::NrDmrs);
        dss = count_labels(grid)[ReLabel::Unlabeled];
        lte = dss;
    } else {
        const auto cell = table_lte_cell(crs_ports, params.lte_pdcch);
        auto lte_grid = lte::apply_lte(make_grid(carrier), cell);
        lte = count_labels(lte_grid)[ReLabel::Unlabeled];
        const auto dss_grid = nr::nr_dss_slot(std::move(lte_grid), cell, params.layout());
        dss = count_labels(dss_grid)[ReLabel::Unlabeled];
    }

    auto nr_grid = make_grid(carrier);
    nr_grid = apply_overlay(std::move(nr_grid), symbols_of(0, range(0, params.nr_pdcch), n_sc), ReLabel::NrPdcchCoreset1);
    nr_grid = apply_overlay(std::move(nr_grid),
                            symbols_of(0, range(params.nr_pdcch, params.nr_pdcch + params.dmrs_count), n_sc),
                            ReLabel::NrDmrs);
    const std::int64_t nr = count_labels(nr_grid)[ReLabel::Unlabeled];
    return make_row(crs_ports, dss, nr, lte);
}

std::vector<BudgetRow> dss_table(const DssParams& params) {
    std::vector<BudgetRow> rows;
    for (int ports : {1, 2, 4}) {
        const auto closed = dss_row_closed_form(ports, params);
        const auto counted = dss_row_enumerated(ports, params);
        if (!(closed == counted)) {
            throw Error("dss budget mismatch for " + std::to_string(ports) + " CRS ports: closed form gives " +
                        std::to_string(closed.dss_re) + ", grid enumeration gives " + std::to_string(counted.dss_re));
        }
        rows.push_back(closed);
    }
    return rows;
}

const OverheadRow& OverheadReport::row(std::string_view signal_name) const {
    if (signal_name == total_row.signal_name || signal_name == total_row.display_name) {
        return total_row;
    }
    for (const auto& r : rows) {
        if (r.signal_name == signal_name || r.display_name == signal_name) {
            return r;
        }
    }
    throw LookupError("unknown signal: " + std::string(signal_name));
}

CarrierConfig overhead_window(const CarrierConfig& carrier, const nr::NrOverlaySet& set) {
    CarrierConfig window = carrier;
    window.span_ms = set.period_ms;
    window.validate();
    return window;
}

OverheadReport nr_overhead(const CarrierConfig& carrier, const nr::NrOverlaySet& set) {
    const CarrierConfig window = overhead_window(carrier, set);
    const auto counts = nr::closed_form_counts(window, set);

    OverheadReport report;
    report.period_ms = set.period_ms;
    report.total_re = std::int64_t{window.n_slots()} * kSymbolsPerSlot * window.n_subcarriers();
    for (int slot = 0; slot < window.n_slots(); ++slot) {
        report.downlink_re += std::int64_t{window.downlink_symbols(slot)} * window.n_subcarriers();
    }

    auto row = [&](std::string name, std::string display, std::string summary, std::int64_t n) {
        return OverheadRow{std::move(name), std::move(display), std::move(summary), n,
                           Ratio::percent(n, report.total_re), Ratio::percent(n, report.downlink_re)};
    };
    const std::string period = " / " + std::to_string(set.period_ms) + " ms";
    const auto& ssb = set.ssb;
    const auto& c0 = set.coreset0;
    const auto& sib1 = set.sib1;
    const auto& c1 = set.coreset1;
    const auto& csi = set.csi_rs;
    const auto& trs = set.trs;

    std::string ssb_summary = plural(ssb.beams, "beam") + ", " + plural(ssb.prbs, "PRB") + ", " +
                              plural(ssb.symbols_per_beam, "symbol");
    if (ssb.period_ms != set.period_ms) {
        ssb_summary += ", every " + std::to_string(ssb.period_ms) + " ms";
    }
    report.rows.push_back(row("SSB", "SSB", ssb_summary, counts.ssb));
    report.rows.push_back(row("CORESET 0", "CORESET 0 / common PDCCH",
                              plural(c0.beams, "beam") + ", " + plural(c0.prbs, "PRB") + ", " + plural(c0.symbols, "symbol"),
                              counts.coreset0));
    report.rows.push_back(row("SIB1", "SIB1",
                              plural(sib1.beams, "beam") + ", " + plural(sib1.prbs, "PRB") + ", " +
                                  plural(sib1.symbols, "symbol"),
                              counts.sib1));
    report.rows.push_back(row("CORESET 1", "CORESET 1 / regular PDCCH",
                              plural(c1.prbs, "PRB") + ", " + plural(c1.symbols, "symbol") + ", " +
                                  std::to_string(nr::coreset1_slots(window, set)) + " DL-bearing slots",
                              counts.coreset1));
    report.rows.push_back(row("CSI-RS", "CSI-RS",
                              plural(csi.ports, "port") + ", density " + std::to_string(csi.density_re_per_port_per_prb) +
                                  " RE/port/PRB, " + plural(csi.prbs, "PRB") + ", " +
                                  plural(csi.occasions_per_period, "occasion") + period,
                              counts.csi_rs));
    report.rows.push_back(row("TRS", "TRS",
                              plural(trs.prbs, "PRB") + ", " + std::to_string(trs.slots_per_occasion) +
                                  "-slot occasion, " + std::to_string(trs.re_per_prb_per_slot) + " RE/PRB/slot, " +
                                  plural(trs.beams, "beam") + ", " + plural(trs.occasions_per_period, "occasion") + period,
                              counts.trs));
    report.total_row = row("Total", "Total", summarize_tdd(window), counts.total());
    return report;
}

LabelCounts verify_overhead(const CarrierConfig& carrier, const nr::NrOverlaySet& set, const OverheadReport& report) {
    const CarrierConfig window = overhead_window(carrier, set);
    const auto grid = nr::apply_nr(make_grid(window), set);
    const auto counts = count_labels(grid);
    const auto labels = nr::labels_for(nr::Rat::Nr5g);

    const std::array<std::pair<const char*, ReLabel>, 6> checks = {{
        {"SSB", labels.ssb},
        {"CORESET 0", labels.coreset0},
        {"SIB1", labels.sib1},
        {"CORESET 1", labels.coreset1},
        {"CSI-RS", labels.csi_rs},
        {"TRS", labels.trs},
    }};
    for (const auto& [name, label] : checks) {
        const auto expected = report.row(name).re_count;
        if (counts[label] != expected) {
            throw Error(std::string("overhead verification failed for ") + name + ": report " +
                        std::to_string(expected) + ", grid " + std::to_string(counts[label]));
        }
    }
    if (counts.total() != report.total_re) {
        throw Error("overhead verification failed: grid holds " + std::to_string(counts.total()) + " cells, report " +
                    std::to_string(report.total_re));
    }
    const std::int64_t non_downlink = counts[ReLabel::GuardSymbol] + counts[ReLabel::UplinkSymbol];
    if (counts.total() - non_downlink != report.downlink_re) {
        throw Error("overhead verification failed: downlink cells " + std::to_string(counts.total() - non_downlink) +
                    ", report " + std::to_string(report.downlink_re));
    }
    return counts;
}

Ratio dominance_share(const OverheadReport& report, std::string_view signal_name) {
    const auto& r = report.row(signal_name);
    if (report.total_row.re_count == 0) {
        throw ConfigError("dominance share undefined for a report with zero total overhead");
    }
    return Ratio::percent(r.re_count, report.total_row.re_count);
}

}  // namespace gridshare::budget
