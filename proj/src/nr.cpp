#include "gridshare/nr.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "gridshare/errors.hpp"

namespace gridshare::nr {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw ConfigError("nr: " + what);
    }
}

void require_prbs(int prbs, const CarrierConfig& carrier, const std::string& signal) {
    require(prbs >= 0, signal + " prbs must be >= 0");
    require(prbs <= carrier.n_prb, signal + " spans " + std::to_string(prbs) + " PRBs, carrier has " +
                                       std::to_string(carrier.n_prb));
}

int slots_per_period(const CarrierConfig& carrier, int period_ms) {
    return period_ms * carrier.numerology.slots_per_ms();
}

// Sequential placement of footprints inside one accounting period. Each placement is
// written to the grid before the next search, so footprints never overlap.
class PeriodPlacer {
public:
    PeriodPlacer(ResourceGrid& grid, int first_slot, int n_slots, Placement mode)
        : grid_(grid), first_slot_(first_slot), end_slot_(first_slot + n_slots), mode_(mode) {}

    // One rectangular beam block per unit, units of one signal spread over slots.
    void place_blocks(const std::string& signal, int units, int prbs, int symbols, ReLabel label) {
        if (units <= 0 || prbs <= 0 || symbols <= 0) {
            return;
        }
        int next = first_slot_;
        for (int unit = 0; unit < units; ++unit) {
            std::optional<std::vector<ReIndex>> cells;
            if (mode_ == Placement::SpreadBeams) {
                cells = find_block(next, prbs, symbols);
            }
            if (!cells) {
                cells = find_block(first_slot_, prbs, symbols);
            }
            if (!cells) {
                throw PlacementError(signal + ": no room for " + std::to_string(prbs) + " PRBs x " +
                                     std::to_string(symbols) + " symbols in downlink slots " +
                                     std::to_string(first_slot_) + ".." + std::to_string(end_slot_ - 1));
            }
            next = cells->front().slot + 1;
            grid_ = apply_overlay(std::move(grid_), *cells, label);
        }
    }

    // `re_per_prb` cells in each PRB of a contiguous PRB range, over `n_slots`
    // consecutive DL-bearing slots per unit.
    void place_re_pattern(const std::string& signal, int units, int prbs, int re_per_prb, int n_slots,
                          ReLabel label) {
        if (units <= 0 || prbs <= 0 || re_per_prb <= 0 || n_slots <= 0) {
            return;
        }
        int next = first_slot_;
        for (int unit = 0; unit < units; ++unit) {
            std::optional<std::vector<ReIndex>> cells;
            if (mode_ == Placement::SpreadBeams) {
                cells = find_re_pattern(next, prbs, re_per_prb, n_slots);
            }
            if (!cells) {
                cells = find_re_pattern(first_slot_, prbs, re_per_prb, n_slots);
            }
            if (!cells) {
                throw PlacementError(signal + ": no room for " + std::to_string(re_per_prb) + " RE/PRB over " +
                                     std::to_string(prbs) + " PRBs and " + std::to_string(n_slots) +
                                     " slot(s) in downlink slots " + std::to_string(first_slot_) + ".." +
                                     std::to_string(end_slot_ - 1));
            }
            next = cells->back().slot + 1;
            grid_ = apply_overlay(std::move(grid_), *cells, label);
        }
    }

private:
    bool block_free(int slot, int first_symbol, int symbols, int first_sc, int n_sc) const {
        for (int sym = first_symbol; sym < first_symbol + symbols; ++sym) {
            const auto row = grid_.symbol_row(slot, sym);
            for (int sc = first_sc; sc < first_sc + n_sc; ++sc) {
                if (row[static_cast<std::size_t>(sc)] != ReLabel::Unlabeled) {
                    return false;
                }
            }
        }
        return true;
    }

    std::optional<std::vector<ReIndex>> find_block(int from_slot, int prbs, int symbols) const {
        const int n_sc = prbs * kSubcarriersPerPrb;
        for (int slot = from_slot; slot < end_slot_; ++slot) {
            const int dl = grid_.config().downlink_symbols(slot);
            for (int sym = 0; sym + symbols <= dl; ++sym) {
                for (int prb = 0; prb + prbs <= grid_.n_prb(); ++prb) {
                    if (block_free(slot, sym, symbols, prb * kSubcarriersPerPrb, n_sc)) {
                        return block_cells(slot, sym, symbols, prb * kSubcarriersPerPrb, n_sc);
                    }
                }
            }
        }
        return std::nullopt;
    }

    int free_in_prb(int slot, int prb) const {
        int n = 0;
        const int dl = grid_.config().downlink_symbols(slot);
        for (int sym = 0; sym < dl; ++sym) {
            const auto row = grid_.symbol_row(slot, sym);
            for (int sc = prb * kSubcarriersPerPrb; sc < (prb + 1) * kSubcarriersPerPrb; ++sc) {
                n += row[static_cast<std::size_t>(sc)] == ReLabel::Unlabeled ? 1 : 0;
            }
        }
        return n;
    }

    std::optional<std::vector<ReIndex>> find_re_pattern(int from_slot, int prbs, int re_per_prb, int n_slots) const {
        for (int start = from_slot; start + n_slots <= end_slot_; ++start) {
            bool slots_ok = true;
            for (int s = start; s < start + n_slots; ++s) {
                slots_ok = slots_ok && grid_.config().is_downlink_bearing(s);
            }
            if (!slots_ok) {
                continue;
            }
            std::vector<std::vector<int>> free(static_cast<std::size_t>(n_slots));
            for (int s = 0; s < n_slots; ++s) {
                for (int prb = 0; prb < grid_.n_prb(); ++prb) {
                    free[static_cast<std::size_t>(s)].push_back(free_in_prb(start + s, prb));
                }
            }
            for (int first_prb = 0; first_prb + prbs <= grid_.n_prb(); ++first_prb) {
                bool fits = true;
                for (int s = 0; s < n_slots && fits; ++s) {
                    for (int prb = first_prb; prb < first_prb + prbs && fits; ++prb) {
                        fits = free[static_cast<std::size_t>(s)][static_cast<std::size_t>(prb)] >= re_per_prb;
                    }
                }
                if (fits) {
                    return collect_re_pattern(start, n_slots, first_prb, prbs, re_per_prb);
                }
            }
        }
        return std::nullopt;
    }

    std::vector<ReIndex> collect_re_pattern(int start, int n_slots, int first_prb, int prbs, int re_per_prb) const {
        std::vector<ReIndex> cells;
        for (int slot = start; slot < start + n_slots; ++slot) {
            const int dl = grid_.config().downlink_symbols(slot);
            for (int prb = first_prb; prb < first_prb + prbs; ++prb) {
                int taken = 0;
                for (int sym = 0; sym < dl && taken < re_per_prb; ++sym) {
                    const auto row = grid_.symbol_row(slot, sym);
                    for (int sc = prb * kSubcarriersPerPrb;
                         sc < (prb + 1) * kSubcarriersPerPrb && taken < re_per_prb; ++sc) {
                        if (row[static_cast<std::size_t>(sc)] == ReLabel::Unlabeled) {
                            cells.push_back({slot, sym, sc});
                            ++taken;
                        }
                    }
                }
            }
        }
        return cells;
    }

    ResourceGrid& grid_;
    int first_slot_;
    int end_slot_;
    Placement mode_;
};

}  // namespace

void NrOverlaySet::validate(const CarrierConfig& carrier) const {
    require(period_ms >= 1, "period_ms must be >= 1");
    require(ssb.beams >= 0 && ssb.symbols_per_beam >= 0 && ssb.symbols_per_beam <= kSymbolsPerSlot,
            "ssb beams/symbols out of range");
    require(ssb.period_ms >= 1 && (ssb.beams == 0 || period_ms % ssb.period_ms == 0), "ssb period_ms must divide period_ms");
    require_prbs(ssb.prbs, carrier, "ssb");
    for (const auto& [name, b] : {std::pair{"coreset0", coreset0}, std::pair{"sib1", sib1}}) {
        require(b.beams >= 0 && b.symbols >= 0 && b.symbols <= kSymbolsPerSlot,
                std::string(name) + " beams/symbols out of range");
        require_prbs(b.prbs, carrier, name);
    }
    require(coreset1.symbols >= 0 && coreset1.symbols <= kSymbolsPerSlot, "coreset1 symbols out of range");
    require_prbs(coreset1.prbs, carrier, "coreset1");
    if (coreset1.slots) {
        require(*coreset1.slots >= 0, "coreset1 slots must be >= 0");
    }
    for (int sym : dmrs_symbols) {
        require(sym >= 0 && sym < kSymbolsPerSlot, "dmrs symbol outside 0..13");
    }
    require(csi_rs.ports >= 0 && csi_rs.density_re_per_port_per_prb >= 0 && csi_rs.occasions_per_period >= 0,
            "csi_rs counts must be >= 0");
    require_prbs(csi_rs.prbs, carrier, "csi_rs");
    require(trs.slots_per_occasion >= 0 && trs.re_per_prb_per_slot >= 0 && trs.beams >= 0 &&
                trs.occasions_per_period >= 0,
            "trs counts must be >= 0");
    require_prbs(trs.prbs, carrier, "trs");
    if (slots_per_period(carrier, period_ms) % carrier.numerology.slots_per_ms() != 0) {
        throw ConfigError("nr: period is not a whole number of slots");
    }
    if (carrier.tdd_pattern &&
        slots_per_period(carrier, period_ms) % static_cast<int>(carrier.tdd_pattern->cycle.size()) != 0) {
        throw ConfigError("nr: period_ms is not a whole number of TDD cycles");
    }
    if (coreset1.slots && *coreset1.slots > downlink_bearing_slots(carrier, period_ms)) {
        throw ConfigError("nr: coreset1 monitors more slots than the period has DL-bearing slots");
    }
}

SignalLabels labels_for(Rat rat) {
    if (rat == Rat::Nr5g) {
        return {ReLabel::NrSsb,   ReLabel::NrPdcchCoreset0, ReLabel::NrSib1, ReLabel::NrPdcchCoreset1,
                ReLabel::NrCsiRs, ReLabel::NrTrs,           ReLabel::NrDmrs};
    }
    return {ReLabel::SixGSsb,     ReLabel::SixGControl, ReLabel::SixGControl, ReLabel::SixGControl,
            ReLabel::SixGControl, ReLabel::SixGControl, ReLabel::SixGData};
}

int downlink_bearing_slots(const CarrierConfig& carrier, int period_ms) {
    int n = 0;
    for (int slot = 0; slot < slots_per_period(carrier, period_ms); ++slot) {
        n += carrier.is_downlink_bearing(slot) ? 1 : 0;
    }
    return n;
}

int coreset1_slots(const CarrierConfig& carrier, const NrOverlaySet& set) {
    return set.coreset1.slots.value_or(downlink_bearing_slots(carrier, set.period_ms));
}

SignalCounts closed_form_counts(const CarrierConfig& carrier, const NrOverlaySet& set) {
    set.validate(carrier);
    const std::int64_t sc = kSubcarriersPerPrb;
    SignalCounts c;
    const std::int64_t bursts = set.period_ms / set.ssb.period_ms;
    c.ssb = bursts * set.ssb.beams * set.ssb.prbs * sc * set.ssb.symbols_per_beam;
    c.coreset0 = std::int64_t{set.coreset0.beams} * set.coreset0.prbs * sc * set.coreset0.symbols;
    c.sib1 = std::int64_t{set.sib1.beams} * set.sib1.prbs * sc * set.sib1.symbols;
    c.coreset1 = std::int64_t{set.coreset1.prbs} * sc * set.coreset1.symbols * coreset1_slots(carrier, set);
    c.csi_rs = std::int64_t{set.csi_rs.ports} * set.csi_rs.density_re_per_port_per_prb * set.csi_rs.prbs *
               set.csi_rs.occasions_per_period;
    c.trs = std::int64_t{set.trs.prbs} * set.trs.re_per_prb_per_slot * set.trs.slots_per_occasion * set.trs.beams *
            set.trs.occasions_per_period;
    return c;
}

ResourceGrid apply_nr(ResourceGrid grid, const NrOverlaySet& set, Rat rat, PlacementPolicy policy) {
    const CarrierConfig& carrier = grid.config();
    set.validate(carrier);
    const int period = slots_per_period(carrier, set.period_ms);
    if (grid.n_slots() % period != 0) {
        throw ConfigError("nr: grid span is not a whole number of " + std::to_string(set.period_ms) +
                          " ms accounting periods");
    }
    const SignalLabels labels = labels_for(rat);

    for (int first = 0; first < grid.n_slots(); first += period) {
        // CORESET1: leading symbols of each monitored DL-bearing slot, lowest PRBs.
        const int monitored = coreset1_slots(carrier, set);
        if (set.coreset1.prbs > 0 && set.coreset1.symbols > 0) {
            std::vector<ReIndex> cells;
            int taken = 0;
            for (int slot = first; slot < first + period && taken < monitored; ++slot) {
                const int dl = carrier.downlink_symbols(slot);
                if (dl == 0) {
                    continue;
                }
                if (dl < set.coreset1.symbols) {
                    throw PlacementError("coreset1: slot " + std::to_string(slot) + " has only " +
                                         std::to_string(dl) + " downlink symbols");
                }
                const auto block = block_cells(slot, 0, set.coreset1.symbols, 0, set.coreset1.prbs * kSubcarriersPerPrb);
                cells.insert(cells.end(), block.begin(), block.end());
                ++taken;
            }
            try {
                grid = apply_overlay(std::move(grid), cells, labels.coreset1);
            } catch (const ConflictError& e) {
                throw PlacementError(std::string("coreset1: ") + e.what());
            }
        }

        PeriodPlacer placer(grid, first, period, policy.mode);
        const int bursts = set.period_ms / set.ssb.period_ms;
        placer.place_blocks("ssb", bursts * set.ssb.beams, set.ssb.prbs, set.ssb.symbols_per_beam, labels.ssb);
        placer.place_blocks("coreset0", set.coreset0.beams, set.coreset0.prbs, set.coreset0.symbols, labels.coreset0);
        placer.place_blocks("sib1", set.sib1.beams, set.sib1.prbs, set.sib1.symbols, labels.sib1);
        placer.place_re_pattern("trs", set.trs.beams * set.trs.occasions_per_period, set.trs.prbs,
                                set.trs.re_per_prb_per_slot, set.trs.slots_per_occasion, labels.trs);
        placer.place_re_pattern("csi_rs", set.csi_rs.occasions_per_period, set.csi_rs.prbs,
                                set.csi_rs.ports * set.csi_rs.density_re_per_port_per_prb, 1, labels.csi_rs);
    }

    if (!set.dmrs_symbols.empty()) {
        std::vector<ReIndex> cells;
        for (int slot = 0; slot < grid.n_slots(); ++slot) {
            for (int sym : set.dmrs_symbols) {
                if (!grid.is_downlink(slot, sym)) {
                    continue;
                }
                const auto row = grid.symbol_row(slot, sym);
                for (int sc = 0; sc < grid.n_subcarriers(); ++sc) {
                    if (row[static_cast<std::size_t>(sc)] == ReLabel::Unlabeled) {
                        cells.push_back({slot, sym, sc});
                    }
                }
            }
        }
        grid = apply_overlay(std::move(grid), cells, labels.dmrs);
    }
    return grid;
}

std::vector<int> crs_symbols(int crs_ports) {
    std::vector<int> out(lte::kCrsSymbolsPort01.begin(), lte::kCrsSymbolsPort01.end());
    if (crs_ports == 4) {
        out.insert(out.end(), lte::kCrsSymbolsPort23.begin(), lte::kCrsSymbolsPort23.end());
    }
    if (crs_ports == 0) {
        out.clear();
    }
    std::ranges::sort(out);
    return out;
}

std::vector<int> default_dmrs_symbols(int dmrs_count, int control_end) {
    if (dmrs_count < 0) {
        throw ConfigError("dmrs_count must be >= 0");
    }
    const auto blocked = crs_symbols(4);
    std::vector<int> eligible;
    for (int sym = control_end; sym < kSymbolsPerSlot; ++sym) {
        if (std::ranges::find(blocked, sym) == blocked.end()) {
            eligible.push_back(sym);
        }
    }
    if (static_cast<int>(eligible.size()) < dmrs_count) {
        throw ConfigError("infeasible layout: " + std::to_string(dmrs_count) + " DMRS symbols do not fit in the " +
                          std::to_string(eligible.size()) + " CRS-free symbols after the control region");
    }
    std::vector<int> chosen;
    if (dmrs_count == 0) {
        return chosen;
    }
    const int front = eligible.front();
    chosen.push_back(front);
    constexpr int kBackAnchor = 12;
    for (int i = 1; i < dmrs_count; ++i) {
        const double target = front + static_cast<double>(i) * (kBackAnchor - front) / (dmrs_count - 1);
        int best = -1;
        double best_dist = 0.0;
        for (int sym : eligible) {
            if (std::ranges::find(chosen, sym) != chosen.end()) {
                continue;
            }
            const double dist = std::abs(sym - target);
            if (best < 0 || dist < best_dist) {
                best = sym;
                best_dist = dist;
            }
        }
        chosen.push_back(best);
    }
    std::ranges::sort(chosen);
    return chosen;
}

ResourceGrid nr_dss_slot(ResourceGrid grid, const lte::LteCellConfig& lte_cfg, const DssLayout& layout) {
    lte_cfg.validate();
    const int start = layout.nr_pdcch_start.value_or(lte_cfg.pdcch_symbols);
    if (start < lte_cfg.pdcch_symbols) {
        throw ConfigError("nr_dss_slot: NR PDCCH symbol " + std::to_string(start) +
                          " lies inside the LTE PDCCH region");
    }
    if (layout.nr_pdcch_symbols < 0 || start + layout.nr_pdcch_symbols > kSymbolsPerSlot) {
        throw ConfigError("nr_dss_slot: NR PDCCH symbols out of range");
    }
    const int control_end = start + layout.nr_pdcch_symbols;
    const auto crs = crs_symbols(lte_cfg.crs_ports);
    std::set<int> seen;
    for (int sym : layout.dmrs_symbols) {
        if (sym < 0 || sym >= kSymbolsPerSlot || !seen.insert(sym).second) {
            throw ConfigError("nr_dss_slot: DMRS symbols must be distinct and within 0..13");
        }
        if (std::ranges::find(crs, sym) != crs.end()) {
            throw ConfigError("nr_dss_slot: DMRS symbol " + std::to_string(sym) + " collides with LTE CRS");
        }
        if (sym < control_end) {
            throw ConfigError("nr_dss_slot: DMRS symbol " + std::to_string(sym) + " lies in the control region");
        }
    }

    std::vector<ReIndex> control;
    std::vector<ReIndex> dmrs;
    for (int slot = 0; slot < grid.n_slots(); ++slot) {
        if (lte_cfg.is_mbsfn(slot % 10) || grid.config().downlink_symbols(slot) != kSymbolsPerSlot) {
            continue;
        }
        auto collect = [&](int sym, std::vector<ReIndex>& out) {
            const auto row = grid.symbol_row(slot, sym);
            for (int sc = 0; sc < grid.n_subcarriers(); ++sc) {
                if (row[static_cast<std::size_t>(sc)] == ReLabel::Unlabeled) {
                    out.push_back({slot, sym, sc});
                }
            }
        };
        for (int sym = start; sym < control_end; ++sym) {
            collect(sym, control);
        }
        for (int sym : layout.dmrs_symbols) {
            collect(sym, dmrs);
        }
    }
    grid = apply_overlay(std::move(grid), control, ReLabel::NrPdcchCoreset1);
    return apply_overlay(std::move(grid), dmrs, ReLabel::NrDmrs);
}

}  // namespace gridshare::nr
