#include "gridshare/coexist.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "gridshare/errors.hpp"

namespace gridshare::coexist {

namespace {

bool contains(std::span<const ReLabel> labels, ReLabel label) { return std::ranges::find(labels, label) != labels.end(); }

bool is_5g_label(ReLabel label) {
    switch (label) {
        case ReLabel::NrPdcchCoreset0:
        case ReLabel::NrPdcchCoreset1:
        case ReLabel::NrSsb:
        case ReLabel::NrSib1:
        case ReLabel::NrDmrs:
        case ReLabel::NrCsiRs:
        case ReLabel::NrTrs:
        case ReLabel::NrData:
            return true;
        default:
            return false;
    }
}

std::string describe(const ReIndex& idx) {
    return "(slot " + std::to_string(idx.slot) + ", symbol " + std::to_string(idx.symbol) + ", subcarrier " +
           std::to_string(idx.subcarrier) + ")";
}

// 14 x 12 occupancy mask of one PRB of one subframe.
using PrbMask = std::array<std::array<bool, kSubcarriersPerPrb>, kSymbolsPerSlot>;

CarrierConfig one_prb(int span_ms) { return CarrierConfig{Numerology{15}, 1, Duplex::Fdd, std::nullopt, span_ms}; }

lte::LteCellConfig without_sync(lte::LteCellConfig cfg) {
    cfg.sync_signals = false;
    return cfg;
}

}  // namespace

Alignment alignment_check(const CarrierConfig& carrier_5g, const CarrierConfig& carrier_6g) {
    if (carrier_5g.numerology != carrier_6g.numerology) {
        return {false, "scs"};
    }
    if (carrier_5g.n_prb != carrier_6g.n_prb) {
        return {false, "n_prb"};
    }
    if (carrier_5g.duplex != carrier_6g.duplex || carrier_5g.tdd_pattern != carrier_6g.tdd_pattern) {
        return {false, "tdd_pattern"};
    }
    return {true, ""};
}

void ControlMode::validate() const {
    if (kind == Kind::PartiallyOverlapping && !(shared_fraction >= 0.0 && shared_fraction <= 1.0)) {
        throw ConfigError("control mode: shared_fraction must be in [0, 1]");
    }
}

std::vector<ReLabel> default_reserved_labels() {
    return {ReLabel::NrSsb,   ReLabel::NrPdcchCoreset0, ReLabel::NrSib1,     ReLabel::NrTrs,
            ReLabel::NrCsiRs, ReLabel::SixGSsb,         ReLabel::ReservedIot};
}

std::vector<ReLabel> default_control_labels() { return {ReLabel::NrPdcchCoreset1}; }

std::size_t MrssCategoryMap::offset(const ReIndex& idx) const {
    return (static_cast<std::size_t>(idx.slot) * kSymbolsPerSlot + static_cast<std::size_t>(idx.symbol)) *
               static_cast<std::size_t>(grid_.n_subcarriers()) +
           static_cast<std::size_t>(idx.subcarrier);
}

Category MrssCategoryMap::at(const ReIndex& idx) const {
    if (!grid_.contains(idx)) {
        throw RangeError("category index out of range: " + describe(idx));
    }
    return categories_[offset(idx)];
}

std::int64_t MrssCategoryMap::shared_in_slot(int slot) const {
    if (slot < 0 || slot >= grid_.n_slots()) {
        throw RangeError("slot " + std::to_string(slot) + " out of range");
    }
    const auto first = categories_.begin() + static_cast<std::ptrdiff_t>(offset({slot, 0, 0}));
    return std::count(first, first + kSymbolsPerSlot * grid_.n_subcarriers(), Category::Shared);
}

std::vector<std::int64_t> MrssCategoryMap::shared_per_slot() const {
    std::vector<std::int64_t> out;
    for (int slot = 0; slot < grid_.n_slots(); ++slot) {
        out.push_back(shared_in_slot(slot));
    }
    return out;
}

void MrssCategoryMap::recategorize(std::span<const ReIndex> cells, Category to, ReLabel label) {
    grid_ = apply_overlay(std::move(grid_), cells, label);
    for (const auto& idx : cells) {
        auto& c = categories_[offset(idx)];
        --counts_[static_cast<std::size_t>(c)];
        c = to;
        ++counts_[static_cast<std::size_t>(to)];
    }
}

MrssCategoryMap classify_mrss(const ResourceGrid& grid, std::span<const ReLabel> reserved_labels,
                              ControlMode control_mode, std::span<const ReLabel> control_labels,
                              const std::optional<CarrierConfig>& carrier_6g) {
    if (carrier_6g) {
        const auto a = alignment_check(grid.config(), *carrier_6g);
        if (!a.aligned) {
            throw ConfigError("5G and 6G carriers are misaligned: " + a.reason);
        }
    }
    control_mode.validate();
    std::set<ReLabel> seen;
    for (ReLabel l : reserved_labels) {
        if (!seen.insert(l).second) {
            throw ConfigError("reserved specs overlap: " + std::string(to_string(l)) + " listed twice");
        }
    }
    for (ReLabel l : control_labels) {
        if (!seen.insert(l).second) {
            throw ConfigError("reserved and control specs overlap on " + std::string(to_string(l)));
        }
    }
    for (ReLabel l : seen) {
        if (l == ReLabel::Unlabeled || l == ReLabel::GuardSymbol || l == ReLabel::UplinkSymbol) {
            throw ConfigError(std::string(to_string(l)) + " cannot be reserved or control");
        }
    }

    MrssCategoryMap map;
    map.grid_ = grid;
    map.mode_ = control_mode;
    map.categories_.assign(grid.size(), Category::NotDownlink);

    std::vector<std::int64_t> footprint(static_cast<std::size_t>(grid.n_slots()), 0);
    for (int slot = 0; slot < grid.n_slots(); ++slot) {
        for (int sym = 0; sym < kSymbolsPerSlot; ++sym) {
            const bool dl = grid.is_downlink(slot, sym);
            const auto row = grid.symbol_row(slot, sym);
            for (int sc = 0; sc < grid.n_subcarriers(); ++sc) {
                Category c = Category::NotDownlink;
                if (dl) {
                    const ReLabel l = row[static_cast<std::size_t>(sc)];
                    c = contains(reserved_labels, l)  ? Category::Reserved
                        : contains(control_labels, l) ? Category::Control
                                                      : Category::Shared;
                }
                if (c == Category::Control) {
                    ++footprint[static_cast<std::size_t>(slot)];
                }
                map.categories_[map.offset({slot, sym, sc})] = c;
                ++map.counts_[static_cast<std::size_t>(c)];
            }
        }
    }
    map.control_footprint_ = map.count(Category::Control);

    if (control_mode.kind == ControlMode::Kind::FullyOverlapping) {
        return map;
    }
    std::vector<ReIndex> extension;
    for (int slot = 0; slot < grid.n_slots(); ++slot) {
        const std::int64_t k = footprint[static_cast<std::size_t>(slot)];
        std::int64_t extra = k;
        if (control_mode.kind == ControlMode::Kind::PartiallyOverlapping) {
            extra = k - static_cast<std::int64_t>(std::floor(control_mode.shared_fraction * static_cast<double>(k)));
        }
        for (int sym = 0; sym < kSymbolsPerSlot && extra > 0; ++sym) {
            const auto row = grid.symbol_row(slot, sym);
            for (int sc = 0; sc < grid.n_subcarriers() && extra > 0; ++sc) {
                const ReIndex idx{slot, sym, sc};
                if (map.categories_[map.offset(idx)] == Category::Shared &&
                    row[static_cast<std::size_t>(sc)] == ReLabel::Unlabeled) {
                    extension.push_back(idx);
                    --extra;
                }
            }
        }
        if (extra > 0) {
            throw PlacementError("6G control region: slot " + std::to_string(slot) + " lacks " +
                                 std::to_string(extra) + " free shared cells");
        }
    }
    map.recategorize(extension, Category::Control, ReLabel::SixGControl);
    return map;
}

MrssCategoryMap reserve_iot(MrssCategoryMap map, PrbRange prbs, SlotPattern slots) {
    if (prbs.begin == prbs.end) {
        return map;
    }
    if (prbs.begin > prbs.end || prbs.begin < 0 || prbs.end > map.grid_.n_prb()) {
        throw RangeError("reserve_iot: PRB range out of bounds");
    }
    if (slots.period < 1 || slots.offset < 0 || slots.offset >= slots.period) {
        throw ConfigError("reserve_iot: slot pattern needs period >= 1 and 0 <= offset < period");
    }
    std::vector<ReIndex> cells;
    for (int slot = 0; slot < map.grid_.n_slots(); ++slot) {
        if (!slots.contains(slot)) {
            continue;
        }
        for (int sym = 0; sym < map.grid_.config().downlink_symbols(slot); ++sym) {
            for (int sc = prbs.begin * kSubcarriersPerPrb; sc < prbs.end * kSubcarriersPerPrb; ++sc) {
                const ReIndex idx{slot, sym, sc};
                if (map.at(idx) != Category::Shared || map.grid_.at(idx) != ReLabel::Unlabeled) {
                    throw ConflictError("reserve_iot: cell " + describe(idx) + " is not in the shared pool (" +
                                        std::string(to_string(map.grid_.at(idx))) + ")");
                }
                cells.push_back(idx);
            }
        }
    }
    map.recategorize(cells, Category::Reserved, ReLabel::ReservedIot);
    return map;
}

MrssCategoryMap place_6g_ssb(MrssCategoryMap map, std::span<const SsbOccasion> occasions) {
    std::vector<ReIndex> cells;
    std::set<ReIndex> seen;
    for (const auto& occ : occasions) {
        if (occ.symbols < 0 || occ.prbs < 0) {
            throw ConfigError("6G SSB occasion sizes must be >= 0");
        }
        const auto block = block_cells(occ.slot, occ.first_symbol, occ.symbols, occ.first_prb * kSubcarriersPerPrb,
                                       occ.prbs * kSubcarriersPerPrb);
        for (const auto& idx : block) {
            if (!map.grid_.contains(idx)) {
                throw RangeError("6G SSB occasion cell out of range: " + describe(idx));
            }
            const ReLabel l = map.grid_.at(idx);
            const Category c = map.at(idx);
            if (is_5g_label(l) || c == Category::Control) {
                throw NotHiddenError("6G SSB not hidden from 5G: " + describe(idx) + " carries " +
                                     std::string(to_string(l)));
            }
            if (c != Category::Shared || l != ReLabel::Unlabeled || !seen.insert(idx).second) {
                throw ConflictError("6G SSB occasion cell " + describe(idx) + " is not in the shared pool");
            }
            cells.push_back(idx);
        }
    }
    map.recategorize(cells, Category::Reserved, ReLabel::SixGSsb);
    return map;
}

void LoadModel::validate() const {
    if (kind == Kind::Constant && value < 0) {
        throw ConfigError("load: constant value must be >= 0");
    }
    if (kind == Kind::Uniform && (min < 0 || max < min)) {
        throw ConfigError("load: uniform bounds need 0 <= min <= max");
    }
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> TrafficModel::demands(int n_slots) const {
    load_5g.validate();
    load_6g.validate();
    std::mt19937_64 rng(seed);
    auto draw = [&rng](const LoadModel& m) -> std::int64_t {
        if (m.kind == LoadModel::Kind::Constant) {
            return m.value;
        }
        const auto span = static_cast<std::uint64_t>(m.max - m.min) + 1;
        return m.min + static_cast<std::int64_t>(rng() % span);
    };
    std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> out;
    for (int slot = 0; slot < n_slots; ++slot) {
        out.first.push_back(draw(load_5g));
        out.second.push_back(draw(load_6g));
    }
    return out;
}

SlotGrant grant_slot(std::int64_t pool, std::int64_t demand_5g, std::int64_t demand_6g, SchedPolicy policy) {
    SlotGrant g;
    switch (policy) {
        case SchedPolicy::Priority5G:
            g.grant_5g = std::min(demand_5g, pool);
            g.grant_6g = std::min(demand_6g, pool - g.grant_5g);
            break;
        case SchedPolicy::Priority6G:
            g.grant_6g = std::min(demand_6g, pool);
            g.grant_5g = std::min(demand_5g, pool - g.grant_6g);
            break;
        case SchedPolicy::ProportionalShare: {
            const std::int64_t total = demand_5g + demand_6g;
            if (total <= pool) {
                g.grant_5g = demand_5g;
                g.grant_6g = demand_6g;
                break;
            }
            g.grant_5g = pool * demand_5g / total;
            g.grant_6g = pool * demand_6g / total;
            const std::int64_t leftover = pool - g.grant_5g - g.grant_6g;
            (demand_6g > demand_5g ? g.grant_6g : g.grant_5g) += leftover;
            break;
        }
    }
    g.unused = pool - g.grant_5g - g.grant_6g;
    return g;
}

SimResult simulate_pool(std::span<const std::int64_t> pool_per_slot, const TrafficModel& traffic, SchedPolicy policy) {
    const int n = static_cast<int>(pool_per_slot.size());
    auto [d5, d6] = traffic.demands(n);
    SimResult r;
    r.pool.assign(pool_per_slot.begin(), pool_per_slot.end());
    std::int64_t alone_5g = 0;
    std::int64_t alone_6g = 0;
    for (int slot = 0; slot < n; ++slot) {
        const auto i = static_cast<std::size_t>(slot);
        const auto g = grant_slot(r.pool[i], d5[i], d6[i], policy);
        r.grant_5g.push_back(g.grant_5g);
        r.grant_6g.push_back(g.grant_6g);
        r.unused.push_back(g.unused);
        r.total_5g += g.grant_5g;
        r.total_6g += g.grant_6g;
        r.shared_pool_size += r.pool[i];
        r.unused_shared += g.unused;
        r.dropped_5g += d5[i] - g.grant_5g;
        r.dropped_6g += d6[i] - g.grant_6g;
        alone_5g += std::min(d5[i], r.pool[i]);
        alone_6g += std::min(d6[i], r.pool[i]);
    }
    r.demand_5g = std::move(d5);
    r.demand_6g = std::move(d6);
    r.efficiency_5g = alone_5g > 0 ? Ratio(r.total_5g, alone_5g) : Ratio(1, 1);
    r.efficiency_6g = alone_6g > 0 ? Ratio(r.total_6g, alone_6g) : Ratio(1, 1);
    return r;
}

SimResult simulate(const MrssCategoryMap& map, const TrafficModel& traffic, SchedPolicy policy, int n_slots) {
    if (n_slots < 0 || n_slots > map.grid().n_slots()) {
        throw RangeError("simulate: " + std::to_string(n_slots) + " slots requested, window has " +
                         std::to_string(map.grid().n_slots()));
    }
    auto pool = map.shared_per_slot();
    pool.resize(static_cast<std::size_t>(n_slots));
    return simulate_pool(pool, traffic, policy);
}

MechanismBudget dss_mechanism_budget(const Mechanism& mechanism, const lte::LteCellConfig& lte_cfg,
                                     const nr::DssLayout& layout) {
    const auto cell = without_sync(lte_cfg);
    cell.validate();
    MechanismBudget out;
    const auto lte_grid = lte::apply_lte(make_grid(one_prb(1)), cell);
    const std::int64_t lte_data = count_labels(lte_grid)[ReLabel::Unlabeled];

    switch (mechanism.kind) {
        case Mechanism::Kind::CrsRateMatch: {
            const auto grid = nr::nr_dss_slot(lte_grid, cell, layout);
            out.nr_usable = count_labels(grid)[ReLabel::Unlabeled];
            out.lte_usable = lte_data;
            break;
        }
        case Mechanism::Kind::MbsfnShare: {
            auto mbsfn_cell = cell;
            mbsfn_cell.mbsfn_subframes = {1};
            const int subframe[] = {1};
            const auto grid = lte::apply_lte(make_grid(one_prb(2)), mbsfn_cell, subframe);
            const int start = layout.nr_pdcch_start.value_or(cell.non_mbsfn_region_len);
            if (start < cell.non_mbsfn_region_len) {
                throw ConfigError("MBSFN share: NR control must start after the non-MBSFN region");
            }
            const int control_end = start + layout.nr_pdcch_symbols;
            for (int sym : layout.dmrs_symbols) {
                if (sym < control_end) {
                    throw ConfigError("MBSFN share: DMRS symbol " + std::to_string(sym) + " lies in the control region");
                }
            }
            for (int sym = 0; sym < kSymbolsPerSlot; ++sym) {
                const bool nr_overhead = (sym >= start && sym < control_end) ||
                                         std::ranges::find(layout.dmrs_symbols, sym) != layout.dmrs_symbols.end();
                if (nr_overhead) {
                    continue;
                }
                for (ReLabel l : grid.symbol_row(1, sym)) {
                    out.nr_usable += l == ReLabel::LteMbsfnMuted ? 1 : 0;
                    out.lte_usable += l == ReLabel::Unlabeled ? 1 : 0;
                }
            }
            break;
        }
        case Mechanism::Kind::MiniSlot: {
            const int len = mechanism.minislot_len;
            if (len < 1 || mechanism.dmrs_per_minislot < 0 || mechanism.dmrs_per_minislot >= len) {
                throw ConfigError("mini-slot: need len >= 1 and 0 <= dmrs_per_minislot < len");
            }
            const int first = cell.pdcch_symbols;
            const int run = kSymbolsPerSlot - first;
            const int n_mini = run / len;
            out.unused_symbols = run % len;
            const auto crs = nr::crs_symbols(cell.crs_ports);
            std::vector<ReIndex> dmrs;
            for (int m = 0; m < n_mini; ++m) {
                int placed = 0;
                for (int sym = first + m * len; sym < first + (m + 1) * len && placed < mechanism.dmrs_per_minislot;
                     ++sym) {
                    if (std::ranges::find(crs, sym) != crs.end()) {
                        continue;
                    }
                    const auto row = block_cells(0, sym, 1, 0, kSubcarriersPerPrb);
                    dmrs.insert(dmrs.end(), row.begin(), row.end());
                    ++placed;
                }
                if (placed < mechanism.dmrs_per_minislot) {
                    throw ConfigError("mini-slot " + std::to_string(m) + " has too few CRS-free symbols for DMRS");
                }
            }
            const auto grid = apply_overlay(lte_grid, dmrs, ReLabel::NrDmrs);
            for (int sym = first; sym < first + n_mini * len; ++sym) {
                for (ReLabel l : grid.symbol_row(0, sym)) {
                    out.nr_usable += l == ReLabel::Unlabeled ? 1 : 0;
                }
            }
            out.lte_usable = lte_data;
            break;
        }
    }
    return out;
}

void Mitigation::validate() const {
    if (kind == Kind::ReceiverCancellation && !(effectiveness >= 0.0 && effectiveness <= 1.0)) {
        throw ConfigError("mitigation: effectiveness must be in [0, 1]");
    }
}

InterferenceReport neighbor_interference(const lte::LteCellConfig& serving,
                                         std::span<const lte::LteCellConfig> neighbors, const Mitigation& mitigation,
                                         const nr::DssLayout& layout) {
    mitigation.validate();
    const auto cell = without_sync(serving);
    const auto grid = nr::nr_dss_slot(lte::apply_lte(make_grid(one_prb(1)), cell), cell, layout);

    PrbMask pool{};
    PrbMask neighbor_crs{};
    std::array<bool, kSymbolsPerSlot> neighbor_symbol{};
    InterferenceReport r;
    for (int sym = 0; sym < kSymbolsPerSlot; ++sym) {
        for (int sc = 0; sc < kSubcarriersPerPrb; ++sc) {
            pool[sym][sc] = grid.at(0, sym, sc) == ReLabel::Unlabeled;
            r.pool += pool[sym][sc] ? 1 : 0;
        }
    }
    for (const auto& n : neighbors) {
        for (const auto& c : lte::crs_cells(n, 1, 0)) {
            neighbor_crs[c.symbol][c.subcarrier] = true;
            neighbor_symbol[c.symbol] = true;
        }
    }

    std::int64_t hit = 0;
    std::int64_t on_crs_symbols = 0;
    for (int sym = 0; sym < kSymbolsPerSlot; ++sym) {
        for (int sc = 0; sc < kSubcarriersPerPrb; ++sc) {
            if (!pool[sym][sc]) {
                continue;
            }
            hit += neighbor_crs[sym][sc] ? 1 : 0;
            on_crs_symbols += neighbor_symbol[sym] ? 1 : 0;
        }
    }

    switch (mitigation.kind) {
        case Mitigation::Kind::ServingOnlyRateMatch:
            r.dirty = hit;
            break;
        case Mitigation::Kind::NeighborAwareRateMatch:
            r.sacrificed = hit;
            break;
        case Mitigation::Kind::SymbolLevelMute:
            r.sacrificed = on_crs_symbols;
            break;
        case Mitigation::Kind::ReceiverCancellation: {
            const auto cleaned = static_cast<std::int64_t>(std::floor(mitigation.effectiveness * static_cast<double>(hit)));
            r.dirty = hit - cleaned;
            break;
        }
    }
    r.clean = r.pool - r.sacrificed - r.dirty;
    return r;
}

}  // namespace gridshare::coexist
