#include "gridshare/grid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gridshare/errors.hpp"

namespace gridshare {

namespace {

constexpr std::array<std::string_view, kLabelCount> kLabelNames = {
    "unlabeled",         "lte_pdcch",         "lte_crs0",    "lte_crs1",      "lte_crs2",    "lte_crs3",
    "lte_pss_sss_pbch",  "lte_data",          "lte_mbsfn_muted",
    "nr_pdcch_coreset0", "nr_pdcch_coreset1", "nr_ssb",      "nr_sib1",       "nr_dmrs",     "nr_csi_rs",
    "nr_trs",            "nr_data",           "sixg_ssb",    "sixg_control",  "sixg_data",   "reserved_iot",
    "guard_symbol",      "uplink_symbol",
};

std::string describe(const ReIndex& idx) {
    std::ostringstream os;
    os << "(slot " << idx.slot << ", symbol " << idx.symbol << ", subcarrier " << idx.subcarrier << ")";
    return os.str();
}

}  // namespace

Numerology Numerology::from_scs(int scs_khz) {
    Numerology n{scs_khz};
    n.validate();
    return n;
}

void Numerology::validate() const {
    if (scs_khz != 15 && scs_khz != 30) {
        throw ConfigError("numerology: scs_khz must be 15 or 30, got " + std::to_string(scs_khz));
    }
}

TddPattern TddPattern::from_string(std::string_view cycle, SpecialSplit split) {
    TddPattern p;
    p.special_split = split;
    for (char c : cycle) {
        switch (c) {
            case 'D': p.cycle.push_back(SlotKind::Downlink); break;
            case 'S': p.cycle.push_back(SlotKind::Special); break;
            case 'U': p.cycle.push_back(SlotKind::Uplink); break;
            default:
                throw ConfigError(std::string("tdd_pattern: unknown slot kind '") + c + "' (expected D, S or U)");
        }
    }
    p.validate();
    return p;
}

std::string TddPattern::cycle_string() const {
    std::string out;
    for (SlotKind k : cycle) {
        out += k == SlotKind::Downlink ? 'D' : k == SlotKind::Special ? 'S' : 'U';
    }
    return out;
}

void TddPattern::validate() const {
    if (cycle.empty()) {
        throw ConfigError("tdd_pattern: cycle is empty");
    }
    const auto& s = special_split;
    if (s.dl_symbols < 0 || s.guard_symbols < 0 || s.ul_symbols < 0) {
        throw ConfigError("tdd_pattern: special_split components must be >= 0");
    }
    if (s.dl_symbols + s.guard_symbols + s.ul_symbols != kSymbolsPerSlot) {
        throw ConfigError("tdd_pattern: special_split must sum to 14 symbols");
    }
}

void CarrierConfig::validate() const {
    numerology.validate();
    if (n_prb < 1) {
        throw ConfigError("carrier: n_prb must be >= 1");
    }
    if (span_ms < 1) {
        throw ConfigError("carrier: span_ms must be >= 1");
    }
    if (duplex == Duplex::Tdd && !tdd_pattern) {
        throw ConfigError("carrier: TDD duplex requires a tdd_pattern");
    }
    if (duplex == Duplex::Fdd && tdd_pattern) {
        throw ConfigError("carrier: FDD duplex must not carry a tdd_pattern");
    }
    if (tdd_pattern) {
        tdd_pattern->validate();
        if (n_slots() % static_cast<int>(tdd_pattern->cycle.size()) != 0) {
            throw ConfigError("carrier: span of " + std::to_string(n_slots()) +
                              " slots is not a whole number of TDD cycles");
        }
    }
}

SlotKind CarrierConfig::slot_kind(int slot) const {
    if (!tdd_pattern) {
        return SlotKind::Downlink;
    }
    const auto& cycle = tdd_pattern->cycle;
    return cycle[static_cast<std::size_t>(slot) % cycle.size()];
}

int CarrierConfig::downlink_symbols(int slot) const {
    switch (slot_kind(slot)) {
        case SlotKind::Downlink: return kSymbolsPerSlot;
        case SlotKind::Special: return tdd_pattern->special_split.dl_symbols;
        case SlotKind::Uplink: return 0;
    }
    return 0;
}

ReLabel lte_crs(int port) {
    if (port < 0 || port > 3) {
        throw ConfigError("LTE CRS port index must be in 0..3");
    }
    return static_cast<ReLabel>(static_cast<int>(ReLabel::LteCrs0) + port);
}

std::optional<int> crs_port(ReLabel label) {
    const int v = static_cast<int>(label);
    const int base = static_cast<int>(ReLabel::LteCrs0);
    if (v >= base && v <= base + 3) {
        return v - base;
    }
    return std::nullopt;
}

std::string_view to_string(ReLabel label) { return kLabelNames[static_cast<std::size_t>(label)]; }

std::optional<ReLabel> label_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        if (kLabelNames[i] == name) {
            return static_cast<ReLabel>(i);
        }
    }
    return std::nullopt;
}

std::array<ReLabel, kLabelCount> all_labels() {
    std::array<ReLabel, kLabelCount> out{};
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        out[i] = static_cast<ReLabel>(i);
    }
    return out;
}

std::int64_t LabelCounts::total() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

std::int64_t LabelCounts::crs_total() const {
    std::int64_t n = 0;
    for (int port = 0; port < 4; ++port) {
        n += (*this)[lte_crs(port)];
    }
    return n;
}

std::map<ReLabel, std::int64_t> LabelCounts::nonzero() const {
    std::map<ReLabel, std::int64_t> out;
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        if (counts_[i] != 0) {
            out.emplace(static_cast<ReLabel>(i), counts_[i]);
        }
    }
    return out;
}

LabelCounts& LabelCounts::operator+=(const LabelCounts& other) {
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        counts_[i] += other.counts_[i];
    }
    return *this;
}

bool ResourceGrid::contains(const ReIndex& idx) const {
    return idx.slot >= 0 && idx.slot < n_slots_ && idx.symbol >= 0 && idx.symbol < kSymbolsPerSlot &&
           idx.subcarrier >= 0 && idx.subcarrier < n_subcarriers_;
}

std::span<const ReLabel> ResourceGrid::symbol_row(int slot, int symbol) const {
    return std::span<const ReLabel>(labels_).subspan(offset({slot, symbol, 0}),
                                                     static_cast<std::size_t>(n_subcarriers_));
}

ResourceGrid make_grid(const CarrierConfig& config) {
    config.validate();
    ResourceGrid grid;
    grid.config_ = config;
    grid.n_slots_ = config.n_slots();
    grid.n_subcarriers_ = config.n_subcarriers();
    grid.labels_.assign(static_cast<std::size_t>(grid.n_slots_) * kSymbolsPerSlot *
                            static_cast<std::size_t>(grid.n_subcarriers_),
                        ReLabel::Unlabeled);
    if (!config.tdd_pattern) {
        return grid;
    }
    const auto& split = config.tdd_pattern->special_split;
    for (int slot = 0; slot < grid.n_slots_; ++slot) {
        for (int sym = 0; sym < kSymbolsPerSlot; ++sym) {
            ReLabel label = ReLabel::Unlabeled;
            switch (config.slot_kind(slot)) {
                case SlotKind::Downlink: break;
                case SlotKind::Uplink: label = ReLabel::UplinkSymbol; break;
                case SlotKind::Special:
                    if (sym >= split.dl_symbols + split.guard_symbols) {
                        label = ReLabel::UplinkSymbol;
                    } else if (sym >= split.dl_symbols) {
                        label = ReLabel::GuardSymbol;
                    }
                    break;
            }
            if (label != ReLabel::Unlabeled) {
                auto first = grid.labels_.begin() + static_cast<std::ptrdiff_t>(grid.offset({slot, sym, 0}));
                std::fill(first, first + grid.n_subcarriers_, label);
            }
        }
    }
    return grid;
}

ResourceGrid apply_overlay(ResourceGrid grid, std::span<const ReIndex> cells, ReLabel label, OverridePolicy policy) {
    if (policy == OverridePolicy::Overwrite && label != ReLabel::LteMbsfnMuted) {
        throw ConfigError("overwrite policy is only permitted for MBSFN muting (lte_mbsfn_muted)");
    }
    for (const auto& idx : cells) {
        if (!grid.contains(idx)) {
            throw RangeError("overlay index out of range: " + describe(idx));
        }
        const ReLabel existing = grid.labels_[grid.offset(idx)];
        if (existing == ReLabel::Unlabeled) {
            continue;
        }
        if (policy == OverridePolicy::Overwrite && existing == ReLabel::LteData) {
            continue;
        }
        throw ConflictError("overlay conflict at " + describe(idx) + ": cell carries " +
                            std::string(to_string(existing)) + ", cannot label " + std::string(to_string(label)));
    }
    for (const auto& idx : cells) {
        grid.labels_[grid.offset(idx)] = label;
    }
    return grid;
}

LabelCounts count_labels(const ResourceGrid& grid, SlotRange slots, PrbRange prbs) {
    if (slots.begin >= slots.end || prbs.begin >= prbs.end) {
        throw RangeError("count_labels: empty or inverted range");
    }
    if (slots.begin < 0 || slots.end > grid.n_slots() || prbs.begin < 0 || prbs.end > grid.n_prb()) {
        throw RangeError("count_labels: range out of bounds");
    }
    LabelCounts counts;
    const auto sc_begin = static_cast<std::size_t>(prbs.begin * kSubcarriersPerPrb);
    const auto sc_end = static_cast<std::size_t>(prbs.end * kSubcarriersPerPrb);
    for (int slot = slots.begin; slot < slots.end; ++slot) {
        for (int sym = 0; sym < kSymbolsPerSlot; ++sym) {
            const auto row = grid.symbol_row(slot, sym);
            for (std::size_t sc = sc_begin; sc < sc_end; ++sc) {
                counts.add(row[sc]);
            }
        }
    }
    return counts;
}

LabelCounts count_labels(const ResourceGrid& grid) {
    return count_labels(grid, {0, grid.n_slots()}, {0, grid.n_prb()});
}

std::vector<ReIndex> block_cells(int slot, int first_symbol, int n_symbols, int first_subcarrier, int n_subcarriers) {
    std::vector<ReIndex> out;
    out.reserve(static_cast<std::size_t>(std::max(0, n_symbols)) * static_cast<std::size_t>(std::max(0, n_subcarriers)));
    for (int sym = first_symbol; sym < first_symbol + n_symbols; ++sym) {
        for (int sc = first_subcarrier; sc < first_subcarrier + n_subcarriers; ++sc) {
            out.push_back({slot, sym, sc});
        }
    }
    return out;
}

}  // namespace gridshare
