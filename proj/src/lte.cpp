#include "gridshare/lte.hpp"

#include <algorithm>
#include <numeric>

#include "gridshare/errors.hpp"

namespace gridshare::lte {

namespace {

constexpr int kSyncSubcarriers = 72;

// Subcarrier offsets within a PRB for one port on one CRS symbol. Offsets repeat every
// 6 subcarriers, two per PRB.
std::array<int, 2> crs_offsets(int port, int symbol, int v_shift) {
    const int slot_symbol = symbol % 7;
    int base = 0;
    switch (port) {
        case 0: base = slot_symbol == 0 ? v_shift : v_shift + 3; break;
        case 1: base = slot_symbol == 0 ? v_shift + 3 : v_shift; break;
        case 2: base = v_shift; break;
        case 3: base = v_shift + 3; break;
        default: break;
    }
    base %= 6;
    return {base, base + 6};
}

void append_cells(std::vector<ReIndex>& out, const ResourceGrid& grid, int slot, int symbol, int sc_begin,
                  int sc_end) {
    for (int sc = sc_begin; sc < sc_end; ++sc) {
        if (grid.at(slot, symbol, sc) == ReLabel::Unlabeled) {
            out.push_back({slot, symbol, sc});
        }
    }
}

}  // namespace

void LteCellConfig::validate() const {
    if (cell_id < 0) {
        throw ConfigError("lte: cell_id must be >= 0");
    }
    if (crs_ports != 1 && crs_ports != 2 && crs_ports != 4) {
        throw ConfigError("lte: crs_ports must be 1, 2 or 4");
    }
    if (pdcch_symbols < 1 || pdcch_symbols > 3) {
        throw ConfigError("lte: pdcch_symbols must be in 1..3");
    }
    if (non_mbsfn_region_len != 1 && non_mbsfn_region_len != 2) {
        throw ConfigError("lte: non_mbsfn_region_len must be 1 or 2");
    }
    for (int sf : mbsfn_subframes) {
        if (sf < 0 || sf > 9) {
            throw ConfigError("lte: mbsfn subframe index must be in 0..9");
        }
        if (sf == 0 || sf == 5) {
            throw ConfigError("lte: subframes 0 and 5 carry sync signals and cannot be MBSFN");
        }
    }
}

int crs_per_prb_on_symbol(int crs_ports, int symbol) {
    const bool port01_symbol = std::ranges::find(kCrsSymbolsPort01, symbol) != kCrsSymbolsPort01.end();
    const bool port23_symbol = std::ranges::find(kCrsSymbolsPort23, symbol) != kCrsSymbolsPort23.end();
    if (port01_symbol) {
        return 2 * std::min(crs_ports, 2);
    }
    if (port23_symbol && crs_ports == 4) {
        return 4;
    }
    return 0;
}

std::vector<CrsCell> crs_cells(const LteCellConfig& cfg, int n_prb, int subframe_index) {
    cfg.validate();
    const int last_symbol = cfg.is_mbsfn(subframe_index) ? cfg.non_mbsfn_region_len : kSymbolsPerSlot;
    std::vector<CrsCell> out;
    out.reserve(static_cast<std::size_t>(n_prb) * 24);
    auto emit = [&](int port, int symbol) {
        if (symbol >= last_symbol) {
            return;
        }
        const auto offsets = crs_offsets(port, symbol, cfg.v_shift());
        for (int prb = 0; prb < n_prb; ++prb) {
            for (int off : offsets) {
                out.push_back({symbol, prb * kSubcarriersPerPrb + off, port});
            }
        }
    };
    for (int port = 0; port < std::min(cfg.crs_ports, 2); ++port) {
        for (int sym : kCrsSymbolsPort01) {
            emit(port, sym);
        }
    }
    if (cfg.crs_ports == 4) {
        for (int port = 2; port < 4; ++port) {
            for (int sym : kCrsSymbolsPort23) {
                emit(port, sym);
            }
        }
    }
    std::ranges::sort(out);
    return out;
}

ResourceGrid apply_lte(ResourceGrid grid, const LteCellConfig& cfg, std::span<const int> subframes) {
    cfg.validate();
    if (grid.config().numerology.scs_khz != 15) {
        throw ConfigError("LTE requires 15 kHz");
    }
    const int n_sc = grid.n_subcarriers();
    for (int sf : subframes) {
        if (sf < 0 || sf >= grid.n_slots()) {
            throw RangeError("apply_lte: subframe " + std::to_string(sf) + " out of range");
        }
        if (grid.config().downlink_symbols(sf) != kSymbolsPerSlot) {
            throw ConfigError("apply_lte: subframe " + std::to_string(sf) + " is not a full downlink subframe");
        }
    }

    for (int sf : subframes) {
        const int frame_sf = sf % 10;
        const bool mbsfn = cfg.is_mbsfn(frame_sf);

        std::array<std::vector<ReIndex>, 4> crs_by_port;
        for (const auto& c : crs_cells(cfg, grid.n_prb(), frame_sf)) {
            crs_by_port[static_cast<std::size_t>(c.port)].push_back({sf, c.symbol, c.subcarrier});
        }
        for (int port = 0; port < 4; ++port) {
            grid = apply_overlay(std::move(grid), crs_by_port[static_cast<std::size_t>(port)], lte_crs(port));
        }

        const int pdcch = mbsfn ? std::min(cfg.pdcch_symbols, cfg.non_mbsfn_region_len) : cfg.pdcch_symbols;
        std::vector<ReIndex> control;
        for (int sym = 0; sym < pdcch; ++sym) {
            append_cells(control, grid, sf, sym, 0, n_sc);
        }
        grid = apply_overlay(std::move(grid), control, ReLabel::LtePdcch);

        if (cfg.sync_signals && (frame_sf == 0 || frame_sf == 5)) {
            const int width = std::min(kSyncSubcarriers, n_sc);
            const int first = (n_sc - width) / 2;
            std::vector<ReIndex> sync;
            // SSS/PSS: last two symbols of slot 0.
            for (int sym : {5, 6}) {
                append_cells(sync, grid, sf, sym, first, first + width);
            }
            // PBCH: first four symbols of slot 1, around CRS.
            if (frame_sf == 0) {
                for (int sym = 7; sym < 11; ++sym) {
                    append_cells(sync, grid, sf, sym, first, first + width);
                }
            }
            grid = apply_overlay(std::move(grid), sync, ReLabel::LtePssSssPbch);
        }

        if (mbsfn) {
            const auto muted = block_cells(sf, cfg.non_mbsfn_region_len, kSymbolsPerSlot - cfg.non_mbsfn_region_len, 0, n_sc);
            grid = apply_overlay(std::move(grid), muted, ReLabel::LteMbsfnMuted, OverridePolicy::Overwrite);
        }
    }
    return grid;
}

ResourceGrid apply_lte(ResourceGrid grid, const LteCellConfig& cfg) {
    std::vector<int> all(static_cast<std::size_t>(grid.n_slots()));
    std::iota(all.begin(), all.end(), 0);
    return apply_lte(std::move(grid), cfg, all);
}

}  // namespace gridshare::lte
