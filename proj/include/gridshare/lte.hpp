#pragma once

#include <set>
#include <span>
#include <vector>

#include "gridshare/grid.hpp"

namespace gridshare::lte {

struct LteCellConfig {
    int cell_id = 0;
    int crs_ports = 1;
    int pdcch_symbols = 2;
    /// Subframe indices within the 10 ms frame (0..9).
    std::set<int> mbsfn_subframes;
    int non_mbsfn_region_len = 2;
    /// Place PSS/SSS/PBCH in the center 6 PRBs of subframes 0 and 5.
    bool sync_signals = true;

    int v_shift() const { return cell_id % 6; }
    bool is_mbsfn(int subframe_index) const { return mbsfn_subframes.contains(subframe_index % 10); }

    void validate() const;
    bool operator==(const LteCellConfig&) const = default;
};

struct CrsCell {
    int symbol = 0;
    int subcarrier = 0;
    int port = 0;

    auto operator<=>(const CrsCell&) const = default;
};

/// Subframe symbols carrying CRS for ports 0/1 and for ports 2/3.
inline constexpr std::array<int, 4> kCrsSymbolsPort01 = {0, 4, 7, 11};
inline constexpr std::array<int, 2> kCrsSymbolsPort23 = {1, 8};

/// CRS positions of one subframe over `n_prb` PRBs. In MBSFN subframes only the
/// non-MBSFN region carries CRS.
std::vector<CrsCell> crs_cells(const LteCellConfig& cfg, int n_prb, int subframe_index);

/// Number of CRS cells per PRB on subframe symbol `symbol` for a normal subframe.
int crs_per_prb_on_symbol(int crs_ports, int symbol);

/// Overlays CRS, PDCCH region, sync signals and MBSFN muting on the given subframes
/// (grid slot == subframe at 15 kHz).
ResourceGrid apply_lte(ResourceGrid grid, const LteCellConfig& cfg, std::span<const int> subframes);
/// Same, over every slot of the grid.
ResourceGrid apply_lte(ResourceGrid grid, const LteCellConfig& cfg);

}  // namespace gridshare::lte
