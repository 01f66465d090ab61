#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridshare/grid.hpp"
#include "gridshare/nr.hpp"
#include "gridshare/ratio.hpp"

namespace gridshare::budget {

/// Per-PRB, per-slot useful NR data REs on a DSS carrier versus pure NR and pure LTE carriers.
struct BudgetRow {
    int crs_ports = 0;
    std::int64_t dss_re = 0;
    std::int64_t nr_re = 0;
    std::int64_t lte_re = 0;
    Ratio loss_vs_nr;
    Ratio loss_vs_lte;

    bool operator==(const BudgetRow&) const = default;
};

struct DssParams {
    int dmrs_count = 2;
    int lte_pdcch = 2;
    int nr_pdcch = 1;
    /// Explicit DMRS positions; default picks them from the control layout.
    std::optional<std::vector<int>> dmrs_symbols;

    /// DMRS positions actually used (explicit or default).
    std::vector<int> resolved_dmrs() const;
    nr::DssLayout layout() const;
    void validate(int crs_ports) const;
    bool operator==(const DssParams&) const = default;
};

/// Counts from the per-symbol CRS density table. crs_ports = 0 means no LTE incumbent.
BudgetRow dss_row_closed_form(int crs_ports, const DssParams& params = {});
/// Counts by building one-PRB grids with the LTE and NR overlays and enumerating them.
BudgetRow dss_row_enumerated(int crs_ports, const DssParams& params = {});

/// Rows for 1, 2 and 4 CRS ports. Both routes are evaluated; a disagreement throws.
std::vector<BudgetRow> dss_table(const DssParams& params = {});

struct OverheadRow {
    /// Short name used for lookups: "SSB", "CORESET 0", "SIB1", "CORESET 1", "CSI-RS", "TRS", "Total".
    std::string signal_name;
    /// Name as printed in reports, e.g. "CORESET 1 / regular PDCCH".
    std::string display_name;
    std::string config_summary;
    std::int64_t re_count = 0;
    Ratio pct_of_total;
    Ratio pct_of_downlink;
};

struct OverheadReport {
    std::vector<OverheadRow> rows;
    OverheadRow total_row;
    std::int64_t total_re = 0;
    std::int64_t downlink_re = 0;
    int period_ms = 0;

    const OverheadRow& row(std::string_view signal_name) const;
};

/// Carrier restricted to one accounting period of `set`.
CarrierConfig overhead_window(const CarrierConfig& carrier, const nr::NrOverlaySet& set);

/// Closed-form overhead breakdown over one accounting period. Rows are summed without overlap deduction.
OverheadReport nr_overhead(const CarrierConfig& carrier, const nr::NrOverlaySet& set);

/// Builds the period grid with every overlay placed and checks each row and both
/// denominators against label counts. Returns the counts; throws Error on any mismatch.
LabelCounts verify_overhead(const CarrierConfig& carrier, const nr::NrOverlaySet& set, const OverheadReport& report);

/// Share of `signal_name` in the total overhead, in percent. Throws LookupError for unknown names.
Ratio dominance_share(const OverheadReport& report, std::string_view signal_name);

}  // namespace gridshare::budget
