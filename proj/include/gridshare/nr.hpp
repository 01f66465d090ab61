#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gridshare/grid.hpp"
#include "gridshare/lte.hpp"

namespace gridshare::nr {

struct SsbConfig {
    int beams = 0;
    int prbs = 0;
    int symbols_per_beam = 0;
    int period_ms = 20;

    bool operator==(const SsbConfig&) const = default;
};

/// Beam-swept rectangular footprint (CORESET0, SIB1).
struct BeamBlockConfig {
    int beams = 0;
    int prbs = 0;
    int symbols = 0;

    bool operator==(const BeamBlockConfig&) const = default;
};

struct Coreset1Config {
    int prbs = 0;
    int symbols = 0;
    /// Monitored DL-bearing slots per period, counted from the start of the period.
    /// nullopt monitors every DL-bearing slot.
    std::optional<int> slots;

    bool operator==(const Coreset1Config&) const = default;
};

struct CsiRsConfig {
    int ports = 0;
    int density_re_per_port_per_prb = 0;
    int prbs = 0;
    int occasions_per_period = 0;

    bool operator==(const CsiRsConfig&) const = default;
};

struct TrsConfig {
    int prbs = 0;
    int slots_per_occasion = 0;
    int re_per_prb_per_slot = 0;
    int beams = 0;
    int occasions_per_period = 0;

    bool operator==(const TrsConfig&) const = default;
};

struct NrOverlaySet {
    SsbConfig ssb;
    BeamBlockConfig coreset0;
    BeamBlockConfig sib1;
    Coreset1Config coreset1;
    std::vector<int> dmrs_symbols;
    CsiRsConfig csi_rs;
    TrsConfig trs;
    int period_ms = 20;

    /// Checks counts and PRB widths against the carrier; throws ConfigError.
    void validate(const CarrierConfig& carrier) const;
    bool operator==(const NrOverlaySet&) const = default;
};

/// Which RAT owns the overlay; 6G reuses the 5G structures with its own labels.
enum class Rat : std::uint8_t { Nr5g, SixG };

enum class Placement : std::uint8_t {
    /// Beams and occasions of one signal go to distinct DL-bearing slots, earliest first.
    SpreadBeams,
    /// Every unit at the earliest free (slot, symbol, PRB) position.
    FirstFit,
};

struct PlacementPolicy {
    Placement mode = Placement::SpreadBeams;
};

/// Label each Table-style signal row maps to for the given RAT.
struct SignalLabels {
    ReLabel ssb;
    ReLabel coreset0;
    ReLabel sib1;
    ReLabel coreset1;
    ReLabel csi_rs;
    ReLabel trs;
    ReLabel dmrs;
};
SignalLabels labels_for(Rat rat);

/// Closed-form per-period RE counts of each signal.
struct SignalCounts {
    std::int64_t ssb = 0;
    std::int64_t coreset0 = 0;
    std::int64_t sib1 = 0;
    std::int64_t coreset1 = 0;
    std::int64_t csi_rs = 0;
    std::int64_t trs = 0;

    std::int64_t total() const { return ssb + coreset0 + sib1 + coreset1 + csi_rs + trs; }
    bool operator==(const SignalCounts&) const = default;
};

/// DL-bearing slots in the first `period_ms` of the carrier.
int downlink_bearing_slots(const CarrierConfig& carrier, int period_ms);
/// CORESET1 monitored slots per period after resolving the "every DL slot" default.
int coreset1_slots(const CarrierConfig& carrier, const NrOverlaySet& set);

SignalCounts closed_form_counts(const CarrierConfig& carrier, const NrOverlaySet& set);

/// Places every signal of `set` in disjoint cells of each accounting period of the grid.
/// Throws PlacementError naming the signal when a footprint does not fit.
ResourceGrid apply_nr(ResourceGrid grid, const NrOverlaySet& set, Rat rat = Rat::Nr5g, PlacementPolicy policy = {});

/// DSS slot layout on top of an LTE overlay: NR PDCCH symbols after the LTE control
/// region, NR DMRS on `dmrs_symbols`, everything still Unlabeled is the NR data pool.
struct DssLayout {
    /// First NR PDCCH symbol; nullopt places it right after the LTE PDCCH region.
    std::optional<int> nr_pdcch_start;
    int nr_pdcch_symbols = 1;
    std::vector<int> dmrs_symbols = {3, 12};

    bool operator==(const DssLayout&) const = default;
};

/// Subframe symbols that carry CRS for the port count (normal subframe).
std::vector<int> crs_symbols(int crs_ports);

/// Default DMRS positions: a front symbol right after the control region and the rest
/// spread towards symbol 12, avoiding every 4-port CRS symbol. Throws ConfigError if infeasible.
std::vector<int> default_dmrs_symbols(int dmrs_count, int control_end);

/// Applies the DSS layout to every non-MBSFN slot of a grid already carrying `apply_lte(lte_cfg)`.
ResourceGrid nr_dss_slot(ResourceGrid grid, const lte::LteCellConfig& lte_cfg, const DssLayout& layout);

}  // namespace gridshare::nr
