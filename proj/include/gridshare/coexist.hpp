#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gridshare/grid.hpp"
#include "gridshare/lte.hpp"
#include "gridshare/nr.hpp"
#include "gridshare/ratio.hpp"

namespace gridshare::coexist {

// ---------------------------------------------------------------------------
// Numerology alignment

struct Alignment {
    bool aligned = true;
    /// First differing field ("scs", "n_prb", "tdd_pattern"); empty when aligned.
    std::string reason;
};

Alignment alignment_check(const CarrierConfig& carrier_5g, const CarrierConfig& carrier_6g);

// ---------------------------------------------------------------------------
// MRSS resource categories

enum class Category : std::uint8_t { NotDownlink, Shared, Reserved, Control };

struct ControlMode {
    enum class Kind : std::uint8_t { FullyOverlapping, PartiallyOverlapping, Separate };

    Kind kind = Kind::FullyOverlapping;
    /// Fraction of the 5G control footprint 6G shares; only meaningful for PartiallyOverlapping.
    double shared_fraction = 1.0;

    static ControlMode fully_overlapping() { return {Kind::FullyOverlapping, 1.0}; }
    static ControlMode partially_overlapping(double shared_fraction) {
        return {Kind::PartiallyOverlapping, shared_fraction};
    }
    static ControlMode separate() { return {Kind::Separate, 0.0}; }

    void validate() const;
    bool operator==(const ControlMode&) const = default;
};

/// 5G SSB, CORESET0, SIB1, TRS, CSI-RS, 6G SSB and IoT reservations.
std::vector<ReLabel> default_reserved_labels();
/// Regular 5G PDCCH (CORESET1).
std::vector<ReLabel> default_control_labels();

/// Slots `offset`, `offset + period`, ... of the window.
struct SlotPattern {
    int period = 1;
    int offset = 0;

    bool contains(int slot) const { return slot % period == offset; }
    bool operator==(const SlotPattern&) const = default;
};

struct SsbOccasion {
    int slot = 0;
    int first_symbol = 0;
    int symbols = 4;
    int first_prb = 0;
    int prbs = 20;

    bool operator==(const SsbOccasion&) const = default;
};

/// Partition of the downlink cells of a grid into shared pool, reserved and control region.
class MrssCategoryMap {
public:
    /// Grid with IoT, 6G SSB and the additional 6G control cells labeled.
    const ResourceGrid& grid() const { return grid_; }
    const ControlMode& control_mode() const { return mode_; }

    Category at(const ReIndex& idx) const;
    std::int64_t shared_count() const { return count(Category::Shared); }
    std::int64_t reserved_count() const { return count(Category::Reserved); }
    std::int64_t control_count() const { return count(Category::Control); }
    std::int64_t downlink_count() const { return shared_count() + reserved_count() + control_count(); }
    std::int64_t count(Category c) const { return counts_[static_cast<std::size_t>(c)]; }
    /// Cells of the 5G control footprint (before the mode's 6G extension).
    std::int64_t control_footprint() const { return control_footprint_; }

    std::int64_t shared_in_slot(int slot) const;
    std::vector<std::int64_t> shared_per_slot() const;

    bool operator==(const MrssCategoryMap&) const = default;

private:
    friend MrssCategoryMap classify_mrss(const ResourceGrid&, std::span<const ReLabel>, ControlMode,
                                         std::span<const ReLabel>, const std::optional<CarrierConfig>&);
    friend MrssCategoryMap reserve_iot(MrssCategoryMap, PrbRange, SlotPattern);
    friend MrssCategoryMap place_6g_ssb(MrssCategoryMap, std::span<const SsbOccasion>);

    void recategorize(std::span<const ReIndex> cells, Category to, ReLabel label);

    std::size_t offset(const ReIndex& idx) const;

    ResourceGrid grid_;
    std::vector<Category> categories_;
    std::array<std::int64_t, 4> counts_{};
    std::int64_t control_footprint_ = 0;
    ControlMode mode_;
};

/// Classifies every downlink cell: labels in `reserved_labels` are reserved, labels in
/// `control_labels` form the 5G control footprint, every other downlink cell is shared.
/// PartiallyOverlapping/Separate modes carve the extra 6G control cells out of the
/// shared pool of the same slot, earliest symbol first. A 6G carrier, when given, must
/// be aligned with the grid's carrier.
MrssCategoryMap classify_mrss(const ResourceGrid& grid, std::span<const ReLabel> reserved_labels,
                              ControlMode control_mode, std::span<const ReLabel> control_labels,
                              const std::optional<CarrierConfig>& carrier_6g = std::nullopt);

/// Moves every downlink cell of `prbs` in the matching slots from the shared pool to
/// reserved (ReservedIot). Atomic; throws ConflictError if any cell is not shared.
MrssCategoryMap reserve_iot(MrssCategoryMap map, PrbRange prbs, SlotPattern slots);

/// Reserves 6G SSB occasions. Throws NotHiddenError when an occasion touches a 5G
/// structure and ConflictError when it leaves the shared pool otherwise.
MrssCategoryMap place_6g_ssb(MrssCategoryMap map, std::span<const SsbOccasion> occasions);

// ---------------------------------------------------------------------------
// Dual-RAT scheduler

struct LoadModel {
    enum class Kind : std::uint8_t { Constant, Uniform };

    Kind kind = Kind::Constant;
    std::int64_t value = 0;
    std::int64_t min = 0;
    std::int64_t max = 0;

    static LoadModel constant(std::int64_t v) { return {Kind::Constant, v, 0, 0}; }
    static LoadModel uniform(std::int64_t lo, std::int64_t hi) { return {Kind::Uniform, 0, lo, hi}; }

    void validate() const;
    bool operator==(const LoadModel&) const = default;
};

struct TrafficModel {
    LoadModel load_5g;
    LoadModel load_6g;
    std::uint64_t seed = 1;

    /// Per-slot (5G, 6G) demand in REs; identical seed gives an identical sequence.
    std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> demands(int n_slots) const;
    bool operator==(const TrafficModel&) const = default;
};

enum class SchedPolicy : std::uint8_t { Priority5G, Priority6G, ProportionalShare };

struct SlotGrant {
    std::int64_t grant_5g = 0;
    std::int64_t grant_6g = 0;
    std::int64_t unused = 0;
};

/// Splits one slot's pool between the RATs.
SlotGrant grant_slot(std::int64_t pool, std::int64_t demand_5g, std::int64_t demand_6g, SchedPolicy policy);

struct SimResult {
    std::vector<std::int64_t> pool;
    std::vector<std::int64_t> demand_5g;
    std::vector<std::int64_t> demand_6g;
    std::vector<std::int64_t> grant_5g;
    std::vector<std::int64_t> grant_6g;
    std::vector<std::int64_t> unused;

    std::int64_t total_5g = 0;
    std::int64_t total_6g = 0;
    std::int64_t shared_pool_size = 0;
    std::int64_t unused_shared = 0;
    std::int64_t dropped_5g = 0;
    std::int64_t dropped_6g = 0;
    /// Granted REs over what the RAT would get alone on the same pool with the same demand.
    Ratio efficiency_5g;
    Ratio efficiency_6g;

    bool operator==(const SimResult&) const = default;
};

/// Scheduler over an explicit per-slot pool.
SimResult simulate_pool(std::span<const std::int64_t> pool_per_slot, const TrafficModel& traffic, SchedPolicy policy);

/// Schedules the first `n_slots` slots of the shared pool. Throws RangeError if the window is shorter.
SimResult simulate(const MrssCategoryMap& map, const TrafficModel& traffic, SchedPolicy policy, int n_slots);

// ---------------------------------------------------------------------------
// DSS mechanisms

struct Mechanism {
    enum class Kind : std::uint8_t { MbsfnShare, MiniSlot, CrsRateMatch };

    Kind kind = Kind::CrsRateMatch;
    int minislot_len = 4;
    int dmrs_per_minislot = 1;

    static Mechanism mbsfn_share() { return {Kind::MbsfnShare, 0, 0}; }
    static Mechanism mini_slot(int len, int dmrs) { return {Kind::MiniSlot, len, dmrs}; }
    static Mechanism crs_rate_match() { return {Kind::CrsRateMatch, 0, 0}; }
};

struct MechanismBudget {
    /// NR data REs per PRB in the subframe.
    std::int64_t nr_usable = 0;
    /// LTE data REs per PRB if the subframe were served to LTE.
    std::int64_t lte_usable = 0;
    /// Symbols left over when mini-slots do not tile the available run.
    int unused_symbols = 0;
};

MechanismBudget dss_mechanism_budget(const Mechanism& mechanism, const lte::LteCellConfig& lte_cfg,
                                     const nr::DssLayout& layout = {});

// ---------------------------------------------------------------------------
// Neighbor-cell CRS interference

struct Mitigation {
    enum class Kind : std::uint8_t { ServingOnlyRateMatch, NeighborAwareRateMatch, SymbolLevelMute, ReceiverCancellation };

    Kind kind = Kind::ServingOnlyRateMatch;
    /// Fraction of dirty cells a cancelling receiver cleans; only for ReceiverCancellation.
    double effectiveness = 0.0;

    static Mitigation serving_only() { return {Kind::ServingOnlyRateMatch, 0.0}; }
    static Mitigation neighbor_aware() { return {Kind::NeighborAwareRateMatch, 0.0}; }
    static Mitigation symbol_level_mute() { return {Kind::SymbolLevelMute, 0.0}; }
    static Mitigation receiver_cancellation(double e) { return {Kind::ReceiverCancellation, e}; }

    void validate() const;
    bool operator==(const Mitigation&) const = default;
};

/// Per-PRB classification of the serving cell's NR data pool. clean + sacrificed + dirty == pool.
struct InterferenceReport {
    std::int64_t pool = 0;
    std::int64_t clean = 0;
    std::int64_t sacrificed = 0;
    std::int64_t dirty = 0;

    bool operator==(const InterferenceReport&) const = default;
};

InterferenceReport neighbor_interference(const lte::LteCellConfig& serving,
                                         std::span<const lte::LteCellConfig> neighbors, const Mitigation& mitigation,
                                         const nr::DssLayout& layout = {});

}  // namespace gridshare::coexist
