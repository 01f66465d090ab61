#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridshare {

inline constexpr int kSymbolsPerSlot = 14;
inline constexpr int kSubcarriersPerPrb = 12;

/// Subcarrier spacing with normal cyclic prefix. Only 15 and 30 kHz are modeled.
struct Numerology {
    int scs_khz = 15;

    static Numerology from_scs(int scs_khz);

    static constexpr int symbols_per_slot() { return kSymbolsPerSlot; }
    int slots_per_ms() const { return scs_khz / 15; }

    void validate() const;
    bool operator==(const Numerology&) const = default;
};

enum class SlotKind : std::uint8_t { Downlink, Special, Uplink };
enum class Duplex : std::uint8_t { Fdd, Tdd };

struct SpecialSplit {
    int dl_symbols = 0;
    int guard_symbols = 0;
    int ul_symbols = 0;

    bool operator==(const SpecialSplit&) const = default;
};

/// Repeating TDD slot cycle, e.g. DDDSU with a 6/4/4 special slot.
struct TddPattern {
    std::vector<SlotKind> cycle;
    SpecialSplit special_split;

    /// Builds a pattern from letters D/S/U, e.g. "DDDSU".
    static TddPattern from_string(std::string_view cycle, SpecialSplit split);
    std::string cycle_string() const;

    void validate() const;
    bool operator==(const TddPattern&) const = default;
};

struct CarrierConfig {
    Numerology numerology;
    int n_prb = 1;
    Duplex duplex = Duplex::Fdd;
    std::optional<TddPattern> tdd_pattern;
    int span_ms = 1;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;

    int n_slots() const { return span_ms * numerology.slots_per_ms(); }
    int n_subcarriers() const { return n_prb * kSubcarriersPerPrb; }
    SlotKind slot_kind(int slot) const;
    /// Number of leading downlink symbols in `slot` (14, the special split's DL part, or 0).
    int downlink_symbols(int slot) const;
    bool is_downlink_bearing(int slot) const { return downlink_symbols(slot) > 0; }

    bool operator==(const CarrierConfig&) const = default;
};

enum class ReLabel : std::uint8_t {
    Unlabeled,
    LtePdcch,
    LteCrs0,
    LteCrs1,
    LteCrs2,
    LteCrs3,
    LtePssSssPbch,
    LteData,
    LteMbsfnMuted,
    NrPdcchCoreset0,
    NrPdcchCoreset1,
    NrSsb,
    NrSib1,
    NrDmrs,
    NrCsiRs,
    NrTrs,
    NrData,
    SixGSsb,
    SixGControl,
    SixGData,
    ReservedIot,
    GuardSymbol,
    UplinkSymbol,
};

inline constexpr std::size_t kLabelCount = static_cast<std::size_t>(ReLabel::UplinkSymbol) + 1;

ReLabel lte_crs(int port);
/// Port index for LteCrs labels, nullopt otherwise.
std::optional<int> crs_port(ReLabel label);
inline bool is_lte_crs(ReLabel label) { return crs_port(label).has_value(); }

/// snake_case name used in scenario files and reports ("nr_pdcch_coreset1", "lte_crs2", ...).
std::string_view to_string(ReLabel label);
std::optional<ReLabel> label_from_string(std::string_view name);
std::array<ReLabel, kLabelCount> all_labels();

struct ReIndex {
    int slot = 0;
    int symbol = 0;
    int subcarrier = 0;

    auto operator<=>(const ReIndex&) const = default;
};

/// Half-open slot range [begin, end).
struct SlotRange {
    int begin = 0;
    int end = 0;
};

/// Half-open PRB range [begin, end).
struct PrbRange {
    int begin = 0;
    int end = 0;
};

/// Per-label cell counts.
class LabelCounts {
public:
    std::int64_t operator[](ReLabel label) const { return counts_[static_cast<std::size_t>(label)]; }
    void add(ReLabel label, std::int64_t n = 1) { counts_[static_cast<std::size_t>(label)] += n; }

    std::int64_t total() const;
    /// Sum over all four LteCrs port labels.
    std::int64_t crs_total() const;
    std::map<ReLabel, std::int64_t> nonzero() const;

    LabelCounts& operator+=(const LabelCounts& other);
    bool operator==(const LabelCounts&) const = default;

private:
    std::array<std::int64_t, kLabelCount> counts_{};
};

enum class OverridePolicy : std::uint8_t {
    ErrorOnConflict,
    /// Only LteData/Unlabeled -> LteMbsfnMuted is permitted.
    Overwrite,
};

/// Dense slot x symbol x subcarrier lattice, one label per resource element.
class ResourceGrid {
public:
    const CarrierConfig& config() const { return config_; }
    int n_slots() const { return n_slots_; }
    int n_subcarriers() const { return n_subcarriers_; }
    int n_prb() const { return config_.n_prb; }
    std::size_t size() const { return labels_.size(); }

    bool contains(const ReIndex& idx) const;
    ReLabel at(const ReIndex& idx) const { return labels_[offset(idx)]; }
    ReLabel at(int slot, int symbol, int subcarrier) const { return at({slot, symbol, subcarrier}); }
    bool is_downlink(int slot, int symbol) const { return symbol < config_.downlink_symbols(slot); }

    std::span<const ReLabel> labels() const { return labels_; }
    /// Labels of one symbol across the whole bandwidth.
    std::span<const ReLabel> symbol_row(int slot, int symbol) const;

    bool operator==(const ResourceGrid&) const = default;

private:
    friend ResourceGrid make_grid(const CarrierConfig& config);
    friend ResourceGrid apply_overlay(ResourceGrid grid, std::span<const ReIndex> cells, ReLabel label,
                                      OverridePolicy policy);

    std::size_t offset(const ReIndex& idx) const {
        return (static_cast<std::size_t>(idx.slot) * kSymbolsPerSlot + static_cast<std::size_t>(idx.symbol)) *
                   static_cast<std::size_t>(n_subcarriers_) +
               static_cast<std::size_t>(idx.subcarrier);
    }

    CarrierConfig config_;
    int n_slots_ = 0;
    int n_subcarriers_ = 0;
    std::vector<ReLabel> labels_;
};

/// All cells Unlabeled; TDD uplink/guard symbols pre-labeled from the pattern.
ResourceGrid make_grid(const CarrierConfig& config);

/// Labels `cells`. Atomic: on any error nothing is written.
ResourceGrid apply_overlay(ResourceGrid grid, std::span<const ReIndex> cells, ReLabel label,
                           OverridePolicy policy = OverridePolicy::ErrorOnConflict);

LabelCounts count_labels(const ResourceGrid& grid, SlotRange slots, PrbRange prbs);
LabelCounts count_labels(const ResourceGrid& grid);

/// Rectangular block of cells within one slot.
std::vector<ReIndex> block_cells(int slot, int first_symbol, int n_symbols, int first_subcarrier,
                                 int n_subcarriers);

}  // namespace gridshare
