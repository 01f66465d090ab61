#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gridshare/budget.hpp"
#include "gridshare/coexist.hpp"
#include "gridshare/grid.hpp"
#include "gridshare/lte.hpp"
#include "gridshare/nr.hpp"

namespace gridshare::cli {

using Json = nlohmann::ordered_json;

struct LteSection {
    lte::LteCellConfig cell;
    std::vector<lte::LteCellConfig> neighbors;

    bool operator==(const LteSection&) const = default;
};

struct IotReservation {
    PrbRange prbs;
    coexist::SlotPattern slots;

    bool operator==(const IotReservation& o) const {
        return prbs.begin == o.prbs.begin && prbs.end == o.prbs.end && slots == o.slots;
    }
};

struct MrssSection {
    coexist::ControlMode control_mode;
    std::vector<ReLabel> reserved = coexist::default_reserved_labels();
    std::vector<ReLabel> control = coexist::default_control_labels();
    std::vector<IotReservation> iot;
    std::vector<coexist::SsbOccasion> sixg_ssb;
    std::optional<CarrierConfig> carrier_6g;

    bool operator==(const MrssSection&) const = default;
};

struct SweepParameter {
    /// Dotted path into the scenario document, e.g. "lte.crs_ports" or "lte.neighbors.0.cell_id".
    std::string path;
    std::vector<Json> values;

    bool operator==(const SweepParameter&) const = default;
};

struct SweepSection {
    std::string command;
    std::vector<SweepParameter> parameters;

    bool operator==(const SweepSection&) const = default;
};

/// A complete experiment description; every section but the carrier is optional.
struct Scenario {
    CarrierConfig carrier;
    std::optional<LteSection> lte;
    budget::DssParams dss;
    std::optional<nr::NrOverlaySet> nr;
    std::optional<MrssSection> mrss;
    /// Seed inside is always equal to `seed`.
    std::optional<coexist::TrafficModel> traffic;
    std::optional<coexist::SchedPolicy> policy;
    std::optional<coexist::Mitigation> mitigation;
    std::optional<int> sim_slots;
    std::optional<SweepSection> sweep;
    std::uint64_t seed = 1;

    void set_seed(std::uint64_t s);
    bool operator==(const Scenario&) const = default;
};

/// Strict parse: unknown keys are rejected. Throws ParseError (line/column) for malformed
/// JSON and ValidationError (dotted field path) for invalid content.
Scenario parse_scenario(std::string_view document);
Scenario scenario_from_json(const Json& doc);

/// Fully explicit document; parse_scenario(emit_scenario(s)) == s.
Json to_json(const Scenario& scenario);
std::string emit_scenario(const Scenario& scenario);

std::string_view to_string(coexist::SchedPolicy policy);
std::string_view to_string(coexist::Mitigation::Kind kind);
std::string_view to_string(coexist::ControlMode::Kind kind);

}  // namespace gridshare::cli
