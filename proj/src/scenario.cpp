#include "gridshare/scenario.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>

#include "gridshare/errors.hpp"

namespace gridshare::cli {

namespace {

constexpr std::array<std::pair<coexist::SchedPolicy, std::string_view>, 3> kPolicies = {{
    {coexist::SchedPolicy::Priority5G, "priority_5g"},
    {coexist::SchedPolicy::Priority6G, "priority_6g"},
    {coexist::SchedPolicy::ProportionalShare, "proportional_share"},
}};

constexpr std::array<std::pair<coexist::Mitigation::Kind, std::string_view>, 4> kMitigations = {{
    {coexist::Mitigation::Kind::ServingOnlyRateMatch, "serving_only_rate_match"},
    {coexist::Mitigation::Kind::NeighborAwareRateMatch, "neighbor_aware_rate_match"},
    {coexist::Mitigation::Kind::SymbolLevelMute, "symbol_level_mute"},
    {coexist::Mitigation::Kind::ReceiverCancellation, "receiver_cancellation"},
}};

constexpr std::array<std::pair<coexist::ControlMode::Kind, std::string_view>, 3> kControlModes = {{
    {coexist::ControlMode::Kind::FullyOverlapping, "fully_overlapping"},
    {coexist::ControlMode::Kind::PartiallyOverlapping, "partially_overlapping"},
    {coexist::ControlMode::Kind::Separate, "separate"},
}};

constexpr std::array<std::string_view, 5> kSweepCommands = {"budget", "overhead", "classify", "simulate",
                                                            "interference"};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
    for (const auto& [v, name] : table) {
        if (v == value) {
            return name;
        }
    }
    return "?";
}

std::string join_path(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

// Strict view of one JSON object: every key must be read, leftovers are errors.
class Reader {
public:
    Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            throw ValidationError(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    ~Reader() = default;
    Reader(const Reader&) = delete;
    Reader& operator=(const Reader&) = delete;

    std::string path(const std::string& key) const { return join_path(path_, key); }

    bool has(const std::string& key) const { return node_.contains(key); }

    const Json* find(const std::string& key) {
        seen_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    const Json& require(const std::string& key) {
        const Json* v = find(key);
        if (v == nullptr) {
            throw ValidationError(path(key), "required field missing");
        }
        return *v;
    }

    std::int64_t integer(const std::string& key, std::optional<std::int64_t> fallback = std::nullopt,
                         std::int64_t lo = std::numeric_limits<int>::min(),
                         std::int64_t hi = std::numeric_limits<int>::max()) {
        const Json* v = find(key);
        if (v == nullptr) {
            if (!fallback) {
                throw ValidationError(path(key), "required field missing");
            }
            return *fallback;
        }
        return as_integer(*v, path(key), lo, hi);
    }

    int small(const std::string& key, std::optional<int> fallback = std::nullopt) {
        return static_cast<int>(integer(key, fallback));
    }

    double number(const std::string& key, double fallback) {
        const Json* v = find(key);
        if (v == nullptr) {
            return fallback;
        }
        if (!v->is_number()) {
            throw ValidationError(path(key), "expected a number");
        }
        return v->get<double>();
    }

    bool boolean(const std::string& key, bool fallback) {
        const Json* v = find(key);
        if (v == nullptr) {
            return fallback;
        }
        if (!v->is_boolean()) {
            throw ValidationError(path(key), "expected true or false");
        }
        return v->get<bool>();
    }

    std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
        const Json* v = find(key);
        if (v == nullptr) {
            if (!fallback) {
                throw ValidationError(path(key), "required field missing");
            }
            return *fallback;
        }
        if (!v->is_string()) {
            throw ValidationError(path(key), "expected a string");
        }
        return v->get<std::string>();
    }

    std::vector<int> int_list(const std::string& key) {
        std::vector<int> out;
        const Json* v = find(key);
        if (v == nullptr) {
            return out;
        }
        const auto p = path(key);
        if (!v->is_array()) {
            throw ValidationError(p, "expected an array");
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            out.push_back(static_cast<int>(as_integer((*v)[i], p + "." + std::to_string(i),
                                                      std::numeric_limits<int>::min(), std::numeric_limits<int>::max())));
        }
        return out;
    }

    const Json* array(const std::string& key) {
        const Json* v = find(key);
        if (v != nullptr && !v->is_array()) {
            throw ValidationError(path(key), "expected an array");
        }
        return v;
    }

    void finish() const {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!seen_.contains(it.key())) {
                throw ValidationError(path(it.key()), "unknown key");
            }
        }
    }

    static std::int64_t as_integer(const Json& v, const std::string& path, std::int64_t lo, std::int64_t hi) {
        if (!v.is_number_integer()) {
            throw ValidationError(path, "expected an integer");
        }
        const auto n = v.get<std::int64_t>();
        if (n < lo || n > hi) {
            throw ValidationError(path, "value " + std::to_string(n) + " out of range");
        }
        return n;
    }

private:
    const Json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

// Runs `fn`, re-raising library ConfigErrors as ValidationErrors located at `path`.
template <typename Fn>
void checked(const std::string& path, Fn&& fn) {
    try {
        fn();
    } catch (const ValidationError&) {
        throw;
    } catch (const ConfigError& e) {
        std::string_view what = e.what();
        if (const auto prefix = path + ": "; what.starts_with(prefix)) {
            what.remove_prefix(prefix.size());
        }
        throw ValidationError(path, std::string(what));
    }
}

CarrierConfig read_carrier(const Json& node, const std::string& path) {
    Reader r(node, path);
    CarrierConfig c;
    c.numerology.scs_khz = r.small("scs_khz");
    c.n_prb = r.small("n_prb");
    const auto duplex = r.string("duplex");
    if (duplex == "FDD") {
        c.duplex = Duplex::Fdd;
    } else if (duplex == "TDD") {
        c.duplex = Duplex::Tdd;
    } else {
        throw ValidationError(r.path("duplex"), "expected \"FDD\" or \"TDD\"");
    }
    c.span_ms = r.small("span_ms");
    if (const Json* t = r.find("tdd_pattern")) {
        Reader tr(*t, r.path("tdd_pattern"));
        const auto cycle = tr.string("cycle");
        const Json& split = tr.require("special_split");
        Reader sr(split, tr.path("special_split"));
        SpecialSplit s{sr.small("dl", 0), sr.small("guard", 0), sr.small("ul", 0)};
        sr.finish();
        tr.finish();
        checked(r.path("tdd_pattern"), [&] { c.tdd_pattern = TddPattern::from_string(cycle, s); });
    }
    r.finish();
    checked(path, [&] {
        if (c.numerology.scs_khz != 15 && c.numerology.scs_khz != 30) {
            throw ValidationError(join_path(path, "scs_khz"), "must be 15 or 30");
        }
        c.validate();
    });
    return c;
}

Json write_carrier(const CarrierConfig& c) {
    Json j;
    j["scs_khz"] = c.numerology.scs_khz;
    j["n_prb"] = c.n_prb;
    j["duplex"] = c.duplex == Duplex::Fdd ? "FDD" : "TDD";
    j["span_ms"] = c.span_ms;
    if (c.tdd_pattern) {
        const auto& s = c.tdd_pattern->special_split;
        j["tdd_pattern"] = Json{{"cycle", c.tdd_pattern->cycle_string()},
                                {"special_split", Json{{"dl", s.dl_symbols}, {"guard", s.guard_symbols}, {"ul", s.ul_symbols}}}};
    }
    return j;
}

lte::LteCellConfig read_lte_cell(Reader& r, const std::string& path) {
    lte::LteCellConfig cell;
    cell.cell_id = r.small("cell_id", 0);
    cell.crs_ports = r.small("crs_ports", 1);
    cell.pdcch_symbols = r.small("pdcch_symbols", 2);
    for (int sf : r.int_list("mbsfn_subframes")) {
        cell.mbsfn_subframes.insert(sf);
    }
    cell.non_mbsfn_region_len = r.small("non_mbsfn_region_len", 2);
    cell.sync_signals = r.boolean("sync_signals", true);
    // Point at the offending field when the cell invariant fails.
    if (cell.crs_ports != 1 && cell.crs_ports != 2 && cell.crs_ports != 4) {
        throw ValidationError(join_path(path, "crs_ports"), "must be 1, 2 or 4");
    }
    if (cell.pdcch_symbols < 1 || cell.pdcch_symbols > 3) {
        throw ValidationError(join_path(path, "pdcch_symbols"), "must be in 1..3");
    }
    checked(path, [&] { cell.validate(); });
    return cell;
}

Json write_lte_cell(const lte::LteCellConfig& c) {
    return Json{{"cell_id", c.cell_id},
                {"crs_ports", c.crs_ports},
                {"pdcch_symbols", c.pdcch_symbols},
                {"mbsfn_subframes", std::vector<int>(c.mbsfn_subframes.begin(), c.mbsfn_subframes.end())},
                {"non_mbsfn_region_len", c.non_mbsfn_region_len},
                {"sync_signals", c.sync_signals}};
}

LteSection read_lte(const Json& node, const std::string& path) {
    Reader r(node, path);
    LteSection s;
    s.cell = read_lte_cell(r, path);
    if (const Json* ns = r.array("neighbors")) {
        for (std::size_t i = 0; i < ns->size(); ++i) {
            const auto p = r.path("neighbors") + "." + std::to_string(i);
            Reader nr(( *ns)[i], p);
            s.neighbors.push_back(read_lte_cell(nr, p));
            nr.finish();
        }
    }
    r.finish();
    return s;
}

Json write_lte(const LteSection& s) {
    Json j = write_lte_cell(s.cell);
    Json ns = Json::array();
    for (const auto& n : s.neighbors) {
        ns.push_back(write_lte_cell(n));
    }
    j["neighbors"] = ns;
    return j;
}

budget::DssParams read_dss(const Json& node, const std::string& path) {
    Reader r(node, path);
    budget::DssParams d;
    d.dmrs_count = r.small("dmrs_count", 2);
    d.lte_pdcch = r.small("lte_pdcch", 2);
    d.nr_pdcch = r.small("nr_pdcch", 1);
    if (r.has("dmrs_symbols")) {
        d.dmrs_symbols = r.int_list("dmrs_symbols");
    }
    r.finish();
    return d;
}

Json write_dss(const budget::DssParams& d) {
    Json j{{"dmrs_count", d.dmrs_count}, {"lte_pdcch", d.lte_pdcch}, {"nr_pdcch", d.nr_pdcch}};
    if (d.dmrs_symbols) {
        j["dmrs_symbols"] = *d.dmrs_symbols;
    }
    return j;
}

nr::NrOverlaySet read_nr(const Json& node, const std::string& path) {
    Reader r(node, path);
    nr::NrOverlaySet s;
    s.period_ms = r.small("period_ms", 20);
    if (const Json* v = r.find("ssb")) {
        Reader x(*v, r.path("ssb"));
        s.ssb = {x.small("beams", 0), x.small("prbs", 0), x.small("symbols_per_beam", 0), x.small("period_ms", 20)};
        x.finish();
    }
    for (auto [key, target] : {std::pair{"coreset0", &s.coreset0}, std::pair{"sib1", &s.sib1}}) {
        if (const Json* v = r.find(key)) {
            Reader x(*v, r.path(key));
            *target = {x.small("beams", 0), x.small("prbs", 0), x.small("symbols", 0)};
            x.finish();
        }
    }
    if (const Json* v = r.find("coreset1")) {
        Reader x(*v, r.path("coreset1"));
        s.coreset1.prbs = x.small("prbs", 0);
        s.coreset1.symbols = x.small("symbols", 0);
        if (const Json* slots = x.find("slots")) {
            if (slots->is_string()) {
                if (slots->get<std::string>() != "all") {
                    throw ValidationError(x.path("slots"), "expected an integer or \"all\"");
                }
            } else {
                s.coreset1.slots = static_cast<int>(Reader::as_integer(*slots, x.path("slots"), 0, 1 << 20));
            }
        }
        x.finish();
    }
    s.dmrs_symbols = r.int_list("dmrs_symbols");
    if (const Json* v = r.find("csi_rs")) {
        Reader x(*v, r.path("csi_rs"));
        s.csi_rs = {x.small("ports", 0), x.small("density_re_per_port_per_prb", 0), x.small("prbs", 0),
                    x.small("occasions_per_period", 0)};
        x.finish();
    }
    if (const Json* v = r.find("trs")) {
        Reader x(*v, r.path("trs"));
        s.trs = {x.small("prbs", 0), x.small("slots_per_occasion", 0), x.small("re_per_prb_per_slot", 0),
                 x.small("beams", 0), x.small("occasions_per_period", 0)};
        x.finish();
    }
    r.finish();
    return s;
}

Json write_nr(const nr::NrOverlaySet& s) {
    Json j;
    j["period_ms"] = s.period_ms;
    j["ssb"] = Json{{"beams", s.ssb.beams},
                    {"prbs", s.ssb.prbs},
                    {"symbols_per_beam", s.ssb.symbols_per_beam},
                    {"period_ms", s.ssb.period_ms}};
    j["coreset0"] = Json{{"beams", s.coreset0.beams}, {"prbs", s.coreset0.prbs}, {"symbols", s.coreset0.symbols}};
    j["sib1"] = Json{{"beams", s.sib1.beams}, {"prbs", s.sib1.prbs}, {"symbols", s.sib1.symbols}};
    Json c1{{"prbs", s.coreset1.prbs}, {"symbols", s.coreset1.symbols}};
    c1["slots"] = s.coreset1.slots ? Json(*s.coreset1.slots) : Json("all");
    j["coreset1"] = c1;
    j["dmrs_symbols"] = s.dmrs_symbols;
    j["csi_rs"] = Json{{"ports", s.csi_rs.ports},
                       {"density_re_per_port_per_prb", s.csi_rs.density_re_per_port_per_prb},
                       {"prbs", s.csi_rs.prbs},
                       {"occasions_per_period", s.csi_rs.occasions_per_period}};
    j["trs"] = Json{{"prbs", s.trs.prbs},
                    {"slots_per_occasion", s.trs.slots_per_occasion},
                    {"re_per_prb_per_slot", s.trs.re_per_prb_per_slot},
                    {"beams", s.trs.beams},
                    {"occasions_per_period", s.trs.occasions_per_period}};
    return j;
}

std::vector<ReLabel> read_labels(Reader& r, const std::string& key, std::vector<ReLabel> fallback) {
    const Json* v = r.array(key);
    if (v == nullptr) {
        return fallback;
    }
    std::vector<ReLabel> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
        const auto p = r.path(key) + "." + std::to_string(i);
        if (!(*v)[i].is_string()) {
            throw ValidationError(p, "expected a label name");
        }
        const auto label = label_from_string((*v)[i].get<std::string>());
        if (!label) {
            throw ValidationError(p, "unknown label \"" + (*v)[i].get<std::string>() + "\"");
        }
        out.push_back(*label);
    }
    return out;
}

Json write_labels(const std::vector<ReLabel>& labels) {
    Json j = Json::array();
    for (ReLabel l : labels) {
        j.push_back(std::string(to_string(l)));
    }
    return j;
}

MrssSection read_mrss(const Json& node, const std::string& path) {
    Reader r(node, path);
    MrssSection m;
    if (const Json* v = r.find("control_mode")) {
        Reader x(*v, r.path("control_mode"));
        const auto kind = x.string("kind");
        bool found = false;
        for (const auto& [k, name] : kControlModes) {
            if (name == kind) {
                m.control_mode.kind = k;
                found = true;
            }
        }
        if (!found) {
            throw ValidationError(x.path("kind"), "unknown control mode \"" + kind + "\"");
        }
        const double default_fraction = m.control_mode.kind == coexist::ControlMode::Kind::Separate ? 0.0 : 1.0;
        m.control_mode.shared_fraction = x.number("shared_fraction", default_fraction);
        x.finish();
        checked(r.path("control_mode"), [&] { m.control_mode.validate(); });
    }
    m.reserved = read_labels(r, "reserved", m.reserved);
    m.control = read_labels(r, "control", m.control);
    if (const Json* v = r.array("iot")) {
        for (std::size_t i = 0; i < v->size(); ++i) {
            Reader x((*v)[i], r.path("iot") + "." + std::to_string(i));
            IotReservation res;
            res.prbs = {x.small("prb_begin"), x.small("prb_end")};
            res.slots = {x.small("slot_period", 1), x.small("slot_offset", 0)};
            x.finish();
            m.iot.push_back(res);
        }
    }
    if (const Json* v = r.array("sixg_ssb")) {
        for (std::size_t i = 0; i < v->size(); ++i) {
            Reader x((*v)[i], r.path("sixg_ssb") + "." + std::to_string(i));
            m.sixg_ssb.push_back({x.small("slot"), x.small("first_symbol"), x.small("symbols", 4),
                                  x.small("first_prb"), x.small("prbs", 20)});
            x.finish();
        }
    }
    if (const Json* v = r.find("carrier_6g")) {
        m.carrier_6g = read_carrier(*v, r.path("carrier_6g"));
    }
    r.finish();
    return m;
}

Json write_mrss(const MrssSection& m) {
    Json j;
    j["control_mode"] = Json{{"kind", std::string(to_string(m.control_mode.kind))},
                             {"shared_fraction", m.control_mode.shared_fraction}};
    j["reserved"] = write_labels(m.reserved);
    j["control"] = write_labels(m.control);
    Json iot = Json::array();
    for (const auto& r : m.iot) {
        iot.push_back(Json{{"prb_begin", r.prbs.begin},
                           {"prb_end", r.prbs.end},
                           {"slot_period", r.slots.period},
                           {"slot_offset", r.slots.offset}});
    }
    j["iot"] = iot;
    Json ssb = Json::array();
    for (const auto& o : m.sixg_ssb) {
        ssb.push_back(Json{{"slot", o.slot},
                           {"first_symbol", o.first_symbol},
                           {"symbols", o.symbols},
                           {"first_prb", o.first_prb},
                           {"prbs", o.prbs}});
    }
    j["sixg_ssb"] = ssb;
    if (m.carrier_6g) {
        j["carrier_6g"] = write_carrier(*m.carrier_6g);
    }
    return j;
}

coexist::LoadModel read_load(const Json& node, const std::string& path) {
    Reader r(node, path);
    const auto kind = r.string("kind");
    coexist::LoadModel m;
    if (kind == "constant") {
        m = coexist::LoadModel::constant(r.integer("value", std::nullopt, 0, std::numeric_limits<std::int64_t>::max() / 4));
    } else if (kind == "uniform") {
        const auto lo = r.integer("min", std::nullopt, 0, std::numeric_limits<std::int64_t>::max() / 4);
        const auto hi = r.integer("max", std::nullopt, 0, std::numeric_limits<std::int64_t>::max() / 4);
        if (hi < lo) {
            throw ValidationError(r.path("max"), "must be >= min");
        }
        m = coexist::LoadModel::uniform(lo, hi);
    } else {
        throw ValidationError(r.path("kind"), "expected \"constant\" or \"uniform\"");
    }
    r.finish();
    return m;
}

Json write_load(const coexist::LoadModel& m) {
    if (m.kind == coexist::LoadModel::Kind::Constant) {
        return Json{{"kind", "constant"}, {"value", m.value}};
    }
    return Json{{"kind", "uniform"}, {"min", m.min}, {"max", m.max}};
}

coexist::TrafficModel read_traffic(const Json& node, const std::string& path) {
    Reader r(node, path);
    coexist::TrafficModel t;
    t.load_5g = read_load(r.require("load_5g"), r.path("load_5g"));
    t.load_6g = read_load(r.require("load_6g"), r.path("load_6g"));
    r.finish();
    return t;
}

coexist::Mitigation read_mitigation(const Json& node, const std::string& path) {
    Reader r(node, path);
    const auto kind = r.string("kind");
    coexist::Mitigation m;
    bool found = false;
    for (const auto& [k, name] : kMitigations) {
        if (name == kind) {
            m.kind = k;
            found = true;
        }
    }
    if (!found) {
        throw ValidationError(r.path("kind"), "unknown mitigation \"" + kind + "\"");
    }
    m.effectiveness = r.number("effectiveness", 0.0);
    r.finish();
    if (m.kind == coexist::Mitigation::Kind::ReceiverCancellation && !(m.effectiveness >= 0.0 && m.effectiveness <= 1.0)) {
        throw ValidationError(join_path(path, "effectiveness"), "must be in [0, 1]");
    }
    return m;
}

SweepSection read_sweep(const Json& node, const std::string& path) {
    Reader r(node, path);
    SweepSection s;
    s.command = r.string("command");
    if (std::ranges::find(kSweepCommands, s.command) == kSweepCommands.end()) {
        throw ValidationError(r.path("command"), "cannot sweep command \"" + s.command + "\"");
    }
    const Json* params = r.array("parameters");
    if (params == nullptr || params->empty()) {
        throw ValidationError(r.path("parameters"), "at least one parameter is required");
    }
    for (std::size_t i = 0; i < params->size(); ++i) {
        Reader x((*params)[i], r.path("parameters") + "." + std::to_string(i));
        SweepParameter p;
        p.path = x.string("path");
        if (p.path.empty() || p.path.starts_with("sweep")) {
            throw ValidationError(x.path("path"), "invalid sweep path");
        }
        const Json* values = x.array("values");
        if (values == nullptr || values->empty()) {
            throw ValidationError(x.path("values"), "at least one value is required");
        }
        p.values.assign(values->begin(), values->end());
        x.finish();
        s.parameters.push_back(std::move(p));
    }
    r.finish();
    return s;
}

}  // namespace

void Scenario::set_seed(std::uint64_t s) {
    seed = s;
    if (traffic) {
        traffic->seed = s;
    }
}

std::string_view to_string(coexist::SchedPolicy policy) { return name_of(kPolicies, policy); }
std::string_view to_string(coexist::Mitigation::Kind kind) { return name_of(kMitigations, kind); }
std::string_view to_string(coexist::ControlMode::Kind kind) { return name_of(kControlModes, kind); }

Scenario scenario_from_json(const Json& doc) {
    Reader r(doc, "");
    Scenario s;
    s.carrier = read_carrier(r.require("carrier"), "carrier");
    if (const Json* v = r.find("lte")) {
        s.lte = read_lte(*v, "lte");
    }
    if (const Json* v = r.find("dss")) {
        s.dss = read_dss(*v, "dss");
    }
    if (const Json* v = r.find("nr")) {
        s.nr = read_nr(*v, "nr");
    }
    if (const Json* v = r.find("mrss")) {
        s.mrss = read_mrss(*v, "mrss");
    }
    if (const Json* v = r.find("traffic")) {
        s.traffic = read_traffic(*v, "traffic");
    }
    if (const Json* v = r.find("policy")) {
        if (!v->is_string()) {
            throw ValidationError("policy", "expected a string");
        }
        bool found = false;
        for (const auto& [p, name] : kPolicies) {
            if (name == v->get<std::string>()) {
                s.policy = p;
                found = true;
            }
        }
        if (!found) {
            throw ValidationError("policy", "unknown policy \"" + v->get<std::string>() + "\"");
        }
    }
    if (const Json* v = r.find("mitigation")) {
        s.mitigation = read_mitigation(*v, "mitigation");
    }
    if (const Json* v = r.find("simulation")) {
        Reader x(*v, "simulation");
        if (x.has("n_slots")) {
            s.sim_slots = x.small("n_slots");
        } else {
            x.find("n_slots");
        }
        x.finish();
    }
    if (const Json* v = r.find("sweep")) {
        s.sweep = read_sweep(*v, "sweep");
    }
    s.set_seed(static_cast<std::uint64_t>(r.integer("seed", 1, 0, std::numeric_limits<std::int64_t>::max())));
    r.finish();

    // Cross-section consistency.
    if (s.lte && s.carrier.numerology.scs_khz != 15) {
        throw ValidationError("lte", "LTE requires a 15 kHz carrier");
    }
    for (int ports : {1, 2, 4}) {
        checked("dss", [&] { s.dss.validate(ports); });
    }
    if (s.nr) {
        checked("nr", [&] { s.nr->validate(s.carrier); });
        if (s.carrier.n_slots() % (s.nr->period_ms * s.carrier.numerology.slots_per_ms()) != 0) {
            throw ValidationError("nr.period_ms", "carrier span is not a whole number of accounting periods");
        }
    }
    if (s.mrss && s.mrss->carrier_6g) {
        const auto a = coexist::alignment_check(s.carrier, *s.mrss->carrier_6g);
        if (!a.aligned) {
            throw ValidationError("mrss.carrier_6g", "misaligned with the 5G carrier (" + a.reason + ")");
        }
    }
    if (s.sim_slots && (*s.sim_slots < 0 || *s.sim_slots > s.carrier.n_slots())) {
        throw ValidationError("simulation.n_slots", "must be within the carrier window of " +
                                                        std::to_string(s.carrier.n_slots()) + " slots");
    }
    return s;
}

Scenario parse_scenario(std::string_view document) {
    Json doc;
    try {
        doc = Json::parse(document.begin(), document.end());
    } catch (const Json::parse_error& e) {
        const std::size_t byte = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, document.size());
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < byte; ++i) {
            if (document[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        if (const auto pos = what.find("syntax error"); pos != std::string::npos) {
            what = what.substr(pos);
        }
        throw ParseError(line, column, what);
    }
    return scenario_from_json(doc);
}

Json to_json(const Scenario& s) {
    Json j;
    j["carrier"] = write_carrier(s.carrier);
    if (s.lte) {
        j["lte"] = write_lte(*s.lte);
    }
    j["dss"] = write_dss(s.dss);
    if (s.nr) {
        j["nr"] = write_nr(*s.nr);
    }
    if (s.mrss) {
        j["mrss"] = write_mrss(*s.mrss);
    }
    if (s.traffic) {
        j["traffic"] = Json{{"load_5g", write_load(s.traffic->load_5g)}, {"load_6g", write_load(s.traffic->load_6g)}};
    }
    if (s.policy) {
        j["policy"] = std::string(to_string(*s.policy));
    }
    if (s.mitigation) {
        j["mitigation"] = Json{{"kind", std::string(to_string(s.mitigation->kind))},
                               {"effectiveness", s.mitigation->effectiveness}};
    }
    if (s.sim_slots) {
        j["simulation"] = Json{{"n_slots", *s.sim_slots}};
    }
    if (s.sweep) {
        Json params = Json::array();
        for (const auto& p : s.sweep->parameters) {
            params.push_back(Json{{"path", p.path}, {"values", p.values}});
        }
        j["sweep"] = Json{{"command", s.sweep->command}, {"parameters", params}};
    }
    j["seed"] = s.seed;
    return j;
}

std::string emit_scenario(const Scenario& scenario) { return to_json(scenario).dump(2) + "\n"; }

}  // namespace gridshare::cli
