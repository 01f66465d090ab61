#include <doctest.h>

#include <algorithm>
#include <array>

#include "gridshare/budget.hpp"
#include "gridshare/errors.hpp"
#include "oracle.hpp"

using namespace gridshare;
using budget::DssParams;

namespace {

CarrierConfig table3_carrier(const char* cycle = "DDDSU") {
    return CarrierConfig{Numerology{30}, 273, Duplex::Tdd, TddPattern::from_string(cycle, {6, 4, 4}), 20};
}

nr::NrOverlaySet table3_set() {
    nr::NrOverlaySet s;
    s.ssb = {4, 20, 4, 20};
    s.coreset0 = {4, 48, 2};
    s.sib1 = {4, 24, 4};
    s.coreset1 = {270, 2, std::nullopt};
    s.csi_rs = {32, 1, 272, 1};
    s.trs = {52, 2, 6, 4, 2};
    return s;
}

}  // namespace

TEST_CASE("Table 1 rows match the per-PRB oracle") {
    const auto rows = budget::dss_table();
    REQUIRE(rows.size() == 3);
    const int ports[] = {1, 2, 4};
    for (std::size_t i = 0; i < 3; ++i) {
        const int p = ports[i];
        const auto dss = oracle::dss_pool(p, 2, 1, {3, 12});
        const auto nr = oracle::nr_pool(1, 2);
        const auto lte = oracle::lte_pool(p, 2);
        CAPTURE(p);
        CHECK(rows[i].crs_ports == p);
        CHECK(rows[i].dss_re == dss);
        CHECK(rows[i].nr_re == nr);
        CHECK(rows[i].lte_re == lte);
        CHECK(rows[i].loss_vs_nr.to_string(2) == oracle::loss(dss, nr));
        CHECK(rows[i].loss_vs_lte.to_string(2) == oracle::loss(dss, lte));
    }
}

TEST_CASE("Table 1 reference values") {
    const auto rows = budget::dss_table();
    const struct {
        std::int64_t dss, nr, lte;
        const char* vs_nr;
        const char* vs_lte;
    } expected[] = {{102, 132, 138, "22.73", "26.09"}, {96, 132, 132, "27.27", "27.27"}, {92, 132, 128, "30.30", "28.13"}};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(rows[i].dss_re == expected[i].dss);
        CHECK(rows[i].nr_re == expected[i].nr);
        CHECK(rows[i].lte_re == expected[i].lte);
        CHECK(rows[i].loss_vs_nr.to_string(2) == expected[i].vs_nr);
        CHECK(rows[i].loss_vs_lte.to_string(2) == expected[i].vs_lte);
    }
}

TEST_CASE("Table 1 monotonicity") {
    const auto rows = budget::dss_table();
    CHECK(rows[0].dss_re > rows[1].dss_re);
    CHECK(rows[1].dss_re > rows[2].dss_re);
    CHECK(rows[0].loss_vs_nr < rows[1].loss_vs_nr);
    CHECK(rows[1].loss_vs_nr < rows[2].loss_vs_nr);
}

TEST_CASE("no LTE incumbent degenerates to the NR carrier") {
    DssParams p;
    p.lte_pdcch = 0;
    for (const auto& row : {budget::dss_row_closed_form(0, p), budget::dss_row_enumerated(0, p)}) {
        CHECK(row.dss_re == 132);
        CHECK(row.nr_re == 132);
        CHECK(row.loss_vs_nr.to_string(2) == "0.00");
        CHECK(row.loss_vs_lte.to_string(2) == "0.00");
    }
    CHECK_THROWS_AS(budget::dss_row_closed_form(0, DssParams{}), ConfigError);
}

TEST_CASE("three LTE control symbols shift the NR layout") {
    DssParams p;
    p.lte_pdcch = 3;
    CHECK(p.resolved_dmrs() == std::vector<int>{5, 12});
    const auto closed = budget::dss_row_closed_form(4, p);
    const auto counted = budget::dss_row_enumerated(4, p);
    CHECK(closed == counted);
    CHECK(closed.dss_re == oracle::dss_pool(4, 3, 1, {5, 12}));
    CHECK(closed.dss_re == 80);
    CHECK(closed.lte_re == oracle::lte_pool(4, 3));
}

TEST_CASE("closed form equals enumeration over random layouts") {
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int ports = std::array{1, 2, 4}[static_cast<std::size_t>(oracle::uniform(0, 2))];
        DssParams p;
        p.lte_pdcch = oracle::uniform(1, 3);
        p.nr_pdcch = oracle::uniform(0, 2);
        p.dmrs_count = oracle::uniform(0, 3);
        if (oracle::uniform(0, 1) == 1) {
            std::vector<int> pool;
            for (int s = p.lte_pdcch + p.nr_pdcch; s < 14; ++s) {
                const auto crs = nr::crs_symbols(ports);
                if (std::find(crs.begin(), crs.end(), s) == crs.end()) {
                    pool.push_back(s);
                }
            }
            std::shuffle(pool.begin(), pool.end(), oracle::rng());
            if (static_cast<int>(pool.size()) < p.dmrs_count) {
                continue;
            }
            p.dmrs_symbols = std::vector<int>(pool.begin(), pool.begin() + p.dmrs_count);
        }
        const auto closed = budget::dss_row_closed_form(ports, p);
        CHECK(closed == budget::dss_row_enumerated(ports, p));
        CHECK(closed.dss_re == oracle::dss_pool(ports, p.lte_pdcch, p.nr_pdcch, p.resolved_dmrs()));
        ++checked;
    }
    CHECK(checked >= 200);
}

TEST_CASE("infeasible DSS parameters") {
    DssParams p;
    p.dmrs_symbols = std::vector<int>{4, 12};
    CHECK_THROWS_AS(budget::dss_table(p), ConfigError);
    p.dmrs_symbols = std::vector<int>{3};
    CHECK_THROWS_AS(budget::dss_table(p), ConfigError);
    DssParams many;
    many.dmrs_count = 9;
    CHECK_THROWS_AS(budget::dss_table(many), ConfigError);
    DssParams bad_pdcch;
    bad_pdcch.lte_pdcch = 4;
    CHECK_THROWS_AS(budget::dss_table(bad_pdcch), ConfigError);
    CHECK_THROWS_AS(budget::dss_row_closed_form(3), ConfigError);
}

TEST_CASE("Table 3 overhead report") {
    const auto r = budget::nr_overhead(table3_carrier(), table3_set());
    const auto tdd = oracle::dddsu(40);
    const std::int64_t width = 273 * 12;
    const std::int64_t total_re = 40 * 14 * width;
    const std::int64_t dl_re = tdd.downlink_symbols * width;
    CHECK(r.total_re == total_re);
    CHECK(r.downlink_re == dl_re);
    CHECK(r.total_re == 1834560);
    CHECK(r.downlink_re == 1257984);
    CHECK(r.period_ms == 20);

    const struct {
        const char* name;
        std::int64_t count;
        const char* pt;
        const char* pd;
    } rows[] = {{"SSB", 3840, "0.21", "0.31"},      {"CORESET 0", 4608, "0.25", "0.37"},
                {"SIB1", 4608, "0.25", "0.37"},     {"CORESET 1", 207360, "11.30", "16.48"},
                {"CSI-RS", 8704, "0.47", "0.69"},   {"TRS", 4992, "0.27", "0.40"},
                {"Total", 234112, "12.76", "18.61"}};
    std::int64_t sum = 0;
    REQUIRE(r.rows.size() == 6);
    for (const auto& e : rows) {
        const auto& row = r.row(e.name);
        CAPTURE(e.name);
        CHECK(row.re_count == e.count);
        CHECK(row.pct_of_total.to_string(2) == oracle::pct(e.count, total_re));
        CHECK(row.pct_of_downlink.to_string(2) == oracle::pct(e.count, dl_re));
        CHECK(row.pct_of_total.to_string(2) == e.pt);
        CHECK(row.pct_of_downlink.to_string(2) == e.pd);
        CHECK_FALSE(row.pct_of_downlink < row.pct_of_total);
    }
    for (const auto& row : r.rows) {
        sum += row.re_count;
    }
    CHECK(sum == r.total_row.re_count);
    CHECK(r.row("CORESET 1 / regular PDCCH").re_count == 207360);
    CHECK_THROWS_AS(r.row("PBCH"), LookupError);
}

TEST_CASE("grid verification of the Table 3 report") {
    const auto r = budget::nr_overhead(table3_carrier(), table3_set());
    const auto counts = budget::verify_overhead(table3_carrier(), table3_set(), r);
    CHECK(counts[ReLabel::NrPdcchCoreset1] == 207360);
    CHECK(counts.total() == 1834560);
    auto tampered = r;
    tampered.rows[0].re_count += 1;
    CHECK_THROWS_AS(budget::verify_overhead(table3_carrier(), table3_set(), tampered), Error);
}

TEST_CASE("empty overlay set reports zeros") {
    const auto r = budget::nr_overhead(table3_carrier(), nr::NrOverlaySet{});
    CHECK(r.total_row.re_count == 0);
    CHECK(r.total_row.pct_of_total.to_string(2) == "0.00");
    CHECK(r.total_row.pct_of_downlink.to_string(2) == "0.00");
    CHECK_THROWS_AS(budget::dominance_share(r, "SSB"), Error);
}

TEST_CASE("all-downlink pattern") {
    const auto r = budget::nr_overhead(table3_carrier("D"), table3_set());
    CHECK(r.row("CORESET 1").re_count == 259200);
    CHECK(r.downlink_re == r.total_re);
    CHECK(r.row("SSB").pct_of_total.to_string(2) == oracle::pct(3840, 1834560));
    CHECK(r.row("SSB").pct_of_total == r.row("SSB").pct_of_downlink);
}

TEST_CASE("dominance share") {
    const auto r = budget::nr_overhead(table3_carrier(), table3_set());
    CHECK(budget::dominance_share(r, "CORESET 1").to_string(1) == oracle::pct(207360, 234112, 1));
    CHECK(budget::dominance_share(r, "CORESET 1").to_string(1) == "88.6");
    CHECK(budget::dominance_share(r, "CORESET 1").to_string(2) == "88.57");
    CHECK(budget::dominance_share(r, "SSB").to_string(1) == "1.6");
    CHECK_THROWS_AS(budget::dominance_share(r, "PBCH"), LookupError);

    nr::NrOverlaySet only_ssb;
    only_ssb.ssb = {4, 20, 4, 20};
    const auto single = budget::nr_overhead(table3_carrier(), only_ssb);
    CHECK(budget::dominance_share(single, "SSB").to_string(1) == "100.0");
}

TEST_CASE("overhead window must be whole TDD cycles") {
    auto s = table3_set();
    s.period_ms = 3;
    CHECK_THROWS_AS(budget::nr_overhead(table3_carrier(), s), ConfigError);
}
