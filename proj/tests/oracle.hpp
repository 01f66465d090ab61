#pragma once

// Independent reference computations used as test oracles. Nothing here calls the
// library; every value is rebuilt from the signal definitions with plain loops.

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Cell = std::pair<int, int>;  // (symbol, subcarrier) inside one PRB of one subframe

// CRS positions of one PRB of a normal subframe.
inline std::set<Cell> crs(int v_shift, int ports) {
    std::set<Cell> out;
    const int a = v_shift % 6;
    const int b = (v_shift + 3) % 6;
    auto put = [&](int sym, int off) {
        out.insert({sym, off});
        out.insert({sym, off + 6});
    };
    for (int sym : {0, 7}) {
        put(sym, a);
        if (ports >= 2) {
            put(sym, b);
        }
    }
    for (int sym : {4, 11}) {
        put(sym, b);
        if (ports >= 2) {
            put(sym, a);
        }
    }
    if (ports == 4) {
        for (int sym : {1, 8}) {
            put(sym, a);
            put(sym, b);
        }
    }
    return out;
}

inline bool in(const std::vector<int>& v, int x) {
    for (int y : v) {
        if (y == x) {
            return true;
        }
    }
    return false;
}

// NR data REs in one PRB of a DSS subframe.
inline int dss_pool(int ports, int lte_pdcch, int nr_pdcch, const std::vector<int>& dmrs, int v_shift = 0) {
    const auto c = crs(v_shift, ports);
    int n = 0;
    for (int sym = 0; sym < 14; ++sym) {
        if (sym < lte_pdcch + nr_pdcch || in(dmrs, sym)) {
            continue;
        }
        for (int sc = 0; sc < 12; ++sc) {
            n += c.contains({sym, sc}) ? 0 : 1;
        }
    }
    return n;
}

inline int nr_pool(int nr_pdcch, int dmrs_count) { return (14 - nr_pdcch - dmrs_count) * 12; }

inline int lte_pool(int ports, int pdcch) {
    const auto c = crs(0, ports);
    int n = 0;
    for (int sym = pdcch; sym < 14; ++sym) {
        for (int sc = 0; sc < 12; ++sc) {
            n += c.contains({sym, sc}) ? 0 : 1;
        }
    }
    return n;
}

// 100 * num / den rounded half up to `dp` decimals, as text. Non-negative inputs only.
inline std::string pct(std::int64_t num, std::int64_t den, int dp = 2) {
    std::int64_t scale = 1;
    for (int i = 0; i < dp; ++i) {
        scale *= 10;
    }
    const std::int64_t v = (2 * 100 * num * scale + den) / (2 * den);
    std::string frac = std::to_string(v % scale);
    while (static_cast<int>(frac.size()) < dp) {
        frac = "0" + frac;
    }
    return std::to_string(v / scale) + (dp > 0 ? "." + frac : "");
}

inline std::string loss(std::int64_t dss, std::int64_t ref) { return pct(ref - dss, ref); }

// DDDSU with a 6/4/4 special slot over `slots` slots.
struct TddCount {
    std::int64_t downlink_symbols = 0;
    std::int64_t guard_symbols = 0;
    std::int64_t uplink_symbols = 0;
    int dl_bearing_slots = 0;
};

inline TddCount dddsu(int slots) {
    TddCount t;
    for (int s = 0; s < slots; ++s) {
        switch (s % 5) {
            case 3:
                t.downlink_symbols += 6;
                t.guard_symbols += 4;
                t.uplink_symbols += 4;
                ++t.dl_bearing_slots;
                break;
            case 4:
                t.uplink_symbols += 14;
                break;
            default:
                t.downlink_symbols += 14;
                ++t.dl_bearing_slots;
        }
    }
    return t;
}

// Reference scheduler for one slot.
struct Grant {
    std::int64_t g5 = 0;
    std::int64_t g6 = 0;
};

inline Grant proportional(std::int64_t pool, std::int64_t d5, std::int64_t d6) {
    if (d5 + d6 <= pool) {
        return {d5, d6};
    }
    // Hand out cells one by one to whichever RAT is furthest below its exact share.
    Grant g{pool * d5 / (d5 + d6), pool * d6 / (d5 + d6)};
    while (g.g5 + g.g6 < pool) {
        if (d6 > d5) {
            ++g.g6;
        } else {
            ++g.g5;
        }
    }
    return g;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20240601u);
    return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

}  // namespace oracle
