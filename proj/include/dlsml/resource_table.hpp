#pragma once

// The D/L resource table: percentage of batting resources remaining, indexed
// by overs left (1..50) and wickets lost (0..9). Values are held as integer
// tenths of a percent, which is exactly the published precision.

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dlsml/core/csv.hpp"
#include "dlsml/core/errors.hpp"
#include "dlsml/default_table_data.hpp"

namespace dlsml {

inline constexpr int kTableOvers = 50;
inline constexpr int kTableWickets = 10;
inline constexpr int kFullResourceTenths = 1000;

/// Raw grid of resource values, without any invariant attached.
struct ResourceGrid {
    std::array<int, kTableOvers * kTableWickets> tenths{};

    static constexpr bool in_range(int overs_left, int wickets_lost) noexcept {
        return overs_left >= 1 && overs_left <= kTableOvers && wickets_lost >= 0 && wickets_lost < kTableWickets;
    }

    int& at(int overs_left, int wickets_lost) { return tenths[index(overs_left, wickets_lost)]; }
    int at(int overs_left, int wickets_lost) const { return tenths[index(overs_left, wickets_lost)]; }

    double percent(int overs_left, int wickets_lost) const { return at(overs_left, wickets_lost) / 10.0; }

    friend bool operator==(const ResourceGrid&, const ResourceGrid&) = default;

private:
    static constexpr std::size_t index(int overs_left, int wickets_lost) noexcept {
        return static_cast<std::size_t>((overs_left - 1) * kTableWickets + wickets_lost);
    }
};

/// Rounds a percentage to the nearest tenth.
inline int to_tenths(double percent) { return static_cast<int>(std::lround(percent * 10.0)); }

/// True when the column for `wickets_lost` never increases as overs_left decreases.
inline bool column_is_monotone(const ResourceGrid& g, int wickets_lost) {
    for (int x = kTableOvers - 1; x >= 1; --x) {
        if (g.at(x, wickets_lost) > g.at(x + 1, wickets_lost)) return false;
    }
    return true;
}

/// Lists every invariant violation: out-of-range values, the (50, 0) = 100
/// anchor, and monotonicity along both axes. Empty means valid.
inline std::vector<std::string> table_violations(const ResourceGrid& g) {
    std::vector<std::string> out;
    auto cell = [](int x, int y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; };
    for (int x = 1; x <= kTableOvers; ++x) {
        for (int y = 0; y < kTableWickets; ++y) {
            const int v = g.at(x, y);
            if (v < 0 || v > kFullResourceTenths) out.push_back("value out of [0,100] at " + cell(x, y));
            if (x < kTableOvers && v > g.at(x + 1, y)) {
                out.push_back("increases as overs_left decreases at " + cell(x, y));
            }
            if (y > 0 && v > g.at(x, y - 1)) out.push_back("increases with wickets_lost at " + cell(x, y));
        }
    }
    if (g.at(kTableOvers, 0) != kFullResourceTenths) out.push_back("value(50,0) must be 100.0");
    return out;
}

/// A resource grid that passed validation (or was explicitly marked
/// unchecked for unconstrained study runs).
class ResourceTable {
public:
    static ResourceTable from_grid(ResourceGrid g) {
        const auto problems = table_violations(g);
        if (!problems.empty()) {
            std::string msg = "invalid resource table: " + problems.front();
            if (problems.size() > 1) msg += " (+" + std::to_string(problems.size() - 1) + " more)";
            throw ValidationError(msg);
        }
        return ResourceTable(std::move(g), true);
    }

    /// Skips the monotonicity checks. Only range checks remain.
    static ResourceTable unchecked(ResourceGrid g) {
        for (int v : g.tenths) {
            if (v < 0 || v > kFullResourceTenths) throw ValidationError("resource value out of [0,100]");
        }
        return ResourceTable(std::move(g), false);
    }

    static const ResourceTable& default_table();

    const ResourceGrid& grid() const noexcept { return grid_; }
    bool validated() const noexcept { return validated_; }

    int tenths(int overs_left, int wickets_lost) const {
        check(overs_left, wickets_lost);
        return grid_.at(overs_left, wickets_lost);
    }

    double percent(int overs_left, int wickets_lost) const { return tenths(overs_left, wickets_lost) / 10.0; }

    friend bool operator==(const ResourceTable& a, const ResourceTable& b) { return a.grid_ == b.grid_; }

private:
    ResourceTable(ResourceGrid g, bool validated) : grid_(std::move(g)), validated_(validated) {}

    static void check(int overs_left, int wickets_lost) {
        if (overs_left < 1 || overs_left > kTableOvers) {
            throw ArgumentError("overs_left must be in 1..50, got " + std::to_string(overs_left));
        }
        if (wickets_lost < 0 || wickets_lost >= kTableWickets) {
            throw ArgumentError("wickets_lost must be in 0..9, got " + std::to_string(wickets_lost));
        }
    }

    ResourceGrid grid_;
    bool validated_ = false;
};

// ---------------------------------------------------------------------------
// resource_table.csv
// ---------------------------------------------------------------------------

/// Reads the 50x10 grid. Rows may appear in any order but each overs_left
/// must occur exactly once. Values must lie on the 0.1 grid.
inline ResourceGrid read_table_grid(std::istream& in) {
    csv::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw ParseError(1, "missing header row");
    {
        const auto header = csv::split(line);
        bool ok = header.size() == 1 + kTableWickets && header[0] == "overs_left";
        for (int w = 0; ok && w < kTableWickets; ++w) ok = header[1 + w] == "w" + std::to_string(w);
        if (!ok) throw ParseError(1, "header must be 'overs_left,w0,...,w9'");
    }
    ResourceGrid g;
    std::array<bool, kTableOvers + 1> seen{};
    int rows = 0;
    while (reader.next(line)) {
        const auto n = reader.line_no();
        if (csv::is_blank(line)) continue;
        const auto f = csv::split(line);
        if (f.size() != 1 + kTableWickets) throw ParseError(n, "expected 11 fields");
        const auto x = csv::to_int(f[0]);
        if (!x || *x < 1 || *x > kTableOvers) throw ParseError(n, "overs_left must be an integer in 1..50");
        if (seen[static_cast<std::size_t>(*x)]) throw ParseError(n, "duplicate overs_left " + f[0]);
        seen[static_cast<std::size_t>(*x)] = true;
        for (int w = 0; w < kTableWickets; ++w) {
            const auto& text = f[1 + static_cast<std::size_t>(w)];
            char* end = nullptr;
            const double v = std::strtod(text.c_str(), &end);
            if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
                throw ParseError(n, "w" + std::to_string(w) + ": not a number: '" + text + "'");
            }
            const int t = to_tenths(v);
            if (std::abs(v * 10.0 - t) > 1e-6) {
                throw ParseError(n, "w" + std::to_string(w) + ": more than one fractional digit: '" + text + "'");
            }
            g.at(static_cast<int>(*x), w) = t;
        }
        ++rows;
    }
    if (rows != kTableOvers) throw ParseError(reader.line_no(), "expected 50 data rows, got " + std::to_string(rows));
    return g;
}

inline ResourceTable read_table(std::istream& in) { return ResourceTable::from_grid(read_table_grid(in)); }

inline ResourceTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return read_table(in);
}

inline void write_table(std::ostream& out, const ResourceGrid& g) {
    out << "overs_left";
    for (int w = 0; w < kTableWickets; ++w) out << ",w" << w;
    out << '\n';
    for (int x = kTableOvers; x >= 1; --x) {
        out << x;
        for (int w = 0; w < kTableWickets; ++w) {
            const int t = g.at(x, w);
            out << ',' << t / 10 << '.' << t % 10;
        }
        out << '\n';
    }
}

inline const ResourceTable& ResourceTable::default_table() {
    static const ResourceTable table = [] {
        std::istringstream in(detail::kDefaultResourceTableCsv);
        return read_table(in);
    }();
    return table;
}

}  // namespace dlsml
