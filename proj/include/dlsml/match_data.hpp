#pragma once

// Match and over data model, CSV ingestion and serialization.

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dlsml/core/csv.hpp"
#include "dlsml/core/errors.hpp"

namespace dlsml {

/// Which side of a match: Team1 bats first and defends, Team2 chases.
enum class Side : std::uint8_t { Team1 = 0, Team2 = 1 };

constexpr std::string_view to_string(Side s) { return s == Side::Team1 ? "Team1" : "Team2"; }

constexpr Side other(Side s) { return s == Side::Team1 ? Side::Team2 : Side::Team1; }

inline constexpr int kMaxOvers = 50;
inline constexpr int kMaxWickets = 10;

struct MatchRecord {
    std::string match_id;
    std::chrono::year_month_day date{};
    std::string team1;
    std::string team2;
    std::string toss_winner;
    int team1_runs = 0;
    int team1_wickets = 0;
    Side actual_winner = Side::Team1;

    const std::string& team(Side s) const { return s == Side::Team1 ? team1 : team2; }

    friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

/// Second-innings state at the end of a completed over.
struct OverSnapshot {
    std::string match_id;
    int overs_bowled = 0;
    int team2_runs = 0;
    int team2_wickets = 0;

    friend bool operator==(const OverSnapshot&, const OverSnapshot&) = default;
};

// ---------------------------------------------------------------------------
// Team names
// ---------------------------------------------------------------------------

namespace detail {

inline std::string team_key(std::string_view name) {
    std::string key;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return key;
}

inline const std::unordered_map<std::string, std::string>& known_teams() {
    static const std::unordered_map<std::string, std::string> names = [] {
        std::unordered_map<std::string, std::string> m;
        for (const char* n :
             {"Afghanistan", "Australia", "Bangladesh", "Bermuda", "Canada", "England", "Hong Kong",
              "India", "Ireland", "Kenya", "Namibia", "Nepal", "Netherlands", "New Zealand", "Oman",
              "Pakistan", "Papua New Guinea", "Scotland", "South Africa", "Sri Lanka",
              "United Arab Emirates", "United States of America", "West Indies", "Zimbabwe"}) {
            m.emplace(team_key(n), n);
        }
        m.emplace("uae", "United Arab Emirates");
        m.emplace("usa", "United States of America");
        return m;
    }();
    return names;
}

}  // namespace detail

/// Canonical display form of a team name. Matching ignores case, whitespace
/// and punctuation, so "SriLanka", "sri lanka" and " Sri  Lanka" coincide.
/// Unknown names are title-cased with whitespace collapsed.
inline std::string canonical_team(std::string_view raw) {
    const auto& known = detail::known_teams();
    if (auto it = known.find(detail::team_key(raw)); it != known.end()) return it->second;
    std::string out;
    bool word_start = true;
    for (char c : csv::trim(raw)) {
        const auto uc = static_cast<unsigned char>(c);
        if (std::isspace(uc)) {
            if (!word_start) out.push_back(' ');
            word_start = true;
            continue;
        }
        out.push_back(static_cast<char>(word_start ? std::toupper(uc) : std::tolower(uc)));
        word_start = false;
    }
    if (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

/// Matches joined to their over snapshots. Immutable once built; snapshots
/// are stored grouped by match (in match order) and sorted by over.
class Dataset {
public:
    Dataset() = default;

    /// Validates and joins. Throws ValidationError on orphan snapshots,
    /// duplicate overs, decreasing cumulative counts, snapshots after the
    /// innings closed, or a match without snapshots.
    static Dataset build(std::vector<MatchRecord> matches, std::vector<OverSnapshot> snapshots) {
        Dataset ds;
        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < matches.size(); ++i) {
            if (!index.emplace(matches[i].match_id, i).second) {
                throw ValidationError("duplicate match_id '" + matches[i].match_id + "'");
            }
        }
        std::vector<std::vector<OverSnapshot>> grouped(matches.size());
        for (auto& s : snapshots) {
            auto it = index.find(s.match_id);
            if (it == index.end()) {
                throw ValidationError("snapshot references unknown match_id '" + s.match_id +
                                      "' (over " + std::to_string(s.overs_bowled) + ")");
            }
            grouped[it->second].push_back(std::move(s));
        }
        for (std::size_t m = 0; m < matches.size(); ++m) {
            auto& group = grouped[m];
            const auto& match = matches[m];
            if (group.empty()) {
                throw ValidationError("match '" + match.match_id + "' has no over snapshots");
            }
            std::sort(group.begin(), group.end(),
                      [](const auto& a, const auto& b) { return a.overs_bowled < b.overs_bowled; });
            for (std::size_t k = 0; k < group.size(); ++k) {
                const auto& s = group[k];
                const auto where = "match '" + match.match_id + "' over " + std::to_string(s.overs_bowled);
                if (s.overs_bowled < 1 || s.overs_bowled > kMaxOvers) {
                    throw ValidationError(where + ": overs_bowled must be in 1..50");
                }
                if (s.team2_runs < 0) throw ValidationError(where + ": team2_runs must be non-negative");
                if (s.team2_wickets < 0 || s.team2_wickets > kMaxWickets - 1) {
                    throw ValidationError(where + ": team2_wickets must be in 0..9");
                }
                if (k > 0) {
                    const auto& prev = group[k - 1];
                    if (prev.overs_bowled == s.overs_bowled) throw ValidationError(where + ": duplicate over");
                    if (s.team2_runs < prev.team2_runs) {
                        throw ValidationError(where + ": team2_runs decreases from previous over");
                    }
                    if (s.team2_wickets < prev.team2_wickets) {
                        throw ValidationError(where + ": team2_wickets decreases from previous over");
                    }
                    if (prev.team2_runs > match.team1_runs) {
                        throw ValidationError(where + ": snapshot after the target was passed");
                    }
                }
            }
            for (auto& s : group) ds.snapshots_.push_back(std::move(s));
            for (std::size_t k = 0; k < group.size(); ++k) ds.match_of_.push_back(m);
            ds.offsets_.push_back(ds.snapshots_.size());
        }
        ds.matches_ = std::move(matches);
        return ds;
    }

    const std::vector<MatchRecord>& matches() const noexcept { return matches_; }
    const std::vector<OverSnapshot>& snapshots() const noexcept { return snapshots_; }

    /// Index into matches() of the match owning snapshot i.
    std::size_t match_index(std::size_t snapshot) const { return match_of_[snapshot]; }
    const MatchRecord& match_of(std::size_t snapshot) const { return matches_[match_of_[snapshot]]; }

    std::span<const OverSnapshot> snapshots_of(std::size_t match) const {
        return std::span(snapshots_).subspan(offsets_[match], offsets_[match + 1] - offsets_[match]);
    }

    std::size_t size() const noexcept { return matches_.size(); }

    friend bool operator==(const Dataset& a, const Dataset& b) {
        return a.matches_ == b.matches_ && a.snapshots_ == b.snapshots_;
    }

private:
    std::vector<MatchRecord> matches_;
    std::vector<OverSnapshot> snapshots_;
    std::vector<std::size_t> match_of_;
    std::vector<std::size_t> offsets_{0};
};

// ---------------------------------------------------------------------------
// CSV ingestion
// ---------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 9> kMatchColumns = {
    "match_id", "date", "team1", "team2", "toss_winner", "team1_runs", "team1_wickets", "actual_winner",
    "result_status"};
inline constexpr std::array<std::string_view, 4> kSnapshotColumns = {"match_id", "overs_bowled", "team2_runs",
                                                                     "team2_wickets"};

struct MatchParseResult {
    std::vector<MatchRecord> records;
    std::size_t dropped_tied = 0;
    std::size_t dropped_no_result = 0;
};

struct SnapshotParseResult {
    Dataset dataset;
    /// Overs that closed with the tenth wicket; no resources remain so they are not kept.
    std::size_t dropped_all_out = 0;
    /// Matches for which no over data survived.
    std::size_t dropped_matches = 0;
};

namespace detail {

template <std::size_t N>
void expect_header(csv::LineReader& reader, const std::array<std::string_view, N>& columns) {
    std::string line;
    if (!reader.next(line)) throw ParseError(1, "missing header row");
    const auto fields = csv::split(line);
    bool ok = fields.size() == N;
    for (std::size_t i = 0; ok && i < N; ++i) ok = fields[i] == columns[i];
    if (!ok) {
        std::string expected;
        for (auto c : columns) expected += (expected.empty() ? "" : ",") + std::string(c);
        throw ParseError(reader.line_no(), "header must be '" + expected + "'");
    }
}

inline long long int_field(const std::vector<std::string>& f, std::size_t i, std::string_view name,
                           std::size_t line) {
    auto v = csv::to_int(f[i]);
    if (!v) throw ParseError(line, std::string(name) + ": not an integer: '" + f[i] + "'");
    return *v;
}

inline std::chrono::year_month_day parse_date(const std::string& s, std::size_t line) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (s.size() != 10 || std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3 || s[4] != '-' ||
        s[7] != '-') {
        throw ParseError(line, "date: expected YYYY-MM-DD, got '" + s + "'");
    }
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) throw ParseError(line, "date: invalid calendar date '" + s + "'");
    return ymd;
}

}  // namespace detail

inline std::string format_date(const std::chrono::year_month_day& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

/// Reads matches.csv. Tied and no-result rows are dropped and counted.
inline MatchParseResult parse_matches(std::istream& in) {
    csv::LineReader reader(in);
    detail::expect_header(reader, kMatchColumns);
    MatchParseResult out;
    std::unordered_set<std::string> seen;
    std::string line;
    while (reader.next(line)) {
        const auto n = reader.line_no();
        if (csv::is_blank(line)) continue;
        const auto f = csv::split(line);
        if (f.size() != kMatchColumns.size()) {
            throw ParseError(n, "expected " + std::to_string(kMatchColumns.size()) + " fields, got " +
                                    std::to_string(f.size()));
        }
        const auto& status = f[8];
        if (status == "tied") {
            ++out.dropped_tied;
            continue;
        }
        if (status == "no_result") {
            ++out.dropped_no_result;
            continue;
        }
        if (status != "completed") throw ParseError(n, "result_status: unknown value '" + status + "'");

        MatchRecord r;
        r.match_id = f[0];
        if (r.match_id.empty()) throw ParseError(n, "match_id: empty");
        r.date = detail::parse_date(f[1], n);
        r.team1 = canonical_team(f[2]);
        r.team2 = canonical_team(f[3]);
        if (r.team1.empty() || r.team2.empty()) throw ParseError(n, "team1/team2: empty");
        if (r.team1 == r.team2) throw ValidationError("line " + std::to_string(n) + ": team1 equals team2");
        r.toss_winner = canonical_team(f[4]);
        if (r.toss_winner != r.team1 && r.toss_winner != r.team2) {
            throw ValidationError("line " + std::to_string(n) + ": toss_winner is neither team");
        }
        const auto runs = detail::int_field(f, 5, "team1_runs", n);
        if (runs < 0) throw ValidationError("line " + std::to_string(n) + ": team1_runs must be non-negative");
        r.team1_runs = static_cast<int>(runs);
        const auto wk = detail::int_field(f, 6, "team1_wickets", n);
        if (wk < 0 || wk > kMaxWickets) {
            throw ValidationError("line " + std::to_string(n) + ": team1_wickets must be in 0..10, got " +
                                  std::to_string(wk));
        }
        r.team1_wickets = static_cast<int>(wk);
        const auto winner = canonical_team(f[7]);
        if (winner == r.team1) {
            r.actual_winner = Side::Team1;
        } else if (winner == r.team2) {
            r.actual_winner = Side::Team2;
        } else {
            throw ValidationError("line " + std::to_string(n) + ": actual_winner is neither team");
        }
        if (!seen.insert(r.match_id).second) {
            throw ValidationError("line " + std::to_string(n) + ": duplicate match_id '" + r.match_id + "'");
        }
        out.records.push_back(std::move(r));
    }
    return out;
}

inline std::vector<OverSnapshot> parse_snapshot_rows(std::istream& in) {
    csv::LineReader reader(in);
    detail::expect_header(reader, kSnapshotColumns);
    std::vector<OverSnapshot> rows;
    std::string line;
    while (reader.next(line)) {
        const auto n = reader.line_no();
        if (csv::is_blank(line)) continue;
        const auto f = csv::split(line);
        if (f.size() != kSnapshotColumns.size()) {
            throw ParseError(n, "expected 4 fields, got " + std::to_string(f.size()));
        }
        OverSnapshot s;
        s.match_id = f[0];
        const auto over = detail::int_field(f, 1, "overs_bowled", n);
        const auto runs = detail::int_field(f, 2, "team2_runs", n);
        const auto wk = detail::int_field(f, 3, "team2_wickets", n);
        if (over < 1 || over > kMaxOvers) throw ValidationError("line " + std::to_string(n) + ": overs_bowled must be in 1..50");
        if (runs < 0) throw ValidationError("line " + std::to_string(n) + ": team2_runs must be non-negative");
        if (wk < 0 || wk > kMaxWickets) throw ValidationError("line " + std::to_string(n) + ": team2_wickets must be in 0..10");
        s.overs_bowled = static_cast<int>(over);
        s.team2_runs = static_cast<int>(runs);
        s.team2_wickets = static_cast<int>(wk);
        rows.push_back(std::move(s));
    }
    return rows;
}

/// Reads snapshots.csv and joins it to already-parsed matches.
///
/// A snapshot whose over closed the innings at ten wickets is dropped (and
/// must be the match's last). Matches left without any snapshot are dropped.
inline SnapshotParseResult parse_snapshots(std::istream& in, std::vector<MatchRecord> matches) {
    auto rows = parse_snapshot_rows(in);
    SnapshotParseResult out;

    std::map<std::string, int> last_over;
    for (const auto& s : rows) {
        auto& v = last_over[s.match_id];
        v = std::max(v, s.overs_bowled);
    }
    std::vector<OverSnapshot> kept;
    kept.reserve(rows.size());
    for (auto& s : rows) {
        if (s.team2_wickets == kMaxWickets) {
            if (s.overs_bowled != last_over[s.match_id]) {
                throw ValidationError("match '" + s.match_id + "' over " + std::to_string(s.overs_bowled) +
                                      ": snapshot after the innings closed");
            }
            ++out.dropped_all_out;
            continue;
        }
        kept.push_back(std::move(s));
    }

    std::unordered_set<std::string> known;
    for (const auto& m : matches) known.insert(m.match_id);
    std::unordered_set<std::string> has_snapshot;
    for (const auto& s : kept) {
        if (!known.contains(s.match_id)) {
            throw ValidationError("snapshot references unknown match_id '" + s.match_id + "' (over " +
                                  std::to_string(s.overs_bowled) + ")");
        }
        has_snapshot.insert(s.match_id);
    }
    const auto before = matches.size();
    std::erase_if(matches, [&](const MatchRecord& m) { return !has_snapshot.contains(m.match_id); });
    out.dropped_matches = before - matches.size();
    out.dataset = Dataset::build(std::move(matches), std::move(kept));
    return out;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return in;
}

inline MatchParseResult parse_matches(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_matches(in);
}

inline SnapshotParseResult parse_snapshots(const std::filesystem::path& path, std::vector<MatchRecord> matches) {
    auto in = open_input(path);
    return parse_snapshots(in, std::move(matches));
}

/// Convenience: parse both files into a Dataset.
inline Dataset load_dataset(const std::filesystem::path& matches_csv, const std::filesystem::path& snapshots_csv) {
    auto matches = parse_matches(matches_csv);
    return parse_snapshots(snapshots_csv, std::move(matches.records)).dataset;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline void write_matches(std::ostream& out, std::span<const MatchRecord> matches) {
    for (std::size_t i = 0; i < kMatchColumns.size(); ++i) out << (i ? "," : "") << kMatchColumns[i];
    out << '\n';
    for (const auto& m : matches) {
        out << m.match_id << ',' << format_date(m.date) << ',' << m.team1 << ',' << m.team2 << ','
            << m.toss_winner << ',' << m.team1_runs << ',' << m.team1_wickets << ',' << m.team(m.actual_winner)
            << ",completed\n";
    }
}

inline void write_snapshots(std::ostream& out, std::span<const OverSnapshot> snapshots) {
    out << "match_id,overs_bowled,team2_runs,team2_wickets\n";
    for (const auto& s : snapshots) {
        out << s.match_id << ',' << s.overs_bowled << ',' << s.team2_runs << ',' << s.team2_wickets << '\n';
    }
}

}  // namespace dlsml
