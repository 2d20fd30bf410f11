#include "farch/ingest.hpp"

#include "farch/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace farch {

namespace {

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::int64_t parse_int(std::string_view s, std::size_t line) {
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ParseError("not an integer time: '" + std::string(s) + "'", line);
    }
    return v;
}

}  // namespace

TickTable::TickTable(std::vector<Tick> rows) : rows_(std::move(rows)) {
    for (const auto& r : rows_) {
        if (!(r.price > 0.0) || !std::isfinite(r.price)) throw InvalidPrice("price must be positive", 0);
    }
    std::stable_sort(rows_.begin(), rows_.end(), [](const Tick& a, const Tick& b) { return a.day < b.day; });
    for (std::size_t i = 1; i < rows_.size(); ++i) {
        if (rows_[i].day == rows_[i - 1].day && rows_[i].time <= rows_[i - 1].time) {
            throw NonMonotoneTime("times not strictly increasing on " + rows_[i].day, rows_[i].day);
        }
    }
}

std::vector<std::string> TickTable::days() const {
    std::vector<std::string> out;
    for (const auto& r : rows_) {
        if (out.empty() || out.back() != r.day) out.push_back(r.day);
    }
    return out;
}

TickTable parse_ticks(const std::string& text) {
    const auto lines = csv::lines(text);
    std::size_t first = 0;
    while (first < lines.size() && lines[first].empty()) ++first;
    if (first == lines.size() || lines[first] != "date,time,price") {
        throw ParseError("expected header 'date,time,price'", first + 1);
    }
    std::vector<Tick> rows;
    for (std::size_t i = first + 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::size_t line = i + 1;
        const auto f = csv::split(lines[i]);
        if (f.size() != 3) throw ParseError("expected 3 fields", line);
        if (!is_iso_date(f[0])) throw ParseError("not an ISO-8601 date: '" + std::string(f[0]) + "'", line);
        Tick t;
        t.day = std::string(f[0]);
        t.time = parse_int(f[1], line);
        try {
            t.price = parse_double(f[2]);
        } catch (const InvalidInput&) {
            throw ParseError("not a price: '" + std::string(f[2]) + "'", line);
        }
        if (!(t.price > 0.0) || !std::isfinite(t.price)) {
            throw InvalidPrice("non-positive price on line " + std::to_string(line), line);
        }
        rows.push_back(std::move(t));
    }
    return TickTable(std::move(rows));
}

TickTable load_ticks(const std::filesystem::path& path) { return parse_ticks(read_text_file(path)); }

ReturnBuild build_returns(const TickTable& ticks, std::int64_t h_seconds, std::int64_t session_seconds) {
    if (h_seconds <= 0 || session_seconds <= 0) throw InvalidInput("h and session length must be positive");
    if (session_seconds % h_seconds != 0) throw InvalidInput("h must divide the session length");
    const auto m = static_cast<std::size_t>(session_seconds / h_seconds);
    const Grid grid(m);

    std::vector<std::string> days;
    std::vector<GridFunction> curves;
    std::vector<DroppedDay> dropped;

    const auto& rows = ticks.rows();
    std::size_t begin = 0;
    while (begin < rows.size()) {
        std::size_t end = begin;
        while (end < rows.size() && rows[end].day == rows[begin].day) ++end;
        const std::string& day = rows[begin].day;

        // Walk sample times in lockstep with the day's ticks.
        std::size_t next = begin;
        auto advance_to = [&](std::int64_t tau) {
            std::size_t seen = 0;
            while (next < end && rows[next].time <= tau) {
                ++next;
                ++seen;
            }
            return seen;
        };
        std::string reason;
        if (advance_to(0) == 0) reason = "no price at or before session open";
        std::vector<double> log_price(m + 1);
        if (reason.empty()) log_price[0] = std::log(rows[next - 1].price);
        for (std::size_t i = 1; i <= m && reason.empty(); ++i) {
            const auto tau = static_cast<std::int64_t>(i) * h_seconds;
            if (advance_to(tau) == 0) {
                reason = "no tick after " + std::to_string(tau - h_seconds) + "s up to " + std::to_string(tau) + "s";
                break;
            }
            log_price[i] = std::log(rows[next - 1].price);
        }
        if (reason.empty()) {
            Eigen::VectorXd v(static_cast<Eigen::Index>(m));
            for (std::size_t i = 0; i < m; ++i) v[static_cast<Eigen::Index>(i)] = log_price[i + 1] - log_price[i];
            days.push_back(day);
            curves.emplace_back(grid, std::move(v));
        } else {
            dropped.push_back({day, reason});
        }
        begin = end;
    }
    if (curves.empty()) throw NoUsableDays("no day has full sampling coverage");
    return ReturnBuild{Panel(grid, std::move(days), std::move(curves)), std::move(dropped)};
}

std::string drop_report_csv(const std::vector<DroppedDay>& dropped) {
    std::string out = "day,reason\n";
    for (const auto& d : dropped) out += d.day + "," + d.reason + "\n";
    return out;
}

}  // namespace farch
