#pragma once

// Intraday price records to daily log-return curves.

#include "farch/io.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace farch {

struct Tick {
    std::string day;           // ISO-8601 date
    std::int64_t time = 0;     // seconds from session open
    double price = 0.0;
};

/// Rows sorted by (day, time); prices positive; times strictly increasing
/// within each day.
class TickTable {
public:
    TickTable() = default;
    explicit TickTable(std::vector<Tick> rows);

    [[nodiscard]] const std::vector<Tick>& rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }
    [[nodiscard]] std::vector<std::string> days() const;

private:
    std::vector<Tick> rows_;
};

/// Parses CSV text with header "date,time,price".
[[nodiscard]] TickTable parse_ticks(const std::string& text);
[[nodiscard]] TickTable load_ticks(const std::filesystem::path& path);

struct DroppedDay {
    std::string day;
    std::string reason;
};

struct ReturnBuild {
    Panel panel;
    std::vector<DroppedDay> dropped;
};

/// Samples each day at tau_i = i h (i = 0..M, M = session / h) by previous
/// tick and stores log P(tau_i) - log P(tau_{i-1}) at grid point i. A day is
/// kept only when it has a tick at or before the session open and at least
/// one tick inside every sampling interval (tau_{i-1}, tau_i].
[[nodiscard]] ReturnBuild build_returns(const TickTable& ticks, std::int64_t h_seconds, std::int64_t session_seconds);

[[nodiscard]] std::string drop_report_csv(const std::vector<DroppedDay>& dropped);

}  // namespace farch
