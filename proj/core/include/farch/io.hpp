#pragma once

// Text formats shared by every tool:
//   curve  CSV  "t,value"      one row per grid point
//   kernel CSV  "t,s,value"   M^2 rows, t outer
//   panel  CSV  "day,t,value" one block of M rows per day
// Values are written with 17 significant digits so that reading a file back
// reproduces every double bit for bit.

#include "farch/funcspace.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace farch {

/// A set of daily curves on one grid, labelled by day id (an index for
/// simulated data, an ISO date for ingested data).
class Panel {
public:
    Panel(Grid grid, std::vector<std::string> days, std::vector<GridFunction> curves);

    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
    [[nodiscard]] const std::vector<std::string>& days() const noexcept { return days_; }
    [[nodiscard]] const std::vector<GridFunction>& curves() const noexcept { return curves_; }
    [[nodiscard]] std::size_t size() const noexcept { return curves_.size(); }

private:
    Grid grid_;
    std::vector<std::string> days_;
    std::vector<GridFunction> curves_;
};

/// Panel labelled 0..N-1.
[[nodiscard]] Panel indexed_panel(const std::vector<GridFunction>& curves);

[[nodiscard]] std::string format_double(double x);
[[nodiscard]] double parse_double(std::string_view text);

[[nodiscard]] std::string curve_csv(const GridFunction& f);
[[nodiscard]] std::string kernel_csv(const GridKernel& k);
[[nodiscard]] std::string panel_csv(const Panel& p);

[[nodiscard]] GridFunction parse_curve_csv(const std::string& text);
[[nodiscard]] GridKernel parse_kernel_csv(const std::string& text);
[[nodiscard]] Panel parse_panel_csv(const std::string& text);

[[nodiscard]] GridFunction read_curve_csv(const std::filesystem::path& path);
[[nodiscard]] GridKernel read_kernel_csv(const std::filesystem::path& path);
[[nodiscard]] Panel read_panel_csv(const std::filesystem::path& path);

void write_curve_csv(const std::filesystem::path& path, const GridFunction& f);
void write_kernel_csv(const std::filesystem::path& path, const GridKernel& k);
void write_panel_csv(const std::filesystem::path& path, const Panel& p);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

namespace csv {

[[nodiscard]] std::vector<std::string_view> split(std::string_view line, char sep = ',');
[[nodiscard]] std::string_view trim(std::string_view s);
[[nodiscard]] std::vector<std::string_view> lines(std::string_view text);

}  // namespace csv

}  // namespace farch
