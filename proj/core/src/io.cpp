#include "farch/io.hpp"

#include "farch/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace farch {

namespace csv {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto pos = text.find('\n', start);
        if (pos == std::string_view::npos) pos = text.size();
        out.push_back(trim(text.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

}  // namespace csv

namespace {

constexpr double kGridTolerance = 1e-9;

struct Rows {
    std::vector<std::vector<std::string_view>> fields;
    std::vector<std::size_t> line_numbers;
};

// Parses a CSV body with a fixed header, skipping blank lines.
Rows parse_rows(std::string_view text, std::string_view header) {
    const auto all = csv::lines(text);
    std::size_t first = 0;
    while (first < all.size() && all[first].empty()) ++first;
    if (first == all.size()) throw ParseError("missing header '" + std::string(header) + "'", 1);
    if (all[first] != header) {
        throw ParseError("expected header '" + std::string(header) + "', got '" + std::string(all[first]) + "'",
                         first + 1);
    }
    const std::size_t width = csv::split(header).size();
    Rows rows;
    for (std::size_t i = first + 1; i < all.size(); ++i) {
        if (all[i].empty()) continue;
        auto fields = csv::split(all[i]);
        if (fields.size() != width) {
            throw ParseError("expected " + std::to_string(width) + " fields", i + 1);
        }
        rows.fields.push_back(std::move(fields));
        rows.line_numbers.push_back(i + 1);
    }
    return rows;
}

double field_double(std::string_view s, std::size_t line) {
    try {
        return parse_double(s);
    } catch (const InvalidInput&) {
        throw ParseError("not a number: '" + std::string(s) + "'", line);
    }
}

void check_grid_point(const Grid& grid, std::size_t i, double t, std::size_t line) {
    if (std::abs(t - grid.point(i)) > kGridTolerance) {
        throw ParseError("grid coordinate " + std::to_string(t) + " is not the midpoint " +
                             std::to_string(grid.point(i)),
                         line);
    }
}

}  // namespace

Panel::Panel(Grid grid, std::vector<std::string> days, std::vector<GridFunction> curves)
    : grid_(grid), days_(std::move(days)), curves_(std::move(curves)) {
    if (days_.size() != curves_.size()) throw InvalidInput("one day label per curve required");
    for (const auto& c : curves_) require_same_grid(grid_, c.grid(), "Panel");
}

Panel indexed_panel(const std::vector<GridFunction>& curves) {
    if (curves.empty()) throw EmptyInput("panel needs at least one curve");
    std::vector<std::string> days;
    days.reserve(curves.size());
    for (std::size_t k = 0; k < curves.size(); ++k) days.push_back(std::to_string(k));
    return Panel(curves.front().grid(), std::move(days), curves);
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    text = csv::trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw InvalidInput("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::string curve_csv(const GridFunction& f) {
    std::string out = "t,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        out += format_double(f.grid().point(i));
        out += ',';
        out += format_double(f[i]);
        out += '\n';
    }
    return out;
}

std::string kernel_csv(const GridKernel& k) {
    std::string out = "t,s,value\n";
    const Grid& g = k.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            out += format_double(g.point(i));
            out += ',';
            out += format_double(g.point(j));
            out += ',';
            out += format_double(k(i, j));
            out += '\n';
        }
    }
    return out;
}

std::string panel_csv(const Panel& p) {
    std::string out = "day,t,value\n";
    const Grid& g = p.grid();
    for (std::size_t d = 0; d < p.size(); ++d) {
        const auto& curve = p.curves()[d];
        for (std::size_t i = 0; i < g.size(); ++i) {
            out += p.days()[d];
            out += ',';
            out += format_double(g.point(i));
            out += ',';
            out += format_double(curve[i]);
            out += '\n';
        }
    }
    return out;
}

GridFunction parse_curve_csv(const std::string& text) {
    const Rows rows = parse_rows(text, "t,value");
    if (rows.fields.size() < 2) throw ParseError("curve needs at least 2 rows", 1);
    const Grid grid(rows.fields.size());
    Eigen::VectorXd v(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < rows.fields.size(); ++i) {
        const auto line = rows.line_numbers[i];
        check_grid_point(grid, i, field_double(rows.fields[i][0], line), line);
        v[static_cast<Eigen::Index>(i)] = field_double(rows.fields[i][1], line);
    }
    return GridFunction(grid, std::move(v));
}

GridKernel parse_kernel_csv(const std::string& text) {
    const Rows rows = parse_rows(text, "t,s,value");
    const std::size_t n = rows.fields.size();
    const auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (m < 2 || m * m != n) throw ParseError("kernel row count " + std::to_string(n) + " is not M^2", 1);
    const Grid grid(m);
    Eigen::MatrixXd v(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = r / m;
        const std::size_t j = r % m;
        const auto line = rows.line_numbers[r];
        check_grid_point(grid, i, field_double(rows.fields[r][0], line), line);
        check_grid_point(grid, j, field_double(rows.fields[r][1], line), line);
        v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = field_double(rows.fields[r][2], line);
    }
    return GridKernel(grid, std::move(v));
}

Panel parse_panel_csv(const std::string& text) {
    const Rows rows = parse_rows(text, "day,t,value");
    if (rows.fields.empty()) throw EmptyInput("panel has no rows");

    // Days appear as contiguous blocks; the first block fixes M.
    std::vector<std::string> days;
    std::vector<std::vector<double>> values;
    std::vector<std::vector<double>> coords;
    std::vector<std::size_t> first_line;
    for (std::size_t r = 0; r < rows.fields.size(); ++r) {
        const auto& f = rows.fields[r];
        const auto line = rows.line_numbers[r];
        if (f[0].empty()) throw ParseError("empty day label", line);
        if (days.empty() || days.back() != f[0]) {
            for (const auto& d : days) {
                if (d == f[0]) throw ParseError("day '" + std::string(f[0]) + "' is not contiguous", line);
            }
            days.emplace_back(f[0]);
            values.emplace_back();
            coords.emplace_back();
            first_line.push_back(line);
        }
        coords.back().push_back(field_double(f[1], line));
        values.back().push_back(field_double(f[2], line));
    }
    const std::size_t m = values.front().size();
    if (m < 2) throw ParseError("panel days need at least 2 grid points", first_line.front());
    const Grid grid(m);
    std::vector<GridFunction> curves;
    curves.reserve(days.size());
    for (std::size_t d = 0; d < days.size(); ++d) {
        if (values[d].size() != m) {
            throw ParseError("day '" + days[d] + "' has " + std::to_string(values[d].size()) + " points, expected " +
                                 std::to_string(m),
                             first_line[d]);
        }
        for (std::size_t i = 0; i < m; ++i) check_grid_point(grid, i, coords[d][i], first_line[d] + i);
        curves.emplace_back(grid, Eigen::Map<const Eigen::VectorXd>(values[d].data(), static_cast<Eigen::Index>(m)));
    }
    return Panel(grid, std::move(days), std::move(curves));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

GridFunction read_curve_csv(const std::filesystem::path& path) { return parse_curve_csv(read_text_file(path)); }
GridKernel read_kernel_csv(const std::filesystem::path& path) { return parse_kernel_csv(read_text_file(path)); }
Panel read_panel_csv(const std::filesystem::path& path) { return parse_panel_csv(read_text_file(path)); }

void write_curve_csv(const std::filesystem::path& path, const GridFunction& f) { write_file_atomic(path, curve_csv(f)); }
void write_kernel_csv(const std::filesystem::path& path, const GridKernel& k) {
    write_file_atomic(path, kernel_csv(k));
}
void write_panel_csv(const std::filesystem::path& path, const Panel& p) { write_file_atomic(path, panel_csv(p)); }

}  // namespace farch
