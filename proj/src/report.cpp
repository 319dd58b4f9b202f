#include "eigenbond/report.hpp"

#include "eigenbond/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <thread>

#ifndef EIGENBOND_BUILD_ID
#define EIGENBOND_BUILD_ID "unknown"
#endif
#ifndef EIGENBOND_VERSION
#define EIGENBOND_VERSION "0.0.0"
#endif

namespace eigenbond {

namespace {

std::string chars(double value, std::chars_format fmt, int digits)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, fmt, digits);
    if (ec != std::errc{}) return "nan";
    std::string s(buf, end);
    // -0.000000 prints as 0.000000
    if (s.front() == '-' && s.find_first_not_of("-0.e+") == std::string::npos) s.erase(0, 1);
    return s;
}

} // namespace

std::string format_fixed(double value, int digits) { return chars(value, std::chars_format::fixed, digits); }

std::string format_sci(double value, int digits) { return chars(value, std::chars_format::scientific, digits); }

std::string format_optional(const std::optional<double>& value, int digits)
{
    return value ? format_fixed(*value, digits) : "n.a.";
}

std::string build_identifier() { return EIGENBOND_BUILD_ID; }

std::string header_line(const std::string& context)
{
    return "# eigenbond " EIGENBOND_VERSION " build=" + build_identifier() + " " + context;
}

void write_table(std::ostream& out, const Table& table, OutputFormat format, const std::string& context)
{
    out << header_line(context) << '\n';
    if (format == OutputFormat::Csv) {
        auto emit = [&](const std::vector<std::string>& cells) {
            for (std::size_t j = 0; j < cells.size(); ++j) {
                if (j) out << ',';
                out << cells[j];
            }
            out << '\n';
        };
        emit(table.columns);
        for (const auto& row : table.rows) emit(row);
        return;
    }
    std::vector<std::size_t> width(table.columns.size());
    for (std::size_t j = 0; j < width.size(); ++j) width[j] = table.columns[j].size();
    for (const auto& row : table.rows)
        for (std::size_t j = 0; j < row.size() && j < width.size(); ++j) width[j] = std::max(width[j], row[j].size());
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j) out << "  ";
            out << std::string(width[j] - cells[j].size(), ' ') << cells[j];
        }
        out << '\n';
    };
    emit(table.columns);
    for (const auto& row : table.rows) emit(row);
}

int worker_threads()
{
    if (const char* env = std::getenv("EIGENBOND_THREADS")) {
        int n = 0;
        const char* end = env + std::char_traits<char>::length(env);
        auto [ptr, ec] = std::from_chars(env, end, n);
        if (ec != std::errc{} || ptr != end || n < 1) {
            throw ValidationError("EIGENBOND_THREADS must be a positive integer");
        }
        return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace eigenbond
