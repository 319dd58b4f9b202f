#pragma once

#include "eigenbond/config.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace eigenbond {

/// Rectangular table of preformatted cells.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

// Locale-independent number formatting.
std::string format_fixed(double value, int digits);
std::string format_sci(double value, int digits = 2);
std::string format_optional(const std::optional<double>& value, int digits);

std::string build_identifier();

/// "# eigenbond <version> build=<id> " followed by `context`.
std::string header_line(const std::string& context);

void write_table(std::ostream& out, const Table& table, OutputFormat format, const std::string& context);

/// EIGENBOND_THREADS if set, otherwise the hardware concurrency (at least 1).
int worker_threads();

} // namespace eigenbond
