#pragma once

#include "eigenbond/config.hpp"
#include "eigenbond/report.hpp"
#include "eigenbond/reproduce.hpp"

#include <functional>
#include <ostream>

namespace eigenbond::cli {

enum ExitCode : int { Ok = 0, InvalidInput = 2, NumericalFailure = 3 };

struct PriceOptions {
    bool oracle = false;   // adds the quadrature dynamic-programming value
    int mc_paths = 20000;  // used when config.run.seed is set
    int threads = 1;
};

/// One row per initial rate: value, break-even short rates and truncation
/// stats for every decision date, and optional oracle columns.
Table price_table(const RunConfig& config, const PriceOptions& options);

struct BenchRow {
    double eps = 0.0;
    int repetitions = 0;
    double median_ms = 0.0;
    double p95_ms = 0.0;
    double min_ms = 0.0;
};

/// Wall time of a full pricing (precomputation included) of all configured
/// rates at each eps in {1e-5, 1e-6, 1e-7}.
std::vector<BenchRow> bench(const RunConfig& config, int repetitions);
Table bench_table(const std::vector<BenchRow>& rows);

std::string run_context(const RunConfig& config);

/// Runs `body` and maps exceptions to exit codes, writing the diagnostic to `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

int cmd_price(const RunConfig& config, const PriceOptions& options, std::ostream& out, std::ostream& err);
int cmd_reproduce(TableId id, const ReproduceOptions& options, OutputFormat format, std::ostream& out,
                  std::ostream& err);
int cmd_bench(const RunConfig& config, int repetitions, std::ostream& out, std::ostream& err);

} // namespace eigenbond::cli
