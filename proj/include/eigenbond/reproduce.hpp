#pragma once

#include "eigenbond/config.hpp"
#include "eigenbond/pricer.hpp"
#include "eigenbond/report.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eigenbond {

/// One of the six benchmark model configurations.
struct BenchmarkCase {
    std::string key;   // csv-safe, e.g. "subcir_jd"
    std::string label; // e.g. "SubCIR JD"
    ModelKind kind;
    SubordinatorSpec subordinator;

    DiffusionModel model() const { return benchmark_model(kind); }
};

/// CIR, Vasicek, SubCIR JD, SubCIR PJ, SubVasicek JD, SubVasicek PJ.
/// JD: IG subordinator with drift 0.5, mu 0.5, nu 1. PJ: drift 0, mu 1, nu 1.
const std::vector<BenchmarkCase>& benchmark_cases();
const BenchmarkCase& benchmark_case(std::string_view key);

/// Published reference values. Absent break-even rates are empty.
namespace golden {

using Column = std::array<double, 10>;
using RateColumn = std::array<std::optional<double>, 10>;

/// 0.01, 0.02, ..., 0.10
const std::array<double, 10>& initial_rates();

// Callable bond, indexed by benchmark case then rate.
const std::array<Column, 6>& callable_values();
// Callable and putable bond.
const std::array<Column, 6>& callable_putable_values();

// Break-even short rates, tau_20 first.
const std::array<RateColumn, 6>& callable_break_even();
const std::array<RateColumn, 6>& call_break_even_with_put();
const std::array<RateColumn, 6>& put_break_even_with_put();

struct ConvergenceRow {
    double eps;
    std::array<double, 11> mean_terms; // tau_20..tau_11, t_0; NaN where unreadable
    std::array<int, 11> max_terms;
    double cpu_ms;
};

// Three rows (1e-5, 1e-6, 1e-7) per benchmark case.
const std::array<std::array<ConvergenceRow, 3>, 6>& convergence();

} // namespace golden

enum class TableId { T3, T4, T5, T6, T7, T9, T10 };

std::string_view to_string(TableId id);
TableId table_id_from_string(std::string_view name);

/// Prices the swiss1987 bond for `cs` at short rates `rates` (mapped to
/// states through r^phi when subordinated).
PricingResult run_benchmark(const BenchmarkCase& cs, bool with_put, const std::vector<double>& rates, double eps,
                            const PricerOptions& options = {});

/// Break-even short rates of `result` keyed tau_20..tau_11.
std::array<std::optional<double>, 10> call_rates(const PricingResult& result);
std::array<std::optional<double>, 10> put_rates(const PricingResult& result);

struct ReproduceOptions {
    double eps = 1e-7;
    int threads = 1;
    int timing_repetitions = 5;
    PricerOptions pricer{};
};

struct TableReport {
    Table table;
    std::string context;   // header comment content
    double max_abs_diff = 0.0;
    int absent_mismatches = 0;
};

TableReport reproduce_table(TableId id, const ReproduceOptions& options);

/// Runs fn(0..n-1) on up to `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

} // namespace eigenbond
