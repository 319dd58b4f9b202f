#pragma once

#include "eigenbond/models.hpp"
#include "eigenbond/pricer.hpp"
#include "eigenbond/subordinators.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eigenbond {

enum class OutputFormat { Csv, Table };

// How run.rates are turned into initial states.
//   ShortRate: x solves r^phi(x) = rate (x = rate without subordination)
//   State:     the numbers are states x
enum class RateConvention { ShortRate, State };

struct RunSettings {
    std::vector<double> rates;
    double eps = 1e-7;
    std::optional<std::string> output;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::uint64_t> seed;
    RateConvention convention = RateConvention::ShortRate;

    bool operator==(const RunSettings&) const = default;
};

struct RunConfig {
    DiffusionModel model = DiffusionModel::cir(1.0, 1.0, 1.0);
    SubordinatorSpec subordinator;
    BondSchedule schedule;
    RunSettings run;

    bool operator==(const RunConfig&) const = default;
};

/// Parameter sets estimated for the Swiss bond benchmark.
DiffusionModel benchmark_model(ModelKind kind);

/// swiss1987 schedule with the benchmark parameters of `kind`.
RunConfig preset_config(const std::string& name, ModelKind kind = ModelKind::CIR, bool with_put = false);

/// Validates against the schema (unknown keys rejected) and builds the config.
/// Throws ValidationError.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

/// Initial states for run.rates under the configured convention.
std::vector<double> initial_states(const RunConfig& config);

std::string_view to_string(OutputFormat format);
OutputFormat output_format_from_string(std::string_view name);

} // namespace eigenbond
