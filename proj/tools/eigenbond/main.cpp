#include "eigenbond/cli.hpp"
#include "eigenbond/errors.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>

using namespace eigenbond;

namespace {

struct Common {
    std::string config_path;
    std::string preset;
    std::string model;
    std::optional<double> eps;
    std::vector<std::string> rates;
    bool rates_given = false;
    std::string output;
    std::string format;
    std::optional<std::uint64_t> seed;
};

std::vector<double> parse_rates(const std::vector<std::string>& items)
{
    std::vector<double> out;
    for (const auto& item : items) {
        if (item.empty()) continue;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size()) {
            throw ValidationError("--rates: '" + item + "' is not a number");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw ValidationError("--rates must list at least one rate");
    }
    return out;
}

RunConfig resolve_config(const Common& c, bool with_put)
{
    RunConfig cfg;
    if (!c.config_path.empty()) {
        if (!c.preset.empty() || !c.model.empty()) {
            throw ValidationError("--preset and --model cannot be combined with --config");
        }
        cfg = load_config(c.config_path);
    } else {
        const std::string preset = c.preset.empty() ? "swiss1987" : c.preset;
        const std::string model = c.model.empty() ? "cir" : c.model;
        if (model == "cir" || model == "vasicek") {
            cfg = preset_config(preset, model_kind_from_string(model), with_put);
        } else {
            const BenchmarkCase& cs = benchmark_case(model);
            cfg = preset_config(preset, cs.kind, with_put);
            cfg.subordinator = cs.subordinator;
        }
    }
    if (c.eps) cfg.run.eps = *c.eps;
    if (c.rates_given) cfg.run.rates = parse_rates(c.rates);
    if (!c.output.empty()) cfg.run.output = c.output;
    if (!c.format.empty()) cfg.run.format = output_format_from_string(c.format);
    if (c.seed) cfg.run.seed = c.seed;
    // overrides go through the same schema checks as a config file
    return parse_config(to_json(cfg));
}

int with_output(const std::optional<std::string>& path, const std::function<int(std::ostream&)>& body)
{
    if (!path) return body(std::cout);
    std::ofstream file(*path);
    if (!file) {
        std::cerr << "error: cannot open output file '" << *path << "'\n";
        return cli::InvalidInput;
    }
    return body(file);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Eigenfunction-expansion pricing of callable and putable bonds"};
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("--config", c.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--preset", c.preset, "Built-in bond preset (swiss1987)");
    app.add_option("--model", c.model,
                   "Benchmark parameters for the preset: cir, vasicek, subcir_jd, subcir_pj, subvasicek_jd, subvasicek_pj");
    app.add_option("--eps", c.eps, "Truncation tolerance");
    auto* rates_opt = app.add_option("--rates", c.rates, "Initial short rates (comma separated)")->delimiter(',');
    app.add_option("--output", c.output, "Write the result to this file");
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "table"}));
    app.add_option("--seed", c.seed, "Seed for Monte Carlo oracle runs");

    auto* price = app.add_subcommand("price", "Price the configured bond at each initial rate");
    bool with_put = false;
    bool oracle = false;
    int paths = 20000;
    price->add_flag("--put", with_put, "Add the put ladder to the preset");
    price->add_flag("--oracle", oracle, "Add the quadrature dynamic-programming value");
    price->add_option("--paths", paths, "Monte Carlo paths when --seed is given")->check(CLI::PositiveNumber);

    auto* reproduce = app.add_subcommand("reproduce", "Reproduce a benchmark table as CSV");
    std::string table_name;
    int timing_reps = 5;
    reproduce->add_option("table", table_name, "T3, T4, T5, T6, T7, T9 or T10")->required();
    reproduce->add_option("--repetitions", timing_reps, "Timing repetitions for T4")->check(CLI::PositiveNumber);

    auto* bench = app.add_subcommand("bench", "Median and p95 pricing time at eps 1e-5, 1e-6, 1e-7");
    int bench_reps = 20;
    bench->add_flag("--put", with_put, "Add the put ladder to the preset");
    bench->add_option("--repetitions", bench_reps, "Repetitions per eps (at least 10)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::InvalidInput;
    }

    c.rates_given = rates_opt->count() > 0;
    RunConfig cfg;
    int threads = 1;
    int rc = cli::guarded(
        [&] {
            threads = worker_threads();
            if (!reproduce->parsed()) cfg = resolve_config(c, with_put);
            return int(cli::Ok);
        },
        std::cerr);
    if (rc != cli::Ok) return rc;

    if (price->parsed()) {
        cli::PriceOptions opt;
        opt.oracle = oracle;
        opt.mc_paths = paths;
        opt.threads = threads;
        return with_output(cfg.run.output, [&](std::ostream& out) { return cli::cmd_price(cfg, opt, out, std::cerr); });
    }
    if (bench->parsed()) {
        return with_output(cfg.run.output,
                           [&](std::ostream& out) { return cli::cmd_bench(cfg, bench_reps, out, std::cerr); });
    }

    ReproduceOptions opt;
    opt.threads = threads;
    opt.timing_repetitions = timing_reps;
    OutputFormat format = OutputFormat::Csv;
    rc = cli::guarded(
        [&] {
            if (c.eps) {
                if (!(*c.eps > 0.0) || *c.eps > 1e-3) throw ValidationError("--eps must lie in (0, 1e-3]");
                opt.eps = *c.eps;
            }
            if (!c.format.empty()) format = output_format_from_string(c.format);
            if (!c.config_path.empty() || !c.model.empty() || c.rates_given) {
                throw ValidationError("reproduce uses the built-in benchmark; --config, --model and --rates do not apply");
            }
            return int(cli::Ok);
        },
        std::cerr);
    if (rc != cli::Ok) return rc;
    std::optional<std::string> path;
    if (!c.output.empty()) path = c.output;
    return with_output(path, [&](std::ostream& out) {
        return cli::guarded(
            [&] { return cli::cmd_reproduce(table_id_from_string(table_name), opt, format, out, std::cerr); },
            std::cerr);
    });
}
