#include "eigenbond/cli.hpp"

#include "eigenbond/errors.hpp"
#include "eigenbond/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace eigenbond::cli {

std::string run_context(const RunConfig& cfg)
{
    std::string ctx = "model=" + std::string(to_string(cfg.model.kind())) + " kappa=" + format_fixed(cfg.model.kappa(), 8) +
                      " theta=" + format_fixed(cfg.model.theta(), 9) + " sigma=" + format_fixed(cfg.model.sigma(), 8);
    if (cfg.subordinator.family != SubordinatorFamily::None) {
        ctx += " subordinator=" + std::string(to_string(cfg.subordinator.family));
    }
    ctx += " eps=" + format_sci(cfg.run.eps, 0);
    return ctx;
}

namespace {

std::string date_suffix(int index) { return "_tau" + std::to_string(index); }

} // namespace

Table price_table(const RunConfig& cfg, const PriceOptions& opt)
{
    const std::vector<double> states = initial_states(cfg);
    const PricingResult res = price_bond(cfg.model, cfg.subordinator, cfg.schedule, states, cfg.run.eps);
    const bool has_call = cfg.schedule.call_prices.has_value();
    const bool has_put = cfg.schedule.put_prices.has_value();

    Table t;
    t.columns = {"rate", "state", "value", "n_t0"};
    for (const auto& d : res.decisions) {
        if (has_call) t.columns.push_back("call_rate" + date_suffix(d.index));
        if (has_put) t.columns.push_back("put_rate" + date_suffix(d.index));
        t.columns.push_back("avg_n" + date_suffix(d.index));
        t.columns.push_back("max_n" + date_suffix(d.index));
    }

    const std::size_t n = states.size();
    std::vector<double> dp(n, 0.0);
    std::vector<oracle::McEstimate> mc(n);
    std::vector<double> zcb(n, 0.0);
    const bool run_mc = cfg.run.seed.has_value();
    if (opt.oracle) {
        t.columns.insert(t.columns.end(), {"dp_value", "dp_abs_diff"});
        parallel_for(static_cast<int>(n), opt.threads, [&](int i) {
            dp[static_cast<std::size_t>(i)] = oracle::quadrature_dp_price(cfg.model, cfg.subordinator, cfg.schedule,
                                                                          states[static_cast<std::size_t>(i)]);
        });
    }
    if (run_mc) {
        t.columns.insert(t.columns.end(), {"zcb_maturity", "mc_zcb_maturity", "mc_zcb_se"});
        const double T = cfg.schedule.maturity();
        for (std::size_t i = 0; i < n; ++i) {
            zcb[i] = zero_coupon_price(cfg.model, cfg.subordinator, T, states[i]).value;
            mc[i] = oracle::mc_zero_coupon(cfg.model, cfg.subordinator, T, states[i], opt.mc_paths, 250,
                                           *cfg.run.seed + i, opt.threads);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> row{format_fixed(cfg.run.rates[i], 8), format_fixed(states[i], 10),
                                     format_fixed(res.values[i], 8), std::to_string(res.initial_terms[i])};
        for (const auto& d : res.decisions) {
            if (has_call) row.push_back(format_optional(d.call_rate, 8));
            if (has_put) row.push_back(format_optional(d.put_rate, 8));
            row.push_back(format_fixed(d.mean_terms, 1));
            row.push_back(std::to_string(d.max_terms));
        }
        if (opt.oracle) {
            row.push_back(format_fixed(dp[i], 8));
            row.push_back(format_sci(std::abs(dp[i] - res.values[i])));
        }
        if (run_mc) {
            row.push_back(format_fixed(zcb[i], 8));
            row.push_back(format_fixed(mc[i].mean, 8));
            row.push_back(format_sci(mc[i].standard_error));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<BenchRow> bench(const RunConfig& cfg, int repetitions)
{
    if (repetitions < 10) {
        throw ValidationError("bench needs at least 10 repetitions");
    }
    std::vector<BenchRow> out;
    for (double eps : {1e-5, 1e-6, 1e-7}) {
        std::vector<double> ms;
        for (int k = 0; k < repetitions; ++k) {
            const auto t0 = std::chrono::steady_clock::now();
            const std::vector<double> states = initial_states(cfg);
            (void)price_bond(cfg.model, cfg.subordinator, cfg.schedule, states, eps);
            ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
        }
        std::sort(ms.begin(), ms.end());
        const std::size_t n = ms.size();
        BenchRow row;
        row.eps = eps;
        row.repetitions = repetitions;
        row.median_ms = n % 2 ? ms[n / 2] : 0.5 * (ms[n / 2 - 1] + ms[n / 2]);
        row.p95_ms = ms[static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n))) - 1];
        row.min_ms = ms.front();
        out.push_back(row);
    }
    return out;
}

Table bench_table(const std::vector<BenchRow>& rows)
{
    Table t;
    t.columns = {"eps", "repetitions", "median_ms", "p95_ms", "min_ms"};
    for (const auto& r : rows) {
        t.rows.push_back({format_sci(r.eps, 0), std::to_string(r.repetitions), format_fixed(r.median_ms, 3),
                          format_fixed(r.p95_ms, 3), format_fixed(r.min_ms, 3)});
    }
    return t;
}

int guarded(const std::function<int()>& body, std::ostream& err)
{
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return InvalidInput;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return InvalidInput;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return NumericalFailure;
    }
}

int cmd_price(const RunConfig& cfg, const PriceOptions& opt, std::ostream& out, std::ostream& err)
{
    return guarded(
        [&] {
            write_table(out, price_table(cfg, opt), cfg.run.format, "command=price " + run_context(cfg));
            return int(Ok);
        },
        err);
}

int cmd_reproduce(TableId id, const ReproduceOptions& opt, OutputFormat format, std::ostream& out, std::ostream& err)
{
    return guarded(
        [&] {
            const TableReport rep = reproduce_table(id, opt);
            write_table(out, rep.table, format, "command=reproduce " + rep.context);
            return int(Ok);
        },
        err);
}

int cmd_bench(const RunConfig& cfg, int repetitions, std::ostream& out, std::ostream& err)
{
    return guarded(
        [&] {
            write_table(out, bench_table(bench(cfg, repetitions)), cfg.run.format, "command=bench " + run_context(cfg));
            return int(Ok);
        },
        err);
}

} // namespace eigenbond::cli
