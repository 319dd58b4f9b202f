#include "eigenbond/reproduce.hpp"

#include "eigenbond/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace eigenbond {

const std::vector<BenchmarkCase>& benchmark_cases()
{
    static const std::vector<BenchmarkCase> cases = [] {
        const auto jd = SubordinatorSpec::inverse_gaussian(0.5, 0.5, 1.0);
        const auto pj = SubordinatorSpec::inverse_gaussian(0.0, 1.0, 1.0);
        return std::vector<BenchmarkCase>{
            {"cir", "CIR", ModelKind::CIR, SubordinatorSpec{}},
            {"vasicek", "Vasicek", ModelKind::Vasicek, SubordinatorSpec{}},
            {"subcir_jd", "SubCIR JD", ModelKind::CIR, jd},
            {"subcir_pj", "SubCIR PJ", ModelKind::CIR, pj},
            {"subvasicek_jd", "SubVasicek JD", ModelKind::Vasicek, jd},
            {"subvasicek_pj", "SubVasicek PJ", ModelKind::Vasicek, pj},
        };
    }();
    return cases;
}

const BenchmarkCase& benchmark_case(std::string_view key)
{
    for (const auto& cs : benchmark_cases()) {
        if (cs.key == key) return cs;
    }
    throw ValidationError("unknown benchmark case '" + std::string(key) + "'");
}

namespace golden {

namespace {
constexpr double NA = std::numeric_limits<double>::quiet_NaN();

RateColumn rates(std::array<double, 10> v)
{
    RateColumn out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isnan(v[i])) out[i] = v[i];
    }
    return out;
}
} // namespace

const std::array<double, 10>& initial_rates()
{
    static const std::array<double, 10> r{0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10};
    return r;
}

const std::array<Column, 6>& callable_values()
{
    static const std::array<Column, 6> v{{
        {0.939259, 0.915992, 0.893341, 0.871290, 0.849823, 0.828923, 0.808577, 0.788769, 0.769484, 0.750708},
        {0.842845, 0.826294, 0.810091, 0.794230, 0.778702, 0.763502, 0.748621, 0.734053, 0.719792, 0.705830},
        {0.967362, 0.941069, 0.915446, 0.890481, 0.866160, 0.842470, 0.819396, 0.796927, 0.775050, 0.753752},
        {0.972668, 0.946130, 0.920208, 0.894892, 0.870174, 0.846044, 0.822492, 0.799510, 0.777087, 0.755215},
        {0.874805, 0.855193, 0.835999, 0.817216, 0.798837, 0.780854, 0.763261, 0.746050, 0.729215, 0.712749},
        {0.884935, 0.864408, 0.844285, 0.824562, 0.805233, 0.786293, 0.767737, 0.749559, 0.731754, 0.714318},
    }};
    return v;
}

const std::array<Column, 6>& callable_putable_values()
{
    static const std::array<Column, 6> v{{
        {1.030391, 1.004673, 0.979637, 0.955265, 0.931540, 0.908443, 0.885958, 0.864068, 0.842758, 0.822011},
        {0.995407, 0.975223, 0.955474, 0.936150, 0.917242, 0.898741, 0.880639, 0.862926, 0.845594, 0.828635},
        {1.054194, 1.025454, 0.997443, 0.970147, 0.943553, 0.917644, 0.892409, 0.867831, 0.843898, 0.820595},
        {1.058549, 1.029652, 1.001420, 0.973843, 0.946911, 0.920614, 0.894942, 0.869886, 0.845435, 0.821579},
        {1.022068, 0.998893, 0.976211, 0.954015, 0.932295, 0.911044, 0.890253, 0.869914, 0.850019, 0.830559},
        {1.030678, 1.006540, 0.982876, 0.959680, 0.936946, 0.914668, 0.892840, 0.871456, 0.850510, 0.829996},
    }};
    return v;
}

const std::array<RateColumn, 6>& callable_break_even()
{
    static const std::array<RateColumn, 6> v{
        rates({0.03388791, 0.01792789, 0.00978966, 0.00488209, 0.00157881, NA, NA, NA, NA, NA}),
        rates({0.02706597, -0.01012520, -0.03655983, -0.05701483, -0.07350682, -0.09100438, -0.10481935, -0.11653925,
               -0.12671317, -0.13566906}),
        rates({0.03614163, 0.02292836, 0.01665424, 0.01161351, 0.00873978, NA, NA, NA, NA, NA}),
        rates({0.03672670, 0.02439808, 0.01758017, 0.01333251, 0.01047766, NA, NA, NA, NA, NA}),
        rates({0.03189678, 0.00299207, -0.01809927, -0.03477951, -0.04847549, -0.06370872, -0.07568237, -0.08590952,
               -0.09485232, -0.10277749}),
        rates({0.03348832, 0.00734621, -0.01208475, -0.02766935, -0.04061315, -0.05539452, -0.06698556, -0.07694429,
               -0.08570132, -0.09350086}),
    };
    return v;
}

const std::array<RateColumn, 6>& call_break_even_with_put()
{
    static const std::array<RateColumn, 6> v{
        rates({0.03388791, 0.03050674, 0.03032523, 0.03031566, 0.03031515, 0.02494569, 0.02447879, 0.02427643,
               0.02409131, 0.02390885}),
        rates({0.02706597, 0.01653941, 0.01570707, 0.01565754, 0.01565469, 0.01423308, 0.01412248, 0.01407361,
               0.01402853, 0.01398410}),
        rates({0.03614163, 0.03271682, 0.03248071, 0.03246480, 0.03246373, 0.02715933, 0.02662948, 0.02641769,
               0.02623127, 0.02604835}),
        rates({0.03672670, 0.03328046, 0.03298851, 0.03296440, 0.03296242, 0.02765770, 0.02705660, 0.02682992,
               0.02663907, 0.02645309}),
        rates({0.03189678, 0.02560234, 0.02523355, 0.02521294, 0.02521179, 0.01905492, 0.01851858, 0.01830026,
               0.01810142, 0.01790549}),
        rates({0.03348832, 0.02738706, 0.02696967, 0.02694260, 0.02694084, 0.02088314, 0.02030185, 0.02007824,
               0.01987946, 0.01968408}),
    };
    return v;
}

const std::array<RateColumn, 6>& put_break_even_with_put()
{
    // SubVasicek JD tau_14 is printed as .3080348, read here as 0.03080348.
    static const std::array<RateColumn, 6> v{
        rates({0.04534067, 0.04136813, 0.04117866, 0.04116872, 0.04116820, 0.03572256, 0.03519281, 0.03493847,
               0.03470234, 0.03446938}),
        rates({0.04044891, 0.01957849, 0.01857462, 0.01851743, 0.01851414, 0.01708147, 0.01694566, 0.01688151,
               0.01682184, 0.01676298}),
        rates({0.04765628, 0.04346118, 0.04320875, 0.04319187, 0.04319074, 0.03780731, 0.03720163, 0.03693765,
               0.03670090, 0.03646824}),
        rates({0.04838597, 0.04402728, 0.04371211, 0.04368645, 0.04368434, 0.03830289, 0.03761288, 0.03733291,
               0.03709169, 0.03685602}),
        rates({0.04477592, 0.03798709, 0.03762279, 0.03760252, 0.03760139, 0.03139350, 0.03080348, 0.03052750,
               0.03027123, 0.03001840}),
        rates({0.04625085, 0.03955459, 0.03914175, 0.03911518, 0.03911347, 0.03301665, 0.03238388, 0.03210465,
               0.03185029, 0.03159982}),
    };
    return v;
}

const std::array<std::array<ConvergenceRow, 3>, 6>& convergence()
{
    // The CIR 1e-7 average row lists ten values for eleven dates; the tau_16 entry is left unread.
    static const std::array<std::array<ConvergenceRow, 3>, 6> v{{
        {{
            {1e-5, {6.0, 3.4, 3.2, 3.1, 3.0, 4.0, 4.0, 4.0, 4.0, 4.0, 2}, {6, 5, 5, 5, 4, 4, 4, 4, 4, 4, 2}, 1.1},
            {1e-6, {8.9, 7.0, 5.3, 5.4, 5.1, 5.0, 6.0, 6.0, 6.0, 6.0, 2}, {9, 8, 8, 8, 7, 5, 6, 6, 6, 6, 2}, 1.4},
            {1e-7, {10.9, 11.0, 7.9, 9.0, NA, 7.0, 7.0, 7.0, 7.0, 7.0, 3}, {11, 11, 12, 11, 11, 7, 7, 7, 7, 7, 3}, 1.9},
        }},
        {{
            {1e-5, {4.2, 5.8, 6.0, 4.3, 5.8, 5.9, 5.2, 5.2, 5.2, 5.2, 2}, {5, 6, 6, 6, 6, 6, 7, 7, 7, 7, 2}, 0.8},
            {1e-6, {6.0, 8.3, 9.8, 9.8, 9.2, 9.0, 9.0, 9.3, 9.9, 10.0, 3}, {6, 10, 10, 10, 11, 10, 11, 11, 11, 11, 3}, 1.3},
            {1e-7, {6.1, 12.0, 12.0, 13.0, 13.0, 12.8, 12.9, 13.9, 13.8, 13.5, 3}, {7, 13, 14, 14, 14, 13, 13, 14, 14, 14, 3},
             1.8},
        }},
        {{
            {1e-5, {10.0, 9.9, 9.0, 5.9, 7.0, 7.0, 7.0, 6.0, 6.0, 6.0, 3}, {10, 10, 11, 11, 10, 7, 7, 6, 6, 6, 3}, 2.1},
            {1e-6, {11.9, 12.8, 13.4, 8.6, 9.7, 10.0, 8.0, 8.0, 8.0, 8.0, 3}, {12, 13, 14, 14, 14, 10, 8, 8, 8, 8, 3}, 2.7},
            {1e-7, {14.0, 15.8, 18.6, 19.2, 13.5, 16.0, 11.0, 10.0, 10.0, 10.0, 4}, {14, 16, 19, 21, 20, 16, 11, 10, 10, 10, 4},
             4.0},
        }},
        {{
            {1e-5, {10.9, 10.8, 9.0, 5.7, 5.6, 5.0, 6.0, 6.0, 6.0, 6.0, 3}, {11, 11, 12, 12, 11, 5, 6, 6, 6, 6, 3}, 2.2},
            {1e-6, {12.9, 14.8, 18.3, 16.7, 10.9, 13.0, 9.0, 8.0, 8.0, 8.0, 3}, {13, 15, 19, 20, 20, 13, 9, 8, 8, 8, 3}, 3.6},
            {1e-7, {16.1, 27.7, 27.7, 35.0, 22.3, 31.0, 13.0, 12.0, 12.0, 12.0, 4}, {17, 35, 28, 36, 39, 31, 13, 12, 12, 12, 4},
             8.7},
        }},
        {{
            {1e-5, {6.0, 6.3, 6.3, 7.9, 8.0, 7.3, 7.1, 7.2, 7.1, 7.1, 3}, {6, 8, 10, 8, 8, 9, 8, 9, 9, 9, 3}, 1.5},
            {1e-6, {6.0, 12.0, 12.2, 13.2, 13.2, 13.2, 13.0, 13.9, 14.0, 14.0, 3}, {7, 13, 14, 15, 15, 15, 15, 15, 15, 14, 3},
             2.5},
            {1e-7, {8.0, 18.3, 19.6, 20.6, 20.9, 21.0, 20.2, 20.0, 21.6, 21.5, 4}, {8, 21, 22, 21, 23, 23, 22, 22, 22, 22, 4},
             4.2},
        }},
        {{
            {1e-5, {6.0, 10.3, 11.8, 12.3, 13.1, 13.0, 12.9, 12.6, 13.7, 13.8, 3}, {6, 12, 14, 15, 16, 15, 15, 15, 15, 15, 3},
             2.5},
            {1e-6, {7.0, 22.3, 23.4, 25.5, 26.8, 27.8, 27.6, 27.6, 28.7, 28.5, 4}, {8, 29, 30, 29, 29, 31, 32, 30, 30, 31, 4},
             6.2},
            {1e-7, {8.0, 44.6, 43.7, 47.8, 48.6, 47.2, 51.0, 51.1, 54.0, 52.1, 5}, {8, 55, 52, 57, 53, 54, 55, 57, 57, 56, 5},
             15.9},
        }},
    }};
    return v;
}

} // namespace golden

std::string_view to_string(TableId id)
{
    switch (id) {
    case TableId::T3: return "T3";
    case TableId::T4: return "T4";
    case TableId::T5: return "T5";
    case TableId::T6: return "T6";
    case TableId::T7: return "T7";
    case TableId::T9: return "T9";
    case TableId::T10: return "T10";
    }
    return "?";
}

TableId table_id_from_string(std::string_view name)
{
    for (TableId id : {TableId::T3, TableId::T4, TableId::T5, TableId::T6, TableId::T7, TableId::T9, TableId::T10}) {
        if (to_string(id) == name) return id;
    }
    throw ValidationError("unknown table id '" + std::string(name) + "' (expected T3, T4, T5, T6, T7, T9 or T10)");
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn)
{
    const int workers = std::max(1, std::min(threads, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

PricingResult run_benchmark(const BenchmarkCase& cs, bool with_put, const std::vector<double>& rates, double eps,
                            const PricerOptions& options)
{
    const DiffusionModel model = cs.model();
    std::vector<double> states;
    for (double r : rates) states.push_back(state_for_rate(model, cs.subordinator, r));
    return price_bond(model, cs.subordinator, BondSchedule::swiss1987(with_put), states, eps, options);
}

std::array<std::optional<double>, 10> call_rates(const PricingResult& result)
{
    std::array<std::optional<double>, 10> out;
    for (std::size_t i = 0; i < out.size() && i < result.decisions.size(); ++i) out[i] = result.decisions[i].call_rate;
    return out;
}

std::array<std::optional<double>, 10> put_rates(const PricingResult& result)
{
    std::array<std::optional<double>, 10> out;
    for (std::size_t i = 0; i < out.size() && i < result.decisions.size(); ++i) out[i] = result.decisions[i].put_rate;
    return out;
}

namespace {

const char* date_label(int j)
{
    static const char* labels[] = {"tau20", "tau19", "tau18", "tau17", "tau16", "tau15",
                                   "tau14", "tau13", "tau12", "tau11", "t0"};
    return labels[j];
}

std::string eps_text(double eps) { return format_sci(eps, 0); }

std::vector<double> rate_vector()
{
    const auto& r = golden::initial_rates();
    return {r.begin(), r.end()};
}

void compare_value(TableReport& rep, std::vector<std::string>& row, double ours, double published)
{
    const double d = std::abs(ours - published);
    rep.max_abs_diff = std::max(rep.max_abs_diff, d);
    row.push_back(format_fixed(ours, 6));
    row.push_back(format_fixed(published, 6));
    row.push_back(format_sci(d));
}

void compare_rate(TableReport& rep, std::vector<std::string>& row, const std::optional<double>& ours,
                  const std::optional<double>& published)
{
    row.push_back(format_optional(ours, 8));
    row.push_back(format_optional(published, 8));
    if (ours && published) {
        const double d = std::abs(*ours - *published);
        rep.max_abs_diff = std::max(rep.max_abs_diff, d);
        row.push_back(format_sci(d));
    } else if (!ours && !published) {
        row.push_back("0");
    } else {
        ++rep.absent_mismatches;
        row.push_back("absent-mismatch");
    }
}

std::string case_list(const std::vector<int>& idx)
{
    std::string s;
    for (int i : idx) {
        if (!s.empty()) s += ',';
        s += benchmark_cases()[static_cast<std::size_t>(i)].key;
    }
    return s;
}

std::vector<PricingResult> run_cases(const std::vector<int>& idx, bool with_put, const ReproduceOptions& opt)
{
    std::vector<PricingResult> out(idx.size());
    const auto rates = rate_vector();
    parallel_for(static_cast<int>(idx.size()), opt.threads, [&](int j) {
        out[static_cast<std::size_t>(j)] =
            run_benchmark(benchmark_cases()[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])], with_put, rates,
                          opt.eps, opt.pricer);
    });
    return out;
}

TableReport value_table(const std::vector<int>& idx, bool with_put, const ReproduceOptions& opt)
{
    TableReport rep;
    const auto results = run_cases(idx, with_put, opt);
    const auto& golden_values = with_put ? golden::callable_putable_values() : golden::callable_values();
    rep.table.columns = {"r"};
    for (int i : idx) {
        const auto& key = benchmark_cases()[static_cast<std::size_t>(i)].key;
        for (const char* suffix : {"", "_ref", "_abs_diff"}) rep.table.columns.push_back(key + suffix);
    }
    for (std::size_t r = 0; r < 10; ++r) {
        std::vector<std::string> row{format_fixed(golden::initial_rates()[r], 2)};
        for (std::size_t j = 0; j < idx.size(); ++j) {
            compare_value(rep, row, results[j].values[r], golden_values[static_cast<std::size_t>(idx[j])][r]);
        }
        rep.table.rows.push_back(std::move(row));
    }
    return rep;
}

TableReport break_even_table(bool with_put, const ReproduceOptions& opt)
{
    TableReport rep;
    const std::vector<int> idx{0, 1, 2, 3, 4, 5};
    const auto results = run_cases(idx, with_put, opt);
    rep.table.columns = {"option", "date"};
    for (const auto& cs : benchmark_cases()) {
        for (const char* suffix : {"", "_ref", "_abs_diff"}) rep.table.columns.push_back(cs.key + suffix);
    }
    auto block = [&](const char* option, bool put) {
        for (std::size_t d = 0; d < 10; ++d) {
            std::vector<std::string> row{option, date_label(static_cast<int>(d))};
            for (std::size_t c = 0; c < idx.size(); ++c) {
                const auto ours = put ? put_rates(results[c])[d] : call_rates(results[c])[d];
                const auto& published = !with_put ? golden::callable_break_even()[c]
                                    : put     ? golden::put_break_even_with_put()[c]
                                              : golden::call_break_even_with_put()[c];
                compare_rate(rep, row, ours, published[d]);
            }
            rep.table.rows.push_back(std::move(row));
        }
    };
    block("call", false);
    if (with_put) block("put", true);
    return rep;
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

TableReport convergence_table(const ReproduceOptions& opt)
{
    TableReport rep;
    rep.table.columns = {"model", "eps", "date", "avg_n", "max_n", "ref_avg_n", "ref_max_n", "max_n_abs_diff",
                         "avg_n_caveat", "value", "price_change", "time_ms", "ref_time_ms"};
    const std::array<double, 4> eps_levels{1e-5, 1e-6, 1e-7, 1e-8};
    const std::vector<double> rate{0.05};
    for (std::size_t c = 0; c < benchmark_cases().size(); ++c) {
        const auto& cs = benchmark_cases()[c];
        std::array<PricingResult, 4> runs;
        std::array<double, 3> times{};
        for (std::size_t e = 0; e < eps_levels.size(); ++e) {
            runs[e] = run_benchmark(cs, false, rate, eps_levels[e], opt.pricer);
        }
        for (std::size_t e = 0; e < 3; ++e) {
            std::vector<double> samples;
            for (int k = 0; k < std::max(1, opt.timing_repetitions); ++k) {
                const auto t0 = std::chrono::steady_clock::now();
                (void)run_benchmark(cs, false, rate, eps_levels[e], opt.pricer);
                samples.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
            }
            times[e] = median(samples);
        }
        for (std::size_t e = 0; e < 3; ++e) {
            const auto& published = golden::convergence()[c][e];
            const auto& res = runs[e];
            const double change = std::abs(res.values[0] - runs[e + 1].values[0]);
            for (int d = 0; d < 11; ++d) {
                double avg;
                int mx;
                if (d < 10) {
                    avg = res.decisions[static_cast<std::size_t>(d)].mean_terms;
                    mx = res.decisions[static_cast<std::size_t>(d)].max_terms;
                } else {
                    avg = mx = res.initial_terms[0];
                }
                const double pavg = published.mean_terms[static_cast<std::size_t>(d)];
                const int pmax = published.max_terms[static_cast<std::size_t>(d)];
                rep.max_abs_diff = std::max(rep.max_abs_diff, static_cast<double>(std::abs(mx - pmax)));
                rep.table.rows.push_back({cs.key, eps_text(eps_levels[e]), date_label(d), format_fixed(avg, 1),
                                          std::to_string(mx), std::isnan(pavg) ? "n.a." : format_fixed(pavg, 1),
                                          std::to_string(pmax), std::to_string(std::abs(mx - pmax)),
                                          "order-of-magnitude-only", format_fixed(res.values[0], 8), format_sci(change),
                                          format_fixed(times[e], 3), format_fixed(published.cpu_ms, 1)});
            }
        }
    }
    return rep;
}

} // namespace

TableReport reproduce_table(TableId id, const ReproduceOptions& opt)
{
    TableReport rep;
    std::string models;
    switch (id) {
    case TableId::T5: rep = value_table({0}, false, opt); models = case_list({0}); break;
    case TableId::T6: rep = value_table({1}, false, opt); models = case_list({1}); break;
    case TableId::T7: rep = value_table({2, 3, 4, 5}, false, opt); models = case_list({2, 3, 4, 5}); break;
    case TableId::T10: rep = value_table({0, 1, 2, 3, 4, 5}, true, opt); models = case_list({0, 1, 2, 3, 4, 5}); break;
    case TableId::T3: rep = break_even_table(false, opt); models = case_list({0, 1, 2, 3, 4, 5}); break;
    case TableId::T9: rep = break_even_table(true, opt); models = case_list({0, 1, 2, 3, 4, 5}); break;
    case TableId::T4: rep = convergence_table(opt); models = case_list({0, 1, 2, 3, 4, 5}); break;
    }
    rep.context = "table=" + std::string(to_string(id)) + " model=" + models +
                  " eps=" + (id == TableId::T4 ? std::string("1e-05,1e-06,1e-07") : format_sci(opt.eps, 0)) +
                  (id == TableId::T4 ? " max_n_abs_diff=" + std::to_string(static_cast<int>(rep.max_abs_diff))
                                     : " max_abs_diff=" + format_sci(rep.max_abs_diff)) +
                  " absent_mismatches=" + std::to_string(rep.absent_mismatches);
    return rep;
}

} // namespace eigenbond
