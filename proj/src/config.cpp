#include "eigenbond/config.hpp"

#include "eigenbond/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace eigenbond {

using nlohmann::json;

DiffusionModel benchmark_model(ModelKind kind)
{
    switch (kind) {
    case ModelKind::CIR: return DiffusionModel::cir(0.14294371, 0.133976855, 0.38757496);
    case ModelKind::Vasicek: return DiffusionModel::vasicek(0.44178462, 0.098397028, 0.13264223);
    case ModelKind::ThreeHalves: break;
    }
    throw ValidationError("no benchmark parameter set for the 3/2 model");
}

RunConfig preset_config(const std::string& name, ModelKind kind, bool with_put)
{
    if (name != "swiss1987") {
        throw ValidationError("unknown preset '" + name + "'");
    }
    RunConfig cfg;
    cfg.model = benchmark_model(kind);
    cfg.schedule = BondSchedule::swiss1987(with_put);
    cfg.run.rates = {0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10};
    return cfg;
}

std::string_view to_string(OutputFormat format)
{
    return format == OutputFormat::Csv ? "csv" : "table";
}

OutputFormat output_format_from_string(std::string_view name)
{
    if (name == "csv") return OutputFormat::Csv;
    if (name == "table") return OutputFormat::Table;
    throw ValidationError("unknown output format '" + std::string(name) + "'");
}

namespace {

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed)
{
    if (!obj.is_object()) {
        throw ValidationError(where + " must be an object");
    }
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            throw ValidationError("unknown key '" + key + "' in " + where);
        }
    }
}

double number(const json& obj, const std::string& key, const std::string& where)
{
    if (!obj.contains(key)) {
        throw ValidationError(where + "." + key + " is required");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ValidationError(where + "." + key + " must be a number");
    }
    return v.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& where, double fallback)
{
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::vector<double> numbers(const json& obj, const std::string& key, const std::string& where)
{
    const json& v = obj.at(key);
    if (!v.is_array()) {
        throw ValidationError(where + "." + key + " must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) {
            throw ValidationError(where + "." + key + " must be an array of numbers");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

std::string text(const json& obj, const std::string& key, const std::string& where)
{
    if (!obj.contains(key) || !obj.at(key).is_string()) {
        throw ValidationError(where + "." + key + " must be a string");
    }
    return obj.at(key).get<std::string>();
}

DiffusionModel parse_model(const json& m)
{
    reject_unknown(m, "model", {"kind", "kappa", "theta", "sigma"});
    const ModelKind kind = model_kind_from_string(text(m, "kind", "model"));
    try {
        return DiffusionModel(kind, number(m, "kappa", "model"), number(m, "theta", "model"),
                              number(m, "sigma", "model"));
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
}

SubordinatorSpec parse_subordinator(const json& s)
{
    if (!s.is_object()) {
        throw ValidationError("subordinator must be an object");
    }
    const SubordinatorFamily family = subordinator_family_from_string(text(s, "family", "subordinator"));
    SubordinatorSpec spec;
    spec.family = family;
    const std::string w = "subordinator";
    switch (family) {
    case SubordinatorFamily::None:
        reject_unknown(s, w, {"family"});
        return spec;
    case SubordinatorFamily::InverseGaussian:
        reject_unknown(s, w, {"family", "drift", "mu", "nu"});
        spec.drift = number_or(s, "drift", w, 0.0);
        spec.mu = number(s, "mu", w);
        spec.nu = number(s, "nu", w);
        break;
    case SubordinatorFamily::Gamma:
        reject_unknown(s, w, {"family", "drift", "C", "eta"});
        spec.drift = number_or(s, "drift", w, 0.0);
        spec.C = number(s, "C", w);
        spec.eta = number(s, "eta", w);
        break;
    case SubordinatorFamily::TemperedStable:
        reject_unknown(s, w, {"family", "drift", "C", "p", "eta"});
        spec.drift = number_or(s, "drift", w, 0.0);
        spec.C = number(s, "C", w);
        spec.p = number(s, "p", w);
        spec.eta = number(s, "eta", w);
        break;
    }
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
    return spec;
}

BondSchedule parse_schedule(const json& s)
{
    const std::string w = "schedule";
    reject_unknown(s, w, {"coupon", "coupon_times", "protection_index", "notice_delta", "call_prices", "put_prices"});
    BondSchedule out;
    out.coupon = number(s, "coupon", w);
    if (!s.contains("coupon_times")) {
        throw ValidationError("schedule.coupon_times is required");
    }
    out.coupon_times = numbers(s, "coupon_times", w);
    if (!s.contains("protection_index") || !s.at("protection_index").is_number_integer()) {
        throw ValidationError("schedule.protection_index must be an integer");
    }
    out.protection_index = s.at("protection_index").get<int>();
    out.notice_delta = number(s, "notice_delta", w);
    if (s.contains("call_prices") && !s.at("call_prices").is_null()) {
        out.call_prices = numbers(s, "call_prices", w);
    }
    if (s.contains("put_prices") && !s.at("put_prices").is_null()) {
        out.put_prices = numbers(s, "put_prices", w);
    }
    out.validate();
    return out;
}

RunSettings parse_run(const json& r)
{
    const std::string w = "run";
    reject_unknown(r, w, {"rates", "eps", "output", "format", "seed", "rate_convention"});
    RunSettings out;
    if (!r.contains("rates")) {
        throw ValidationError("run.rates is required");
    }
    out.rates = numbers(r, "rates", w);
    if (out.rates.empty()) {
        throw ValidationError("run.rates must not be empty");
    }
    out.eps = number_or(r, "eps", w, out.eps);
    if (!(out.eps > 0.0) || out.eps > 1e-3) {
        throw ValidationError("run.eps must lie in (0, 1e-3]");
    }
    if (r.contains("output")) {
        out.output = text(r, "output", w);
    }
    if (r.contains("format")) {
        out.format = output_format_from_string(text(r, "format", w));
    }
    if (r.contains("seed")) {
        if (!r.at("seed").is_number_unsigned()) {
            throw ValidationError("run.seed must be a non-negative integer");
        }
        out.seed = r.at("seed").get<std::uint64_t>();
    }
    if (r.contains("rate_convention")) {
        const std::string c = text(r, "rate_convention", w);
        if (c == "short_rate") {
            out.convention = RateConvention::ShortRate;
        } else if (c == "state") {
            out.convention = RateConvention::State;
        } else {
            throw ValidationError("run.rate_convention must be 'short_rate' or 'state'");
        }
    }
    return out;
}

} // namespace

RunConfig parse_config(const json& doc)
{
    reject_unknown(doc, "config", {"model", "subordinator", "schedule", "run"});
    for (const char* key : {"model", "schedule", "run"}) {
        if (!doc.contains(key)) {
            throw ValidationError(std::string("config.") + key + " is required");
        }
    }
    RunConfig cfg;
    cfg.model = parse_model(doc.at("model"));
    if (doc.contains("subordinator") && !doc.at("subordinator").is_null()) {
        cfg.subordinator = parse_subordinator(doc.at("subordinator"));
    }
    cfg.schedule = parse_schedule(doc.at("schedule"));
    cfg.run = parse_run(doc.at("run"));
    try {
        validate_pair(cfg.model, cfg.subordinator);
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
    return cfg;
}

RunConfig parse_config_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

json to_json(const RunConfig& cfg)
{
    json doc;
    doc["model"] = {{"kind", std::string(to_string(cfg.model.kind()))},
                    {"kappa", cfg.model.kappa()},
                    {"theta", cfg.model.theta()},
                    {"sigma", cfg.model.sigma()}};

    const SubordinatorSpec& s = cfg.subordinator;
    json sub = {{"family", std::string(to_string(s.family))}};
    switch (s.family) {
    case SubordinatorFamily::None: break;
    case SubordinatorFamily::InverseGaussian:
        sub["drift"] = s.drift;
        sub["mu"] = s.mu;
        sub["nu"] = s.nu;
        break;
    case SubordinatorFamily::Gamma:
        sub["drift"] = s.drift;
        sub["C"] = s.C;
        sub["eta"] = s.eta;
        break;
    case SubordinatorFamily::TemperedStable:
        sub["drift"] = s.drift;
        sub["C"] = s.C;
        sub["p"] = s.p;
        sub["eta"] = s.eta;
        break;
    }
    doc["subordinator"] = sub;

    const BondSchedule& b = cfg.schedule;
    json sched = {{"coupon", b.coupon},
                  {"coupon_times", b.coupon_times},
                  {"protection_index", b.protection_index},
                  {"notice_delta", b.notice_delta}};
    if (b.call_prices) sched["call_prices"] = *b.call_prices;
    if (b.put_prices) sched["put_prices"] = *b.put_prices;
    doc["schedule"] = sched;

    json run = {{"rates", cfg.run.rates},
                {"eps", cfg.run.eps},
                {"format", std::string(to_string(cfg.run.format))},
                {"rate_convention", cfg.run.convention == RateConvention::ShortRate ? "short_rate" : "state"}};
    if (cfg.run.output) run["output"] = *cfg.run.output;
    if (cfg.run.seed) run["seed"] = *cfg.run.seed;
    doc["run"] = run;
    return doc;
}

std::vector<double> initial_states(const RunConfig& cfg)
{
    std::vector<double> out;
    for (double r : cfg.run.rates) {
        out.push_back(cfg.run.convention == RateConvention::State ? r
                                                                  : state_for_rate(cfg.model, cfg.subordinator, r));
    }
    return out;
}

} // namespace eigenbond
