#include "eigenbond/cli.hpp"
#include "eigenbond/errors.hpp"

#include <doctest.h>

#include <locale>
#include <sstream>

using namespace eigenbond;

namespace {

struct CommaDecimal : std::numpunct<char> {
    char do_decimal_point() const override { return ','; }
    char do_thousands_sep() const override { return '.'; }
    std::string do_grouping() const override { return "\3"; }
};

RunConfig small_preset()
{
    RunConfig cfg = preset_config("swiss1987", ModelKind::CIR, true);
    cfg.run.rates = {0.03, 0.07};
    return cfg;
}

} // namespace

TEST_CASE("config survives a json round trip")
{
    RunConfig cfg = preset_config("swiss1987", ModelKind::Vasicek, true);
    cfg.subordinator = SubordinatorSpec::gamma(0.1, 0.5, 2.0);
    cfg.run.seed = 42;
    cfg.run.format = OutputFormat::Table;
    CHECK(parse_config(to_json(cfg)) == cfg);
    CHECK(parse_config_text(to_json(cfg).dump()) == cfg);
}

TEST_CASE("config schema violations are rejected")
{
    auto doc = to_json(small_preset());
    auto bad = doc;
    bad["model"]["lambda"] = 1.0;
    CHECK_THROWS_AS(parse_config(bad), ValidationError);
    bad = doc;
    bad["run"]["rates"] = nlohmann::json::array();
    CHECK_THROWS_AS(parse_config(bad), ValidationError);
    bad = doc;
    bad["run"]["eps"] = 0.1;
    CHECK_THROWS_AS(parse_config(bad), ValidationError);
    bad = doc;
    bad["model"]["kappa"] = -1.0;
    CHECK_THROWS_AS(parse_config(bad), ValidationError);
    CHECK_THROWS_AS(parse_config_text("{not json"), ValidationError);
    CHECK_THROWS_AS(preset_config("swiss2001"), ValidationError);
}

TEST_CASE("price command exit codes")
{
    std::ostringstream out, err;
    CHECK(cli::cmd_price(small_preset(), {}, out, err) == cli::Ok);
    CHECK(out.str().rfind("# eigenbond", 0) == 0);
    CHECK(out.str().find("call_rate_tau20") != std::string::npos);

    RunConfig cfg = small_preset();
    cfg.run.rates = {-0.05};
    std::ostringstream out2, err2;
    CHECK(cli::cmd_price(cfg, {}, out2, err2) == cli::InvalidInput);
    CHECK_FALSE(err2.str().empty());
}

TEST_CASE("numerical failures map to their own exit code")
{
    std::ostringstream err;
    CHECK(cli::guarded([]() -> int { throw ConvergenceError("no"); }, err) == cli::NumericalFailure);
    CHECK(cli::guarded([]() -> int { throw ValidationError("no"); }, err) == cli::InvalidInput);
}

TEST_CASE("output does not depend on the stream locale")
{
    std::ostringstream plain, err;
    std::ostringstream localized;
    localized.imbue(std::locale(std::locale::classic(), new CommaDecimal));
    REQUIRE(cli::cmd_price(small_preset(), {}, plain, err) == cli::Ok);
    REQUIRE(cli::cmd_price(small_preset(), {}, localized, err) == cli::Ok);
    CHECK(plain.str() == localized.str());
    CHECK(format_fixed(1234.5, 2) == "1234.50");
    CHECK(format_fixed(-0.0000001, 3) == "0.000");
}

TEST_CASE("bench needs ten repetitions")
{
    std::ostringstream out, err;
    CHECK(cli::cmd_bench(small_preset(), 5, out, err) == cli::InvalidInput);
}
