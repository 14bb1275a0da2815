#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

#include "coexrisk/config.hpp"
#include "coexrisk/output.hpp"
#include "coexrisk/risk.hpp"

using namespace coexrisk;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    static std::atomic<int> counter{0};
    fs::path p = fs::temp_directory_path() /
                 ("coexrisk_cfg_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string config_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

Settings small(const std::string& extra = "") {
    return parse_config("[engine]\nrealizations = 6\nseed = 11\n" + extra);
}

}  // namespace

TEST_CASE("empty config yields the defaults") {
    const Settings s = parse_config("");
    CHECK(s.run.scenario == ScenarioKind::indoor);
    CHECK(s.run.n_pop_a == 10);
    CHECK(s.run.n_pop_b == 10);
    CHECK(s.run.tech_a == Technology::wifi);
    CHECK(s.run.tech_b == Technology::wifi);
    CHECK(s.run.plan == PlanMode::indoor_19);
    CHECK(s.run.scheme_a == SelectionScheme::random);
    CHECK(s.run.scheme_b == SelectionScheme::random);
    CHECK(s.run.effective_realizations() == 3000);
    CHECK(get_value(s, "cs.wifi_co_wifi") == "-82");
    CHECK(get_value(s, "cs.wifi_co_laa") == "-62");
}

TEST_CASE("lteu entrants take the duty-cycle branch") {
    Settings s = small("[scenario]\nentrant_tech = lteu\n");
    CHECK(s.run.tech_b == Technology::lteu);
    const CampaignResult c = run_campaign(s.run);
    int entrants = 0;
    for (const auto& r : c.realizations)
        for (const auto& ap : r.coexistence.aps)
            if (ap.population == Population::b) {
                ++entrants;
                CHECK(ap.technology == Technology::lteu);
                CHECK(ap.efficiency == 1.0);
                CHECK(ap.r_deg == 0.0);
            }
    CHECK(entrants == 60);
}

TEST_CASE("a cs override is applied and echoed in every output file") {
    Settings s = small("[cs]\nwifi_co_wifi = -80\n");
    CHECK(s.run.model.cs.at(Technology::wifi, Technology::wifi, ChannelRelation::co) == -80.0);
    CHECK(get_value(s, "cs.wifi_co_wifi") == "-80");

    const fs::path dir = scratch("echo");
    const CampaignResult c = run_campaign(s.run);
    write_run(s, c, dir);
    CHECK(slurp(dir / "per_ap.csv").find("# cs.wifi_co_wifi = -80\n") != std::string::npos);
    CHECK(slurp(dir / "ccdf.csv").find("# cs.wifi_co_wifi = -80\n") != std::string::npos);
    const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(summary["config"]["cs.wifi_co_wifi"] == "-80");
    CHECK(summary["seed"] == 11);
    fs::remove_all(dir);
}

TEST_CASE("config errors name the key or line") {
    CHECK(config_error("[scenario]\nbogus = 1\n").find("scenario.bogus") != std::string::npos);
    CHECK(config_error("[nosuch]\nkey = 1\n").find("nosuch.key") != std::string::npos);
    CHECK(config_error("[scenario]\nincumbents = -1\n").find("scenario.incumbents") != std::string::npos);
    CHECK(config_error("[scenario]\nincumbents = ten\n").find("scenario.incumbents") != std::string::npos);
    CHECK(config_error("[spectrum]\nplan = wide\n").find("spectrum.plan") != std::string::npos);
    CHECK(config_error("[mac]\ncw_min = 0\n").find("mac.cw_min") != std::string::npos);
    CHECK(config_error("[engine]\nparallelism = 0\n").find("engine.parallelism") != std::string::npos);
    CHECK(config_error("loose = 1\n").find("outside a section") != std::string::npos);
    CHECK(config_error("[scenario]\nkind = indoor\n[broken\n").find("line 3") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/coexrisk.ini"), ConfigError);
}

TEST_CASE("every key round-trips through set and get") {
    const Settings defaults;
    CHECK(config_keys().size() > 90);
    for (const std::string& key : config_keys()) {
        CAPTURE(key);
        Settings s;
        const std::string v = get_value(defaults, key);
        set_value(s, key, v);
        CHECK(get_value(s, key) == v);
    }
    Settings s;
    set_value(s, "propagation.exponent", "2.7");
    CHECK(s.run.propagation.exponent == 2.7);
    CHECK(get_value(s, "propagation.exponent") == "2.7");
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("echo omits only the thread count") {
    const auto echo = config_echo(Settings{});
    CHECK(echo.size() + 1 == config_keys().size());
    for (const auto& [k, v] : echo) CHECK(k != "engine.parallelism");
}

TEST_CASE("relative rate table resolves against the config directory") {
    const fs::path dir = scratch("rates");
    spit(dir / "rates.csv", "# tech, threshold, rate\nwifi, 0, 10\nwifi, 20, 50\n");
    spit(dir / "run.ini", "[phy]\nrate_table = rates.csv\n");
    const Settings s = load_config(dir / "run.ini");
    CHECK(fs::path(s.run.rate_table_file) == (dir / "rates.csv").lexically_normal());
    REQUIRE(s.run.model.rates.wifi.size() == 2);
    CHECK(s.run.model.rates.wifi[1].rate_mbps == 50.0);
    CHECK(s.run.model.rates.lte.size() == RateTable::defaults().lte.size());
    CHECK(get_value(s, "phy.wifi_rates") == "0:10 20:50");

    spit(dir / "bad.ini", "[phy]\nrate_table = missing.csv\n");
    try {
        load_config(dir / "bad.ini");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("phy.rate_table") != std::string::npos);
    }
    fs::remove_all(dir);
}

TEST_CASE("sweep values map onto run configs") {
    const RunConfig base;
    CHECK(apply_sweep_value(base, SweepAxis::entrant_count, "30").n_pop_b == 30);
    CHECK(apply_sweep_value(base, SweepAxis::entrant_count, "0").n_pop_b == 0);
    const RunConfig single = apply_sweep_value(base, SweepAxis::channel_mode, "single_1:single");
    CHECK(single.plan == PlanMode::single_1);
    CHECK(single.scheme_b == SelectionScheme::single);
    CHECK(single.scheme_a == SelectionScheme::random);
    const RunConfig sensed = apply_sweep_value(base, SweepAxis::channel_mode, "indoor_19:sense");
    CHECK(sensed.plan == PlanMode::indoor_19);
    CHECK(sensed.scheme_b == SelectionScheme::sense);
    CHECK(apply_sweep_value(base, SweepAxis::entrant_tech, "laa").tech_b == Technology::laa);
    CHECK(apply_sweep_value(base, SweepAxis::scenario, "indoor_no_walls").scenario == ScenarioKind::indoor_no_walls);
    CHECK_THROWS_AS(apply_sweep_value(base, SweepAxis::entrant_count, "-2"), ConfigError);
    CHECK_THROWS_AS(apply_sweep_value(base, SweepAxis::channel_mode, "wide"), ConfigError);

    const Settings s = parse_config("[sweep]\naxis = channel_mode\nvalues = indoor_19, single_1:single\ntechs = laa\n");
    CHECK(s.sweep.axis == SweepAxis::channel_mode);
    REQUIRE(s.sweep.values.size() == 2);
    CHECK(s.sweep.values[1] == "single_1:single");
    CHECK(s.sweep.techs == std::vector<Technology>{Technology::laa});
}

TEST_CASE("a written run reads back and charts identically") {
    const Settings s = small("[scenario]\nentrant_tech = laa\nentrants = 4\n");
    const CampaignResult c = run_campaign(s.run);
    const fs::path run_dir = scratch("run");
    write_run(s, c, run_dir);

    const StoredRun back = read_per_ap_csv(run_dir / "per_ap.csv");
    CHECK(back.settings.run.seed == 11);
    CHECK(back.settings.run.n_pop_b == 4);
    CHECK(back.settings.run.tech_b == Technology::laa);
    REQUIRE(back.campaign.realizations.size() == c.realizations.size());
    for (std::size_t i = 0; i < c.realizations.size(); ++i) {
        const auto& a = c.realizations[i];
        const auto& b = back.campaign.realizations[i];
        CHECK(a.seed == b.seed);
        REQUIRE(a.coexistence.aps.size() == b.coexistence.aps.size());
        REQUIRE(b.standalone.has_value());
        REQUIRE(b.wifi_entrant.has_value());
        for (std::size_t k = 0; k < a.coexistence.aps.size(); ++k) {
            CHECK(a.coexistence.aps[k].throughput_mbps == b.coexistence.aps[k].throughput_mbps);
            CHECK(a.coexistence.aps[k].airtime == b.coexistence.aps[k].airtime);
        }
    }
    for (Metric m : {Metric::degradation, Metric::unfairness}) {
        const RiskSeries x = aggregate(c, m, BaselineKind::standalone);
        const RiskSeries y = aggregate(back.campaign, m, BaselineKind::standalone);
        CHECK(x.samples == y.samples);
        CHECK(x.label == y.label);
    }

    const fs::path chart_dir = scratch("chart");
    chart(run_dir, chart_dir);
    CHECK(slurp(chart_dir / "ccdf.csv") == slurp(run_dir / "ccdf.csv"));
    CHECK_THROWS_AS(chart(run_dir, run_dir), ConfigError);
    CHECK_THROWS_AS(chart(chart_dir, scratch("none")), Error);

    for (const char* f : {"per_ap.csv", "ccdf.csv", "summary.json"}) {
        CAPTURE(f);
        const std::string text = slurp(run_dir / f);
        CHECK(text.find('\r') == std::string::npos);
        CHECK(text.back() == '\n');
    }
    CHECK(slurp(run_dir / "per_ap.csv").rfind("# coexrisk 1.0.0\n", 0) == 0);
    CHECK(slurp(run_dir / "per_ap.csv").find("# engine.seed = 11\n") != std::string::npos);
    fs::remove_all(run_dir);
    fs::remove_all(chart_dir);
}

TEST_CASE("sweep writes one file per point and technology") {
    const Settings s = parse_config(
        "[engine]\nrealizations = 3\n[sweep]\naxis = channel_mode\nvalues = non_dfs_4, single_1:single\ntechs = wifi, lteu\n");
    const fs::path dir = scratch("sweep");
    const auto files = run_sweep(s, dir);
    const std::vector<std::string> expected{"channel_mode_non_dfs_4_wifi.csv", "channel_mode_non_dfs_4_lteu.csv",
                                            "channel_mode_single_1-single_wifi.csv",
                                            "channel_mode_single_1-single_lteu.csv"};
    CHECK(files == expected);
    for (const auto& f : expected) CHECK(fs::exists(dir / f));
    const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(summary["points"].size() == 4);
    fs::remove_all(dir);
}
