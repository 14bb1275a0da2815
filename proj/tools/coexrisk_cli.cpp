// Command-line front end. Talks to the simulator only through the C API.
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coexrisk/coexrisk.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int exit_code(coex_status st) {
    switch (st) {
        case COEX_OK: return 0;
        case COEX_INVALID_ARGUMENT:
        case COEX_CONFIG_ERROR: return kExitConfig;
        default: return kExitRuntime;
    }
}

int report(coex_status st) {
    if (st != COEX_OK) std::fprintf(stderr, "coexrisk: %s\n", coex_last_error());
    return exit_code(st);
}

struct ConfigHandle {
    coex_config* cfg = nullptr;
    ~ConfigHandle() { coex_config_free(cfg); }
};

struct CommonOptions {
    std::string config;
    std::optional<std::string> seed;
    std::optional<std::string> realizations;
    std::optional<std::string> parallelism;
    std::optional<std::string> baseline;
    std::vector<std::string> sets;
    std::string out_dir;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--realizations", o.realizations, "realizations per campaign (0 = scenario default)");
    cmd->add_option("--parallelism", o.parallelism, "worker threads");
    cmd->add_option("--baseline", o.baseline, "standalone, wifi_entrant or both");
    cmd->add_option("--set", o.sets, "override one key, e.g. --set cs.wifi_co_wifi=-80")->take_all();
    cmd->add_option("--out-dir", o.out_dir, "output directory")->required();
    cmd->add_flag("--quiet,-q", o.quiet, "no progress counter");
}

// File first, then --set overrides, then the dedicated flags.
coex_status build_config(const CommonOptions& o, const std::vector<std::pair<const char*, std::optional<std::string>>>& extra,
                         ConfigHandle& h) {
    coex_status st = o.config.empty() ? coex_config_new(&h.cfg) : coex_config_load(o.config.c_str(), &h.cfg);
    if (st != COEX_OK) return st;
    for (const std::string& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "coexrisk: --set expects key=value, got '%s'\n", kv.c_str());
            return COEX_INVALID_ARGUMENT;
        }
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        if ((st = coex_config_set(h.cfg, key.c_str(), value.c_str())) != COEX_OK) return st;
    }
    const std::pair<const char*, const std::optional<std::string>*> flags[] = {
        {"engine.seed", &o.seed},
        {"engine.realizations", &o.realizations},
        {"engine.parallelism", &o.parallelism},
        {"engine.baseline", &o.baseline},
    };
    for (const auto& [key, value] : flags)
        if (*value && (st = coex_config_set(h.cfg, key, (*value)->c_str())) != COEX_OK) return st;
    for (const auto& [key, value] : extra)
        if (value && (st = coex_config_set(h.cfg, key, value->c_str())) != COEX_OK) return st;
    return coex_config_validate(h.cfg);
}

struct Counter {
    size_t last_percent = 101;
};

void on_progress(size_t done, size_t total, void* user) {
    auto* c = static_cast<Counter*>(user);
    const size_t percent = total ? done * 100 / total : 100;
    if (percent == c->last_percent) return;
    c->last_percent = percent;
    std::fprintf(stderr, "\rrealizations %zu/%zu", done, total);
    if (done == total) std::fputc('\n', stderr);
    std::fflush(stderr);
}

void on_sweep_progress(size_t point, size_t points, size_t done, size_t total, void* user) {
    auto* c = static_cast<Counter*>(user);
    const size_t percent = total ? done * 100 / total : 100;
    if (percent == c->last_percent && done != 0) return;
    c->last_percent = percent;
    std::fprintf(stderr, "\rpoint %zu/%zu  realizations %zu/%zu", point + 1, points, done, total);
    if (done == total) std::fputc('\n', stderr);
    std::fflush(stderr);
}

int cmd_run(const CommonOptions& o) {
    ConfigHandle h;
    coex_status st = build_config(o, {}, h);
    if (st != COEX_OK) return report(st);
    Counter counter;
    coex_campaign* campaign = nullptr;
    st = coex_campaign_run(h.cfg, o.quiet ? nullptr : on_progress, &counter, &campaign);
    if (st != COEX_OK) return report(st);
    st = coex_campaign_write(campaign, o.out_dir.c_str());
    coex_campaign_free(campaign);
    if (st == COEX_OK && !o.quiet) std::fprintf(stderr, "wrote %s\n", o.out_dir.c_str());
    return report(st);
}

int cmd_sweep(const CommonOptions& o, const std::optional<std::string>& axis, const std::optional<std::string>& values,
              const std::optional<std::string>& techs) {
    ConfigHandle h;
    coex_status st = build_config(o, {{"sweep.axis", axis}, {"sweep.values", values}, {"sweep.techs", techs}}, h);
    if (st != COEX_OK) return report(st);
    Counter counter;
    st = coex_sweep(h.cfg, o.out_dir.c_str(), o.quiet ? nullptr : on_sweep_progress, &counter);
    if (st == COEX_OK && !o.quiet) std::fprintf(stderr, "wrote %s\n", o.out_dir.c_str());
    return report(st);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coexistence risk simulator for unlicensed 5 GHz deployments"};
    app.set_version_flag("--version", coex_version());
    app.require_subcommand(1);

    CommonOptions run_opts;
    auto* run = app.add_subcommand("run", "simulate one campaign and write per_ap.csv, summary.json, ccdf.csv");
    add_common(run, run_opts);

    CommonOptions sweep_opts;
    std::optional<std::string> axis, values, techs;
    auto* sweep = app.add_subcommand("sweep", "run one campaign per axis value and entrant technology");
    add_common(sweep, sweep_opts);
    sweep->add_option("--axis", axis, "entrant_count, channel_mode, entrant_tech or scenario");
    sweep->add_option("--values", values, "comma-separated axis values");
    sweep->add_option("--techs", techs, "comma-separated entrant technologies");

    std::string run_dir, chart_out;
    auto* chart = app.add_subcommand("chart", "re-derive ccdf.csv from a run directory");
    chart->add_option("--run-dir", run_dir, "directory written by 'run'")->required()->check(CLI::ExistingDirectory);
    chart->add_option("--out-dir", chart_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (*run) return cmd_run(run_opts);
    if (*sweep) return cmd_sweep(sweep_opts, axis, values, techs);
    return report(coex_chart(run_dir.c_str(), chart_out.c_str()));
}
