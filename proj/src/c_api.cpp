#include "coexrisk/coexrisk.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "coexrisk/output.hpp"

struct coex_config {
    coexrisk::Settings settings;
};

struct coex_campaign {
    coexrisk::Settings settings;
    coexrisk::CampaignResult result;
};

struct coex_series {
    coexrisk::RiskSeries series;
};

namespace {

thread_local std::string last_error;

coex_status fail(coex_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs `fn`, mapping exceptions to status codes.
template <typename Fn>
coex_status guarded(Fn&& fn) {
    last_error.clear();
    try {
        fn();
        return COEX_OK;
    } catch (const coexrisk::ConfigError& e) {
        return fail(COEX_CONFIG_ERROR, e.what());
    } catch (const coexrisk::IoError& e) {
        return fail(COEX_IO_ERROR, e.what());
    } catch (const coexrisk::RuntimeError& e) {
        return fail(COEX_RUNTIME_ERROR, e.what());
    } catch (const std::bad_alloc&) {
        return fail(COEX_RUNTIME_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return fail(COEX_RUNTIME_ERROR, e.what());
    } catch (...) {
        return fail(COEX_RUNTIME_ERROR, "unknown error");
    }
}

coex_status copy_out(const std::string& value, char* buf, size_t buf_size, size_t* needed) {
    if (needed) *needed = value.size() + 1;
    if (!buf) return buf_size == 0 ? COEX_OK : fail(COEX_INVALID_ARGUMENT, "buffer is null");
    if (buf_size < value.size() + 1) return fail(COEX_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(buf, value.c_str(), value.size() + 1);
    return COEX_OK;
}

coex_status null_arg(const char* name) { return fail(COEX_INVALID_ARGUMENT, std::string(name) + " is null"); }

// Validated copy of the settings, with table files loaded.
coexrisk::Settings ready(const coexrisk::Settings& s) {
    coexrisk::Settings copy = s;
    coexrisk::load_external_tables(copy);
    copy.run.validate();
    return copy;
}

}  // namespace

extern "C" {

const char* coex_version(void) { return coexrisk::kVersion; }

const char* coex_last_error(void) { return last_error.c_str(); }

coex_status coex_config_new(coex_config** out) {
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new coex_config{}; });
}

coex_status coex_config_load(const char* path, coex_config** out) {
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new coex_config{coexrisk::load_config(path)}; });
}

coex_status coex_config_parse(const char* text, const char* base_dir, coex_config** out) {
    if (!text) return null_arg("text");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        *out = new coex_config{coexrisk::parse_config(text, base_dir ? std::filesystem::path(base_dir)
                                                                       : std::filesystem::path())};
    });
}

coex_status coex_config_set(coex_config* cfg, const char* key, const char* value) {
    if (!cfg) return null_arg("cfg");
    if (!key) return null_arg("key");
    if (!value) return null_arg("value");
    return guarded([&] { coexrisk::set_value(cfg->settings, key, value); });
}

coex_status coex_config_get(const coex_config* cfg, const char* key, char* buf, size_t buf_size, size_t* needed) {
    if (!cfg) return null_arg("cfg");
    if (!key) return null_arg("key");
    std::string value;
    const coex_status st = guarded([&] { value = coexrisk::get_value(cfg->settings, key); });
    return st == COEX_OK ? copy_out(value, buf, buf_size, needed) : st;
}

coex_status coex_config_echo(const coex_config* cfg, char* buf, size_t buf_size, size_t* needed) {
    if (!cfg) return null_arg("cfg");
    std::string text;
    const coex_status st = guarded([&] {
        for (const auto& [key, value] : coexrisk::config_echo(cfg->settings)) text += key + " = " + value + "\n";
    });
    return st == COEX_OK ? copy_out(text, buf, buf_size, needed) : st;
}

coex_status coex_config_validate(coex_config* cfg) {
    if (!cfg) return null_arg("cfg");
    return guarded([&] { cfg->settings = ready(cfg->settings); });
}

void coex_config_free(coex_config* cfg) { delete cfg; }

coex_status coex_campaign_run(const coex_config* cfg, coex_progress_fn progress, void* user, coex_campaign** out) {
    if (!cfg) return null_arg("cfg");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto c = std::make_unique<coex_campaign>();
        c->settings = ready(cfg->settings);
        coexrisk::ProgressFn fn;
        if (progress) fn = [progress, user](std::size_t done, std::size_t total) { progress(done, total, user); };
        c->result = coexrisk::run_campaign(c->settings.run, fn);
        *out = c.release();
    });
}

size_t coex_campaign_size(const coex_campaign* c) { return c ? c->result.realizations.size() : 0; }

coex_status coex_campaign_write(const coex_campaign* c, const char* out_dir) {
    if (!c) return null_arg("campaign");
    if (!out_dir) return null_arg("out_dir");
    return guarded([&] { coexrisk::write_run(c->settings, c->result, out_dir); });
}

void coex_campaign_free(coex_campaign* c) { delete c; }

coex_status coex_series_new(const coex_campaign* c, coex_metric metric, coex_baseline baseline, coex_series** out) {
    if (!c) return null_arg("campaign");
    if (!out) return null_arg("out");
    *out = nullptr;
    if (metric != COEX_METRIC_DEGRADATION && metric != COEX_METRIC_UNFAIRNESS)
        return fail(COEX_INVALID_ARGUMENT, "unknown metric");
    if (baseline != COEX_BASELINE_STANDALONE && baseline != COEX_BASELINE_WIFI_ENTRANT)
        return fail(COEX_INVALID_ARGUMENT, "unknown baseline");
    return guarded([&] {
        const auto m = metric == COEX_METRIC_DEGRADATION ? coexrisk::Metric::degradation : coexrisk::Metric::unfairness;
        const auto b = baseline == COEX_BASELINE_STANDALONE ? coexrisk::BaselineKind::standalone
                                                            : coexrisk::BaselineKind::wifi_entrant;
        *out = new coex_series{coexrisk::aggregate(c->result, m, b)};
    });
}

size_t coex_series_size(const coex_series* s) { return s ? s->series.samples.size() : 0; }

const double* coex_series_samples(const coex_series* s) {
    return s && !s->series.samples.empty() ? s->series.samples.data() : nullptr;
}

coex_status coex_series_percentile(const coex_series* s, double p, double* out) {
    if (!s) return null_arg("series");
    if (!out) return null_arg("out");
    if (!(p >= 0.0 && p <= 100.0)) return fail(COEX_INVALID_ARGUMENT, "percentile must be in [0, 100]");
    if (s->series.samples.empty()) return fail(COEX_RUNTIME_ERROR, "series has no samples");
    return guarded([&] { *out = coexrisk::percentile(s->series.samples, p); });
}

coex_status coex_series_ccdf(const coex_series* s, double value, double* out) {
    if (!s) return null_arg("series");
    if (!out) return null_arg("out");
    if (s->series.samples.empty()) return fail(COEX_RUNTIME_ERROR, "series has no samples");
    last_error.clear();
    std::size_t above = 0;
    for (double v : s->series.samples)
        if (v > value) ++above;
    *out = static_cast<double>(above) / static_cast<double>(s->series.samples.size());
    return COEX_OK;
}

size_t coex_series_excluded_zero_baseline(const coex_series* s) { return s ? s->series.excluded_zero_baseline : 0; }

size_t coex_series_excluded_all_zero(const coex_series* s) { return s ? s->series.excluded_all_zero : 0; }

const char* coex_series_label(const coex_series* s) { return s ? s->series.label.c_str() : ""; }

void coex_series_free(coex_series* s) { delete s; }

coex_status coex_sweep(const coex_config* cfg, const char* out_dir, coex_sweep_progress_fn progress, void* user) {
    if (!cfg) return null_arg("cfg");
    if (!out_dir) return null_arg("out_dir");
    return guarded([&] {
        coexrisk::SweepProgressFn fn;
        if (progress)
            fn = [progress, user](std::size_t point, std::size_t points, std::size_t done, std::size_t total) {
                progress(point, points, done, total, user);
            };
        coexrisk::run_sweep(ready(cfg->settings), out_dir, fn);
    });
}

coex_status coex_chart(const char* run_dir, const char* out_dir) {
    if (!run_dir) return null_arg("run_dir");
    if (!out_dir) return null_arg("out_dir");
    return guarded([&] { coexrisk::chart(run_dir, out_dir); });
}

double coex_acir_db(double aclr_db, double acs_db) { return coexrisk::acir_db(aclr_db, acs_db); }

double coex_noise_floor_dbm(double noise_density_dbm_hz, double bandwidth_hz, double noise_figure_db) {
    return coexrisk::noise_floor_dbm(noise_density_dbm_hz, bandwidth_hz, noise_figure_db);
}

coex_status coex_jain(const double* values, size_t n, double* out) {
    if (!out) return null_arg("out");
    if (n > 0 && !values) return null_arg("values");
    const std::vector<double> v(values, values + n);
    for (double x : v)
        if (!(x >= 0.0)) return fail(COEX_INVALID_ARGUMENT, "values must be non-negative");
    const auto j = coexrisk::jain(v);
    if (!j) return fail(COEX_INVALID_ARGUMENT, "Jain index is undefined for an empty or all-zero set");
    last_error.clear();
    *out = *j;
    return COEX_OK;
}

}  // extern "C"
