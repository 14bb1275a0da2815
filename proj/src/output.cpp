#include "coexrisk/output.hpp"

#include "json.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace coexrisk {

namespace fs = std::filesystem;

namespace {

constexpr double kPercentiles[] = {5.0, 25.0, 50.0, 75.0, 95.0};
constexpr const char* kCcdfConvention = "P(X > value); each series starts at (min - 1e-9, 1)";
constexpr const char* kPerApHeader =
    "realization,seed,world,ap,population,technology,channel,cs_incumbents,cs_entrants,airtime,efficiency,r_deg,"
    "sinr_db,rate_mbps,throughput_mbps,density_per_km2";

std::ofstream open_out(const fs::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

void write_echo(std::ostream& out, const Settings& settings) {
    out << "# coexrisk " << kVersion << '\n';
    for (const auto& [key, value] : config_echo(settings)) out << "# " << key << " = " << value << '\n';
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

double parse_double_field(const std::string& s, const std::string& where) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw RuntimeError(where + ": bad number '" + s + "'");
    return v;
}

template <typename Int>
Int parse_int_field(const std::string& s, const std::string& where) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw RuntimeError(where + ": bad integer '" + s + "'");
    return v;
}

std::string file_token(std::string s) {
    for (char& c : s)
        if (c == ':' || c == '/' || c == ' ') c = '-';
    return s;
}

nlohmann::ordered_json series_json(const RiskSeries& s) {
    nlohmann::ordered_json j;
    j["label"] = s.label;
    j["metric"] = std::string(to_string(s.metric));
    if (s.metric == Metric::degradation) j["baseline"] = std::string(to_string(s.baseline));
    j["samples"] = s.samples.size();
    j["excluded_zero_baseline"] = s.excluded_zero_baseline;
    j["excluded_all_zero"] = s.excluded_all_zero;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (double q : kPercentiles)
        p[format_double(q)] = s.samples.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(percentile(s.samples, q));
    j["percentiles"] = p;
    return j;
}

nlohmann::ordered_json config_json(const Settings& settings) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config_echo(settings)) j[key] = value;
    return j;
}

}  // namespace

std::vector<RiskSeries> campaign_series(const CampaignResult& campaign) {
    std::vector<RiskSeries> out;
    if (campaign.config.wants(BaselineSet::standalone))
        out.push_back(aggregate(campaign, Metric::degradation, BaselineKind::standalone));
    if (campaign.config.wants(BaselineSet::wifi_entrant))
        out.push_back(aggregate(campaign, Metric::degradation, BaselineKind::wifi_entrant));
    out.push_back(aggregate(campaign, Metric::unfairness, BaselineKind::standalone));
    return out;
}

void write_per_ap_csv(const Settings& settings, const CampaignResult& campaign, const fs::path& path) {
    std::ofstream out = open_out(path);
    write_echo(out, settings);
    out << kPerApHeader << '\n';
    const ChannelPlan plan = make_plan(campaign.config.plan);
    for (const RealizationResult& r : campaign.realizations) {
        auto rows = [&](const char* world, const ThroughputReport& report) {
            for (const ApResult& ap : report.aps) {
                out << r.index << ',' << r.seed << ',' << world << ',' << ap.ap << ',' << to_string(ap.population) << ','
                    << to_string(ap.technology) << ',' << plan.channels[static_cast<std::size_t>(ap.channel)].number
                    << ',' << ap.cs_a << ',' << ap.cs_b << ',' << format_double(ap.airtime) << ','
                    << format_double(ap.efficiency) << ',' << format_double(ap.r_deg) << ','
                    << format_double(ap.sinr_db) << ',' << format_double(ap.rate_mbps) << ','
                    << format_double(ap.throughput_mbps) << ',' << format_double(r.density_per_km2) << '\n';
            }
        };
        rows("coexistence", r.coexistence);
        if (r.standalone) rows("standalone", *r.standalone);
        if (r.wifi_entrant) rows("wifi_entrant", *r.wifi_entrant);
    }
    finish(out, path);
}

void write_ccdf_csv(const Settings& settings, const std::vector<RiskSeries>& series, const fs::path& path) {
    std::ofstream out = open_out(path);
    write_echo(out, settings);
    out << "# ccdf = " << kCcdfConvention << '\n';
    out << "series_label,value,ccdf_probability\n";
    for (const RiskSeries& s : series)
        for (const CcdfPoint& p : s.ccdf)
            out << s.label << ',' << format_double(p.value) << ',' << format_double(p.probability) << '\n';
    finish(out, path);
}

void write_summary_json(const Settings& settings, const CampaignResult& campaign, const std::vector<RiskSeries>& series,
                        const fs::path& path) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["seed"] = campaign.config.seed;
    j["realizations"] = campaign.realizations.size();
    j["ccdf_convention"] = kCcdfConvention;
    j["config"] = config_json(settings);
    j["series"] = nlohmann::ordered_json::array();
    for (const RiskSeries& s : series) j["series"].push_back(series_json(s));
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

void write_run(const Settings& settings, const CampaignResult& campaign, const fs::path& out_dir) {
    const std::vector<RiskSeries> series = campaign_series(campaign);
    write_per_ap_csv(settings, campaign, out_dir / "per_ap.csv");
    write_summary_json(settings, campaign, series, out_dir / "summary.json");
    write_ccdf_csv(settings, series, out_dir / "ccdf.csv");
}

StoredRun read_per_ap_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    StoredRun stored;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    const std::string prefix = "# ";
    ChannelPlan plan;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = path.string() + " line " + std::to_string(line_no);
        if (!header_seen) {
            if (line.rfind(prefix, 0) == 0) {
                const auto eq = line.find(" = ");
                if (eq == std::string::npos) continue;  // banner line
                try {
                    set_value(stored.settings, line.substr(2, eq - 2), line.substr(eq + 3));
                } catch (const ConfigError& e) {
                    throw RuntimeError(where + ": " + e.what());
                }
                continue;
            }
            if (line != kPerApHeader) throw RuntimeError(where + ": unexpected per-AP header");
            header_seen = true;
            stored.campaign.config = stored.settings.run;
            plan = make_plan(stored.settings.run.plan);
            continue;
        }
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv(line);
        if (f.size() != 16) throw RuntimeError(where + ": expected 16 fields");
        const auto index = parse_int_field<std::size_t>(f[0], where);
        auto& rs = stored.campaign.realizations;
        if (rs.empty() || rs.back().index != index) {
            if (index != rs.size()) throw RuntimeError(where + ": realizations out of order");
            rs.emplace_back();
            rs.back().index = index;
            rs.back().seed = parse_int_field<std::uint64_t>(f[1], where);
            rs.back().density_per_km2 = parse_double_field(f[15], where);
        }
        RealizationResult& r = rs.back();
        ThroughputReport* report = nullptr;
        if (f[2] == "coexistence") {
            report = &r.coexistence;
        } else if (f[2] == "standalone") {
            if (!r.standalone) r.standalone.emplace();
            report = &*r.standalone;
        } else if (f[2] == "wifi_entrant") {
            if (!r.wifi_entrant) r.wifi_entrant.emplace();
            report = &*r.wifi_entrant;
        } else {
            throw RuntimeError(where + ": unknown world '" + f[2] + "'");
        }
        report->seed = r.seed;
        ApResult ap;
        ap.ap = parse_int_field<int>(f[3], where);
        if (f[4] != "A" && f[4] != "B") throw RuntimeError(where + ": unknown population '" + f[4] + "'");
        ap.population = f[4] == "A" ? Population::a : Population::b;
        try {
            ap.technology = parse_technology(f[5]);
        } catch (const ConfigError& e) {
            throw RuntimeError(where + ": " + e.what());
        }
        const int number = parse_int_field<int>(f[6], where);
        ap.channel = -1;
        for (std::size_t c = 0; c < plan.size(); ++c)
            if (plan.channels[c].number == number) ap.channel = static_cast<int>(c);
        if (ap.channel < 0) throw RuntimeError(where + ": channel " + f[6] + " is not in the plan");
        ap.cs_a = parse_int_field<int>(f[7], where);
        ap.cs_b = parse_int_field<int>(f[8], where);
        ap.airtime = parse_double_field(f[9], where);
        ap.efficiency = parse_double_field(f[10], where);
        ap.r_deg = parse_double_field(f[11], where);
        ap.sinr_db = parse_double_field(f[12], where);
        ap.rate_mbps = parse_double_field(f[13], where);
        ap.throughput_mbps = parse_double_field(f[14], where);
        report->aps.push_back(ap);
    }
    if (!header_seen) throw RuntimeError(path.string() + ": no per-AP header found");
    return stored;
}

void chart(const fs::path& run_dir, const fs::path& out_dir) {
    std::error_code ec;
    if (fs::exists(out_dir, ec) && fs::equivalent(run_dir, out_dir, ec))
        throw ConfigError("chart output directory must differ from the run directory");
    const StoredRun stored = read_per_ap_csv(run_dir / "per_ap.csv");
    write_ccdf_csv(stored.settings, campaign_series(stored.campaign), out_dir / "ccdf.csv");
}

std::vector<std::string> run_sweep(const Settings& settings, const fs::path& out_dir, const SweepProgressFn& progress) {
    const SweepSpec& sweep = settings.sweep;
    if (sweep.values.empty()) throw ConfigError("sweep.values: needs at least one value");

    struct Point {
        RunConfig config;
        std::string file;
    };
    std::vector<Point> points;
    for (const std::string& value : sweep.values) {
        const RunConfig at_value = apply_sweep_value(settings.run, sweep.axis, value);
        const std::string stem = std::string(to_string(sweep.axis)) + "_" + file_token(value);
        if (sweep.axis == SweepAxis::entrant_tech) {
            points.push_back({at_value, stem + ".csv"});
            continue;
        }
        for (Technology t : sweep.techs) {
            RunConfig c = at_value;
            c.tech_b = t;
            points.push_back({c, stem + "_" + std::string(to_string(t)) + ".csv"});
        }
    }

    nlohmann::ordered_json summary;
    summary["version"] = kVersion;
    summary["axis"] = std::string(to_string(sweep.axis));
    summary["ccdf_convention"] = kCcdfConvention;
    summary["config"] = config_json(settings);
    summary["points"] = nlohmann::ordered_json::array();

    std::vector<std::string> files;
    for (std::size_t i = 0; i < points.size(); ++i) {
        Settings at_point = settings;
        at_point.run = points[i].config;
        ProgressFn inner;
        if (progress)
            inner = [&](std::size_t done, std::size_t total) { progress(i, points.size(), done, total); };
        const CampaignResult campaign = run_campaign(at_point.run, inner);
        const std::vector<RiskSeries> series = campaign_series(campaign);
        write_ccdf_csv(at_point, series, out_dir / points[i].file);
        files.push_back(points[i].file);

        nlohmann::ordered_json p;
        p["file"] = points[i].file;
        p["entrants"] = points[i].config.n_pop_b;
        p["entrant_tech"] = std::string(to_string(points[i].config.tech_b));
        p["scenario"] = std::string(to_string(points[i].config.scenario));
        p["plan"] = std::string(to_string(points[i].config.plan));
        p["entrant_selection"] = std::string(to_string(points[i].config.scheme_b));
        p["series"] = nlohmann::ordered_json::array();
        for (const RiskSeries& s : series) p["series"].push_back(series_json(s));
        summary["points"].push_back(p);
    }
    std::ofstream out = open_out(out_dir / "summary.json");
    out << summary.dump(2) << '\n';
    finish(out, out_dir / "summary.json");
    return files;
}

}  // namespace coexrisk
