#include "coexrisk/phy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace coexrisk {

namespace {

// CQI 1-15 spectral efficiencies (bit/s/Hz) and their SINR entry points.
constexpr double kLteEfficiency[15] = {0.1523, 0.2344, 0.3770, 0.6016, 0.8770, 1.1758, 1.4766, 1.9141,
                                       2.4063, 2.7305, 3.3223, 3.9023, 4.5234, 5.1152, 5.5547};
constexpr double kLteThresholdDb[15] = {-6.7, -4.7, -2.3, 0.2, 2.4, 4.3, 5.9, 8.1,
                                        10.3, 11.7, 14.1, 16.3, 18.7, 21.0, 22.7};
constexpr double kLteTopRateMbps = 75.0;

void validate_steps(const std::vector<RateStep>& steps, std::string_view name) {
    if (steps.empty()) throw ConfigError("rate table '" + std::string(name) + "' is empty");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!std::isfinite(steps[i].min_sinr_db) || !std::isfinite(steps[i].rate_mbps) || steps[i].rate_mbps <= 0.0)
            throw ConfigError("rate table '" + std::string(name) + "': rates must be finite and positive");
        if (i > 0 && steps[i].min_sinr_db <= steps[i - 1].min_sinr_db)
            throw ConfigError("rate table '" + std::string(name) + "': thresholds must be strictly increasing");
        if (i > 0 && steps[i].rate_mbps < steps[i - 1].rate_mbps)
            throw ConfigError("rate table '" + std::string(name) + "': rates must be non-decreasing");
    }
}

}  // namespace

RateTable RateTable::defaults() {
    RateTable t;
    const double wifi_rates[8] = {6.5, 13.0, 19.5, 26.0, 39.0, 52.0, 58.5, 65.0};
    const double wifi_thresholds[8] = {2.0, 5.0, 9.0, 11.0, 15.0, 18.0, 20.0, 25.0};
    for (int i = 0; i < 8; ++i) t.wifi.push_back({wifi_thresholds[i], wifi_rates[i]});
    for (int i = 0; i < 15; ++i)
        t.lte.push_back({kLteThresholdDb[i], kLteTopRateMbps * kLteEfficiency[i] / kLteEfficiency[14]});
    return t;
}

double RateTable::rate(Technology t, double sinr) const {
    double r = 0.0;
    for (const RateStep& s : steps(t)) {
        if (sinr >= s.min_sinr_db)
            r = s.rate_mbps;
        else
            break;
    }
    return r;
}

double RateTable::lowest_rate(Technology t) const { return steps(t).front().rate_mbps; }

void RateTable::validate() const {
    validate_steps(wifi, "wifi");
    validate_steps(lte, "lte");
}

RateTable parse_rate_table(std::string_view text, RateTable base) {
    std::vector<RateStep> wifi, lte;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::string tech, threshold, rate;
        if (!(fields >> tech)) continue;
        std::string extra;
        if (!(fields >> threshold >> rate) || (fields >> extra)) {
            throw ConfigError("rate table line " + std::to_string(line_no) +
                              ": expected \"tech, threshold_dB, rate_Mbps\"");
        }
        RateStep step;
        const auto parse = [&](const std::string& s, double& out) {
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw ConfigError("rate table line " + std::to_string(line_no) + ": bad number '" + s + "'");
        };
        parse(threshold, step.min_sinr_db);
        parse(rate, step.rate_mbps);
        if (tech == "wifi")
            wifi.push_back(step);
        else if (tech == "lte")
            lte.push_back(step);
        else
            throw ConfigError("rate table line " + std::to_string(line_no) + ": unknown tech '" + tech +
                              "' (expected wifi or lte)");
    }
    if (!wifi.empty()) base.wifi = std::move(wifi);
    if (!lte.empty()) base.lte = std::move(lte);
    base.validate();
    return base;
}

RateTable load_rate_table(const std::filesystem::path& path, RateTable base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open rate table " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_rate_table(ss.str(), std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

Interference interference(int x, const World& world, const Neighborhoods& nb, const std::vector<double>& airtimes,
                          const RadioParams& radio) {
    Interference out;
    const int user = world.deployment->ap_count() + x;
    const Technology rx_tech = world.technology[static_cast<std::size_t>(x)];
    const double p_mw = dbm_to_mw(radio.tx_power_dbm);
    for (int z : world.active) {
        if (z == x) continue;
        const auto rel = world.relation(x, z);
        if (!rel) continue;
        const Technology tech_z = world.technology[static_cast<std::size_t>(z)];
        // Detected APs share time with x, except duty-cycled entrants.
        if (nb.contains(x, z) && !(world.population(z) == Population::b && !is_lbt(tech_z))) continue;
        const double received =
            p_mw * airtimes[static_cast<std::size_t>(z)] / db_to_linear(world.losses->loss_db(user, z));
        if (*rel == ChannelRelation::co)
            out.co_mw += received;
        else
            out.adj_mw += received / acir_linear(radio, tech_z, rx_tech, RxRole::user);
    }
    return out;
}

double sinr_db(int x, const World& world, const Interference& i, const RadioParams& radio) {
    const int user = world.deployment->ap_count() + x;
    const Technology tech = world.technology[static_cast<std::size_t>(x)];
    const double signal_mw = dbm_to_mw(radio.tx_power_dbm - world.losses->loss_db(user, x));
    const double noise_mw = dbm_to_mw(noise_floor_dbm(radio, tech));
    return linear_to_db(signal_mw / (i.total_mw() + noise_mw));
}

ThroughputReport evaluate(const World& world, const ModelParams& params) {
    const auto n = static_cast<std::size_t>(world.deployment->ap_count());
    const Neighborhoods nb = build_neighborhoods(world, params.cs, params.radio);

    std::vector<double> airtimes(n, 0.0);
    for (int x : world.active) airtimes[static_cast<std::size_t>(x)] = airtime(x, world, nb);

    std::vector<int> order = world.active;
    std::sort(order.begin(), order.end());

    ThroughputReport report;
    report.seed = world.deployment->seed;
    std::vector<double> frame_us(n, 0.0);
    for (int x : order) {
        ApResult r;
        r.ap = x;
        r.population = world.population(x);
        r.technology = world.technology[static_cast<std::size_t>(x)];
        r.channel = world.channel[static_cast<std::size_t>(x)];
        r.cs_a = nb.count_a[static_cast<std::size_t>(x)];
        r.cs_b = nb.count_b[static_cast<std::size_t>(x)];
        r.airtime = airtimes[static_cast<std::size_t>(x)];
        r.sinr_db = sinr_db(x, world, interference(x, world, nb, airtimes, params.radio), params.radio);
        r.rate_mbps = params.rates.rate(r.technology, r.sinr_db);
        // An AP below the lowest rate threshold still occupies the medium at the lowest rate.
        const double frame_rate = r.rate_mbps > 0.0 ? r.rate_mbps : params.rates.lowest_rate(r.technology);
        frame_us[static_cast<std::size_t>(x)] = frame_time_us(r.technology, frame_rate, params.lbt);
        report.aps.push_back(r);
    }

    for (ApResult& r : report.aps) {
        r.efficiency = lbt_efficiency(r.ap, world, nb, params.lbt, frame_us);
        r.r_deg = duty_collision_degradation(r.ap, world, nb, params.duty, frame_us[static_cast<std::size_t>(r.ap)]);
        r.throughput_mbps = throughput(r.efficiency, r.r_deg, r.airtime, r.rate_mbps);
        if (!(r.airtime >= 0.0 && r.airtime <= 1.0) || !(r.efficiency > 0.0 && r.efficiency <= 1.0) ||
            !(r.r_deg >= 0.0 && r.r_deg < 1.0)) {
            throw RuntimeError("model term out of range at AP " + std::to_string(r.ap));
        }
    }
    return report;
}

}  // namespace coexrisk
