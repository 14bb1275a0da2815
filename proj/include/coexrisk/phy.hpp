#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "coexrisk/mac.hpp"
#include "coexrisk/radio.hpp"

namespace coexrisk {

/// SINR-to-rate step function. A step applies from its threshold upward.
struct RateStep {
    double min_sinr_db = 0.0;
    double rate_mbps = 0.0;
};

struct RateTable {
    std::vector<RateStep> wifi;
    std::vector<RateStep> lte;

    /// Single-stream 802.11n MCS0-7 and the 15 LTE CQI steps scaled to 75 Mbps.
    static RateTable defaults();

    const std::vector<RateStep>& steps(Technology t) const { return is_lte(t) ? lte : wifi; }
    double rate(Technology t, double sinr_db) const;
    double lowest_rate(Technology t) const;
    void validate() const;
};

/// Rows of "tech, threshold_dB, rate_Mbps" with tech in {wifi, lte}. Techs
/// present in the file replace the corresponding default table.
RateTable load_rate_table(const std::filesystem::path& path, RateTable base = RateTable::defaults());
RateTable parse_rate_table(std::string_view text, RateTable base = RateTable::defaults());

struct Interference {
    double co_mw = 0.0;
    double adj_mw = 0.0;
    double total_mw() const { return co_mw + adj_mw; }
};

/// Interference at the user of AP `x`. An AP inside x's carrier-sense range
/// does not overlap in time with x, unless it is a population-B LTE-U AP.
Interference interference(int x, const World& world, const Neighborhoods& nb, const std::vector<double>& airtimes,
                          const RadioParams& radio);

double sinr_db(int x, const World& world, const Interference& i, const RadioParams& radio);

inline double throughput(double efficiency, double r_deg, double airtime, double rate_mbps) {
    return efficiency * (1.0 - r_deg) * airtime * rate_mbps;
}

struct ModelParams {
    RadioParams radio;
    CsConfig cs;
    LbtParams lbt;
    DutyCycleParams duty;
    RateTable rates = RateTable::defaults();
};

struct ApResult {
    int ap = 0;
    Population population = Population::a;
    Technology technology = Technology::wifi;
    int channel = 0;  // plan index
    int cs_a = 0;     // |A_x|
    int cs_b = 0;     // |B_x|
    double airtime = 0.0;
    double efficiency = 0.0;
    double r_deg = 0.0;
    double sinr_db = 0.0;
    double rate_mbps = 0.0;
    double throughput_mbps = 0.0;
};

struct ThroughputReport {
    std::uint64_t seed = 0;
    std::vector<ApResult> aps;  // in AP id order
};

/// Full per-AP model for one world: neighborhoods, airtime, interference,
/// SINR, rate, MAC efficiency, duty-cycle collisions, throughput.
ThroughputReport evaluate(const World& world, const ModelParams& params);

}  // namespace coexrisk
