#pragma once

#include <array>
#include <vector>

#include "coexrisk/propagation.hpp"
#include "coexrisk/radio.hpp"
#include "coexrisk/scenario.hpp"
#include "coexrisk/spectrum.hpp"

namespace coexrisk {

enum class ChannelRelation { co = 0, adjacent = 1 };

/// Carrier-sense thresholds indexed by (sensing tech, sensed tech, co/adjacent).
struct CsConfig {
    std::array<std::array<std::array<double, 2>, 3>, 3> threshold_dbm{};

    CsConfig();
    double& at(Technology sensing, Technology sensed, ChannelRelation rel) {
        return threshold_dbm[static_cast<int>(sensing)][static_cast<int>(sensed)][static_cast<int>(rel)];
    }
    double at(Technology sensing, Technology sensed, ChannelRelation rel) const {
        return threshold_dbm[static_cast<int>(sensing)][static_cast<int>(sensed)][static_cast<int>(rel)];
    }
    void validate() const;
};

/// The APs on air in one evaluation of a realization, with their technology
/// and channel. Vectors are indexed by AP id.
struct World {
    const Deployment* deployment = nullptr;
    const LossTable* losses = nullptr;
    const ChannelPlan* plan = nullptr;
    std::vector<int> active;
    std::vector<Technology> technology;
    std::vector<int> channel;
    std::vector<bool> on_air;

    World(const Deployment& dep, const LossTable& losses, const ChannelPlan& plan);
    void activate(int ap, Technology tech, int channel_index);

    Population population(int ap) const { return deployment->ap(ap).population; }
    /// nullopt when the two channels neither coincide nor are adjacent.
    std::optional<ChannelRelation> relation(int x, int z) const;
};

/// APs within carrier-sense range of each AP, split by population.
struct Neighborhoods {
    std::vector<std::vector<int>> members;
    std::vector<int> count_a;
    std::vector<int> count_b;

    bool contains(int x, int z) const;
    int size(int x) const { return static_cast<int>(members[static_cast<std::size_t>(x)].size()); }
};

Neighborhoods build_neighborhoods(const World& world, const CsConfig& cs, const RadioParams& radio);

struct LbtParams {
    int cw_min = 15;
    int cw_max = 1023;
    double slot_us = 9.0;
    double sifs_us = 16.0;
    double difs_us = 34.0;
    int msdu_bytes = 1500;
    double phy_header_us = 40.0;
    int mac_header_bits = 320;
    double laa_frame_us = 1000.0;

    /// Number of backoff window doublings from CW_min to CW_max.
    int max_backoff_stage() const;
    void validate() const;
};

struct DutyCycleParams {
    double on_time_ms = 100.0;
    void validate() const;
};

/// Frame duration in microseconds. Wi-Fi frames depend on the bit rate.
double frame_time_us(Technology tech, double rate_mbps, const LbtParams& lbt);

struct DcfSolution {
    double tau = 0.0;          // per-slot transmission probability
    double collision_p = 0.0;  // conditional collision probability
    double efficiency = 0.0;   // fraction of time carrying successful frames
};

/// Saturated DCF with `contenders` stations and basic access.
DcfSolution dcf_fixed_point(int contenders, double frame_us, const LbtParams& lbt);

/// 1 / (1 + number of detected APs).
double duty_fraction(int x, const Neighborhoods& nb);
double duty_period_ms(int x, const Neighborhoods& nb, const DutyCycleParams& duty);

/// Population B: 1 / (1 + detected). Population A: equal share among the
/// detected APs, times the idle fraction of each detected LTE-U entrant.
/// That fraction is 0 when the entrant itself detects nobody.
double airtime(int x, const World& world, const Neighborhoods& nb);

/// S_x. `frame_us` holds every AP's frame duration, indexed by AP id.
double lbt_efficiency(int x, const World& world, const Neighborhoods& nb, const LbtParams& lbt,
                      const std::vector<double>& frame_us);

/// Probability that a detected LTE-U entrant starts its ON period during a
/// frame of incumbent LBT AP `x`; 0 for every other AP.
double duty_collision_degradation(int x, const World& world, const Neighborhoods& nb,
                                  const DutyCycleParams& duty, double frame_us_x);

}  // namespace coexrisk
