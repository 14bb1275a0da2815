#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coexrisk/scenario.hpp"

namespace coexrisk {

/// Loss of the form a + b*log10(d_m) + c*log10(f_MHz).
struct LogDistanceCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

struct PropagationParams {
    double carrier_freq_hz = 5.25e9;

    // Multi-wall-and-floor indoor model. The 1 m reference defaults to the
    // free-space loss at the carrier frequency.
    std::optional<double> reference_loss_db;
    double exponent = 2.0;
    double wall_loss_db = 5.0;
    double floor_loss_db = 18.0;

    LogDistanceCoefficients outdoor_los{-27.55, 20.0, 20.0};
    LogDistanceCoefficients outdoor_nlos{-47.55, 40.0, 20.0};

    double shadowing_sigma_indoor_db = 4.0;
    double shadowing_sigma_outdoor_db = 7.0;
    /// Apply shadowing to AP-AP (carrier-sense) links as well as AP-user links.
    bool shadow_cs_links = true;

    double reference_loss() const;
    /// Throws ConfigError on non-finite values, negative sigmas or exponent < 2.
    void validate() const;
};

/// Free-space loss 20*log10(4*pi*d*f/c).
double free_space_loss_db(double distance_m, double freq_hz);

double mwf_loss(double distance_m, int n_walls, int n_floors, const PropagationParams& params);
double outdoor_loss(double distance_m, bool los, const PropagationParams& params);

/// LOS iff the 2-D segment a-b crosses no building footprint interior.
bool los_classify(const Vec3& a, const Vec3& b, const SiteLayout& layout);

struct LinkLoss {
    double loss_db = 0.0;
    double path_db = 0.0;
    double shadow_db = 0.0;
};

/// One zero-mean normal draw per unordered node pair, fixed for a realization.
class ShadowingTable {
public:
    ShadowingTable() = default;
    ShadowingTable(std::size_t n_nodes, double sigma_db, std::uint64_t seed);

    double at(int a, int b) const {
        return values_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
    }
    std::size_t size() const { return n_; }
    double sigma_db() const { return sigma_db_; }

private:
    std::size_t n_ = 0;
    double sigma_db_ = 0.0;
    std::vector<double> values_;
};

ShadowingTable shadowing_table(const Deployment& dep, std::uint64_t seed, const PropagationParams& params);

/// Total loss for every node pair of a deployment; reciprocal by construction.
class LossTable {
public:
    LossTable() = default;
    LossTable(const Deployment& dep, const ShadowingTable& shadowing, const PropagationParams& params);

    const LinkLoss& link(int a, int b) const {
        return links_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
    }
    double loss_db(int a, int b) const { return link(a, b).loss_db; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_ = 0;
    std::vector<LinkLoss> links_;
};

}  // namespace coexrisk
