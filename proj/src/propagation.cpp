#include "coexrisk/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "coexrisk/rng.hpp"

namespace coexrisk {

namespace {

constexpr double kMinIndoorDistance = 0.1;
constexpr double kMinOutdoorDistance = 1.0;

bool finite(const LogDistanceCoefficients& c) {
    return std::isfinite(c.a) && std::isfinite(c.b) && std::isfinite(c.c);
}

// Open-interval parameter range where coordinate p0 + t*dp lies strictly in (lo, hi).
bool strict_range(double p0, double dp, double lo, double hi, double& t_lo, double& t_hi) {
    if (dp == 0.0) {
        if (p0 <= lo || p0 >= hi) return false;
        t_lo = -INFINITY;
        t_hi = INFINITY;
        return true;
    }
    double t0 = (lo - p0) / dp;
    double t1 = (hi - p0) / dp;
    if (t0 > t1) std::swap(t0, t1);
    t_lo = t0;
    t_hi = t1;
    return true;
}

}  // namespace

double PropagationParams::reference_loss() const {
    return reference_loss_db.value_or(free_space_loss_db(1.0, carrier_freq_hz));
}

void PropagationParams::validate() const {
    const bool ok = std::isfinite(carrier_freq_hz) && carrier_freq_hz > 0.0 &&
                    std::isfinite(reference_loss()) && std::isfinite(exponent) &&
                    std::isfinite(wall_loss_db) && std::isfinite(floor_loss_db) && finite(outdoor_los) &&
                    finite(outdoor_nlos) && std::isfinite(shadowing_sigma_indoor_db) &&
                    std::isfinite(shadowing_sigma_outdoor_db);
    if (!ok) throw ConfigError("propagation parameters must be finite");
    if (shadowing_sigma_indoor_db < 0.0 || shadowing_sigma_outdoor_db < 0.0)
        throw ConfigError("shadowing sigma must be >= 0");
    if (exponent < 2.0) throw ConfigError("indoor path loss exponent must be >= 2");
}

double free_space_loss_db(double distance_m, double freq_hz) {
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * freq_hz / kSpeedOfLight);
}

double mwf_loss(double distance_m, int n_walls, int n_floors, const PropagationParams& params) {
    const double d = std::max(distance_m, kMinIndoorDistance);
    return params.reference_loss() + 10.0 * params.exponent * std::log10(d) +
           n_walls * params.wall_loss_db + n_floors * params.floor_loss_db;
}

double outdoor_loss(double distance_m, bool los, const PropagationParams& params) {
    const double d = std::max(distance_m, kMinOutdoorDistance);
    const LogDistanceCoefficients& k = los ? params.outdoor_los : params.outdoor_nlos;
    return k.a + k.b * std::log10(d) + k.c * std::log10(params.carrier_freq_hz / 1e6);
}

bool los_classify(const Vec3& a, const Vec3& b, const SiteLayout& layout) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    for (const Building& bld : layout.buildings) {
        const Rect& r = bld.footprint;
        double xl, xh, yl, yh;
        if (!strict_range(a.x, dx, r.x0, r.x1, xl, xh)) continue;
        if (!strict_range(a.y, dy, r.y0, r.y1, yl, yh)) continue;
        // Strictly-inside points are those with t in (open_lo, open_hi); need one in [0, 1].
        const double open_lo = std::max(xl, yl);
        const double open_hi = std::min(xh, yh);
        if (open_lo < open_hi && open_lo < 1.0 && open_hi > 0.0) return false;
    }
    return true;
}

ShadowingTable::ShadowingTable(std::size_t n_nodes, double sigma_db, std::uint64_t seed)
    : n_(n_nodes), sigma_db_(sigma_db), values_(n_nodes * n_nodes, 0.0) {
    if (sigma_db <= 0.0) return;
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, sigma_db);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double v = normal(rng);
            values_[i * n_ + j] = v;
            values_[j * n_ + i] = v;
        }
    }
}

ShadowingTable shadowing_table(const Deployment& dep, std::uint64_t seed, const PropagationParams& params) {
    const double sigma = dep.layout.kind == ScenarioKind::outdoor ? params.shadowing_sigma_outdoor_db
                                                                  : params.shadowing_sigma_indoor_db;
    return ShadowingTable(dep.nodes.size(), sigma, seed);
}

LossTable::LossTable(const Deployment& dep, const ShadowingTable& shadowing, const PropagationParams& params)
    : n_(dep.nodes.size()), links_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            const Node& a = dep.nodes[i];
            const Node& b = dep.nodes[j];
            const double d = distance(a.position, b.position);
            LinkLoss link;
            if (dep.layout.kind == ScenarioKind::outdoor) {
                link.path_db = outdoor_loss(d, los_classify(a.position, b.position, dep.layout), params);
            } else {
                const Crossings c = wall_crossings(a.position, b.position, dep.layout);
                link.path_db = mwf_loss(d, c.walls, c.floors, params);
            }
            const bool cs_link = a.kind == NodeKind::ap && b.kind == NodeKind::ap;
            if (!cs_link || params.shadow_cs_links) {
                link.shadow_db = shadowing.at(static_cast<int>(i), static_cast<int>(j));
            }
            link.loss_db = link.path_db + link.shadow_db;
            links_[i * n_ + j] = link;
            links_[j * n_ + i] = link;
        }
    }
}

}  // namespace coexrisk
