#include "coexrisk/mac.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coexrisk {

CsConfig::CsConfig() {
    for (auto& sensed : threshold_dbm)
        for (auto& rel : sensed) rel = {-62.0, -62.0};
    at(Technology::wifi, Technology::wifi, ChannelRelation::co) = -82.0;
}

void CsConfig::validate() const {
    for (const auto& sensed : threshold_dbm)
        for (const auto& rel : sensed)
            for (double v : rel)
                if (!std::isfinite(v)) throw ConfigError("carrier-sense thresholds must be finite");
}

World::World(const Deployment& dep, const LossTable& loss_table, const ChannelPlan& channel_plan)
    : deployment(&dep),
      losses(&loss_table),
      plan(&channel_plan),
      technology(static_cast<std::size_t>(dep.ap_count()), Technology::wifi),
      channel(static_cast<std::size_t>(dep.ap_count()), -1),
      on_air(static_cast<std::size_t>(dep.ap_count()), false) {}

void World::activate(int ap, Technology tech, int channel_index) {
    const auto i = static_cast<std::size_t>(ap);
    if (!on_air[i]) active.push_back(ap);
    on_air[i] = true;
    technology[i] = tech;
    channel[i] = channel_index;
}

std::optional<ChannelRelation> World::relation(int x, int z) const {
    const int cx = channel[static_cast<std::size_t>(x)];
    const int cz = channel[static_cast<std::size_t>(z)];
    if (cx == cz) return ChannelRelation::co;
    if (adjacent(*plan, cx, cz)) return ChannelRelation::adjacent;
    return std::nullopt;
}

bool Neighborhoods::contains(int x, int z) const {
    const auto& m = members[static_cast<std::size_t>(x)];
    return std::find(m.begin(), m.end(), z) != m.end();
}

Neighborhoods build_neighborhoods(const World& world, const CsConfig& cs, const RadioParams& radio) {
    const auto n = static_cast<std::size_t>(world.deployment->ap_count());
    Neighborhoods nb;
    nb.members.resize(n);
    nb.count_a.assign(n, 0);
    nb.count_b.assign(n, 0);
    for (int x : world.active) {
        const Technology tx_x = world.technology[static_cast<std::size_t>(x)];
        for (int z : world.active) {
            if (z == x) continue;
            const auto rel = world.relation(x, z);
            if (!rel) continue;
            const Technology tech_z = world.technology[static_cast<std::size_t>(z)];
            double rx_dbm = radio.tx_power_dbm - world.losses->loss_db(x, z);
            if (*rel == ChannelRelation::adjacent)
                rx_dbm -= linear_to_db(acir_linear(radio, tech_z, tx_x, RxRole::ap));
            if (rx_dbm >= cs.at(tx_x, tech_z, *rel)) {
                nb.members[static_cast<std::size_t>(x)].push_back(z);
                if (world.population(z) == Population::a)
                    ++nb.count_a[static_cast<std::size_t>(x)];
                else
                    ++nb.count_b[static_cast<std::size_t>(x)];
            }
        }
    }
    return nb;
}

int LbtParams::max_backoff_stage() const {
    int stage = 0;
    for (long w = cw_min + 1; w < cw_max + 1; w *= 2) ++stage;
    return stage;
}

void LbtParams::validate() const {
    if (cw_min < 1 || cw_max < cw_min) throw ConfigError("mac: need 1 <= cw_min <= cw_max");
    if ((cw_min + 1L) << max_backoff_stage() != cw_max + 1L)
        throw ConfigError("mac: (cw_max + 1) / (cw_min + 1) must be a power of two");
    if (!(slot_us > 0 && sifs_us > 0 && difs_us > 0 && phy_header_us > 0 && laa_frame_us > 0 &&
          msdu_bytes > 0 && mac_header_bits >= 0))
        throw ConfigError("mac: durations and frame sizes must be positive");
    if (std::abs(difs_us - (sifs_us + 2.0 * slot_us)) > 1e-9)
        throw ConfigError("mac: difs_us must equal sifs_us + 2 * slot_us");
}

void DutyCycleParams::validate() const {
    if (!(on_time_ms > 0.0) || !std::isfinite(on_time_ms)) throw ConfigError("mac: lteu_on_ms must be positive");
}

double frame_time_us(Technology tech, double rate_mbps, const LbtParams& lbt) {
    switch (tech) {
    case Technology::wifi:
        return lbt.phy_header_us + (lbt.mac_header_bits + 8.0 * lbt.msdu_bytes) / rate_mbps;
    case Technology::laa: return lbt.laa_frame_us;
    case Technology::lteu: return 0.0;
    }
    return 0.0;
}

DcfSolution dcf_fixed_point(int contenders, double frame_us, const LbtParams& lbt) {
    if (contenders < 1) throw RuntimeError("DCF needs at least one contender");
    const double w = lbt.cw_min + 1.0;
    const int m = lbt.max_backoff_stage();
    const double n = contenders;

    auto tau_of_p = [&](double p) {
        double geometric = 0.0;
        double term = 1.0;
        for (int k = 0; k < m; ++k) {
            geometric += term;
            term *= 2.0 * p;
        }
        return 2.0 / (1.0 + w + p * w * geometric);
    };
    auto p_of_tau = [&](double tau) { return 1.0 - std::pow(1.0 - tau, n - 1.0); };

    // tau - tau_of_p(p_of_tau(tau)) is increasing in tau; bisect for its root.
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid - tau_of_p(p_of_tau(mid)) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    DcfSolution s;
    s.tau = 0.5 * (lo + hi);
    s.collision_p = p_of_tau(s.tau);

    const double p_tr = 1.0 - std::pow(1.0 - s.tau, n);
    const double p_s = n * s.tau * std::pow(1.0 - s.tau, n - 1.0) / p_tr;
    const double t_success = frame_us + lbt.sifs_us + lbt.difs_us;
    const double t_collision = frame_us + lbt.difs_us;
    const double slot_mean =
        (1.0 - p_tr) * lbt.slot_us + p_tr * p_s * t_success + p_tr * (1.0 - p_s) * t_collision;
    s.efficiency = p_s * p_tr * frame_us / slot_mean;
    if (!std::isfinite(s.efficiency) || s.efficiency <= 0.0 || s.efficiency > 1.0)
        throw RuntimeError("DCF fixed point did not converge (" + std::to_string(contenders) + " contenders)");
    return s;
}

double duty_fraction(int x, const Neighborhoods& nb) { return 1.0 / (1.0 + nb.size(x)); }

double duty_period_ms(int x, const Neighborhoods& nb, const DutyCycleParams& duty) {
    return duty.on_time_ms / duty_fraction(x, nb);
}

double airtime(int x, const World& world, const Neighborhoods& nb) {
    // Entrants and incumbents facing LBT entrants take an equal share. An
    // incumbent keeps an equal share among its own population and gets the
    // time left idle by each duty-cycled entrant it detects.
    if (world.population(x) == Population::b) return duty_fraction(x, nb);
    double idle_share = 1.0;
    int sharing = 0;
    for (int y : nb.members[static_cast<std::size_t>(x)]) {
        if (world.population(y) == Population::b && !is_lbt(world.technology[static_cast<std::size_t>(y)]))
            idle_share *= 1.0 - duty_fraction(y, nb);
        else
            ++sharing;
    }
    return idle_share / (1.0 + sharing);
}

double lbt_efficiency(int x, const World& world, const Neighborhoods& nb, const LbtParams& lbt,
                      const std::vector<double>& frame_us) {
    if (!is_lbt(world.technology[static_cast<std::size_t>(x)])) return 1.0;
    int contenders = 1;
    double frame_sum = frame_us[static_cast<std::size_t>(x)];
    for (int y : nb.members[static_cast<std::size_t>(x)]) {
        if (!is_lbt(world.technology[static_cast<std::size_t>(y)])) continue;
        ++contenders;
        frame_sum += frame_us[static_cast<std::size_t>(y)];
    }
    return dcf_fixed_point(contenders, frame_sum / contenders, lbt).efficiency;
}

double duty_collision_degradation(int x, const World& world, const Neighborhoods& nb,
                                  const DutyCycleParams& duty, double frame_us_x) {
    if (world.population(x) != Population::a || !is_lbt(world.technology[static_cast<std::size_t>(x)])) return 0.0;
    double clean = 1.0;
    for (int y : nb.members[static_cast<std::size_t>(x)]) {
        if (world.population(y) != Population::b || is_lbt(world.technology[static_cast<std::size_t>(y)])) continue;
        const double period_us = duty_period_ms(y, nb, duty) * 1000.0;
        clean *= 1.0 - std::min(1.0, frame_us_x / period_us);
    }
    return 1.0 - clean;
}

}  // namespace coexrisk
