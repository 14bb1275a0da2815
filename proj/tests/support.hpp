#pragma once

// Small hand-placed networks for MAC and PHY tests. Losses come from the
// wall-free indoor model with zero shadowing, so a target loss maps to a
// distance.

#include <cmath>
#include <memory>
#include <vector>

#include "coexrisk/phy.hpp"

namespace testnet {

using namespace coexrisk;

inline double distance_for_loss(double loss_db, const PropagationParams& p = {}) {
    return std::pow(10.0, (loss_db - p.reference_loss()) / (10.0 * p.exponent));
}

struct ApSpec {
    Population population = Population::a;
    Technology technology = Technology::wifi;
    Vec3 position;
    Vec3 user;
    int channel = 0;
};

class Net {
public:
    Net(const std::vector<ApSpec>& aps, PlanMode mode = PlanMode::single_1) : plan_(make_plan(mode)) {
        dep_.layout = dual_stripe_layout(false);
        const int n = static_cast<int>(aps.size());
        for (const ApSpec& a : aps) (a.population == Population::a ? dep_.n_pop_a : dep_.n_pop_b)++;
        for (int i = 0; i < n; ++i) {
            Node node;
            node.id = i;
            node.population = aps[static_cast<std::size_t>(i)].population;
            node.technology = aps[static_cast<std::size_t>(i)].technology;
            node.position = aps[static_cast<std::size_t>(i)].position;
            dep_.nodes.push_back(node);
        }
        for (int i = 0; i < n; ++i) {
            Node node;
            node.id = n + i;
            node.kind = NodeKind::user;
            node.population = aps[static_cast<std::size_t>(i)].population;
            node.technology = aps[static_cast<std::size_t>(i)].technology;
            node.position = aps[static_cast<std::size_t>(i)].user;
            node.associated_ap = i;
            dep_.nodes.push_back(node);
        }
        losses_ = LossTable(dep_, ShadowingTable(dep_.nodes.size(), 0.0, 0), PropagationParams{});
        world_ = std::make_unique<World>(dep_, losses_, plan_);
        for (int i = 0; i < n; ++i)
            world_->activate(i, aps[static_cast<std::size_t>(i)].technology, aps[static_cast<std::size_t>(i)].channel);
    }
    Net(const Net&) = delete;
    Net& operator=(const Net&) = delete;

    const World& world() const { return *world_; }
    const Deployment& deployment() const { return dep_; }
    const LossTable& losses() const { return losses_; }
    Neighborhoods neighborhoods(const CsConfig& cs = {}, const RadioParams& radio = {}) const {
        return build_neighborhoods(*world_, cs, radio);
    }

private:
    Deployment dep_;
    LossTable losses_;
    ChannelPlan plan_;
    std::unique_ptr<World> world_;
};

/// Neighborhoods from an explicit "x hears z" matrix.
inline Neighborhoods hand_neighborhoods(const World& world, const std::vector<std::vector<bool>>& hears) {
    const std::size_t n = hears.size();
    Neighborhoods nb;
    nb.members.resize(n);
    nb.count_a.assign(n, 0);
    nb.count_b.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            if (x == z || !hears[x][z]) continue;
            nb.members[x].push_back(static_cast<int>(z));
            (world.population(static_cast<int>(z)) == Population::a ? nb.count_a[x] : nb.count_b[x])++;
        }
    return nb;
}

/// APs far apart (out of every CS range), each with its user 1 m away.
inline std::vector<ApSpec> spread(const std::vector<std::pair<Population, Technology>>& kinds, double spacing_m = 5000.0) {
    std::vector<ApSpec> out;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        const double x = spacing_m * static_cast<double>(i);
        out.push_back({kinds[i].first, kinds[i].second, {x, 0, 1.5}, {x + 1.0, 0, 1.5}, 0});
    }
    return out;
}

}  // namespace testnet
