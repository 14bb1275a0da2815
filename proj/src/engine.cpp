#include "coexrisk/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "coexrisk/rng.hpp"

namespace coexrisk {

std::string_view to_string(BaselineSet b) {
    switch (b) {
    case BaselineSet::standalone: return "standalone";
    case BaselineSet::wifi_entrant: return "wifi_entrant";
    case BaselineSet::both: return "both";
    }
    return "?";
}

BaselineSet parse_baseline_set(std::string_view s) {
    if (s == "standalone") return BaselineSet::standalone;
    if (s == "wifi_entrant") return BaselineSet::wifi_entrant;
    if (s == "both") return BaselineSet::both;
    throw ConfigError("unknown baseline '" + std::string(s) + "' (expected standalone, wifi_entrant or both)");
}

int RunConfig::effective_realizations() const {
    if (realizations > 0) return realizations;
    return scenario == ScenarioKind::outdoor ? 1500 : 3000;
}

void RunConfig::validate() const {
    if (n_pop_a < 0) throw ConfigError("scenario.incumbents: must be >= 0");
    if (n_pop_b < 0) throw ConfigError("scenario.entrants: must be >= 0");
    if (realizations < 0) throw ConfigError("engine.realizations: must be >= 1");
    if (parallelism < 1) throw ConfigError("engine.parallelism: must be >= 1");
    if (scheme_a == SelectionScheme::sense)
        throw ConfigError("spectrum.incumbent_selection: incumbents select random or single");
    if (scenario != ScenarioKind::outdoor) {
        const int capacity = 2 * 2 * indoor.apartments_per_stripe;
        if (n_pop_a + n_pop_b > capacity)
            throw ConfigError("scenario.entrants: " + std::to_string(n_pop_a + n_pop_b) + " APs exceed the indoor capacity of " +
                              std::to_string(capacity));
    } else {
        if (outdoor.building_count < 1) throw ConfigError("scenario.building_count: must be >= 1");
        if (locations_file.empty() && n_pop_a + n_pop_b > outdoor.synthetic_locations)
            throw ConfigError("scenario.entrants: " + std::to_string(n_pop_a + n_pop_b) + " APs exceed the " +
                              std::to_string(outdoor.synthetic_locations) + " outdoor locations");
    }
    if (reference_area_km2 < 0.0) throw ConfigError("scenario.reference_area_km2: must be >= 0");
    propagation.validate();
    model.radio.validate();
    model.cs.validate();
    model.lbt.validate();
    model.duty.validate();
    model.rates.validate();
}

namespace {

ChannelAssignment assign(SelectionScheme scheme, std::span<const int> aps, const ChannelAssignment* incumbents,
                         const ChannelPlan& plan, std::uint64_t seed) {
    switch (scheme) {
    case SelectionScheme::random: return assign_random(aps, plan, seed);
    case SelectionScheme::single: return assign_single(aps, plan);
    case SelectionScheme::sense: return assign_sense(aps, *incumbents, plan, seed);
    }
    return {};
}

std::vector<Vec3> load_configured_locations(const RunConfig& config) {
    if (config.scenario != ScenarioKind::outdoor || config.locations_file.empty()) return {};
    return load_locations(config.locations_file);
}

}  // namespace

RealizationResult run_realization(const RunConfig& config, std::size_t index) {
    return run_realization(config, index, load_configured_locations(config));
}

RealizationResult run_realization(const RunConfig& config, std::size_t index, const std::vector<Vec3>& locations) {
    const std::uint64_t seed = child_seed(config.seed, index);
    const std::uint64_t deployment_seed = stream_seed(seed, Stream::deployment);

    Deployment dep = config.scenario == ScenarioKind::outdoor
                         ? generate_outdoor(deployment_seed, locations, config.n_pop_a, config.n_pop_b, config.outdoor)
                         : generate_indoor(deployment_seed, config.n_pop_a, config.n_pop_b,
                                           config.scenario == ScenarioKind::indoor, config.indoor);
    dep = with_technologies(std::move(dep), config.tech_a, config.tech_b);
    dep.seed = seed;

    const ShadowingTable shadowing = shadowing_table(dep, stream_seed(seed, Stream::shadowing), config.propagation);
    const LossTable losses(dep, shadowing, config.propagation);
    const ChannelPlan plan = make_plan(config.plan);

    std::vector<int> aps_a, aps_b;
    for (int i = 0; i < dep.ap_count(); ++i) (i < dep.n_pop_a ? aps_a : aps_b).push_back(i);
    const ChannelAssignment chan_a =
        assign(config.scheme_a, aps_a, nullptr, plan, stream_seed(seed, Stream::channels_a));
    const ChannelAssignment chan_b =
        assign(config.scheme_b, aps_b, &chan_a, plan, stream_seed(seed, Stream::channels_b));

    auto make_world = [&](bool with_b, Technology tech_b) {
        World w(dep, losses, plan);
        for (int ap : aps_a) w.activate(ap, config.tech_a, chan_a.channel.at(ap));
        if (with_b)
            for (int ap : aps_b) w.activate(ap, tech_b, chan_b.channel.at(ap));
        return w;
    };

    RealizationResult out;
    out.index = index;
    out.seed = seed;
    out.density_per_km2 =
        dep.density_per_km2(config.reference_area_km2 > 0.0 ? std::optional(config.reference_area_km2) : std::nullopt);
    out.coexistence = evaluate(make_world(true, config.tech_b), config.model);
    if (config.wants(BaselineSet::standalone)) out.standalone = evaluate(make_world(false, config.tech_b), config.model);
    if (config.wants(BaselineSet::wifi_entrant))
        out.wifi_entrant = evaluate(make_world(true, Technology::wifi), config.model);
    return out;
}

CampaignResult run_campaign(const RunConfig& config, const ProgressFn& progress) {
    config.validate();
    const std::vector<Vec3> locations = load_configured_locations(config);
    const auto total = static_cast<std::size_t>(config.effective_realizations());

    CampaignResult result;
    result.config = config;
    result.realizations.resize(total);
    std::vector<std::exception_ptr> errors(total);

    std::atomic<std::size_t> next{0};
    std::size_t done = 0;
    std::mutex progress_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                result.realizations[i] = run_realization(config, i, locations);
            } catch (...) {
                errors[i] = std::current_exception();
            }
            // Counted under the lock so callbacks see increasing values.
            std::lock_guard lock(progress_mutex);
            ++done;
            if (progress) progress(done, total);
        }
    };

    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.parallelism), total);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < total; ++i) {
        if (!errors[i]) continue;
        const std::string where = "realization " + std::to_string(i) + ": ";
        try {
            std::rethrow_exception(errors[i]);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        } catch (const std::exception& e) {
            throw RuntimeError(where + e.what());
        }
    }
    return result;
}

}  // namespace coexrisk
