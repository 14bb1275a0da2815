#include "coexrisk/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace coexrisk {

std::string_view to_string(SweepAxis a) {
    switch (a) {
    case SweepAxis::entrant_count: return "entrant_count";
    case SweepAxis::channel_mode: return "channel_mode";
    case SweepAxis::entrant_tech: return "entrant_tech";
    case SweepAxis::scenario: return "scenario";
    }
    return "?";
}

SweepAxis parse_sweep_axis(std::string_view s) {
    for (SweepAxis a : {SweepAxis::entrant_count, SweepAxis::channel_mode, SweepAxis::entrant_tech, SweepAxis::scenario})
        if (s == to_string(a)) return a;
    throw ConfigError("unknown sweep axis '" + std::string(s) +
                      "' (expected entrant_count, channel_mode, entrant_tech or scenario)");
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::string item;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!item.empty()) out.push_back(std::move(item));
            item.clear();
        } else {
            item += c;
        }
    }
    if (!item.empty()) out.push_back(std::move(item));
    return out;
}

double to_double(std::string_view s) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
        throw ConfigError("expected a finite number, got '" + t + "'");
    return v;
}

template <typename Int>
Int to_int(std::string_view s) {
    const std::string t = trim(s);
    Int v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw ConfigError("expected an integer, got '" + t + "'");
    return v;
}

bool to_bool(std::string_view s) {
    const std::string t = trim(s);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError("expected true or false, got '" + t + "'");
}

std::vector<RateStep> to_rates(std::string_view s) {
    std::vector<RateStep> steps;
    for (const std::string& item : split_list(s)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError("expected threshold_dB:rate_Mbps pairs, got '" + item + "'");
        steps.push_back({to_double(item.substr(0, colon)), to_double(item.substr(colon + 1))});
    }
    return steps;
}

std::string from_rates(const std::vector<RateStep>& steps) {
    std::string out;
    for (const RateStep& s : steps) {
        if (!out.empty()) out += ' ';
        out += format_double(s.min_sinr_db) + ":" + format_double(s.rate_mbps);
    }
    return out;
}

struct Entry {
    std::string key;
    std::function<void(Settings&, std::string_view)> set;
    std::function<std::string(const Settings&)> get;
};

using DoubleRef = std::function<double&(Settings&)>;

Entry number(std::string key, DoubleRef ref, double min = -HUGE_VAL) {
    return {key,
            [ref, min, key](Settings& s, std::string_view v) {
                const double x = to_double(v);
                if (x < min) throw ConfigError("must be >= " + format_double(min));
                ref(s) = x;
            },
            [ref](const Settings& s) { return format_double(ref(const_cast<Settings&>(s))); }};
}

Entry integer(std::string key, std::function<int&(Settings&)> ref, int min) {
    return {key,
            [ref, min](Settings& s, std::string_view v) {
                const int x = to_int<int>(v);
                if (x < min) throw ConfigError("must be >= " + std::to_string(min));
                ref(s) = x;
            },
            [ref](const Settings& s) { return std::to_string(ref(const_cast<Settings&>(s))); }};
}

template <typename E, typename Parse>
Entry enumeration(std::string key, std::function<E&(Settings&)> ref, Parse parse) {
    return {key, [ref, parse](Settings& s, std::string_view v) { ref(s) = parse(trim(v)); },
            [ref](const Settings& s) { return std::string(to_string(ref(const_cast<Settings&>(s)))); }};
}

Entry text(std::string key, std::function<std::string&(Settings&)> ref) {
    return {key, [ref](Settings& s, std::string_view v) { ref(s) = trim(v); },
            [ref](const Settings& s) { return ref(const_cast<Settings&>(s)); }};
}

std::vector<Entry> build_registry() {
    std::vector<Entry> r;
    using T = Technology;

    // [scenario]
    r.push_back(enumeration<ScenarioKind>("scenario.kind", [](Settings& s) -> auto& { return s.run.scenario; },
                                          parse_scenario_kind));
    r.push_back(integer("scenario.incumbents", [](Settings& s) -> auto& { return s.run.n_pop_a; }, 0));
    r.push_back(integer("scenario.entrants", [](Settings& s) -> auto& { return s.run.n_pop_b; }, 0));
    r.push_back(enumeration<Technology>("scenario.incumbent_tech", [](Settings& s) -> auto& { return s.run.tech_a; },
                                        parse_technology));
    r.push_back(enumeration<Technology>("scenario.entrant_tech", [](Settings& s) -> auto& { return s.run.tech_b; },
                                        parse_technology));
    r.push_back(text("scenario.locations_file", [](Settings& s) -> auto& { return s.run.locations_file; }));
    r.push_back(number("scenario.reference_area_km2", [](Settings& s) -> auto& { return s.run.reference_area_km2; }, 0.0));
    r.push_back(integer("scenario.apartments_per_stripe",
                        [](Settings& s) -> auto& { return s.run.indoor.apartments_per_stripe; }, 1));
    r.push_back(number("scenario.apartment_size_m", [](Settings& s) -> auto& { return s.run.indoor.apartment_size_m; }, 0.1));
    r.push_back(number("scenario.apartment_height_m",
                       [](Settings& s) -> auto& { return s.run.indoor.apartment_height_m; }, 0.1));
    r.push_back(number("scenario.corridor_m", [](Settings& s) -> auto& { return s.run.indoor.corridor_m; }, 0.0));
    r.push_back(number("scenario.outdoor_width_m", [](Settings& s) -> auto& { return s.run.outdoor.area_width_m; }, 1.0));
    r.push_back(number("scenario.outdoor_height_m", [](Settings& s) -> auto& { return s.run.outdoor.area_height_m; }, 1.0));
    r.push_back(integer("scenario.synthetic_locations",
                        [](Settings& s) -> auto& { return s.run.outdoor.synthetic_locations; }, 1));
    r.push_back(number("scenario.min_ap_spacing_m", [](Settings& s) -> auto& { return s.run.outdoor.min_ap_spacing_m; }, 0.0));
    r.push_back(integer("scenario.building_count", [](Settings& s) -> auto& { return s.run.outdoor.building_count; }, 1));
    r.push_back(number("scenario.building_depth_m", [](Settings& s) -> auto& { return s.run.outdoor.building_depth_m; }, 1.0));
    r.push_back(number("scenario.building_unit_width_m",
                       [](Settings& s) -> auto& { return s.run.outdoor.apartment_width_m; }, 1.0));
    r.push_back(integer("scenario.building_min_units", [](Settings& s) -> auto& { return s.run.outdoor.min_apartments; }, 1));
    r.push_back(integer("scenario.building_max_units", [](Settings& s) -> auto& { return s.run.outdoor.max_apartments; }, 1));
    r.push_back(integer("scenario.building_min_floors", [](Settings& s) -> auto& { return s.run.outdoor.min_floors; }, 1));
    r.push_back(integer("scenario.building_max_floors", [](Settings& s) -> auto& { return s.run.outdoor.max_floors; }, 1));
    r.push_back(number("scenario.outdoor_floor_height_m",
                       [](Settings& s) -> auto& { return s.run.outdoor.floor_height_m; }, 0.1));
    r.push_back(number("scenario.user_radius_m", [](Settings& s) -> auto& { return s.run.outdoor.user_radius_m; }, 0.0));
    r.push_back(number("scenario.user_height_m", [](Settings& s) -> auto& { return s.run.outdoor.user_height_m; }, 0.0));

    // [spectrum]
    r.push_back(enumeration<PlanMode>("spectrum.plan", [](Settings& s) -> auto& { return s.run.plan; }, parse_plan_mode));
    r.push_back(enumeration<SelectionScheme>("spectrum.incumbent_selection",
                                             [](Settings& s) -> auto& { return s.run.scheme_a; }, parse_selection_scheme));
    r.push_back(enumeration<SelectionScheme>("spectrum.entrant_selection",
                                             [](Settings& s) -> auto& { return s.run.scheme_b; }, parse_selection_scheme));

    // [propagation]
    r.push_back(number("propagation.carrier_freq_hz", [](Settings& s) -> auto& { return s.run.propagation.carrier_freq_hz; },
                       1.0));
    r.push_back({"propagation.reference_loss_db",
                 [](Settings& s, std::string_view v) {
                     if (trim(v) == "auto")
                         s.run.propagation.reference_loss_db.reset();
                     else
                         s.run.propagation.reference_loss_db = to_double(v);
                 },
                 [](const Settings& s) {
                     const auto& v = s.run.propagation.reference_loss_db;
                     return v ? format_double(*v) : std::string("auto");
                 }});
    r.push_back(number("propagation.exponent", [](Settings& s) -> auto& { return s.run.propagation.exponent; }, 2.0));
    r.push_back(number("propagation.wall_loss_db", [](Settings& s) -> auto& { return s.run.propagation.wall_loss_db; }, 0.0));
    r.push_back(number("propagation.floor_loss_db", [](Settings& s) -> auto& { return s.run.propagation.floor_loss_db; }, 0.0));
    r.push_back(number("propagation.los_a", [](Settings& s) -> auto& { return s.run.propagation.outdoor_los.a; }));
    r.push_back(number("propagation.los_b", [](Settings& s) -> auto& { return s.run.propagation.outdoor_los.b; }));
    r.push_back(number("propagation.los_c", [](Settings& s) -> auto& { return s.run.propagation.outdoor_los.c; }));
    r.push_back(number("propagation.nlos_a", [](Settings& s) -> auto& { return s.run.propagation.outdoor_nlos.a; }));
    r.push_back(number("propagation.nlos_b", [](Settings& s) -> auto& { return s.run.propagation.outdoor_nlos.b; }));
    r.push_back(number("propagation.nlos_c", [](Settings& s) -> auto& { return s.run.propagation.outdoor_nlos.c; }));
    r.push_back(number("propagation.sigma_indoor_db",
                       [](Settings& s) -> auto& { return s.run.propagation.shadowing_sigma_indoor_db; }, 0.0));
    r.push_back(number("propagation.sigma_outdoor_db",
                       [](Settings& s) -> auto& { return s.run.propagation.shadowing_sigma_outdoor_db; }, 0.0));
    r.push_back({"propagation.shadow_cs_links",
                 [](Settings& s, std::string_view v) { s.run.propagation.shadow_cs_links = to_bool(v); },
                 [](const Settings& s) { return std::string(s.run.propagation.shadow_cs_links ? "true" : "false"); }});

    // [cs] <sensing>_<co|adj>_<sensed>
    for (T sensing : {T::wifi, T::laa, T::lteu})
        for (ChannelRelation rel : {ChannelRelation::co, ChannelRelation::adjacent})
            for (T sensed : {T::wifi, T::laa, T::lteu}) {
                const std::string key = "cs." + std::string(to_string(sensing)) +
                                        (rel == ChannelRelation::co ? "_co_" : "_adj_") + std::string(to_string(sensed));
                r.push_back(number(key, [=](Settings& s) -> double& { return s.run.model.cs.at(sensing, sensed, rel); }));
            }

    // [mac]
    r.push_back(integer("mac.cw_min", [](Settings& s) -> auto& { return s.run.model.lbt.cw_min; }, 1));
    r.push_back(integer("mac.cw_max", [](Settings& s) -> auto& { return s.run.model.lbt.cw_max; }, 1));
    r.push_back(number("mac.slot_us", [](Settings& s) -> auto& { return s.run.model.lbt.slot_us; }, 0.0));
    r.push_back(number("mac.sifs_us", [](Settings& s) -> auto& { return s.run.model.lbt.sifs_us; }, 0.0));
    r.push_back(number("mac.difs_us", [](Settings& s) -> auto& { return s.run.model.lbt.difs_us; }, 0.0));
    r.push_back(integer("mac.msdu_bytes", [](Settings& s) -> auto& { return s.run.model.lbt.msdu_bytes; }, 1));
    r.push_back(number("mac.phy_header_us", [](Settings& s) -> auto& { return s.run.model.lbt.phy_header_us; }, 0.0));
    r.push_back(integer("mac.mac_header_bits", [](Settings& s) -> auto& { return s.run.model.lbt.mac_header_bits; }, 0));
    r.push_back(number("mac.laa_frame_us", [](Settings& s) -> auto& { return s.run.model.lbt.laa_frame_us; }, 0.0));
    r.push_back(number("mac.lteu_on_ms", [](Settings& s) -> auto& { return s.run.model.duty.on_time_ms; }, 0.0));

    // [phy]
    r.push_back(number("phy.tx_power_dbm", [](Settings& s) -> auto& { return s.run.model.radio.tx_power_dbm; }));
    r.push_back(number("phy.noise_density_dbm_hz", [](Settings& s) -> auto& { return s.run.model.radio.noise_density_dbm_hz; }));
    r.push_back(number("phy.bandwidth_hz", [](Settings& s) -> auto& { return s.run.model.radio.bandwidth_hz; }, 1.0));
    r.push_back(number("phy.nf_wifi_db", [](Settings& s) -> auto& { return s.run.model.radio.noise_figure_wifi_db; }));
    r.push_back(number("phy.nf_lte_db", [](Settings& s) -> auto& { return s.run.model.radio.noise_figure_lte_db; }));
    r.push_back(number("phy.aclr_wifi_db", [](Settings& s) -> auto& { return s.run.model.radio.aclr_wifi_db; }));
    r.push_back(number("phy.aclr_lte_db", [](Settings& s) -> auto& { return s.run.model.radio.aclr_lte_db; }));
    r.push_back(number("phy.acs_wifi_ap_db", [](Settings& s) -> auto& { return s.run.model.radio.acs_wifi_ap_db; }));
    r.push_back(number("phy.acs_wifi_user_db", [](Settings& s) -> auto& { return s.run.model.radio.acs_wifi_user_db; }));
    r.push_back(number("phy.acs_lte_ap_db", [](Settings& s) -> auto& { return s.run.model.radio.acs_lte_ap_db; }));
    r.push_back(number("phy.acs_lte_user_db", [](Settings& s) -> auto& { return s.run.model.radio.acs_lte_user_db; }));
    r.push_back(text("phy.rate_table", [](Settings& s) -> auto& { return s.run.rate_table_file; }));
    r.push_back({"phy.wifi_rates", [](Settings& s, std::string_view v) { s.run.model.rates.wifi = to_rates(v); },
                 [](const Settings& s) { return from_rates(s.run.model.rates.wifi); }});
    r.push_back({"phy.lte_rates", [](Settings& s, std::string_view v) { s.run.model.rates.lte = to_rates(v); },
                 [](const Settings& s) { return from_rates(s.run.model.rates.lte); }});

    // [engine]
    r.push_back(integer("engine.realizations", [](Settings& s) -> auto& { return s.run.realizations; }, 0));
    r.push_back({"engine.seed", [](Settings& s, std::string_view v) { s.run.seed = to_int<std::uint64_t>(v); },
                 [](const Settings& s) { return std::to_string(s.run.seed); }});
    r.push_back(integer("engine.parallelism", [](Settings& s) -> auto& { return s.run.parallelism; }, 1));
    r.push_back(enumeration<BaselineSet>("engine.baseline", [](Settings& s) -> auto& { return s.run.baselines; },
                                         parse_baseline_set));

    // [sweep]
    r.push_back(enumeration<SweepAxis>("sweep.axis", [](Settings& s) -> auto& { return s.sweep.axis; }, parse_sweep_axis));
    r.push_back({"sweep.values", [](Settings& s, std::string_view v) { s.sweep.values = split_list(v); },
                 [](const Settings& s) {
                     std::string out;
                     for (const auto& v : s.sweep.values) out += (out.empty() ? "" : ",") + v;
                     return out;
                 }});
    r.push_back({"sweep.techs",
                 [](Settings& s, std::string_view v) {
                     std::vector<Technology> techs;
                     for (const auto& t : split_list(v)) techs.push_back(parse_technology(t));
                     if (techs.empty()) throw ConfigError("needs at least one technology");
                     s.sweep.techs = std::move(techs);
                 },
                 [](const Settings& s) {
                     std::string out;
                     for (Technology t : s.sweep.techs) out += (out.empty() ? "" : ",") + std::string(to_string(t));
                     return out;
                 }});
    return r;
}

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = build_registry();
    return r;
}

const Entry& find_entry(std::string_view key) {
    for (const Entry& e : registry())
        if (e.key == key) return e;
    throw ConfigError("unknown config key '" + std::string(key) + "'");
}

}  // namespace

void set_value(Settings& s, std::string_view key, std::string_view value) {
    const Entry& e = find_entry(key);
    try {
        e.set(s, value);
    } catch (const ConfigError& err) {
        throw ConfigError(e.key + ": " + err.what());
    }
}

std::string get_value(const Settings& s, std::string_view key) { return find_entry(key).get(s); }

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const Entry& e : registry()) k.push_back(e.key);
        return k;
    }();
    return keys;
}

std::vector<std::pair<std::string, std::string>> config_echo(const Settings& s) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const Entry& e : registry()) {
        // Thread count never changes results, so outputs stay byte-identical across it.
        if (e.key == "engine.parallelism") continue;
        out.emplace_back(e.key, e.get(s));
    }
    return out;
}

Settings parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
    }
    Settings s;
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            if (!body.data().empty()) throw ConfigError("config key '" + section + "' is outside a section");
            continue;
        }
        for (const auto& [key, value] : body) set_value(s, section + "." + key, value.data());
    }
    for (std::string* path : {&s.run.locations_file, &s.run.rate_table_file})
        if (!path->empty() && std::filesystem::path(*path).is_relative() && !base_dir.empty())
            *path = (base_dir / *path).lexically_normal().string();
    load_external_tables(s);
    s.run.validate();
    return s;
}

Settings load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str(), path.parent_path());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void load_external_tables(Settings& s) {
    if (s.run.rate_table_file.empty()) return;
    try {
        s.run.model.rates = load_rate_table(s.run.rate_table_file, s.run.model.rates);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("phy.rate_table: ") + e.what());
    }
}

RunConfig apply_sweep_value(const RunConfig& base, SweepAxis axis, std::string_view value) {
    RunConfig c = base;
    const std::string v = trim(value);
    try {
        switch (axis) {
        case SweepAxis::entrant_count: {
            const int n = to_int<int>(v);
            if (n < 0) throw ConfigError("must be >= 0");
            c.n_pop_b = n;
            break;
        }
        case SweepAxis::channel_mode: {
            // "<plan>" or "<plan>:<entrant selection>"
            const auto colon = v.find(':');
            c.plan = parse_plan_mode(v.substr(0, colon));
            if (colon != std::string::npos) c.scheme_b = parse_selection_scheme(v.substr(colon + 1));
            break;
        }
        case SweepAxis::entrant_tech: c.tech_b = parse_technology(v); break;
        case SweepAxis::scenario: c.scenario = parse_scenario_kind(v); break;
        }
    } catch (const ConfigError& e) {
        throw ConfigError("sweep value '" + v + "' for axis " + std::string(to_string(axis)) + ": " + e.what());
    }
    c.validate();
    return c;
}

}  // namespace coexrisk
