#include "coexrisk/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "coexrisk/rng.hpp"

namespace coexrisk {

namespace {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Vec3 uniform_in(Rng& rng, const Box& box) {
    Vec3 p;
    p.x = uniform(rng, box.lo.x, box.hi.x);
    p.y = uniform(rng, box.lo.y, box.hi.y);
    p.z = uniform(rng, box.lo.z, box.hi.z);
    return p;
}

double orient(double ax, double ay, double bx, double by, double cx, double cy) {
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

bool properly_intersects(const Vec3& a, const Vec3& b, const Wall& w) {
    const double d1 = orient(w.x0, w.y0, w.x1, w.y1, a.x, a.y);
    const double d2 = orient(w.x0, w.y0, w.x1, w.y1, b.x, b.y);
    const double d3 = orient(a.x, a.y, b.x, b.y, w.x0, w.y0);
    const double d4 = orient(a.x, a.y, b.x, b.y, w.x1, w.y1);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double distance_to_rect(double x, double y, const Rect& r) {
    const double dx = std::max({r.x0 - x, 0.0, x - r.x1});
    const double dy = std::max({r.y0 - y, 0.0, y - r.y1});
    return std::hypot(dx, dy);
}

bool interiors_overlap(const Rect& a, const Rect& b) {
    return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

void check_counts(int n_pop_a, int n_pop_b) {
    if (n_pop_a < 0 || n_pop_b < 0) {
        throw ConfigError("population counts must be non-negative (got " + std::to_string(n_pop_a) +
                          ", " + std::to_string(n_pop_b) + ")");
    }
}

}  // namespace

double Deployment::density_per_km2(std::optional<double> area_km2) const {
    const double area = area_km2.value_or(layout.study_area.area() / 1e6);
    return area > 0.0 ? ap_count() / area : 0.0;
}

SiteLayout dual_stripe_layout(bool walls, const IndoorGeometry& geo) {
    SiteLayout layout;
    layout.kind = walls ? ScenarioKind::indoor : ScenarioKind::indoor_no_walls;
    layout.internal_walls_present = walls;
    layout.floor_height_m = geo.apartment_height_m;

    const double a = geo.apartment_size_m;
    const double length = a * geo.apartments_per_stripe;
    const double stripe_y0[2] = {0.0, a + geo.corridor_m};

    for (double y0 : stripe_y0) {
        for (int c = 0; c < geo.apartments_per_stripe; ++c) {
            layout.apartments.push_back(
                Box{{c * a, y0, 0.0}, {(c + 1) * a, y0 + a, geo.apartment_height_m}});
        }
        if (walls) {
            for (int c = 0; c <= geo.apartments_per_stripe; ++c) {
                layout.walls.push_back(Wall{c * a, y0, c * a, y0 + a});
            }
            layout.walls.push_back(Wall{0.0, y0, length, y0});
            layout.walls.push_back(Wall{0.0, y0 + a, length, y0 + a});
        }
    }
    layout.study_area = Rect{0.0, 0.0, length, 2 * a + geo.corridor_m};
    return layout;
}

Deployment generate_indoor(std::uint64_t seed, int n_pop_a, int n_pop_b, bool walls,
                           const IndoorGeometry& geo) {
    check_counts(n_pop_a, n_pop_b);
    Deployment dep;
    dep.layout = dual_stripe_layout(walls, geo);
    dep.seed = seed;
    dep.n_pop_a = n_pop_a;
    dep.n_pop_b = n_pop_b;

    const int n_apartments = static_cast<int>(dep.layout.apartments.size());
    const int capacity = 2 * n_apartments;
    if (n_pop_a + n_pop_b > capacity) {
        throw ConfigError("indoor capacity exceeded: " + std::to_string(n_pop_a + n_pop_b) +
                          " AP-user pairs requested, at most " + std::to_string(capacity) +
                          " fit (2 per apartment)");
    }

    Rng rng(seed);
    std::vector<int> occupancy(static_cast<std::size_t>(n_apartments), 0);
    const int total = n_pop_a + n_pop_b;
    std::vector<Vec3> ap_pos, user_pos;
    ap_pos.reserve(static_cast<std::size_t>(total));
    user_pos.reserve(static_cast<std::size_t>(total));

    std::vector<int> candidates;
    for (int k = 0; k < total; ++k) {
        // Empty apartments first, then apartments holding exactly one pair.
        for (int level = 0; level < 2; ++level) {
            candidates.clear();
            for (int i = 0; i < n_apartments; ++i) {
                if (occupancy[static_cast<std::size_t>(i)] == level) candidates.push_back(i);
            }
            if (!candidates.empty()) break;
        }
        const int apt = candidates[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(candidates.size()) - 1))];
        ++occupancy[static_cast<std::size_t>(apt)];
        const Box& box = dep.layout.apartments[static_cast<std::size_t>(apt)];
        ap_pos.push_back(uniform_in(rng, box));
        user_pos.push_back(uniform_in(rng, box));
    }

    for (int i = 0; i < total; ++i) {
        Node n;
        n.id = i;
        n.kind = NodeKind::ap;
        n.population = i < n_pop_a ? Population::a : Population::b;
        n.position = ap_pos[static_cast<std::size_t>(i)];
        dep.nodes.push_back(n);
    }
    for (int i = 0; i < total; ++i) {
        Node n;
        n.id = total + i;
        n.kind = NodeKind::user;
        n.population = i < n_pop_a ? Population::a : Population::b;
        n.position = user_pos[static_cast<std::size_t>(i)];
        n.associated_ap = i;
        dep.nodes.push_back(n);
    }
    return dep;
}

std::vector<Vec3> parse_locations(std::string_view text) {
    std::vector<Vec3> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        double values[2];
        int n_values = 0;
        std::size_t i = 0;
        while (true) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ','))
                ++i;
            if (i >= line.size()) break;
            if (n_values == 2) {
                throw ConfigError("location file line " + std::to_string(line_no) +
                                  ": expected exactly two numbers \"x y\"");
            }
            const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), values[n_values]);
            if (ec != std::errc{} || !std::isfinite(values[n_values])) {
                throw ConfigError("location file line " + std::to_string(line_no) +
                                  ": cannot parse a number from '" + std::string(line.substr(i)) + "'");
            }
            i = static_cast<std::size_t>(ptr - line.data());
            ++n_values;
        }
        if (n_values == 0) continue;
        if (n_values != 2) {
            throw ConfigError("location file line " + std::to_string(line_no) +
                              ": expected exactly two numbers \"x y\"");
        }
        out.push_back(Vec3{values[0], values[1], 0.0});
    }
    return out;
}

std::vector<Vec3> load_locations(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open location file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_locations(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::vector<Vec3> synthetic_locations(std::uint64_t seed, const OutdoorGeometry& geo) {
    Rng rng(seed);
    std::vector<Vec3> pts;
    const long max_attempts = 100000L * std::max(1, geo.synthetic_locations);
    for (long attempt = 0; static_cast<int>(pts.size()) < geo.synthetic_locations; ++attempt) {
        if (attempt >= max_attempts) {
            throw ConfigError("cannot place " + std::to_string(geo.synthetic_locations) +
                              " synthetic locations with the requested minimum spacing");
        }
        const Vec3 p{uniform(rng, 0.0, geo.area_width_m), uniform(rng, 0.0, geo.area_height_m), 0.0};
        const bool too_close = std::any_of(pts.begin(), pts.end(), [&](const Vec3& q) {
            return distance_2d(p, q) < geo.min_ap_spacing_m;
        });
        if (!too_close) pts.push_back(p);
    }
    return pts;
}

Deployment generate_outdoor(std::uint64_t seed, std::span<const Vec3> locations, int n_pop_a,
                            int n_pop_b, const OutdoorGeometry& geo) {
    check_counts(n_pop_a, n_pop_b);
    if (geo.building_count < 1) throw ConfigError("outdoor layout needs at least one building");

    Deployment dep;
    dep.seed = seed;
    dep.n_pop_a = n_pop_a;
    dep.n_pop_b = n_pop_b;
    SiteLayout& layout = dep.layout;
    layout.kind = ScenarioKind::outdoor;
    layout.study_area = Rect{0.0, 0.0, geo.area_width_m, geo.area_height_m};
    layout.floor_height_m = geo.floor_height_m;

    std::vector<Vec3> locs;
    if (locations.empty()) {
        locs = synthetic_locations(splitmix64(seed ^ 0x5EEDull), geo);
    } else {
        locs.assign(locations.begin(), locations.end());
        for (std::size_t i = 0; i < locs.size(); ++i) {
            if (!layout.study_area.contains(locs[i].x, locs[i].y)) {
                throw ConfigError("location " + std::to_string(i + 1) + " lies outside the " +
                                  std::to_string(geo.area_width_m) + " m x " +
                                  std::to_string(geo.area_height_m) + " m study area");
            }
        }
    }
    const int total = n_pop_a + n_pop_b;
    if (total > static_cast<int>(locs.size())) {
        throw ConfigError("too few AP locations: " + std::to_string(total) + " APs requested, " +
                          std::to_string(locs.size()) + " locations available");
    }

    Rng rng(seed);

    // Buildings: non-overlapping, never covering an AP location.
    const long max_attempts = 200L * geo.building_count;
    for (long attempt = 0;
         static_cast<int>(layout.buildings.size()) < geo.building_count && attempt < max_attempts;
         ++attempt) {
        const int apartments = uniform_int(rng, geo.min_apartments, geo.max_apartments);
        const int floors = uniform_int(rng, geo.min_floors, geo.max_floors);
        const bool along_x = uniform_int(rng, 0, 1) == 0;
        const double length = apartments * geo.apartment_width_m;
        const double w = along_x ? length : geo.building_depth_m;
        const double h = along_x ? geo.building_depth_m : length;
        if (w > geo.area_width_m || h > geo.area_height_m) continue;
        const double x0 = uniform(rng, 0.0, geo.area_width_m - w);
        const double y0 = uniform(rng, 0.0, geo.area_height_m - h);
        const Rect fp{x0, y0, x0 + w, y0 + h};
        const bool overlaps = std::any_of(layout.buildings.begin(), layout.buildings.end(),
                                          [&](const Building& b) { return interiors_overlap(fp, b.footprint); });
        const bool covers_ap = std::any_of(locs.begin(), locs.end(),
                                           [&](const Vec3& p) { return fp.contains(p.x, p.y); });
        if (!overlaps && !covers_ap) layout.buildings.push_back(Building{fp, floors});
    }
    if (layout.buildings.empty()) throw RuntimeError("outdoor layout: no building could be placed");

    std::vector<std::size_t> order(locs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Vec3> ap_pos;
    for (int i = 0; i < total; ++i) {
        Vec3 p = locs[order[static_cast<std::size_t>(i)]];
        std::size_t nearest = 0;
        double best = distance_to_rect(p.x, p.y, layout.buildings[0].footprint);
        for (std::size_t b = 1; b < layout.buildings.size(); ++b) {
            const double d = distance_to_rect(p.x, p.y, layout.buildings[b].footprint);
            if (d < best) {
                best = d;
                nearest = b;
            }
        }
        p.z = geo.floor_height_m * layout.buildings[nearest].floors;
        ap_pos.push_back(p);
    }

    std::vector<Vec3> user_pos;
    for (const Vec3& ap : ap_pos) {
        bool placed = false;
        for (int attempt = 0; attempt < 100000 && !placed; ++attempt) {
            const double r = geo.user_radius_m * std::sqrt(uniform(rng, 0.0, 1.0));
            const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
            const Vec3 u{ap.x + r * std::cos(theta), ap.y + r * std::sin(theta), geo.user_height_m};
            if (!layout.study_area.contains(u.x, u.y)) continue;
            const bool indoors = std::any_of(layout.buildings.begin(), layout.buildings.end(),
                                             [&](const Building& b) { return b.footprint.contains_open(u.x, u.y); });
            if (indoors) continue;
            user_pos.push_back(u);
            placed = true;
        }
        if (!placed) throw RuntimeError("outdoor layout: cannot place a user near an AP");
    }

    for (int i = 0; i < total; ++i) {
        Node n;
        n.id = i;
        n.kind = NodeKind::ap;
        n.population = i < n_pop_a ? Population::a : Population::b;
        n.position = ap_pos[static_cast<std::size_t>(i)];
        dep.nodes.push_back(n);
    }
    for (int i = 0; i < total; ++i) {
        Node n;
        n.id = total + i;
        n.kind = NodeKind::user;
        n.population = i < n_pop_a ? Population::a : Population::b;
        n.position = user_pos[static_cast<std::size_t>(i)];
        n.associated_ap = i;
        dep.nodes.push_back(n);
    }
    return dep;
}

Crossings wall_crossings(const Vec3& a, const Vec3& b, const SiteLayout& layout) {
    if (!layout.internal_walls_present || layout.kind == ScenarioKind::outdoor) return {};
    Crossings c;
    for (const Wall& w : layout.walls) {
        if (properly_intersects(a, b, w)) ++c.walls;
    }
    const double lo = std::min(a.z, b.z);
    const double hi = std::max(a.z, b.z);
    const double h = layout.floor_height_m;
    for (double plane = std::floor(lo / h + 1.0) * h; plane < hi; plane += h) {
        if (plane > lo) ++c.floors;
    }
    return c;
}

Deployment with_technologies(Deployment dep, Technology tech_a, Technology tech_b) {
    for (Node& n : dep.nodes) n.technology = n.population == Population::a ? tech_a : tech_b;
    return dep;
}

}  // namespace coexrisk
