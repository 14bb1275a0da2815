#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "coexrisk/propagation.hpp"

using namespace coexrisk;

namespace {

double fspl_1m(double f_hz) { return 20.0 * std::log10(4.0 * std::numbers::pi * f_hz / 299792458.0); }

SiteLayout one_building() {
    SiteLayout layout;
    layout.kind = ScenarioKind::outdoor;
    layout.study_area = Rect{0, 0, 346, 389};
    layout.buildings.push_back(Building{Rect{100, 100, 150, 120}, 4});
    return layout;
}

}  // namespace

TEST_CASE("reference loss at 1 m is the free-space loss") {
    const PropagationParams p;
    CHECK(mwf_loss(1.0, 0, 0, p) == doctest::Approx(fspl_1m(5.25e9)).epsilon(1e-12));
    CHECK(mwf_loss(1.0, 0, 0, p) == doctest::Approx(46.85).epsilon(0.01 / 46.85));
    CHECK(std::fabs(mwf_loss(1.0, 0, 0, p) - 46.8) < 0.1);
}

TEST_CASE("multi-wall loss arithmetic") {
    PropagationParams p;
    p.exponent = 2.0;
    p.wall_loss_db = 5.0;
    const double ref = p.reference_loss();
    CHECK(mwf_loss(10.0, 2, 0, p) == doctest::Approx(ref + 20.0 + 10.0));
    CHECK(std::fabs(mwf_loss(10.0, 2, 0, p) - 76.8) < 0.1);
    for (double d : {0.5, 3.0, 27.0})
        CHECK(mwf_loss(d, 1, 0, p) - mwf_loss(d, 0, 0, p) == doctest::Approx(p.wall_loss_db));
    CHECK(mwf_loss(7.0, 0, 1, p) - mwf_loss(7.0, 0, 0, p) == doctest::Approx(18.0));
    CHECK(mwf_loss(0.01, 0, 0, p) == mwf_loss(0.1, 0, 0, p));
    p.reference_loss_db = 40.0;
    CHECK(mwf_loss(1.0, 0, 0, p) == doctest::Approx(40.0));
}

TEST_CASE("multi-wall loss is monotone in every argument") {
    const PropagationParams p;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ud(0.0, 200.0);
    std::uniform_int_distribution<int> un(0, 8);
    for (int i = 0; i < 20000; ++i) {
        const double d1 = ud(rng), d2 = ud(rng);
        const int w1 = un(rng), w2 = un(rng), f1 = un(rng), f2 = un(rng);
        const double lo = mwf_loss(std::min(d1, d2), std::min(w1, w2), std::min(f1, f2), p);
        const double hi = mwf_loss(std::max(d1, d2), std::max(w1, w2), std::max(f1, f2), p);
        REQUIRE(lo <= hi);
    }
}

TEST_CASE("outdoor loss arithmetic") {
    const PropagationParams p;
    CHECK(outdoor_loss(100.0, true, p) == doctest::Approx(-27.55 + 40.0 + 20.0 * std::log10(5250.0)));
    CHECK(std::fabs(outdoor_loss(100.0, true, p) - 86.85) < 0.01);
    CHECK(outdoor_loss(1.0, true, p) == doctest::Approx(-27.55 + 20.0 * std::log10(5250.0)));
    CHECK(outdoor_loss(10.0, false, p) == doctest::Approx(outdoor_loss(10.0, true, p)));
    for (double d = 10.0; d <= 300.0; d += 1.0) REQUIRE(outdoor_loss(d, false, p) >= outdoor_loss(d, true, p));
}

TEST_CASE("LOS classification") {
    const SiteLayout layout = one_building();
    CHECK(los_classify({10, 10, 3}, {300, 10, 1.5}, layout));
    CHECK_FALSE(los_classify({90, 110, 3}, {160, 110, 1.5}, layout));
    CHECK_FALSE(los_classify({125, 90, 3}, {125, 130, 1.5}, layout));
    // Grazing the edge y = 100 or touching a corner stays LOS.
    CHECK(los_classify({90, 100, 3}, {160, 100, 1.5}, layout));
    CHECK(los_classify({90, 90, 3}, {110, 110, 1.5}, layout) == false);
    CHECK(los_classify({140, 90, 3}, {160, 110, 1.5}, layout));
    CHECK_FALSE(los_classify({140, 95, 3}, {160, 115, 1.5}, layout));
    CHECK(los_classify({140, 90, 3}, {150, 100, 1.5}, layout));
    CHECK(los_classify({150, 90, 3}, {150, 130, 1.5}, layout));
}

TEST_CASE("LOS classification agrees with dense sampling") {
    const SiteLayout layout = one_building();
    const Rect& r = layout.buildings[0].footprint;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(60.0, 190.0);
    for (int trial = 0; trial < 3000; ++trial) {
        const Vec3 a{u(rng), u(rng), 0}, b{u(rng), u(rng), 0};
        bool inside = false;
        for (int k = 0; k <= 4000 && !inside; ++k) {
            const double t = k / 4000.0;
            inside = r.contains_open(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
        }
        if (inside) REQUIRE_FALSE(los_classify(a, b, layout));
        REQUIRE(los_classify(a, b, layout) == los_classify(b, a, layout));
    }
}

TEST_CASE("shadowing table statistics") {
    // 448 nodes give 100128 unordered pairs.
    const ShadowingTable t(448, 4.0, 12345);
    double sum = 0.0, sum2 = 0.0;
    std::size_t n = 0;
    for (int i = 0; i < 448; ++i)
        for (int j = i + 1; j < 448; ++j) {
            const double v = t.at(i, j);
            REQUIRE(v == t.at(j, i));
            sum += v;
            sum2 += v * v;
            ++n;
        }
    const double mean = sum / static_cast<double>(n);
    const double sd = std::sqrt(sum2 / static_cast<double>(n) - mean * mean);
    CHECK(std::fabs(mean) <= 0.05);
    CHECK(std::fabs(sd / 4.0 - 1.0) <= 0.02);
    for (int i = 0; i < 448; ++i) CHECK(t.at(i, i) == 0.0);
}

TEST_CASE("shadowing draws are independent across consecutive pairs") {
    // 2x2 contingency of signs of consecutive draws; chi-square with 1 dof.
    const int n = 300;
    const ShadowingTable t(n, 7.0, 99);
    std::vector<double> v;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) v.push_back(t.at(i, j));
    double c[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t k = 0; k + 1 < v.size(); k += 2) c[v[k] > 0][v[k + 1] > 0] += 1;
    const double total = c[0][0] + c[0][1] + c[1][0] + c[1][1];
    double chi2 = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double e = (c[a][0] + c[a][1]) * (c[0][b] + c[1][b]) / total;
            chi2 += (c[a][b] - e) * (c[a][b] - e) / e;
        }
    CHECK(chi2 < 10.83);  // p = 0.001
}

TEST_CASE("zero sigma gives a zero table and seeds reproduce") {
    const ShadowingTable z(20, 0.0, 1);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) CHECK(z.at(i, j) == 0.0);
    const ShadowingTable a(30, 4.0, 5), b(30, 4.0, 5), c(30, 4.0, 6);
    bool differs = false;
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j) {
            CHECK(a.at(i, j) == b.at(i, j));
            differs |= a.at(i, j) != c.at(i, j);
        }
    CHECK(differs);
}

TEST_CASE("loss table is reciprocal and composes path and shadow") {
    const Deployment dep = generate_indoor(4, 10, 10, true);
    PropagationParams p;
    const ShadowingTable sh = shadowing_table(dep, 77, p);
    CHECK(sh.sigma_db() == 4.0);
    const LossTable lt(dep, sh, p);
    const int n = static_cast<int>(dep.nodes.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const LinkLoss& l = lt.link(i, j);
            REQUIRE(l.loss_db == lt.loss_db(j, i));
            REQUIRE(l.loss_db == doctest::Approx(l.path_db + l.shadow_db));
            const Node& a = dep.nodes[static_cast<std::size_t>(i)];
            const Node& b = dep.nodes[static_cast<std::size_t>(j)];
            const Crossings c = wall_crossings(a.position, b.position, dep.layout);
            REQUIRE(l.path_db == doctest::Approx(mwf_loss(distance(a.position, b.position), c.walls, c.floors, p)));
            REQUIRE(l.shadow_db == sh.at(i, j));
        }
    p.shadow_cs_links = false;
    const LossTable no_cs(dep, sh, p);
    CHECK(no_cs.link(0, 1).shadow_db == 0.0);
    CHECK(no_cs.link(0, dep.ap_count() + 1).shadow_db == sh.at(0, dep.ap_count() + 1));
    const Deployment out = generate_outdoor(4, {}, 5, 5);
    CHECK(shadowing_table(out, 1, p).sigma_db() == 7.0);
}

TEST_CASE("propagation parameter validation") {
    PropagationParams p;
    CHECK_NOTHROW(p.validate());
    p.exponent = 1.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = {};
    p.shadowing_sigma_indoor_db = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = {};
    p.wall_loss_db = NAN;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}
