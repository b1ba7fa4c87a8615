#include <doctest.h>

#include <random>

#include "ring.hpp"
#include "testutil.hpp"

using namespace ringmap;
using namespace ringmap::testutil;

namespace {

// 1 m ring, 10 um spacing, 1 mm window, 1 us actions.
ring_config sec10_config(std::int64_t nm_per_us) {
    ring_config cfg;
    cfg.circumference_nm = 1000000000;
    cfg.ion_spacing_nm = 10000;
    cfg.velocity_nm_per_ps = rational(nm_per_us, 1000000);
    cfg.action_time_ps = 1000000;
    cfg.actions_per_1q_gate = 1;
    cfg.actions_per_2q_gate = 2;
    window w;
    w.position_nm = 0;
    w.width_nm = 1000000;
    w.banks = 1;
    w.lasers_per_bank = 10;
    cfg.windows.push_back(w);
    return cfg;
}

}  // namespace

TEST_CASE("representative sizing at 100 m/s is exact") {
    auto cfg = sec10_config(100000);  // 100 m/s = 100,000 nm/us
    auto geo = derive_geometry(cfg);
    CHECK(geo.total_ions == 100000);
    CHECK(geo.visible_per_window.front() == 100);
    CHECK(geo.pass_time_ps == rational(10000000));            // 10 us
    CHECK(geo.circumnavigation_ps == rational(10000000000));  // 10 ms
    CHECK(geo.actions_per_pass == 10);
    CHECK(geo.dstar_1q == 10);
    CHECK(geo.dstar_2q == 5);
}

TEST_CASE("representative sizing at 1000 m/s") {
    auto cfg = sec10_config(1000000);
    auto geo = derive_geometry(cfg);
    CHECK(geo.pass_time_ps == rational(1000000));             // 1 us
    CHECK(geo.circumnavigation_ps == rational(1000000000));   // 1000 us
    CHECK(geo.actions_per_pass == 1);
    CHECK(geo.dstar_2q <= 1);
}

TEST_CASE("circumnavigation scales with circumference") {
    auto cfg = sec10_config(100000);
    cfg.circumference_nm = 2000000000;
    CHECK(circumnavigation_time(cfg) == rational(20000000000));  // 20 ms
}

TEST_CASE("derive rejects broken configs") {
    auto cfg = sec10_config(100000);
    cfg.ion_spacing_nm = 30000;  // does not divide 1 m
    CHECK_THROWS_WITH_AS(derive_geometry(cfg), doctest::Contains("divide"), error);

    cfg = sec10_config(100000);
    cfg.velocity_nm_per_ps = rational(0);
    CHECK_THROWS_AS(derive_geometry(cfg), error);

    cfg = sec10_config(100000);
    cfg.windows.push_back(cfg.windows.front());  // exact overlap
    CHECK_THROWS_WITH_AS(derive_geometry(cfg), doctest::Contains("overlap"), error);

    cfg = sec10_config(100000);
    cfg.windows.front().width_nm = 5000;  // below spacing
    CHECK_THROWS_AS(derive_geometry(cfg), error);

    cfg = sec10_config(100000);
    cfg.windows.front().lasers_per_bank = 500;  // beyond visible ions
    CHECK_THROWS_WITH_AS(derive_geometry(cfg), doctest::Contains("reach"), error);
}

TEST_CASE("ring config json round-trip") {
    std::string text = R"({
        "circumference_nm": 1000000000,
        "ion_spacing_nm": 10000,
        "ion_velocity_nm_per_us": "200000/3",
        "windows": [{"position_nm": 500, "width_nm": 1000000, "banks": 2, "lasers_per_bank": 4}],
        "action_time_ps": 1000000,
        "actions_per_1q_gate": 1,
        "actions_per_2q_gate": 2,
        "physical_per_logical": 3,
        "mode": "continuous"
    })";
    auto cfg = parse_ring_config(text);
    CHECK(cfg.velocity_nm_per_ps == rational(200000, 3000000));
    CHECK(cfg.physical_per_logical == 3);
    CHECK(cfg.mode == operation_mode::continuous);
    CHECK(cfg.windows.front().banks == 2);

    auto back = parse_ring_config(format_ring_config(cfg));
    CHECK(back.circumference_nm == cfg.circumference_nm);
    CHECK(back.velocity_nm_per_ps == cfg.velocity_nm_per_ps);
    CHECK(back.windows.size() == cfg.windows.size());
    CHECK(back.mode == cfg.mode);

    CHECK_THROWS_AS(parse_ring_config("{"), error);
    CHECK_THROWS_AS(parse_ring_config(R"({"circumference_nm": -5})"), error);
}

TEST_CASE("visibility: ion at the leading edge") {
    auto cfg = sec10_config(100000);
    // window sits at position 0; ion 0 sits at arc 0 = the leading edge
    auto iv = visibility_intervals(cfg, 0, cfg.windows.front(), rational(20000000));
    REQUIRE(!iv.empty());
    CHECK(iv.front().first == rational(0));
    CHECK(iv.front().second == rational(10000000));  // full 10 us pass
}

TEST_CASE("visibility: diametrically opposite ion enters after half a lap") {
    auto cfg = sec10_config(100000);
    auto iv = visibility_intervals(cfg, 50000, cfg.windows.front(), rational(6000000000));
    REQUIRE(!iv.empty());
    // arc distance to the window is C/2, at 0.1 nm/ps -> 5 ms exactly
    CHECK(iv.front().first == rational(5000000000));
    CHECK(iv.front().second - iv.front().first == rational(10000000));
}

TEST_CASE("visibility: zero horizon") {
    auto cfg = sec10_config(100000);
    // ion 5 starts inside the window: degenerate single point
    auto inside = visibility_intervals(cfg, 5, cfg.windows.front(), rational(0));
    REQUIRE(inside.size() == 1);
    CHECK(inside.front().first == rational(0));
    CHECK(inside.front().second == rational(0));
    // far-away ion: nothing
    CHECK(visibility_intervals(cfg, 50000, cfg.windows.front(), rational(0)).empty());
}

TEST_CASE("visibility: ion exactly at the trailing edge is not visible") {
    auto cfg = sec10_config(100000);
    // ion 100 sits at arc 1 mm = the window's trailing edge (closed-open)
    auto iv = visibility_intervals(cfg, 100, cfg.windows.front(), rational(0));
    CHECK(iv.empty());
}

TEST_CASE("property: intervals are periodic with the circumnavigation time") {
    std::mt19937 rng(99);
    auto cfg = sec10_config(100000);
    rational period = circumnavigation_time(cfg);
    for (int trial = 0; trial < 20; ++trial) {
        std::int64_t ion = static_cast<std::int64_t>(rng() % 100000);
        int laps = 1 + static_cast<int>(rng() % 4);
        auto iv = visibility_intervals(cfg, ion, cfg.windows.front(), rational(laps) * period);
        // k full intervals plus at most one partial
        int full = 0;
        for (const auto &[enter, exit] : iv) {
            if (exit - enter == cfg.windows.front().width_nm / cfg.velocity_nm_per_ps.num() &&
                cfg.velocity_nm_per_ps.den() == 1) {
                ++full;
            }
        }
        CHECK(iv.size() >= static_cast<size_t>(laps));
        CHECK(iv.size() <= static_cast<size_t>(laps) + 1);
        for (size_t i = 1; i < iv.size(); ++i) {
            CHECK(iv[i].first - iv[i - 1].first == period);
        }
        (void)full;
    }
}

TEST_CASE("property: translation symmetry of interval lengths") {
    auto cfg = sec10_config(100000);
    auto shifted = cfg;
    shifted.windows.front().position_nm += 40000;  // shift window by 4 ions
    for (std::int64_t ion : {0, 17, 42}) {
        auto a = visibility_intervals(cfg, ion, cfg.windows.front(), rational(30000000000));
        auto b = visibility_intervals(shifted, ion + 4, shifted.windows.front(), rational(30000000000));
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].second - a[i].first == b[i].second - b[i].first);
        }
        for (size_t i = 1; i < a.size(); ++i) {
            CHECK(a[i].first - a[i - 1].first == b[i].first - b[i - 1].first);
        }
    }
}

TEST_CASE("monotonicity: faster ions mean shorter passes and laps") {
    auto slow = derive_geometry(sec10_config(100000));
    auto fast = derive_geometry(sec10_config(400000));
    CHECK(fast.pass_time_ps < slow.pass_time_ps);
    CHECK(fast.circumnavigation_ps < slow.circumnavigation_ps);
}

TEST_CASE("capacity picks the governing gate class") {
    auto cfg = sec10_config(100000);
    CHECK(capacity(cfg, false).dstar == 10);
    CHECK(capacity(cfg, true).dstar == 5);
    CHECK(capacity(cfg, true).actions_per_pass == 10);
}

TEST_CASE("aligned test rings derive cleanly") {
    auto cfg = aligned_ring(2, 0, 4, 5, 12, 1000, 1, 2, operation_mode::continuous);
    auto geo = derive_geometry(cfg);
    CHECK(geo.total_ions == 24);
    CHECK(geo.actions_per_pass == 10);  // stride 2 * sigma 5
    CHECK(geo.dstar_2q == 5);
}
