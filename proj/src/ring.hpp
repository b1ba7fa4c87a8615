#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rational.hpp"

namespace ringmap {

/// Physical ring description. Units are fixed project-wide: lengths in
/// integer nanometers, times in integer picoseconds, velocity as an exact
/// rational in nm/ps. All derived quantities stay rational until a report
/// is emitted.
enum class operation_mode { block, continuous };

struct window {
    int id = 0;
    std::int64_t position_nm = 0;  // arc of the leading edge, in [0, circumference)
    std::int64_t width_nm = 0;
    int banks = 1;
    int lasers_per_bank = 1;
};

struct ring_config {
    std::int64_t circumference_nm = 0;
    std::int64_t ion_spacing_nm = 0;
    rational velocity_nm_per_ps;  // > 0
    std::vector<window> windows;
    std::int64_t action_time_ps = 0;
    int actions_per_1q_gate = 1;
    int actions_per_2q_gate = 1;
    int physical_per_logical = 1;
    operation_mode mode = operation_mode::block;
};

struct ring_geometry {
    std::int64_t total_ions = 0;
    std::vector<std::int64_t> visible_per_window;
    rational pass_time_ps;            // reference (first) window: width / velocity
    rational circumnavigation_ps;     // circumference / velocity
    std::int64_t actions_per_pass = 0;
    std::int64_t dstar_1q = 0;
    std::int64_t dstar_2q = 0;
};

/// Parses the flat JSON config document. velocity accepts an integer or a
/// "p/q" string, both in nm/us; it is converted to the internal nm/ps scale.
ring_config parse_ring_config(const std::string &json_text);

std::string format_ring_config(const ring_config &cfg);

/// Validates the config invariants and derives the kinematic quantities.
ring_geometry derive_geometry(const ring_config &cfg);

rational circumnavigation_time(const ring_config &cfg);

/// Maximal [enter, exit) spans within [0, horizon] (picoseconds) during which
/// ion `ion` is inside window `w`. Ion i sits at arc i * spacing at t = 0 and
/// moves at constant velocity; the window interval is closed-open, so an ion
/// exactly at the trailing edge is not visible. A degenerate (t, t) pair is
/// returned when the horizon cuts an interval at its first instant.
std::vector<std::pair<rational, rational>> visibility_intervals(const ring_config &cfg, std::int64_t ion,
                                                                const window &w, const rational &horizon_ps);

/// Actions that fit one pass of the reference window, and the per-pass gate
/// depth for the governing gate class.
struct pass_capacity {
    std::int64_t actions_per_pass = 0;
    std::int64_t dstar = 0;
};
pass_capacity capacity(const ring_config &cfg, bool has_two_qubit_gates);

}  // namespace ringmap
