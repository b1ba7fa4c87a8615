#pragma once

#include <cstdint>
#include <optional>

#include "ring.hpp"

namespace ringmap {

/// Closed-form laser-bank-width analytics. All widths are in qubit units and
/// all of W, D, W*, D* must be positive, with delta_w_star <= w_star.
struct timing_query {
    std::int64_t width = 0;         // W
    std::int64_t depth = 0;         // D
    std::int64_t w_star = 0;        // max sub-circuit width per bank
    std::int64_t d_star = 0;        // max depth per pass
    std::int64_t delta_w_star = 0;  // per-pass shift width
};

std::int64_t pass_count(std::int64_t depth, std::int64_t d_star);

/// First case: the whole width fits one bank (W <= W*), shifting by dW* per
/// pass: WL = W* + (ceil(D/D*) - 1) * dW*.
std::int64_t wl_general(const timing_query &q);

/// Second case: full shift (dW* = W*): WL = W* * ceil(D/D*).
std::int64_t wl_serial(const timing_query &q);

/// Third case, parallel layout over W >= W*: WL = W + (ceil(D/D*) - 1) * W*.
std::int64_t wl_parallel(const timing_query &q);

struct sizing_report {
    std::int64_t total_ions = 0;
    std::int64_t visible = 0;
    rational pass_time_ps;
    rational circumnavigation_ps;
    std::int64_t actions_per_pass = 0;
    std::int64_t dstar = 0;
    std::optional<std::int64_t> passes;
    std::optional<std::int64_t> wl_serial;
    std::optional<std::int64_t> wl_parallel;
    std::optional<rational> latency_ps;
};

/// Ring sizing plus, when a circuit query is supplied, the pass count, the
/// applicable WL values and a latency estimate. Between passes the ions
/// travel to the next window when there is one, otherwise they complete a
/// full circumnavigation back to the first.
sizing_report make_sizing_report(const ring_config &cfg, const std::optional<timing_query> &q);

}  // namespace ringmap
