#include "timing.hpp"

namespace ringmap {

namespace {

void check_query(const timing_query &q, bool with_delta) {
    if (q.width < 1 || q.depth < 1 || q.w_star < 1 || q.d_star < 1) {
        raise(errc::invalid, "timing query: W, D, W*, D* must all be positive");
    }
    if (with_delta && (q.delta_w_star < 1 || q.delta_w_star > q.w_star)) {
        raise(errc::invalid, "timing query: delta W* must lie in [1, W*]");
    }
}

}  // namespace

std::int64_t pass_count(std::int64_t depth, std::int64_t d_star) {
    if (depth < 0 || d_star < 1) raise(errc::invalid, "pass count needs D >= 0 and D* >= 1");
    return (depth + d_star - 1) / d_star;
}

std::int64_t wl_general(const timing_query &q) {
    check_query(q, true);
    if (q.width > q.w_star) {
        raise(errc::invalid, "wl_general applies when the circuit width fits one bank (W <= W*)");
    }
    return q.w_star + (pass_count(q.depth, q.d_star) - 1) * q.delta_w_star;
}

std::int64_t wl_serial(const timing_query &q) {
    check_query(q, false);
    if (q.width > q.w_star) {
        raise(errc::invalid, "wl_serial applies when the circuit width fits one bank (W <= W*)");
    }
    return q.w_star * pass_count(q.depth, q.d_star);
}

std::int64_t wl_parallel(const timing_query &q) {
    check_query(q, false);
    if (q.width < q.w_star) {
        raise(errc::invalid, "wl_parallel applies to multi-bunch layouts (W >= W*)");
    }
    return q.width + (pass_count(q.depth, q.d_star) - 1) * q.w_star;
}

sizing_report make_sizing_report(const ring_config &cfg, const std::optional<timing_query> &query) {
    auto geo = derive_geometry(cfg);
    sizing_report rep;
    rep.total_ions = geo.total_ions;
    rep.visible = geo.visible_per_window.front();
    rep.pass_time_ps = geo.pass_time_ps;
    rep.circumnavigation_ps = geo.circumnavigation_ps;
    rep.actions_per_pass = geo.actions_per_pass;
    // Without circuit knowledge report the conservative two-qubit-governed depth.
    rep.dstar = query && query->d_star >= 1 ? query->d_star : geo.dstar_2q;

    if (!query) return rep;
    timing_query q = *query;
    if (q.d_star < 1) q.d_star = rep.dstar;
    if (q.d_star < 1) raise(errc::infeasible, "window pass too short for a single gate");
    std::int64_t passes = pass_count(q.depth, q.d_star);
    rep.passes = passes;
    if (q.width <= q.w_star) rep.wl_serial = wl_serial(q);
    if (q.width >= q.w_star) rep.wl_parallel = wl_parallel(q);

    // Pass time plus inter-pass travel: hop to the next window's leading edge,
    // a full lap back to the first when the window list is exhausted.
    rational latency = rational(passes) * geo.pass_time_ps;
    const auto &ws = cfg.windows;
    for (std::int64_t p = 0; p + 1 < passes; ++p) {
        const auto &from = ws[static_cast<size_t>(p % ws.size())];
        const auto &to = ws[static_cast<size_t>((p + 1) % ws.size())];
        std::int64_t hop_nm =
            ((to.position_nm - from.position_nm - from.width_nm) % cfg.circumference_nm + cfg.circumference_nm) %
            cfg.circumference_nm;
        latency = latency + rational(hop_nm) / cfg.velocity_nm_per_ps;
    }
    rep.latency_ps = latency;
    return rep;
}

}  // namespace ringmap
