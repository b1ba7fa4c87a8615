#include "ring.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace ringmap {

namespace {

using nlohmann::json;

std::int64_t require_positive_int(const json &doc, const char *key) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) {
        raise(errc::parse, std::string("ring config: missing integer key '") + key + "'");
    }
    auto v = doc[key].get<std::int64_t>();
    if (v <= 0) raise(errc::parse, std::string("ring config: '") + key + "' must be positive");
    return v;
}

rational parse_velocity(const json &doc) {
    if (!doc.contains("ion_velocity_nm_per_us")) {
        raise(errc::parse, "ring config: missing 'ion_velocity_nm_per_us'");
    }
    const auto &v = doc["ion_velocity_nm_per_us"];
    rational nm_per_us;
    if (v.is_number_integer()) {
        nm_per_us = rational(v.get<std::int64_t>());
    } else if (v.is_string()) {
        nm_per_us = rational::parse(v.get<std::string>());
    } else {
        raise(errc::parse, "ring config: velocity must be an integer or a 'p/q' string");
    }
    if (!(nm_per_us > rational(0))) raise(errc::parse, "ring config: velocity must be positive");
    return nm_per_us / rational(1000000);  // nm/us -> nm/ps
}

void check_windows(const ring_config &cfg) {
    if (cfg.windows.empty()) raise(errc::invalid, "ring config: at least one window required");
    for (const auto &w : cfg.windows) {
        if (w.width_nm < cfg.ion_spacing_nm) {
            raise(errc::invalid, "window " + std::to_string(w.id) + ": width below ion spacing");
        }
        if (w.position_nm < 0 || w.position_nm >= cfg.circumference_nm) {
            raise(errc::invalid, "window " + std::to_string(w.id) + ": position outside the ring");
        }
        if (w.banks < 1 || w.lasers_per_bank < 1) {
            raise(errc::invalid, "window " + std::to_string(w.id) + ": banks and lasers must be >= 1");
        }
        std::int64_t reach_ions = static_cast<std::int64_t>(w.lasers_per_bank);
        if (reach_ions > w.width_nm / cfg.ion_spacing_nm) {
            raise(errc::invalid, "window " + std::to_string(w.id) + ": bank reach exceeds visible ions");
        }
    }
    // Pairwise arc overlap on the circle (windows may wrap past zero).
    auto overlaps = [&](const window &a, const window &b) {
        std::int64_t c = cfg.circumference_nm;
        std::int64_t start = ((b.position_nm - a.position_nm) % c + c) % c;
        return start < a.width_nm || c - start < b.width_nm;
    };
    for (size_t i = 0; i < cfg.windows.size(); ++i) {
        for (size_t j = i + 1; j < cfg.windows.size(); ++j) {
            if (overlaps(cfg.windows[i], cfg.windows[j])) {
                raise(errc::invalid, "windows " + std::to_string(cfg.windows[i].id) + " and " +
                                         std::to_string(cfg.windows[j].id) + " overlap");
            }
        }
    }
}

}  // namespace

ring_config parse_ring_config(const std::string &json_text) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) raise(errc::parse, "ring config: not a JSON object");

    ring_config cfg;
    cfg.circumference_nm = require_positive_int(doc, "circumference_nm");
    cfg.ion_spacing_nm = require_positive_int(doc, "ion_spacing_nm");
    cfg.velocity_nm_per_ps = parse_velocity(doc);
    cfg.action_time_ps = require_positive_int(doc, "action_time_ps");
    cfg.actions_per_1q_gate = static_cast<int>(require_positive_int(doc, "actions_per_1q_gate"));
    cfg.actions_per_2q_gate = static_cast<int>(require_positive_int(doc, "actions_per_2q_gate"));
    if (doc.contains("physical_per_logical")) {
        cfg.physical_per_logical = static_cast<int>(require_positive_int(doc, "physical_per_logical"));
    }
    if (doc.contains("mode")) {
        auto m = doc["mode"].get<std::string>();
        if (m == "block") {
            cfg.mode = operation_mode::block;
        } else if (m == "continuous") {
            cfg.mode = operation_mode::continuous;
        } else {
            raise(errc::parse, "ring config: mode must be 'block' or 'continuous'");
        }
    }
    if (!doc.contains("windows") || !doc["windows"].is_array() || doc["windows"].empty()) {
        raise(errc::parse, "ring config: 'windows' must be a non-empty array");
    }
    int next_id = 0;
    for (const auto &jw : doc["windows"]) {
        window w;
        w.id = next_id++;
        w.position_nm = jw.contains("position_nm") && jw["position_nm"].is_number_integer()
                            ? jw["position_nm"].get<std::int64_t>()
                            : -1;
        w.width_nm = require_positive_int(jw, "width_nm");
        if (jw.contains("banks")) w.banks = static_cast<int>(require_positive_int(jw, "banks"));
        if (jw.contains("lasers_per_bank")) {
            w.lasers_per_bank = static_cast<int>(require_positive_int(jw, "lasers_per_bank"));
        }
        if (w.position_nm < 0) raise(errc::parse, "ring config: window missing 'position_nm'");
        cfg.windows.push_back(w);
    }
    return cfg;
}

std::string format_ring_config(const ring_config &cfg) {
    json doc;
    doc["circumference_nm"] = cfg.circumference_nm;
    doc["ion_spacing_nm"] = cfg.ion_spacing_nm;
    rational nm_per_us = cfg.velocity_nm_per_ps * rational(1000000);
    if (nm_per_us.is_integer()) {
        doc["ion_velocity_nm_per_us"] = nm_per_us.num();
    } else {
        doc["ion_velocity_nm_per_us"] = nm_per_us.str();
    }
    doc["action_time_ps"] = cfg.action_time_ps;
    doc["actions_per_1q_gate"] = cfg.actions_per_1q_gate;
    doc["actions_per_2q_gate"] = cfg.actions_per_2q_gate;
    doc["physical_per_logical"] = cfg.physical_per_logical;
    doc["mode"] = cfg.mode == operation_mode::block ? "block" : "continuous";
    doc["windows"] = json::array();
    for (const auto &w : cfg.windows) {
        doc["windows"].push_back({{"position_nm", w.position_nm},
                                  {"width_nm", w.width_nm},
                                  {"banks", w.banks},
                                  {"lasers_per_bank", w.lasers_per_bank}});
    }
    return doc.dump();
}

ring_geometry derive_geometry(const ring_config &cfg) {
    if (cfg.circumference_nm <= 0 || cfg.ion_spacing_nm <= 0) {
        raise(errc::invalid, "ring config: circumference and spacing must be positive");
    }
    if (cfg.circumference_nm % cfg.ion_spacing_nm != 0) {
        raise(errc::invalid, "ion spacing does not divide the circumference");
    }
    if (!(cfg.velocity_nm_per_ps > rational(0))) raise(errc::invalid, "ion velocity must be positive");
    if (cfg.action_time_ps <= 0) raise(errc::invalid, "action time must be positive");
    check_windows(cfg);

    ring_geometry geo;
    geo.total_ions = cfg.circumference_nm / cfg.ion_spacing_nm;
    for (const auto &w : cfg.windows) geo.visible_per_window.push_back(w.width_nm / cfg.ion_spacing_nm);
    geo.pass_time_ps = rational(cfg.windows.front().width_nm) / cfg.velocity_nm_per_ps;
    geo.circumnavigation_ps = rational(cfg.circumference_nm) / cfg.velocity_nm_per_ps;
    geo.actions_per_pass = (geo.pass_time_ps / rational(cfg.action_time_ps)).floor();
    geo.dstar_1q = geo.actions_per_pass / cfg.actions_per_1q_gate;
    geo.dstar_2q = geo.actions_per_pass / cfg.actions_per_2q_gate;
    return geo;
}

rational circumnavigation_time(const ring_config &cfg) {
    if (!(cfg.velocity_nm_per_ps > rational(0))) raise(errc::invalid, "ion velocity must be positive");
    return rational(cfg.circumference_nm) / cfg.velocity_nm_per_ps;
}

std::vector<std::pair<rational, rational>> visibility_intervals(const ring_config &cfg, std::int64_t ion,
                                                                const window &w, const rational &horizon_ps) {
    std::int64_t total = cfg.circumference_nm / cfg.ion_spacing_nm;
    if (ion < 0 || ion >= total) raise(errc::invalid, "ion index outside [0, N)");
    if (horizon_ps < rational(0)) raise(errc::invalid, "negative horizon");

    const std::int64_t c = cfg.circumference_nm;
    const std::int64_t arc = ion * cfg.ion_spacing_nm;
    // Arc distance from the ion to the window's leading edge, in travel direction.
    std::int64_t to_enter = ((w.position_nm - arc) % c + c) % c;
    rational period = rational(c) / cfg.velocity_nm_per_ps;
    rational len = rational(w.width_nm) / cfg.velocity_nm_per_ps;

    rational first_enter = rational(to_enter) / cfg.velocity_nm_per_ps;
    // If the ion starts inside the window, the current partial interval began
    // one period earlier than the next full entry.
    if (((arc - w.position_nm) % c + c) % c < w.width_nm) first_enter = first_enter - period;

    std::vector<std::pair<rational, rational>> out;
    for (rational enter = first_enter; enter <= horizon_ps; enter = enter + period) {
        rational exit = enter + len;
        rational lo = std::max(enter, rational(0));
        rational hi = std::min(exit, horizon_ps);
        // Closed-open window interval: the point `lo` must itself be visible.
        if (lo <= hi && lo < exit) out.emplace_back(lo, hi);
    }
    return out;
}

pass_capacity capacity(const ring_config &cfg, bool has_two_qubit_gates) {
    auto geo = derive_geometry(cfg);
    pass_capacity cap;
    cap.actions_per_pass = geo.actions_per_pass;
    cap.dstar = has_two_qubit_gates ? geo.dstar_2q : geo.dstar_1q;
    return cap;
}

}  // namespace ringmap
