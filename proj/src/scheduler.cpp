#include "scheduler.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "circuit.hpp"

namespace ringmap {

// Scheduling model
// ----------------
// Every window is split evenly into its banks; a bank is a fixed arc segment
// ("aperture") holding L steerable lasers, laser s tracking bunch slot s of
// whatever bunch is passing. Ions move at constant velocity, so each ion's
// presence inside an aperture is a periodic train of intervals. Time advances
// on a global grid of action slots; a gate needing k actions occupies k
// consecutive slots during which all of its operand ions stay inside one
// aperture.
//
// A bunch meets the apertures in a fixed geometric order (its "crossings":
// crossing m is the (m % NB)-th aperture in phase order on lap m / NB).
// Slices are grouped into quota bands of D* slices each; the mode maps band q
// of bunch j to the earliest crossing allowed to run it:
//
//   serial        m >= q          every bunch funnels through the same bank
//                                 sequence, giving the triangular ramp
//   parallel      m >= q + j      bunch j idles until its own bank, then all
//                                 bunches advance in lockstep
//   hybrid(R)     serial for q < R, parallel offsets afterwards
//
// Cross-bunch gates ignore bands: they run at the first slot after their
// predecessors complete in which both operand ions share one aperture, and
// the wait is recorded (the predecessor-problem resolution).

namespace {

constexpr int kMaxLaps = 256;

struct bank_info {
    int window_id = 0;
    int bank_in_window = 0;
    std::int64_t lo_nm = 0;
    std::int64_t width_nm = 0;
};

struct gate_plan {
    int id = 0;
    int k = 1;
    int quota = 0;
    int bunch = -1;
    bool cross = false;
    std::vector<std::int64_t> ions;
    std::vector<int> lasers;
    std::int64_t trail_ion = 0;
    std::int64_t span_nm = 0;
};

struct placement {
    std::int64_t slot = 0;
    int bank = 0;  // global bank index
    std::int64_t lap = 0;
};

std::int64_t mod_arc(std::int64_t x, std::int64_t c) { return (x % c + c) % c; }

class engine {
  public:
    engine(const native_circuit &nc, const ring_config &cfg, const partition &p, const schedule_mode &mode)
        : nc_(nc), cfg_(cfg), part_(p), mode_(mode), velocity_(cfg.velocity_nm_per_ps) {
        period_ = rational(cfg_.circumference_nm) / velocity_;
        action_ = cfg_.action_time_ps;
        build_banks();
        build_plans();
        build_visit_orders();
    }

    schedule run();

  private:
    void build_banks();
    void build_plans();
    void build_visit_orders();
    rational phase(std::int64_t ion_arc_nm, const bank_info &b) const;
    std::optional<placement> earliest_local(const gate_plan &g, std::int64_t ready_slot) const;
    std::optional<placement> earliest_cross(const gate_plan &g, std::int64_t ready_slot) const;
    std::optional<std::int64_t> fit_in_window(const gate_plan &g, int bank, const rational &enter,
                                              const rational &exit, std::int64_t ready_slot) const;
    bool slots_free(const gate_plan &g, int bank, std::int64_t first_slot) const;
    void commit(gate_plan &g, const placement &pl);

    const native_circuit &nc_;
    const ring_config &cfg_;
    const partition &part_;
    const schedule_mode &mode_;

    rational velocity_;
    rational period_;
    std::int64_t action_ = 1;
    std::int64_t dstar_ = 1;

    std::vector<bank_info> banks_;
    std::vector<gate_plan> plans_;
    std::vector<std::vector<int>> visit_order_;     // per bunch: global bank ids by phase
    std::vector<std::vector<int>> visit_position_;  // per bunch: bank id -> rank

    dependency_dag dag_;
    std::vector<std::int64_t> gate_start_;  // slot, -1 while unplaced
    std::vector<placement> gate_place_;
    std::unordered_map<std::int64_t, std::vector<std::pair<int, int>>> busy_lasers_;
    std::unordered_map<std::int64_t, std::vector<std::int64_t>> busy_ions_;
    std::set<std::pair<int, int>> fired_positions_;        // (global bank, laser)
    std::vector<std::set<std::int64_t>> bunch_crossings_;  // crossing indices touched per bunch
};

void engine::build_banks() {
    for (const auto &w : cfg_.windows) {
        if (w.lasers_per_bank != part_.bunch_size) {
            raise(errc::invalid, "window " + std::to_string(w.id) + ": bank reach " +
                                     std::to_string(w.lasers_per_bank) + " does not match bunch size " +
                                     std::to_string(part_.bunch_size));
        }
        std::int64_t aperture = w.width_nm / w.banks;
        if (aperture < cfg_.ion_spacing_nm) {
            raise(errc::invalid, "window " + std::to_string(w.id) + ": aperture narrower than ion spacing");
        }
        for (int r = 0; r < w.banks; ++r) {
            bank_info b;
            b.window_id = w.id;
            b.bank_in_window = r;
            b.lo_nm = mod_arc(w.position_nm + static_cast<std::int64_t>(r) * aperture, cfg_.circumference_nm);
            b.width_nm = aperture;
            banks_.push_back(b);
        }
    }
}

void engine::build_plans() {
    bool any_2q = false;
    for (const auto &g : nc_.gates) any_2q = any_2q || g.is_two_qubit();
    auto cap = capacity(cfg_, any_2q);
    dstar_ = cap.dstar;
    if (dstar_ < 1) {
        raise(errc::infeasible, "insufficient ring capacity: a gate needs more actions than fit one pass (" +
                                    std::to_string(cap.actions_per_pass) + " per pass)");
    }

    auto slicing = compute_time_slices(nc_.as_circuit());
    std::vector<int> slice_of(nc_.gates.size());
    for (size_t s = 0; s < slicing.slices.size(); ++s) {
        for (int id : slicing.slices[s]) slice_of[id] = static_cast<int>(s);
    }

    const std::int64_t spacing = cfg_.ion_spacing_nm;
    std::int64_t max_aperture = 0;
    for (const auto &b : banks_) max_aperture = std::max(max_aperture, b.width_nm);

    for (const auto &g : nc_.gates) {
        gate_plan pl;
        pl.id = g.id;
        pl.k = g.is_two_qubit() ? cfg_.actions_per_2q_gate : cfg_.actions_per_1q_gate;
        pl.quota = slice_of[g.id] / static_cast<int>(dstar_);
        for (int q : g.operands) {
            pl.ions.push_back(part_.qubit_to_ion[q]);
            pl.lasers.push_back(part_.slot_of(q));
        }
        if (pl.lasers.size() == 2 && pl.lasers[0] == pl.lasers[1]) {
            // Two ions cannot share one tracking laser in the same slot; bump
            // the second onto a neighbour beam.
            if (part_.bunch_size < 2) {
                raise(errc::infeasible, "gate " + std::to_string(g.id) +
                                            ": a two-qubit gate needs two lasers but banks hold one");
            }
            pl.lasers[1] = (pl.lasers[1] + 1) % part_.bunch_size;
        }
        pl.trail_ion = *std::min_element(pl.ions.begin(), pl.ions.end());
        std::int64_t span =
            *std::max_element(pl.ions.begin(), pl.ions.end()) - pl.trail_ion;
        pl.span_nm = span * spacing;

        int b0 = part_.bunch_of(g.operands.front());
        pl.cross = false;
        for (int q : g.operands) pl.cross = pl.cross || part_.bunch_of(q) != b0;
        if (!pl.cross) pl.bunch = b0;

        if (g.is_two_qubit() && pl.span_nm >= max_aperture) {
            raise(errc::infeasible,
                  std::string(pl.cross ? "cross-bunch gate " : "gate ") + std::to_string(g.id) +
                      ": operand span " + std::to_string(span) + " ions exceeds the widest bank reach of " +
                      std::to_string(max_aperture / spacing) + " ions");
        }
        // The pair (or the whole bunch, in block mode) must stay co-visible for
        // the gate's k consecutive slots somewhere.
        std::int64_t occupied = pl.span_nm;
        if (cfg_.mode == operation_mode::block && !pl.cross) {
            occupied = (static_cast<std::int64_t>(part_.bunch_size) * part_.physical_per_logical - 1) * spacing;
        }
        rational covis = rational(max_aperture - occupied) / velocity_;
        if (covis < rational(pl.k * action_)) {
            raise(errc::infeasible, "gate " + std::to_string(g.id) + ": co-visibility of " + covis.str() +
                                        " ps cannot hold " + std::to_string(pl.k) + " action(s)");
        }
        plans_.push_back(std::move(pl));
    }
}

void engine::build_visit_orders() {
    const std::int64_t spacing = cfg_.ion_spacing_nm;
    const std::int64_t stride = static_cast<std::int64_t>(part_.bunch_size) * (1 + part_.gap_bunches) *
                                part_.physical_per_logical;
    visit_order_.resize(part_.bunch_count);
    visit_position_.assign(part_.bunch_count, std::vector<int>(banks_.size(), -1));
    bunch_crossings_.resize(part_.bunch_count);
    for (int j = 0; j < part_.bunch_count; ++j) {
        std::int64_t lead_ion = j * stride + static_cast<std::int64_t>(part_.bunch_size) * part_.physical_per_logical - 1;
        std::vector<int> order(banks_.size());
        for (size_t b = 0; b < banks_.size(); ++b) order[b] = static_cast<int>(b);
        std::vector<rational> ph(banks_.size());
        for (size_t b = 0; b < banks_.size(); ++b) ph[b] = phase(lead_ion * spacing, banks_[b]);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (ph[a] != ph[b]) return ph[a] < ph[b];
            return a < b;
        });
        for (size_t r = 0; r < order.size(); ++r) visit_position_[j][order[r]] = static_cast<int>(r);
        visit_order_[j] = std::move(order);
    }
}

rational engine::phase(std::int64_t ion_arc_nm, const bank_info &b) const {
    return rational(mod_arc(b.lo_nm - ion_arc_nm, cfg_.circumference_nm)) / velocity_;
}

// First slot >= ready_slot whose k-slot run sits inside [enter, exit) with
// all lasers and ions free.
std::optional<std::int64_t> engine::fit_in_window(const gate_plan &g, int bank, const rational &enter,
                                                  const rational &exit, std::int64_t ready_slot) const {
    if (!(enter < exit)) return std::nullopt;
    std::int64_t slot = std::max<std::int64_t>((enter / rational(action_)).ceil(), std::max<std::int64_t>(ready_slot, 0));
    while (rational((slot + g.k) * action_) <= exit) {
        if (slots_free(g, bank, slot)) return slot;
        ++slot;
    }
    return std::nullopt;
}

bool engine::slots_free(const gate_plan &g, int bank, std::int64_t first_slot) const {
    for (int a = 0; a < g.k; ++a) {
        std::int64_t slot = first_slot + a;
        auto lit = busy_lasers_.find(slot);
        if (lit != busy_lasers_.end()) {
            for (int laser : g.lasers) {
                if (std::find(lit->second.begin(), lit->second.end(), std::make_pair(bank, laser)) !=
                    lit->second.end()) {
                    return false;
                }
            }
        }
        auto iit = busy_ions_.find(slot);
        if (iit != busy_ions_.end()) {
            for (std::int64_t ion : g.ions) {
                if (std::find(iit->second.begin(), iit->second.end(), ion) != iit->second.end()) return false;
            }
        }
    }
    return true;
}

std::optional<placement> engine::earliest_local(const gate_plan &g, std::int64_t ready_slot) const {
    const std::int64_t spacing = cfg_.ion_spacing_nm;
    const auto &order = visit_order_[g.bunch];
    const int nb = static_cast<int>(order.size());

    std::int64_t m_min = 0;
    switch (mode_.k) {
        case schedule_mode::kind::serial: m_min = g.quota; break;
        case schedule_mode::kind::parallel: m_min = g.quota + g.bunch; break;
        case schedule_mode::kind::hybrid:
            m_min = g.quota < mode_.ramp_passes ? g.quota : g.quota + g.bunch;
            break;
    }

    // Window anchor ion: the gate pair's trailing ion, or the whole bunch's
    // trailing ion in block mode.
    std::int64_t anchor_ion = g.trail_ion;
    std::int64_t occupied_nm = g.span_nm;
    if (cfg_.mode == operation_mode::block) {
        const std::int64_t stride = static_cast<std::int64_t>(part_.bunch_size) * (1 + part_.gap_bunches) *
                                    part_.physical_per_logical;
        anchor_ion = static_cast<std::int64_t>(g.bunch) * stride;
        occupied_nm =
            (static_cast<std::int64_t>(part_.bunch_size) * part_.physical_per_logical - 1) * spacing;
    }

    for (std::int64_t m = m_min; m < m_min + static_cast<std::int64_t>(nb) * kMaxLaps; ++m) {
        int bank = order[m % nb];
        std::int64_t lap = m / nb;
        if (banks_[bank].width_nm <= occupied_nm) continue;
        rational enter = phase(anchor_ion * spacing, banks_[bank]) + rational(lap) * period_;
        rational exit = enter + rational(banks_[bank].width_nm - occupied_nm) / velocity_;
        if (auto slot = fit_in_window(g, bank, enter, exit, ready_slot)) {
            return placement{*slot, bank, m};
        }
    }
    return std::nullopt;
}

std::optional<placement> engine::earliest_cross(const gate_plan &g, std::int64_t ready_slot) const {
    const std::int64_t spacing = cfg_.ion_spacing_nm;
    // Apertures are disjoint arcs, so the pair's co-visibility windows never
    // overlap in time; scanning them in enter order makes the first feasible
    // slot the earliest one.
    struct cand {
        rational enter;
        int bank;
    };
    std::vector<cand> cands;
    for (size_t b = 0; b < banks_.size(); ++b) {
        if (banks_[b].width_nm <= g.span_nm) continue;
        cands.push_back({phase(g.trail_ion * spacing, banks_[b]), static_cast<int>(b)});
    }
    if (cands.empty()) return std::nullopt;
    std::sort(cands.begin(), cands.end(), [](const cand &x, const cand &y) {
        if (x.enter != y.enter) return x.enter < y.enter;
        return x.bank < y.bank;
    });

    for (std::int64_t lap = 0; lap < kMaxLaps; ++lap) {
        for (const auto &c : cands) {
            rational enter = c.enter + rational(lap) * period_;
            rational exit = enter + rational(banks_[c.bank].width_nm - g.span_nm) / velocity_;
            if (auto slot = fit_in_window(g, c.bank, enter, exit, ready_slot)) {
                return placement{*slot, c.bank, lap};
            }
        }
    }
    return std::nullopt;
}

void engine::commit(gate_plan &g, const placement &pl) {
    gate_start_[g.id] = pl.slot;
    gate_place_[g.id] = pl;
    for (int a = 0; a < g.k; ++a) {
        std::int64_t slot = pl.slot + a;
        auto &lasers = busy_lasers_[slot];
        auto &ions = busy_ions_[slot];
        for (size_t i = 0; i < g.ions.size(); ++i) {
            lasers.emplace_back(pl.bank, g.lasers[i]);
            ions.push_back(g.ions[i]);
        }
    }
    for (int laser : g.lasers) fired_positions_.emplace(pl.bank, laser);

    // Attribute the crossing index per operand bunch for the pass statistics.
    const std::int64_t stride = static_cast<std::int64_t>(part_.bunch_size) * (1 + part_.gap_bunches) *
                                part_.physical_per_logical;
    for (std::int64_t ion : g.ions) {
        int bunch = static_cast<int>(ion / stride);
        std::int64_t crossing =
            pl.lap * static_cast<std::int64_t>(banks_.size()) + visit_position_[bunch][pl.bank];
        bunch_crossings_[bunch].insert(crossing);
    }
}

schedule engine::run() {
    dag_ = build_dependency_dag(nc_.as_circuit());
    gate_start_.assign(nc_.gates.size(), -1);
    gate_place_.assign(nc_.gates.size(), placement{});

    std::vector<int> missing_preds(nc_.gates.size(), 0);
    std::vector<std::int64_t> ready_slot(nc_.gates.size(), 0);
    for (size_t i = 0; i < nc_.gates.size(); ++i) {
        missing_preds[i] = static_cast<int>(dag_.pred[i].size());
    }

    using entry = std::pair<std::int64_t, int>;  // (slot, gate id)
    std::priority_queue<entry, std::vector<entry>, std::greater<>> queue;

    auto compute_earliest = [&](int id) -> placement {
        const auto &g = plans_[id];
        auto pl = g.cross ? earliest_cross(g, ready_slot[id]) : earliest_local(g, ready_slot[id]);
        if (!pl) {
            raise(errc::infeasible, "gate " + std::to_string(id) + ": no feasible slot within " +
                                        std::to_string(kMaxLaps) + " laps");
        }
        return *pl;
    };

    for (size_t i = 0; i < nc_.gates.size(); ++i) {
        if (missing_preds[i] == 0) queue.emplace(compute_earliest(static_cast<int>(i)).slot, static_cast<int>(i));
    }

    std::vector<deferred_gate> deferred;
    size_t placed = 0;
    while (!queue.empty()) {
        auto [slot, id] = queue.top();
        queue.pop();
        if (gate_start_[id] >= 0) continue;
        auto pl = compute_earliest(id);
        if (pl.slot > slot) {
            queue.emplace(pl.slot, id);  // resources were taken; try again later
            continue;
        }
        commit(plans_[id], pl);
        ++placed;
        if (plans_[id].cross) {
            deferred.push_back({id, (pl.slot - ready_slot[id]) * action_});
        }
        std::int64_t end = pl.slot + plans_[id].k;
        for (int succ : dag_.succ[id]) {
            ready_slot[succ] = std::max(ready_slot[succ], end);
            if (--missing_preds[succ] == 0) queue.emplace(compute_earliest(succ).slot, succ);
        }
    }
    if (placed != nc_.gates.size()) {
        raise(errc::infeasible, "schedule incomplete: dependency cycle or unreachable gate");
    }

    schedule s;
    s.mode = mode_.str();
    s.bunch_size = part_.bunch_size;
    s.gap_bunches = part_.gap_bunches;
    for (size_t i = 0; i < nc_.gates.size(); ++i) {
        const auto &g = plans_[i];
        const auto &pl = gate_place_[i];
        for (int a = 0; a < g.k; ++a) {
            laser_action act;
            act.t_ps = (pl.slot + a) * action_;
            act.window_id = banks_[pl.bank].window_id;
            act.bank = banks_[pl.bank].bank_in_window;
            act.laser = g.lasers.front();
            act.ions = g.ions;
            act.gate_id = g.id;
            act.action_index = a;
            s.actions.push_back(std::move(act));
        }
        s.stats.makespan_ps = std::max(s.stats.makespan_ps, (pl.slot + g.k) * action_);
    }
    std::sort(s.actions.begin(), s.actions.end(), [](const laser_action &a, const laser_action &b) {
        return std::tie(a.t_ps, a.window_id, a.bank, a.laser, a.gate_id, a.action_index) <
               std::tie(b.t_ps, b.window_id, b.bank, b.laser, b.gate_id, b.action_index);
    });
    std::sort(deferred.begin(), deferred.end(),
              [](const deferred_gate &a, const deferred_gate &b) { return a.gate_id < b.gate_id; });
    s.stats.deferred_gates = std::move(deferred);
    s.stats.measured_wl = static_cast<std::int64_t>(fired_positions_.size());
    std::int64_t passes = 0;
    for (const auto &set : bunch_crossings_) passes = std::max(passes, static_cast<std::int64_t>(set.size()));
    s.stats.passes_used = passes;
    return s;
}

}  // namespace

partition make_partition(const native_circuit &nc, const ring_config &cfg, int bunch_size, int gap_bunches) {
    if (bunch_size < 1) raise(errc::invalid, "bunch size must be >= 1");
    if (gap_bunches < 0) raise(errc::invalid, "gap must be >= 0");
    partition p;
    p.bunch_size = bunch_size;
    p.gap_bunches = gap_bunches;
    p.physical_per_logical = cfg.physical_per_logical;
    p.bunch_count = (nc.width + bunch_size - 1) / bunch_size;

    std::int64_t total_ions = cfg.circumference_nm / cfg.ion_spacing_nm;
    std::int64_t required = static_cast<std::int64_t>(p.bunch_count) * bunch_size * (1 + gap_bunches) *
                            cfg.physical_per_logical;
    if (required > total_ions) {
        raise(errc::infeasible, "ring too small: partition needs " + std::to_string(required) +
                                    " ions but the ring holds " + std::to_string(total_ions));
    }

    const std::int64_t stride = static_cast<std::int64_t>(bunch_size) * (1 + gap_bunches) *
                                cfg.physical_per_logical;
    for (int q = 0; q < nc.width; ++q) {
        std::int64_t bunch = q / bunch_size;
        std::int64_t slot = q % bunch_size;
        p.qubit_to_ion.push_back(bunch * stride + slot * cfg.physical_per_logical);
    }

    p.bunch_gates.resize(p.bunch_count);
    for (const auto &g : nc.gates) {
        int b0 = p.bunch_of(g.operands.front());
        bool cross = false;
        for (int q : g.operands) cross = cross || p.bunch_of(q) != b0;
        if (cross) {
            p.cross_bunch_gates.push_back(g.id);
        } else {
            p.bunch_gates[b0].push_back(g.id);
        }
    }
    return p;
}

std::vector<hazard_record> detect_predecessors(const partition &p, const native_circuit &nc) {
    std::vector<hazard_record> out;
    for (int id : p.cross_bunch_gates) {
        const auto &g = nc.gates[id];
        if (!g.is_two_qubit()) continue;
        hazard_record h;
        h.gate_id = id;
        h.bunch_a = std::min(p.bunch_of(g.operands[0]), p.bunch_of(g.operands[1]));
        h.bunch_b = std::max(p.bunch_of(g.operands[0]), p.bunch_of(g.operands[1]));
        std::int64_t i0 = p.qubit_to_ion[g.operands[0]];
        std::int64_t i1 = p.qubit_to_ion[g.operands[1]];
        h.span_ions = i0 < i1 ? i1 - i0 : i0 - i1;
        out.push_back(h);
    }
    return out;
}

schedule_mode schedule_mode::parse(const std::string &text) {
    schedule_mode m;
    if (text == "serial") {
        m.k = kind::serial;
    } else if (text == "parallel") {
        m.k = kind::parallel;
    } else if (text.rfind("hybrid:", 0) == 0) {
        m.k = kind::hybrid;
        try {
            size_t pos = 0;
            m.ramp_passes = std::stoi(text.substr(7), &pos);
            if (pos != text.size() - 7 || m.ramp_passes < 0) throw std::invalid_argument("ramp");
        } catch (const std::exception &) {
            raise(errc::parse, "bad mode '" + text + "': expected hybrid:K with K >= 0");
        }
    } else {
        raise(errc::parse, "bad mode '" + text + "': expected serial, parallel or hybrid:K");
    }
    return m;
}

std::string schedule_mode::str() const {
    switch (k) {
        case kind::serial: return "serial";
        case kind::parallel: return "parallel";
        case kind::hybrid: return "hybrid:" + std::to_string(ramp_passes);
    }
    return "parallel";
}

schedule build_schedule(const native_circuit &nc, const ring_config &cfg, const partition &p,
                        const schedule_mode &mode) {
    derive_geometry(cfg);  // validates the config invariants up front
    engine e(nc, cfg, p, mode);
    return e.run();
}

std::int64_t measure_wl(const schedule &s, const partition &p) {
    std::set<std::tuple<int, int, int>> positions;  // (window, bank, laser)
    for (const auto &a : s.actions) {
        std::vector<int> lasers;
        for (std::int64_t ion : a.ions) {
            // Recover the qubit slot from the ion index.
            const std::int64_t stride = static_cast<std::int64_t>(p.bunch_size) * (1 + p.gap_bunches) *
                                        p.physical_per_logical;
            std::int64_t within = ion % stride;
            lasers.push_back(static_cast<int>(within / p.physical_per_logical));
        }
        if (lasers.size() == 2 && lasers[0] == lasers[1]) lasers[1] = (lasers[1] + 1) % p.bunch_size;
        for (int laser : lasers) positions.emplace(a.window_id, a.bank, laser);
    }
    return static_cast<std::int64_t>(positions.size());
}

std::vector<output_violation> validate_outputs(const native_circuit &nc, const partition &p) {
    std::vector<output_violation> out;
    for (const auto &g : nc.gates) {
        if (!g.is_mismatched()) continue;
        std::set<int> operand_bunches;
        for (int q : g.operands) operand_bunches.insert(p.bunch_of(q));
        for (int o : g.outputs) {
            if (!operand_bunches.count(p.bunch_of(o))) {
                out.push_back({g.id, o, p.bunch_of(o)});
            }
        }
    }
    return out;
}

std::string schedule_to_json(const schedule &s) {
    nlohmann::json doc;
    nlohmann::json stats;
    stats["makespan_ps"] = s.stats.makespan_ps;
    stats["passes_used"] = s.stats.passes_used;
    stats["measured_wl_qubits"] = s.stats.measured_wl;
    stats["deferred_gates"] = nlohmann::json::array();
    for (const auto &d : s.stats.deferred_gates) {
        stats["deferred_gates"].push_back({{"gate_id", d.gate_id}, {"wait_ps", d.wait_ps}});
    }
    doc["header"] = {{"config_hash", s.config_hash},
                     {"mode", s.mode},
                     {"bunch_size", s.bunch_size},
                     {"gap_bunches", s.gap_bunches},
                     {"stats", stats}};
    doc["actions"] = nlohmann::json::array();
    for (const auto &a : s.actions) {
        doc["actions"].push_back({{"t_ps", a.t_ps},
                                  {"window", a.window_id},
                                  {"bank", a.bank},
                                  {"laser", a.laser},
                                  {"ions", a.ions},
                                  {"gate_id", a.gate_id},
                                  {"action_index", a.action_index}});
    }
    return doc.dump();
}

schedule schedule_from_json(const std::string &text) {
    auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("header") || !doc.contains("actions")) {
        raise(errc::parse, "schedule: not a schedule JSON document");
    }
    try {
        schedule s;
        const auto &h = doc["header"];
        s.config_hash = h.at("config_hash").get<std::string>();
        s.mode = h.at("mode").get<std::string>();
        s.bunch_size = h.at("bunch_size").get<int>();
        s.gap_bunches = h.at("gap_bunches").get<int>();
        const auto &st = h.at("stats");
        s.stats.makespan_ps = st.at("makespan_ps").get<std::int64_t>();
        s.stats.passes_used = st.at("passes_used").get<std::int64_t>();
        s.stats.measured_wl = st.at("measured_wl_qubits").get<std::int64_t>();
        for (const auto &d : st.at("deferred_gates")) {
            s.stats.deferred_gates.push_back(
                {d.at("gate_id").get<int>(), d.at("wait_ps").get<std::int64_t>()});
        }
        for (const auto &ja : doc["actions"]) {
            laser_action a;
            a.t_ps = ja.at("t_ps").get<std::int64_t>();
            a.window_id = ja.at("window").get<int>();
            a.bank = ja.at("bank").get<int>();
            a.laser = ja.at("laser").get<int>();
            a.ions = ja.at("ions").get<std::vector<std::int64_t>>();
            a.gate_id = ja.at("gate_id").get<int>();
            a.action_index = ja.at("action_index").get<int>();
            s.actions.push_back(std::move(a));
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        raise(errc::parse, std::string("schedule: ") + e.what());
    }
}

}  // namespace ringmap
