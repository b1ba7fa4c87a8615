#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "circuit.hpp"
#include "ring.hpp"
#include "scheduler.hpp"
#include "transpile.hpp"

namespace ringmap::testutil {

inline gate make_gate(gate_kind kind, std::vector<int> operands, double theta = 0, double phi = 0) {
    gate g;
    g.kind = kind;
    g.operands = std::move(operands);
    g.theta = theta;
    g.phi = phi;
    return g;
}

inline circuit make_circuit(int width, std::vector<gate> gates) {
    for (size_t i = 0; i < gates.size(); ++i) gates[i].id = static_cast<int>(i);
    return circuit{width, std::move(gates)};
}

inline circuit random_circuit(std::mt19937 &rng, int width, int gate_count, bool allow_two_qubit = true) {
    static const gate_kind one_q[] = {gate_kind::I, gate_kind::X, gate_kind::Y, gate_kind::Z,
                                      gate_kind::H, gate_kind::S, gate_kind::T, gate_kind::R};
    static const gate_kind two_q[] = {gate_kind::CNOT, gate_kind::SWAP, gate_kind::CZ, gate_kind::XX};
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    std::vector<gate> gates;
    for (int i = 0; i < gate_count; ++i) {
        bool two = allow_two_qubit && width >= 2 && rng() % 3 == 0;
        gate g;
        if (two) {
            g.kind = two_q[rng() % 4];
            int a = static_cast<int>(rng() % width);
            int b = static_cast<int>(rng() % (width - 1));
            if (b >= a) ++b;
            g.operands = {a, b};
        } else {
            g.kind = one_q[rng() % 8];
            g.operands = {static_cast<int>(rng() % width)};
        }
        if (g.kind == gate_kind::R) {
            g.theta = angle(rng);
            g.phi = angle(rng);
        }
        if (g.kind == gate_kind::XX) g.theta = angle(rng);
        gates.push_back(std::move(g));
    }
    return make_circuit(width, std::move(gates));
}

/// Independent depth oracle: longest path (in gates) through the DAG.
inline int longest_dag_path(const dependency_dag &dag) {
    std::vector<int> memo(dag.succ.size(), -1);
    std::vector<int> stack;
    int best = 0;
    for (size_t start = 0; start < dag.succ.size(); ++start) {
        // iterative DFS with memoization
        stack.push_back(static_cast<int>(start));
        while (!stack.empty()) {
            int v = stack.back();
            if (memo[v] >= 0) {
                stack.pop_back();
                continue;
            }
            bool ready = true;
            int longest = 0;
            for (int s : dag.succ[v]) {
                if (memo[s] < 0) {
                    stack.push_back(s);
                    ready = false;
                } else {
                    longest = std::max(longest, memo[s]);
                }
            }
            if (ready) {
                memo[v] = 1 + longest;
                stack.pop_back();
            }
        }
        best = std::max(best, memo[start]);
    }
    return best;
}

/// Slot-aligned ring family: velocity 1 nm/ps, spacing sigma * action_ps nm,
/// one bank per window, apertures of width_strides bunch strides, so every
/// ion phase lands exactly on the action-slot grid and a one-stride crossing
/// holds exactly stride * sigma actions.
inline ring_config aligned_ring(int lasers, int gap, int nb_windows, int sigma, int total_strides,
                                std::int64_t action_ps, int k1, int k2, operation_mode mode,
                                int physical_per_logical = 1, int train_strides = -1,
                                int width_strides = 1) {
    ring_config cfg;
    const std::int64_t spacing = sigma * action_ps;  // v = 1 nm/ps
    const std::int64_t stride_ions =
        static_cast<std::int64_t>(lasers) * (1 + gap) * physical_per_logical;
    const std::int64_t stride_nm = stride_ions * spacing;
    const std::int64_t aperture = width_strides * stride_nm;
    cfg.circumference_nm = total_strides * stride_nm;
    cfg.ion_spacing_nm = spacing;
    cfg.velocity_nm_per_ps = rational(1);
    cfg.action_time_ps = action_ps;
    cfg.actions_per_1q_gate = k1;
    cfg.actions_per_2q_gate = k2;
    cfg.physical_per_logical = physical_per_logical;
    cfg.mode = mode;
    // Window row starts right after the ion train (train_strides bunches).
    std::int64_t row_start = (train_strides < 0 ? 1 : train_strides) * stride_nm;
    for (int m = 0; m < nb_windows; ++m) {
        window w;
        w.id = m;
        w.position_nm = (row_start + m * aperture) % cfg.circumference_nm;
        w.width_nm = aperture;
        w.banks = 1;
        w.lasers_per_bank = lasers;
        cfg.windows.push_back(w);
    }
    return cfg;
}

/// Uniform rectangular circuit: `depth` slices of an X gate on every qubit.
inline circuit rectangular_1q(int width, int depth) {
    std::vector<gate> gates;
    for (int d = 0; d < depth; ++d) {
        for (int q = 0; q < width; ++q) gates.push_back(make_gate(gate_kind::X, {q}));
    }
    return make_circuit(width, std::move(gates));
}

/// Triangular circuit over B bunches of L qubits: 1-indexed bunch i carries
/// i * depth_unit slices of single-qubit work.
inline circuit triangular_1q(int bunches, int lasers, int depth_unit) {
    std::vector<gate> gates;
    for (int i = 1; i <= bunches; ++i) {
        for (int d = 0; d < i * depth_unit; ++d) {
            for (int q = (i - 1) * lasers; q < i * lasers; ++q) {
                gates.push_back(make_gate(gate_kind::X, {q}));
            }
        }
    }
    return make_circuit(bunches * lasers, std::move(gates));
}

inline native_circuit as_native(const circuit &c) {
    native_circuit nc;
    nc.width = c.width;
    nc.gates = c.gates;
    for (const auto &g : c.gates) nc.provenance.push_back(g.id);
    return nc;
}

/// Physical validity: every action inside its window for the full slot, no
/// laser or ion double-booking, and dependency-ordered gate intervals.
/// Returns an empty string when clean, else a description of the violation.
inline std::string check_schedule_validity(const schedule &s, const native_circuit &nc,
                                           const ring_config &cfg, const partition &p) {
    const std::int64_t a = cfg.action_time_ps;
    // visibility per action
    for (const auto &act : s.actions) {
        const window *w = nullptr;
        for (const auto &cand : cfg.windows) {
            if (cand.id == act.window_id) w = &cand;
        }
        if (w == nullptr) return "action references unknown window";
        for (std::int64_t ion : act.ions) {
            auto intervals = visibility_intervals(cfg, ion, *w, rational(act.t_ps + a));
            bool covered = false;
            for (const auto &[enter, exit] : intervals) {
                if (enter <= rational(act.t_ps) && rational(act.t_ps + a) <= exit) covered = true;
            }
            if (!covered) {
                return "ion " + std::to_string(ion) + " not visible for action at t=" +
                       std::to_string(act.t_ps);
            }
        }
    }
    // double booking per slot
    std::map<std::int64_t, std::set<std::tuple<int, int, int>>> lasers_at;
    std::map<std::int64_t, std::set<std::int64_t>> ions_at;
    for (const auto &act : s.actions) {
        std::vector<int> lasers;
        for (std::int64_t ion : act.ions) {
            std::int64_t stride = static_cast<std::int64_t>(p.bunch_size) * (1 + p.gap_bunches) *
                                  p.physical_per_logical;
            lasers.push_back(static_cast<int>((ion % stride) / p.physical_per_logical));
        }
        if (lasers.size() == 2 && lasers[0] == lasers[1]) lasers[1] = (lasers[1] + 1) % p.bunch_size;
        for (int laser : lasers) {
            if (!lasers_at[act.t_ps].insert({act.window_id, act.bank, laser}).second) {
                return "laser double-booked at t=" + std::to_string(act.t_ps);
            }
        }
        for (std::int64_t ion : act.ions) {
            if (!ions_at[act.t_ps].insert(ion).second) {
                return "ion " + std::to_string(ion) + " double-booked at t=" + std::to_string(act.t_ps);
            }
        }
    }
    // per gate: all actions at one bank, in consecutive slots
    std::vector<std::int64_t> start(nc.gates.size(), -1), end(nc.gates.size(), -1);
    std::map<int, std::vector<const laser_action *>> by_gate;
    for (const auto &act : s.actions) {
        if (start[act.gate_id] < 0 || act.t_ps < start[act.gate_id]) start[act.gate_id] = act.t_ps;
        end[act.gate_id] = std::max(end[act.gate_id], act.t_ps + a);
        by_gate[act.gate_id].push_back(&act);
    }
    for (size_t g = 0; g < nc.gates.size(); ++g) {
        if (start[g] < 0) return "gate " + std::to_string(g) + " missing from schedule";
        const auto &acts = by_gate[static_cast<int>(g)];
        for (const auto *act : acts) {
            if (act->window_id != acts.front()->window_id || act->bank != acts.front()->bank) {
                return "gate " + std::to_string(g) + " spreads across banks";
            }
        }
        if (end[g] - start[g] != static_cast<std::int64_t>(acts.size()) * a) {
            return "gate " + std::to_string(g) + " actions are not consecutive slots";
        }
    }
    auto dag = build_dependency_dag(nc.as_circuit());
    for (size_t g = 0; g < nc.gates.size(); ++g) {
        for (int succ : dag.succ[g]) {
            if (end[g] > start[succ]) {
                return "gate " + std::to_string(succ) + " starts before its predecessor " +
                       std::to_string(g) + " completes";
            }
        }
    }
    return "";
}

}  // namespace ringmap::testutil
