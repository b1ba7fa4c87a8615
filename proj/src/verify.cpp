#include "verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "scheduler.hpp"

namespace ringmap {

namespace {

using mat2 = std::array<cplx, 4>;
using mat4 = std::array<cplx, 16>;

constexpr cplx kI{0.0, 1.0};

mat2 rotation_matrix(double theta, double phi) {
    double c = std::cos(theta / 2.0);
    double s = std::sin(theta / 2.0);
    cplx e_minus = std::exp(-kI * phi);
    cplx e_plus = std::exp(kI * phi);
    return {cplx(c), -kI * e_minus * s, -kI * e_plus * s, cplx(c)};
}

mat2 single_qubit_matrix(const gate &g) {
    constexpr double isq = 0.70710678118654752440;
    switch (g.kind) {
        case gate_kind::I: return {1, 0, 0, 1};
        case gate_kind::X: return {0, 1, 1, 0};
        case gate_kind::Y: return {0, -kI, kI, 0};
        case gate_kind::Z: return {1, 0, 0, -1};
        case gate_kind::H: return {isq, isq, isq, -isq};
        case gate_kind::S: return {1, 0, 0, kI};
        case gate_kind::T: return {1, 0, 0, std::exp(kI * (M_PI / 4.0))};
        case gate_kind::R: return rotation_matrix(g.theta, g.phi);
        default: raise(errc::invalid, "not a single-qubit gate");
    }
}

// Index convention inside a 4x4 block: low bit = first operand.
mat4 two_qubit_matrix(const gate &g) {
    mat4 m{};
    auto set = [&m](int r, int c, cplx v) { m[static_cast<size_t>(r) * 4 + c] = v; };
    switch (g.kind) {
        case gate_kind::CNOT:
            // control = operand 0 (low bit), target = operand 1
            set(0, 0, 1);
            set(2, 2, 1);
            set(1, 3, 1);
            set(3, 1, 1);
            break;
        case gate_kind::SWAP:
            set(0, 0, 1);
            set(1, 2, 1);
            set(2, 1, 1);
            set(3, 3, 1);
            break;
        case gate_kind::CZ:
            set(0, 0, 1);
            set(1, 1, 1);
            set(2, 2, 1);
            set(3, 3, -1);
            break;
        case gate_kind::XX: {
            double c = std::cos(g.chi() / 2.0);
            cplx ms = -kI * std::sin(g.chi() / 2.0);
            for (int k = 0; k < 4; ++k) {
                set(k, k, c);
                set(k, 3 - k, ms);
            }
            break;
        }
        default: raise(errc::invalid, "not a two-qubit gate");
    }
    return m;
}

void apply_1q(cplx *data, int n, int q, const mat2 &m, int columns) {
    const int dim = 1 << n;
    const int bit = 1 << q;
    for (int col = 0; col < columns; ++col) {
        for (int r = 0; r < dim; ++r) {
            if (r & bit) continue;
            size_t i0 = static_cast<size_t>(r) * columns + col;
            size_t i1 = static_cast<size_t>(r | bit) * columns + col;
            cplx u0 = data[i0];
            cplx u1 = data[i1];
            data[i0] = m[0] * u0 + m[1] * u1;
            data[i1] = m[2] * u0 + m[3] * u1;
        }
    }
}

void apply_2q(cplx *data, int n, int q0, int q1, const mat4 &m, int columns) {
    const int dim = 1 << n;
    const int b0 = 1 << q0;
    const int b1 = 1 << q1;
    for (int col = 0; col < columns; ++col) {
        for (int r = 0; r < dim; ++r) {
            if ((r & b0) || (r & b1)) continue;
            size_t idx[4] = {
                static_cast<size_t>(r) * columns + col,
                static_cast<size_t>(r | b0) * columns + col,
                static_cast<size_t>(r | b1) * columns + col,
                static_cast<size_t>(r | b0 | b1) * columns + col,
            };
            cplx u[4] = {data[idx[0]], data[idx[1]], data[idx[2]], data[idx[3]]};
            for (int i = 0; i < 4; ++i) {
                cplx acc = 0;
                for (int j = 0; j < 4; ++j) acc += m[static_cast<size_t>(i) * 4 + j] * u[j];
                data[idx[i]] = acc;
            }
        }
    }
}

void apply_to_buffer(cplx *data, int n, int columns, const gate &g) {
    if (g.operands.size() == 1) {
        apply_1q(data, n, g.operands[0], single_qubit_matrix(g), columns);
    } else {
        apply_2q(data, n, g.operands[0], g.operands[1], two_qubit_matrix(g), columns);
    }
}

}  // namespace

unitary unitary::identity(int n) {
    unitary u;
    u.n = n;
    u.a.assign(static_cast<size_t>(1) << (2 * n), cplx(0));
    for (int i = 0; i < u.dim(); ++i) u.at(i, i) = 1;
    return u;
}

state_vector state_vector::zero(int n) {
    state_vector s;
    s.n = n;
    s.amp.assign(static_cast<size_t>(1) << n, cplx(0));
    s.amp[0] = 1;
    return s;
}

double state_vector::norm() const {
    double acc = 0;
    for (const auto &v : amp) acc += std::norm(v);
    return std::sqrt(acc);
}

void apply_gate(unitary &u, const gate &g) {
    for (int q : g.operands) {
        if (q < 0 || q >= u.n) raise(errc::invalid, "gate operand outside unitary width");
    }
    apply_to_buffer(u.a.data(), u.n, u.dim(), g);
}

void apply_gate(state_vector &s, const gate &g) {
    for (int q : g.operands) {
        if (q < 0 || q >= s.n) raise(errc::invalid, "gate operand outside state width");
    }
    apply_to_buffer(s.amp.data(), s.n, 1, g);
}

unitary gate_unitary(const gate &g, int n) {
    if (n > kMaxUnitaryQubits) raise(errc::invalid, "unitary width capped at 10 qubits");
    auto u = unitary::identity(n);
    apply_gate(u, g);
    return u;
}

unitary circuit_unitary(const circuit &c) {
    if (c.width > kMaxUnitaryQubits) raise(errc::invalid, "unitary width capped at 10 qubits");
    auto u = unitary::identity(c.width);
    for (const auto &g : c.gates) apply_gate(u, g);
    return u;
}

double unitary_deviation(const unitary &a, const unitary &b) {
    if (a.n != b.n) raise(errc::invalid, "unitary dimension mismatch");
    // Anchor the phase at b's largest entry.
    size_t anchor = 0;
    double best = -1;
    for (size_t i = 0; i < b.a.size(); ++i) {
        double m = std::abs(b.a[i]);
        if (m > best) {
            best = m;
            anchor = i;
        }
    }
    if (best <= 0) raise(errc::invalid, "zero matrix has no phase anchor");
    cplx phase = a.a[anchor] / b.a[anchor];
    double mag = std::abs(phase);
    if (mag < 1e-300) return 1.0;  // anchor entry vanished; maximally different
    phase /= mag;
    double worst = 0;
    for (size_t i = 0; i < a.a.size(); ++i) {
        worst = std::max(worst, std::abs(a.a[i] - phase * b.a[i]));
    }
    return worst;
}

bool unitary_equiv(const unitary &a, const unitary &b, double tol) {
    return unitary_deviation(a, b) <= tol;
}

replay_result replay(const schedule &s, const native_circuit &nc) {
    struct seen {
        std::int64_t last_t = -1;
        std::vector<int> indices;
    };
    std::vector<seen> by_gate(nc.gates.size());
    for (const auto &a : s.actions) {
        if (a.gate_id < 0 || a.gate_id >= static_cast<int>(nc.gates.size())) {
            raise(errc::invalid, "schedule references unknown gate " + std::to_string(a.gate_id));
        }
        auto &g = by_gate[a.gate_id];
        g.last_t = std::max(g.last_t, a.t_ps);
        g.indices.push_back(a.action_index);
    }
    replay_result result;
    for (size_t i = 0; i < by_gate.size(); ++i) {
        auto &g = by_gate[i];
        std::sort(g.indices.begin(), g.indices.end());
        bool complete = !g.indices.empty();
        for (size_t a = 0; a < g.indices.size(); ++a) complete = complete && g.indices[a] == static_cast<int>(a);
        if (!complete) {
            raise(errc::invalid, "incomplete schedule: gate " + std::to_string(i) + " is missing actions");
        }
        result.completion_order.push_back(static_cast<int>(i));
    }
    std::sort(result.completion_order.begin(), result.completion_order.end(), [&](int a, int b) {
        if (by_gate[a].last_t != by_gate[b].last_t) return by_gate[a].last_t < by_gate[b].last_t;
        return a < b;
    });

    std::vector<int> position(nc.gates.size());
    for (size_t i = 0; i < result.completion_order.size(); ++i) position[result.completion_order[i]] = static_cast<int>(i);
    auto dag = build_dependency_dag(nc.as_circuit());
    for (size_t g = 0; g < nc.gates.size(); ++g) {
        for (int succ : dag.succ[g]) {
            if (position[g] >= position[succ]) {
                raise(errc::verify, "completion order violates the dependency DAG between gates " +
                                        std::to_string(g) + " and " + std::to_string(succ));
            }
        }
    }

    result.u = unitary::identity(nc.width);
    for (int id : result.completion_order) apply_gate(result.u, nc.gates[id]);
    return result;
}

}  // namespace ringmap
