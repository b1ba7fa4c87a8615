#include "transpile.hpp"

#include <cmath>

#include "verify.hpp"

namespace ringmap {

namespace {

constexpr double kPi = M_PI;

gate r_gate(int q, double theta, double phi) {
    gate g;
    g.kind = gate_kind::R;
    g.operands = {q};
    g.theta = theta;
    g.phi = phi;
    return g;
}

gate xx_gate(int a, int b, double chi) {
    gate g;
    g.kind = gate_kind::XX;
    g.operands = {a, b};
    g.theta = chi;
    return g;
}

gate rx(int q, double theta) { return r_gate(q, theta, 0.0); }
gate ry(int q, double theta) { return r_gate(q, theta, kPi / 2.0); }

// Moelmer-Soerensen CNOT:
//   CNOT(c,t) ~ Ry(pi/2)@c, XX(pi/2), Rx(-pi/2)@c, Rx(-pi/2)@t, Ry(-pi/2)@c
void emit_cnot(std::vector<gate> &out, int c, int t) {
    out.push_back(ry(c, kPi / 2.0));
    out.push_back(xx_gate(c, t, kPi / 2.0));
    out.push_back(rx(c, -kPi / 2.0));
    out.push_back(rx(t, -kPi / 2.0));
    out.push_back(ry(c, -kPi / 2.0));
}

// Rz(a) ~ Rx(-pi/2), Ry(a), Rx(pi/2)
void emit_rz(std::vector<gate> &out, int q, double a) {
    out.push_back(rx(q, -kPi / 2.0));
    out.push_back(ry(q, a));
    out.push_back(rx(q, kPi / 2.0));
}

std::vector<gate> template_for(const gate &g) {
    std::vector<gate> out;
    const auto &ops = g.operands;
    switch (g.kind) {
        case gate_kind::I:
            break;
        case gate_kind::X:
            out.push_back(rx(ops[0], kPi));
            break;
        case gate_kind::Y:
            out.push_back(ry(ops[0], kPi));
            break;
        case gate_kind::Z:
            // X*Y = iZ
            out.push_back(ry(ops[0], kPi));
            out.push_back(rx(ops[0], kPi));
            break;
        case gate_kind::H:
            // X*Ry(pi/2) = H
            out.push_back(ry(ops[0], kPi / 2.0));
            out.push_back(rx(ops[0], kPi));
            break;
        case gate_kind::S:
            emit_rz(out, ops[0], kPi / 2.0);
            break;
        case gate_kind::T:
            emit_rz(out, ops[0], kPi / 4.0);
            break;
        case gate_kind::CNOT:
            emit_cnot(out, ops[0], ops[1]);
            break;
        case gate_kind::SWAP:
            emit_cnot(out, ops[0], ops[1]);
            emit_cnot(out, ops[1], ops[0]);
            emit_cnot(out, ops[0], ops[1]);
            break;
        case gate_kind::CZ:
            out.push_back(ry(ops[1], kPi / 2.0));
            out.push_back(rx(ops[1], kPi));
            emit_cnot(out, ops[0], ops[1]);
            out.push_back(ry(ops[1], kPi / 2.0));
            out.push_back(rx(ops[1], kPi));
            break;
        case gate_kind::R:
        case gate_kind::XX:
            out.push_back(g);
            break;
    }
    return out;
}

}  // namespace

std::vector<gate> decompose(const gate &g) {
    if (g.is_mismatched() && !gate_is_native(g.kind)) {
        raise(errc::invalid, "gate " + std::to_string(g.id) +
                                 ": cannot decompose a standard gate with relocated outputs");
    }
    auto out = template_for(g);
    if (gate_is_native(g.kind) && !out.empty()) {
        out.back().outputs = g.outputs;  // annotation survives on native fixed points
    }
    return out;
}

native_circuit transpile(const circuit &c) {
    native_circuit nc;
    nc.width = c.width;
    for (const auto &g : c.gates) {
        for (auto &ng : decompose(g)) {
            ng.id = static_cast<int>(nc.gates.size());
            nc.provenance.push_back(g.id);
            nc.gates.push_back(std::move(ng));
        }
    }
    return nc;
}

native_stats compute_native_stats(const native_circuit &nc) {
    native_stats st;
    st.width = nc.width;
    st.depth = compute_time_slices(nc.as_circuit()).depth;
    for (const auto &g : nc.gates) {
        if (g.kind == gate_kind::R) ++st.r_count;
        if (g.kind == gate_kind::XX) ++st.xx_count;
    }
    return st;
}

void certify_rule_table() {
    const gate_kind kinds[] = {gate_kind::I,  gate_kind::X,    gate_kind::Y,    gate_kind::Z,
                               gate_kind::H,  gate_kind::S,    gate_kind::T,    gate_kind::CNOT,
                               gate_kind::SWAP, gate_kind::CZ, gate_kind::R,    gate_kind::XX};
    for (gate_kind kind : kinds) {
        for (int flip = 0; flip < (gate_arity(kind) == 2 ? 2 : 1); ++flip) {
            gate g;
            g.kind = kind;
            g.operands = gate_arity(kind) == 2 ? (flip ? std::vector<int>{1, 0} : std::vector<int>{0, 1})
                                               : std::vector<int>{0};
            g.theta = 0.8130992052204008;  // arbitrary fixed probes for the parameterized kinds
            g.phi = -1.2378041609135948;
            int n = gate_arity(kind);
            circuit expanded{n, decompose(g)};
            for (size_t i = 0; i < expanded.gates.size(); ++i) expanded.gates[i].id = static_cast<int>(i);
            auto want = gate_unitary(g, n);
            auto got = circuit_unitary(expanded);
            if (!unitary_equiv(got, want, 1e-12)) {
                raise(errc::verify, std::string("decomposition rule for '") + gate_name(kind) +
                                        "' fails the unitary check");
            }
        }
    }
}

}  // namespace ringmap
