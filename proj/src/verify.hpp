#pragma once

#include <complex>
#include <vector>

#include "circuit.hpp"

namespace ringmap {

/// Dense desk-scale simulation used to certify transpilation and schedules.
/// Qubit order is little-endian throughout: qubit 0 is the least significant
/// bit of a basis-state index.

using cplx = std::complex<double>;

constexpr int kMaxUnitaryQubits = 10;
constexpr int kMaxStateQubits = 12;

struct unitary {
    int n = 0;                // qubit count; dimension is 2^n
    std::vector<cplx> a;      // row-major, dim x dim

    static unitary identity(int n);
    int dim() const { return 1 << n; }
    cplx &at(int row, int col) { return a[static_cast<size_t>(row) * dim() + col]; }
    const cplx &at(int row, int col) const { return a[static_cast<size_t>(row) * dim() + col]; }
};

struct state_vector {
    int n = 0;
    std::vector<cplx> amp;

    static state_vector zero(int n);  // |0...0>
    double norm() const;
};

/// Left-multiplies the embedded gate matrix onto u (u <- G u).
void apply_gate(unitary &u, const gate &g);
void apply_gate(state_vector &s, const gate &g);

/// Full 2^n x 2^n matrix of a single gate embedded at its operand positions.
unitary gate_unitary(const gate &g, int n);

/// Ordered product of the circuit's gates (later gates multiply on the left).
unitary circuit_unitary(const circuit &c);

/// Global-phase-quotient equivalence: min over unit phase of the max-norm
/// difference, anchored at b's largest-magnitude entry.
bool unitary_equiv(const unitary &a, const unitary &b, double tol);

/// Same test but reporting the residual deviation.
double unitary_deviation(const unitary &a, const unitary &b);

struct schedule;        // scheduler.hpp
struct native_circuit;  // transpile.hpp

struct replay_result {
    std::vector<int> completion_order;  // gate ids by (last action time, id)
    unitary u;
};

/// Reconstructs the gate completion order from the schedule's action
/// timestamps, checks it against the dependency DAG (a violation signals a
/// scheduler bug) and composes the unitary in that order.
replay_result replay(const schedule &s, const native_circuit &nc);

}  // namespace ringmap
