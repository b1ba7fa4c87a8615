#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace ringmap {

/// Gate vocabulary. R and XX form the native set every other kind must
/// transpile into; the rest are the standard gates accepted at parse time.
enum class gate_kind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    T,
    CNOT,
    SWAP,
    CZ,
    R,   // single-qubit rotation R(theta, phi) about the cos(phi)X + sin(phi)Y axis
    XX,  // two-qubit entangler exp(-i chi/2 X(x)X)
};

int gate_arity(gate_kind kind);
bool gate_is_native(gate_kind kind);
const char *gate_name(gate_kind kind);

struct gate {
    int id = 0;
    gate_kind kind = gate_kind::I;
    std::vector<int> operands;
    /// Declared output qubit locations ("-> q..." suffix). Empty means the
    /// outputs sit on the operand qubits (the common case). A gate whose
    /// outputs are not a subset of its operands is "mismatched" and is kept,
    /// not rejected; downstream placement validation decides feasibility.
    std::vector<int> outputs;
    double theta = 0.0;  // R angle, or the XX chi
    double phi = 0.0;    // R axis angle

    bool is_two_qubit() const { return operands.size() == 2; }
    bool is_mismatched() const;
    double chi() const { return theta; }
};

struct circuit {
    int width = 0;
    std::vector<gate> gates;  // list order is program order; gate ids are dense from 0
};

/// Immediate-dependency DAG over gate ids: edge g -> h when h is the next
/// gate after g on some shared qubit. Adjacency deduplicated per pair.
struct dependency_dag {
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;
};

struct time_slicing {
    std::vector<std::vector<int>> slices;  // gate ids per slice, ascending
    int depth = 0;
};

struct circuit_stats {
    int width = 0;
    int depth = 0;
    int gate_count = 0;
};

/// Parses the line-based circuit format:
///   qubits N
///   h 0
///   cnot 0 1
///   r 0 theta phi
///   xx 0 1 chi
/// '#' starts a comment; an optional '-> q...' suffix declares output
/// locations. Errors carry the offending line number.
circuit parse_circuit(const std::string &text);

/// Inverse of parse_circuit up to comments and whitespace; angles are printed
/// with enough digits to round-trip exactly.
std::string format_circuit(const circuit &c);

dependency_dag build_dependency_dag(const circuit &c);

/// ASAP leveling: each gate lands in slice 1 + max(predecessor slices).
/// depth == number of slices == longest dependency path in gates.
time_slicing compute_time_slices(const circuit &c);

circuit_stats compute_stats(const circuit &c);

}  // namespace ringmap
