#pragma once

#include <vector>

#include "circuit.hpp"

namespace ringmap {

/// Result of rewriting a circuit into the native set {R, XX}. Gate ids are
/// dense from 0; provenance[i] is the source-gate id native gate i came from.
struct native_circuit {
    int width = 0;
    std::vector<gate> gates;
    std::vector<int> provenance;

    circuit as_circuit() const { return circuit{width, gates}; }
};

struct native_stats {
    int width = 0;
    int depth = 0;
    int r_count = 0;
    int xx_count = 0;
};

/// Expands one standard gate into its native template. Native gates are fixed
/// points; identity elides to nothing. Output-location annotations survive
/// only on native gates (a mismatched standard gate cannot be rewritten
/// faithfully and is an error).
std::vector<gate> decompose(const gate &g);

native_circuit transpile(const circuit &c);

native_stats compute_native_stats(const native_circuit &nc);

/// Re-checks every decomposition rule against the dense unitary oracle at
/// max-norm tolerance 1e-12 (up to global phase). Raises on the first broken
/// rule; the test suite calls this to fail fast.
void certify_rule_table();

}  // namespace ringmap
