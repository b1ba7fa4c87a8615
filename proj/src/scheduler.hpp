#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ring.hpp"
#include "transpile.hpp"

namespace ringmap {

/// Assignment of circuit qubits to ion bunches: qubit q sits in bunch q / L,
/// slot q % L. Bunches are laid out consecutively along the ring with G
/// bunch-widths of gap ions between them, and each logical qubit occupies
/// physical_per_logical consecutive ions (the laser addresses the first).
struct partition {
    int bunch_size = 0;   // L
    int bunch_count = 0;  // B
    int gap_bunches = 0;  // G
    int physical_per_logical = 1;
    std::vector<std::int64_t> qubit_to_ion;
    std::vector<std::vector<int>> bunch_gates;  // gate ids wholly inside each bunch
    std::vector<int> cross_bunch_gates;         // gate ids spanning two bunches

    int bunch_of(int qubit) const { return qubit / bunch_size; }
    int slot_of(int qubit) const { return qubit % bunch_size; }
};

struct hazard_record {
    int gate_id = 0;
    int bunch_a = 0;
    int bunch_b = 0;
    std::int64_t span_ions = 0;  // |ion(q1) - ion(q0)|
};

struct schedule_mode {
    enum class kind { serial, parallel, hybrid };
    kind k = kind::parallel;
    int ramp_passes = 0;  // hybrid only; hybrid:0 is parallel

    static schedule_mode parse(const std::string &text);
    std::string str() const;
};

struct laser_action {
    std::int64_t t_ps = 0;
    int window_id = 0;
    int bank = 0;   // bank index within the window
    int laser = 0;  // laser index within the bank
    std::vector<std::int64_t> ions;
    int gate_id = 0;
    int action_index = 0;
};

struct deferred_gate {
    int gate_id = 0;
    std::int64_t wait_ps = 0;  // actual start minus DAG-ready time
};

struct schedule_stats {
    std::int64_t makespan_ps = 0;
    std::int64_t passes_used = 0;
    std::int64_t measured_wl = 0;  // distinct (bank, laser) positions, in qubit widths
    std::vector<deferred_gate> deferred_gates;
};

struct schedule {
    std::string mode;
    int bunch_size = 0;
    int gap_bunches = 0;
    std::string config_hash;
    std::vector<laser_action> actions;  // sorted by (t_ps, window, bank, laser)
    schedule_stats stats;
};

/// Splits the circuit's qubits into ceil(W / L) bunches and classifies gates
/// as bunch-local or cross-bunch. Fails when the ring cannot hold
/// B * L * (1 + G) * physical_per_logical ions.
partition make_partition(const native_circuit &nc, const ring_config &cfg, int bunch_size, int gap_bunches);

/// One record per cross-bunch two-qubit gate: the bunches involved and the
/// ion-index span the lasers must cover simultaneously.
std::vector<hazard_record> detect_predecessors(const partition &p, const native_circuit &nc);

/// Greedy slot-based schedule construction; see the implementation notes for
/// the crossing/quota model. Deterministic: ties break on lowest gate id,
/// then lowest bank id.
schedule build_schedule(const native_circuit &nc, const ring_config &cfg, const partition &p,
                        const schedule_mode &mode);

/// Distinct laser positions ever fired, counting each operand ion's slot.
std::int64_t measure_wl(const schedule &s, const partition &p);

struct output_violation {
    int gate_id = 0;
    int output_qubit = 0;
    int output_bunch = 0;
};

/// Output-relocation feasibility: a mismatched gate is fine if every declared
/// output location falls in a bunch one of its operands already occupies;
/// anything farther is reported (relocation is not performed).
std::vector<output_violation> validate_outputs(const native_circuit &nc, const partition &p);

std::string schedule_to_json(const schedule &s);
schedule schedule_from_json(const std::string &text);

}  // namespace ringmap
