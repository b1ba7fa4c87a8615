#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "circuit.hpp"
#include "testutil.hpp"

using namespace ringmap;
using namespace ringmap::testutil;

TEST_CASE("parse a small circuit") {
    auto c = parse_circuit("qubits 2\nh 0\ncnot 0 1\n");
    CHECK(c.width == 2);
    REQUIRE(c.gates.size() == 2);
    CHECK(c.gates[0].kind == gate_kind::H);
    CHECK(c.gates[0].operands == std::vector<int>{0});
    CHECK(c.gates[1].kind == gate_kind::CNOT);
    CHECK(c.gates[1].operands == std::vector<int>{0, 1});
    CHECK(c.gates[0].id == 0);
    CHECK(c.gates[1].id == 1);
}

TEST_CASE("parse empty circuit and comments") {
    auto c = parse_circuit("# preamble\nqubits 1\n# nothing else\n");
    CHECK(c.width == 1);
    CHECK(c.gates.empty());

    auto trailing = parse_circuit("qubits 2\nx 1 # trailing note\n");
    CHECK(trailing.gates.size() == 1);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_circuit("qubits 2\ncnot 0 0\n"), doctest::Contains("line 2"), error);
    CHECK_THROWS_WITH_AS(parse_circuit("qubits 2\nh 5\n"), doctest::Contains("out of range"), error);
    CHECK_THROWS_WITH_AS(parse_circuit("qubits 2\ncnot 0\n"), doctest::Contains("expects"), error);
    CHECK_THROWS_WITH_AS(parse_circuit("qubits 2\nr 0 nan 0\n"), doctest::Contains("non-finite"), error);
    CHECK_THROWS_WITH_AS(parse_circuit("qubits 2\nfoo 0\n"), doctest::Contains("unknown gate"), error);
    CHECK_THROWS_AS(parse_circuit("h 0\n"), error);           // missing header
    CHECK_THROWS_AS(parse_circuit("qubits 0\n"), error);      // zero width
    CHECK_THROWS_AS(parse_circuit("qubits 2\nr 0 1.0\n"), error);  // missing angle
}

TEST_CASE("measurement and classical control are rejected") {
    CHECK_THROWS_WITH_AS(parse_circuit("qubits 1\nmeasure 0\n"), doctest::Contains("unitary-only"), error);
}

TEST_CASE("output annotations flag relocated-output gates") {
    auto c = parse_circuit("qubits 3\nx 0 -> 0\ncnot 0 1 -> 1\nx 0 -> 2\n");
    CHECK_FALSE(c.gates[0].is_mismatched());  // same location
    CHECK_FALSE(c.gates[1].is_mismatched());  // subset of operands
    CHECK(c.gates[2].is_mismatched());        // relocated output
    CHECK(c.gates[2].outputs == std::vector<int>{2});
}

TEST_CASE("angles parse as radians") {
    auto c = parse_circuit("qubits 2\nr 0 1.5707963267948966 -0.25\nxx 0 1 0.5\n");
    CHECK(c.gates[0].theta == doctest::Approx(1.5707963267948966));
    CHECK(c.gates[0].phi == doctest::Approx(-0.25));
    CHECK(c.gates[1].chi() == doctest::Approx(0.5));
}

TEST_CASE("dependency DAG follows per-qubit chains") {
    auto c = make_circuit(2, {make_gate(gate_kind::H, {0}), make_gate(gate_kind::CNOT, {0, 1}),
                              make_gate(gate_kind::X, {1})});
    auto dag = build_dependency_dag(c);
    CHECK(dag.succ[0] == std::vector<int>{1});
    CHECK(dag.succ[1] == std::vector<int>{2});
    CHECK(dag.succ[2].empty());
    CHECK(dag.pred[2] == std::vector<int>{1});
}

TEST_CASE("disjoint gates have no dependencies") {
    auto c = make_circuit(2, {make_gate(gate_kind::X, {0}), make_gate(gate_kind::Y, {1})});
    auto dag = build_dependency_dag(c);
    CHECK(dag.succ[0].empty());
    CHECK(dag.succ[1].empty());
}

TEST_CASE("chained two-qubit gates deduplicate edges") {
    // hand oracle: g0->g1 via qubit 1, g0->g2 via qubit 0, g1->g2 via qubit 1
    auto c = make_circuit(3, {make_gate(gate_kind::CNOT, {0, 1}), make_gate(gate_kind::CNOT, {1, 2}),
                              make_gate(gate_kind::CNOT, {0, 1})});
    auto dag = build_dependency_dag(c);
    CHECK(dag.succ[0] == std::vector<int>{1, 2});
    CHECK(dag.succ[1] == std::vector<int>{2});
    auto preds = dag.pred[2];
    std::sort(preds.begin(), preds.end());
    CHECK(preds == std::vector<int>{0, 1});
}

TEST_CASE("time slices: parallel then dependent") {
    auto c = make_circuit(2, {make_gate(gate_kind::H, {0}), make_gate(gate_kind::H, {1}),
                              make_gate(gate_kind::CNOT, {0, 1})});
    auto ts = compute_time_slices(c);
    CHECK(ts.depth == 2);
    REQUIRE(ts.slices.size() == 2);
    CHECK(ts.slices[0] == std::vector<int>{0, 1});
    CHECK(ts.slices[1] == std::vector<int>{2});
}

TEST_CASE("time slices: empty and chain") {
    CHECK(compute_time_slices(circuit{1, {}}).depth == 0);

    std::vector<gate> chain;
    for (int i = 0; i < 10; ++i) chain.push_back(make_gate(gate_kind::X, {0}));
    auto ts = compute_time_slices(make_circuit(1, std::move(chain)));
    CHECK(ts.depth == 10);
    for (const auto &slice : ts.slices) CHECK(slice.size() == 1);
}

TEST_CASE("circuit stats") {
    // four wires, three full stages of one-qubit gates
    std::vector<gate> gates;
    for (int stage = 0; stage < 3; ++stage) {
        for (int q = 0; q < 4; ++q) gates.push_back(make_gate(gate_kind::H, {q}));
    }
    auto st = compute_stats(make_circuit(4, std::move(gates)));
    CHECK(st.width == 4);
    CHECK(st.depth == 3);
    CHECK(st.gate_count == 12);

    auto single = compute_stats(make_circuit(2, {make_gate(gate_kind::CNOT, {0, 1})}));
    CHECK(single.width == 2);
    CHECK(single.depth == 1);
    CHECK(single.gate_count == 1);
}

TEST_CASE("property: depth equals brute-force longest DAG path") {
    std::mt19937 rng(20260809);
    for (int trial = 0; trial < 60; ++trial) {
        int width = 1 + static_cast<int>(rng() % 8);
        int n = static_cast<int>(rng() % 51);
        auto c = random_circuit(rng, width, n);
        auto dag = build_dependency_dag(c);
        CHECK(compute_time_slices(c).depth == longest_dag_path(dag));
    }
}

TEST_CASE("property: slices are qubit-disjoint and cover every gate once") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        auto c = random_circuit(rng, 1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 40));
        auto ts = compute_time_slices(c);
        std::set<int> seen;
        for (const auto &slice : ts.slices) {
            std::set<int> qubits;
            for (int id : slice) {
                CHECK(seen.insert(id).second);
                for (int q : c.gates[id].operands) CHECK(qubits.insert(q).second);
            }
        }
        CHECK(seen.size() == c.gates.size());
        CHECK(ts.slices.size() <= c.gates.size());
    }
}

TEST_CASE("slice count equals gate count only for total chains") {
    auto chain = make_circuit(1, {make_gate(gate_kind::X, {0}), make_gate(gate_kind::H, {0})});
    CHECK(compute_time_slices(chain).depth == 2);

    auto parallel = make_circuit(2, {make_gate(gate_kind::X, {0}), make_gate(gate_kind::H, {1})});
    CHECK(compute_time_slices(parallel).depth < 2);
}

TEST_CASE("property: serialize and reparse is structurally identical") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        auto c = random_circuit(rng, 1 + static_cast<int>(rng() % 5), static_cast<int>(rng() % 30));
        auto back = parse_circuit(format_circuit(c));
        REQUIRE(back.width == c.width);
        REQUIRE(back.gates.size() == c.gates.size());
        for (size_t i = 0; i < c.gates.size(); ++i) {
            CHECK(back.gates[i].kind == c.gates[i].kind);
            CHECK(back.gates[i].operands == c.gates[i].operands);
            CHECK(back.gates[i].outputs == c.gates[i].outputs);
            CHECK(back.gates[i].theta == c.gates[i].theta);  // exact: %.17g round-trips
            CHECK(back.gates[i].phi == c.gates[i].phi);
        }
    }
}

TEST_CASE("format keeps output annotations") {
    auto c = parse_circuit("qubits 3\nr 1 0.5 0.25 -> 2\n");
    auto text = format_circuit(c);
    auto back = parse_circuit(text);
    CHECK(back.gates[0].outputs == std::vector<int>{2});
}
