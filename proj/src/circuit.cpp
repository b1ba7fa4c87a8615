#include "circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace ringmap {

namespace {

struct kind_info {
    const char *name;
    gate_kind kind;
    int arity;
    int angles;
};

constexpr kind_info kKinds[] = {
    {"i", gate_kind::I, 1, 0},     {"x", gate_kind::X, 1, 0},    {"y", gate_kind::Y, 1, 0},
    {"z", gate_kind::Z, 1, 0},     {"h", gate_kind::H, 1, 0},    {"s", gate_kind::S, 1, 0},
    {"t", gate_kind::T, 1, 0},     {"cnot", gate_kind::CNOT, 2, 0}, {"swap", gate_kind::SWAP, 2, 0},
    {"cz", gate_kind::CZ, 2, 0},   {"r", gate_kind::R, 1, 2},    {"xx", gate_kind::XX, 2, 1},
};

const kind_info *lookup_kind(const std::string &mnemonic) {
    for (const auto &k : kKinds) {
        if (mnemonic == k.name) return &k;
    }
    return nullptr;
}

const kind_info &info_for(gate_kind kind) {
    for (const auto &k : kKinds) {
        if (k.kind == kind) return k;
    }
    raise(errc::invalid, "unknown gate kind");
}

[[noreturn]] void parse_fail(int line, const std::string &message) {
    raise(errc::parse, "line " + std::to_string(line) + ": " + message);
}

int parse_qubit(const std::string &token, int width, int line) {
    size_t pos = 0;
    int q = 0;
    try {
        q = std::stoi(token, &pos);
    } catch (const std::exception &) {
        parse_fail(line, "bad qubit index '" + token + "'");
    }
    if (pos != token.size()) parse_fail(line, "bad qubit index '" + token + "'");
    if (q < 0 || q >= width) {
        parse_fail(line, "qubit " + std::to_string(q) + " out of range [0, " + std::to_string(width) + ")");
    }
    return q;
}

double parse_angle(const std::string &token, int line) {
    size_t pos = 0;
    double a = 0.0;
    try {
        a = std::stod(token, &pos);
    } catch (const std::exception &) {
        parse_fail(line, "bad angle '" + token + "'");
    }
    if (pos != token.size()) parse_fail(line, "bad angle '" + token + "'");
    if (!std::isfinite(a)) parse_fail(line, "non-finite angle '" + token + "'");
    return a;
}

std::vector<std::string> tokenize(const std::string &line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

std::string strip_comment(const std::string &line) {
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string format_angle(double a) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    return buf;
}

}  // namespace

int gate_arity(gate_kind kind) { return info_for(kind).arity; }
bool gate_is_native(gate_kind kind) { return kind == gate_kind::R || kind == gate_kind::XX; }
const char *gate_name(gate_kind kind) { return info_for(kind).name; }

bool gate::is_mismatched() const {
    for (int out : outputs) {
        if (std::find(operands.begin(), operands.end(), out) == operands.end()) return true;
    }
    return false;
}

circuit parse_circuit(const std::string &text) {
    circuit c;
    bool have_width = false;
    int next_id = 0;
    int line_no = 0;

    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        auto tokens = tokenize(strip_comment(raw));
        if (tokens.empty()) continue;

        if (!have_width) {
            if (tokens[0] != "qubits" || tokens.size() != 2) {
                parse_fail(line_no, "expected 'qubits N' header");
            }
            size_t pos = 0;
            int w = 0;
            try {
                w = std::stoi(tokens[1], &pos);
            } catch (const std::exception &) {
                parse_fail(line_no, "bad qubit count '" + tokens[1] + "'");
            }
            if (pos != tokens[1].size() || w < 1) parse_fail(line_no, "qubit count must be >= 1");
            c.width = w;
            have_width = true;
            continue;
        }

        if (tokens[0] == "measure" || tokens[0] == "reset" || tokens[0] == "barrier") {
            parse_fail(line_no, "'" + tokens[0] + "' is not supported: circuits are unitary-only");
        }
        const kind_info *ki = lookup_kind(tokens[0]);
        if (ki == nullptr) parse_fail(line_no, "unknown gate '" + tokens[0] + "'");

        // Split off an optional '-> q...' output-location suffix.
        std::vector<std::string> args;
        std::vector<std::string> outs;
        bool in_outputs = false;
        for (size_t i = 1; i < tokens.size(); ++i) {
            if (tokens[i] == "->") {
                if (in_outputs) parse_fail(line_no, "duplicate '->'");
                in_outputs = true;
            } else {
                (in_outputs ? outs : args).push_back(tokens[i]);
            }
        }
        if (static_cast<int>(args.size()) != ki->arity + ki->angles) {
            parse_fail(line_no, std::string("'") + ki->name + "' expects " + std::to_string(ki->arity) +
                                    " qubit(s) and " + std::to_string(ki->angles) + " angle(s)");
        }
        if (in_outputs && outs.empty()) parse_fail(line_no, "'->' with no output qubits");

        gate g;
        g.id = next_id++;
        g.kind = ki->kind;
        for (int i = 0; i < ki->arity; ++i) {
            g.operands.push_back(parse_qubit(args[i], c.width, line_no));
        }
        for (size_t i = 0; i + 1 < g.operands.size(); ++i) {
            for (size_t j = i + 1; j < g.operands.size(); ++j) {
                if (g.operands[i] == g.operands[j]) {
                    parse_fail(line_no, "duplicate operand qubit " + std::to_string(g.operands[i]));
                }
            }
        }
        if (ki->angles >= 1) g.theta = parse_angle(args[ki->arity], line_no);
        if (ki->angles >= 2) g.phi = parse_angle(args[ki->arity + 1], line_no);
        for (const auto &tok : outs) {
            int q = parse_qubit(tok, c.width, line_no);
            if (std::find(g.outputs.begin(), g.outputs.end(), q) != g.outputs.end()) {
                parse_fail(line_no, "duplicate output qubit " + std::to_string(q));
            }
            g.outputs.push_back(q);
        }
        c.gates.push_back(std::move(g));
    }
    if (!have_width) raise(errc::parse, "missing 'qubits N' header");
    return c;
}

std::string format_circuit(const circuit &c) {
    std::string out = "qubits " + std::to_string(c.width) + "\n";
    for (const auto &g : c.gates) {
        out += gate_name(g.kind);
        for (int q : g.operands) out += " " + std::to_string(q);
        const auto &ki = info_for(g.kind);
        if (ki.angles >= 1) out += " " + format_angle(g.theta);
        if (ki.angles >= 2) out += " " + format_angle(g.phi);
        if (!g.outputs.empty()) {
            out += " ->";
            for (int q : g.outputs) out += " " + std::to_string(q);
        }
        out += "\n";
    }
    return out;
}

dependency_dag build_dependency_dag(const circuit &c) {
    dependency_dag dag;
    dag.succ.resize(c.gates.size());
    dag.pred.resize(c.gates.size());
    std::vector<int> last_on_qubit(c.width, -1);
    for (const auto &g : c.gates) {
        for (int q : g.operands) {
            int p = last_on_qubit[q];
            if (p >= 0) {
                auto &s = dag.succ[p];
                if (std::find(s.begin(), s.end(), g.id) == s.end()) {
                    s.push_back(g.id);
                    dag.pred[g.id].push_back(p);
                }
            }
            last_on_qubit[q] = g.id;
        }
    }
    return dag;
}

time_slicing compute_time_slices(const circuit &c) {
    time_slicing ts;
    std::vector<int> level(c.gates.size(), 0);
    std::vector<int> qubit_level(c.width, 0);  // next free slice per qubit
    for (const auto &g : c.gates) {
        int lv = 0;
        for (int q : g.operands) lv = std::max(lv, qubit_level[q]);
        level[g.id] = lv;
        for (int q : g.operands) qubit_level[q] = lv + 1;
        ts.depth = std::max(ts.depth, lv + 1);
    }
    ts.slices.resize(ts.depth);
    for (const auto &g : c.gates) ts.slices[level[g.id]].push_back(g.id);
    return ts;
}

circuit_stats compute_stats(const circuit &c) {
    return circuit_stats{c.width, compute_time_slices(c).depth, static_cast<int>(c.gates.size())};
}

}  // namespace ringmap
