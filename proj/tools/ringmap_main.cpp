// ringmap command-line front end. Everything domain-specific goes through the
// C API in ringmap.h; this file only handles flags, files and manifests.

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ringmap.h"

namespace {

using nlohmann::json;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct cli_error {
    int exit_code;
    std::string message;
};

[[noreturn]] void fail(int exit_code, const std::string &message) {
    throw cli_error{exit_code, message};
}

int exit_code_for(int status) {
    switch (status) {
        case RM_OK: return 0;
        case RM_ERR_INFEASIBLE:
        case RM_ERR_VERIFY:
        case RM_ERR_INTERNAL: return kExitDomain;
        default: return kExitUsage;
    }
}

void check(int status) {
    if (status != RM_OK) fail(exit_code_for(status), rm_last_error());
}

std::string owned(char *s) {
    if (s == nullptr) fail(kExitDomain, "out of memory");
    std::string result(s);
    rm_string_free(s);
    return result;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(kExitUsage, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Atomic write: temp file in the same directory, then rename over the target.
void write_file(const std::string &path, const std::string &content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(kExitDomain, "cannot write '" + tmp + "'");
        out << content;
        if (!out.flush()) fail(kExitDomain, "write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        fail(kExitDomain, "cannot rename '" + tmp + "' to '" + path + "'");
    }
}

void emit(const std::optional<std::string> &out_path, const std::string &content) {
    if (out_path) {
        write_file(*out_path, content);
    } else {
        std::cout << content;
    }
}

std::string hash_hex(const std::string &text) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(rm_hash_bytes(text.data(), text.size())));
    return buf;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json make_manifest(const std::string &subcommand, const json &inputs, const json &options,
                   bool no_timestamp) {
    json m;
    m["version"] = rm_version();
    m["subcommand"] = subcommand;
    m["inputs"] = inputs;
    m["options"] = options;
    if (!no_timestamp) m["timestamp"] = utc_timestamp();
    return m;
}

std::string canonical(const json &doc) {
    char *out = nullptr;
    check(rm_json_canonical(doc.dump().c_str(), &out));
    return owned(out);
}

// RAII wrappers over the C handles.
using circuit_ptr = std::unique_ptr<rm_circuit, decltype(&rm_circuit_free)>;
using native_ptr = std::unique_ptr<rm_native, decltype(&rm_native_free)>;
using ring_ptr = std::unique_ptr<rm_ring, decltype(&rm_ring_free)>;
using schedule_ptr = std::unique_ptr<rm_schedule, decltype(&rm_schedule_free)>;

circuit_ptr load_circuit(const std::string &text) {
    rm_circuit *c = nullptr;
    check(rm_circuit_parse(text.c_str(), &c));
    return circuit_ptr(c, rm_circuit_free);
}

ring_ptr load_ring(const std::string &text) {
    rm_ring *r = nullptr;
    check(rm_ring_parse(text.c_str(), &r));
    return ring_ptr(r, rm_ring_free);
}

int run(int argc, char **argv) {
    CLI::App app{"storage-ring quantum circuit mapper"};
    app.set_version_flag("--version", rm_version());
    app.require_subcommand(1);
    bool no_timestamp = false;
    app.add_flag("--no-timestamp", no_timestamp, "omit the manifest timestamp");
    app.fallthrough();  // let subcommands see the app-level flags

    // transpile
    auto *cmd_transpile = app.add_subcommand("transpile", "rewrite a circuit into the native {r, xx} set");
    std::string t_circuit, t_out, t_provenance;
    cmd_transpile->add_option("--circuit", t_circuit, "circuit file")->required();
    cmd_transpile->add_option("--out", t_out, "native circuit output file")->required();
    cmd_transpile->add_option("--provenance", t_provenance, "provenance report path (default <out>.provenance.json)");

    // schedule
    auto *cmd_schedule = app.add_subcommand("schedule", "emit a laser-action schedule");
    std::string s_circuit, s_ring, s_mode = "parallel", s_out;
    int s_bunch = 1, s_gap = 0;
    cmd_schedule->add_option("--circuit", s_circuit, "circuit file")->required();
    cmd_schedule->add_option("--ring", s_ring, "ring config file")->required();
    cmd_schedule->add_option("--mode", s_mode, "serial | parallel | hybrid:K");
    cmd_schedule->add_option("--bunch-size", s_bunch, "ions per bunch (L)")->required();
    cmd_schedule->add_option("--gap", s_gap, "gap between bunches, in bunches (G)");
    cmd_schedule->add_option("--out", s_out, "schedule output file")->required();

    // timing
    auto *cmd_timing = app.add_subcommand("timing", "evaluate the laser-bank width equations");
    std::int64_t w = 0, d = 0, wstar = 0, dstar = 0, dwstar = -1;
    std::string ti_out;
    cmd_timing->add_option("--w", w, "circuit width W")->required();
    cmd_timing->add_option("--d", d, "circuit depth D")->required();
    cmd_timing->add_option("--wstar", wstar, "per-bank width W*")->required();
    cmd_timing->add_option("--dstar", dstar, "per-pass depth D*")->required();
    cmd_timing->add_option("--dwstar", dwstar, "per-pass shift width (enables the general form)");
    cmd_timing->add_option("--out", ti_out, "output file (default stdout)");

    // analyze
    auto *cmd_analyze = app.add_subcommand("analyze", "ring sizing and latency report");
    std::string a_ring, a_circuit, a_out;
    cmd_analyze->add_option("--ring", a_ring, "ring config file")->required();
    cmd_analyze->add_option("--circuit", a_circuit, "circuit file (adds pass and WL analysis)");
    cmd_analyze->add_option("--out", a_out, "output file (default stdout)");

    // verify
    auto *cmd_verify = app.add_subcommand("verify", "replay a schedule against its source circuit");
    std::string v_circuit, v_schedule, v_out;
    double v_tol = 1e-9;
    cmd_verify->add_option("--circuit", v_circuit, "source circuit file")->required();
    cmd_verify->add_option("--schedule", v_schedule, "schedule JSON file")->required();
    cmd_verify->add_option("--tol", v_tol, "equivalence tolerance (default 1e-9)");
    cmd_verify->add_option("--out", v_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (cmd_transpile->parsed()) {
        auto text = read_file(t_circuit);
        auto c = load_circuit(text);
        rm_native *nc_raw = nullptr;
        check(rm_transpile(c.get(), &nc_raw));
        native_ptr nc(nc_raw, rm_native_free);
        write_file(t_out, owned(rm_native_format(nc.get())));

        json body = json::parse(owned(rm_native_provenance_json(nc.get())));
        body["manifest"] = make_manifest(
            "transpile", {{t_circuit, hash_hex(text)}},
            {{"circuit", t_circuit}}, no_timestamp);
        std::string prov_path = t_provenance.empty() ? t_out + ".provenance.json" : t_provenance;
        write_file(prov_path, canonical(body));
        return 0;
    }

    if (cmd_schedule->parsed()) {
        auto circuit_text = read_file(s_circuit);
        auto ring_text = read_file(s_ring);
        auto c = load_circuit(circuit_text);
        auto r = load_ring(ring_text);
        rm_native *nc_raw = nullptr;
        check(rm_transpile(c.get(), &nc_raw));
        native_ptr nc(nc_raw, rm_native_free);

        std::string config_hash = hash_hex(ring_text + circuit_text);
        rm_schedule *s_raw = nullptr;
        check(rm_schedule_build(nc.get(), r.get(), s_mode.c_str(), s_bunch, s_gap, config_hash.c_str(),
                                &s_raw));
        schedule_ptr sched(s_raw, rm_schedule_free);

        json body = json::parse(owned(rm_schedule_json(sched.get())));
        body["manifest"] = make_manifest(
            "schedule", {{s_circuit, hash_hex(circuit_text)}, {s_ring, hash_hex(ring_text)}},
            {{"mode", s_mode}, {"bunch_size", s_bunch}, {"gap", s_gap}}, no_timestamp);
        write_file(s_out, canonical(body));
        return 0;
    }

    if (cmd_timing->parsed()) {
        json body;
        body["passes"] = rm_pass_count(d, dstar);
        std::int64_t value = 0;
        if (dwstar >= 0 && rm_wl_general(w, d, wstar, dstar, dwstar, &value) == RM_OK) {
            body["wl_general_qubits"] = value;
        }
        if (rm_wl_serial(w, d, wstar, dstar, &value) == RM_OK) body["wl_serial_qubits"] = value;
        if (rm_wl_parallel(w, d, wstar, dstar, &value) == RM_OK) body["wl_parallel_qubits"] = value;
        if (body["passes"].get<std::int64_t>() < 0) fail(kExitUsage, "timing needs D >= 0 and D* >= 1");
        if (!body.contains("wl_serial_qubits") && !body.contains("wl_parallel_qubits")) {
            fail(kExitUsage, rm_last_error());
        }
        json options{{"w", w}, {"d", d}, {"wstar", wstar}, {"dstar", dstar}};
        if (dwstar >= 0) options["dwstar"] = dwstar;
        body["manifest"] = make_manifest("timing", json::object(), options, no_timestamp);
        emit(ti_out.empty() ? std::nullopt : std::optional<std::string>(ti_out), canonical(body));
        return 0;
    }

    if (cmd_analyze->parsed()) {
        auto ring_text = read_file(a_ring);
        auto r = load_ring(ring_text);
        circuit_ptr c(nullptr, rm_circuit_free);
        json inputs{{a_ring, hash_hex(ring_text)}};
        json options{{"ring", a_ring}};
        if (!a_circuit.empty()) {
            auto circuit_text = read_file(a_circuit);
            c = load_circuit(circuit_text);
            inputs[a_circuit] = hash_hex(circuit_text);
            options["circuit"] = a_circuit;
        }
        char *out = nullptr;
        check(rm_ring_analyze_json(r.get(), c.get(), &out));
        json body = json::parse(owned(out));
        body["manifest"] = make_manifest("analyze", inputs, options, no_timestamp);
        emit(a_out.empty() ? std::nullopt : std::optional<std::string>(a_out), canonical(body));
        return 0;
    }

    if (cmd_verify->parsed()) {
        auto circuit_text = read_file(v_circuit);
        auto schedule_text = read_file(v_schedule);
        auto c = load_circuit(circuit_text);
        rm_schedule *s_raw = nullptr;
        check(rm_schedule_parse(schedule_text.c_str(), &s_raw));
        schedule_ptr sched(s_raw, rm_schedule_free);

        char *verdict = nullptr;
        int status = rm_verify_schedule(c.get(), sched.get(), v_tol, &verdict);
        if (status != RM_OK && status != RM_ERR_VERIFY) check(status);
        json body = json::parse(owned(verdict));
        body["manifest"] = make_manifest(
            "verify", {{v_circuit, hash_hex(circuit_text)}, {v_schedule, hash_hex(schedule_text)}},
            {{"tol", v_tol}}, no_timestamp);
        emit(v_out.empty() ? std::nullopt : std::optional<std::string>(v_out), canonical(body));
        return status == RM_OK ? 0 : kExitDomain;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const cli_error &e) {
        std::cerr << "ringmap: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception &e) {
        std::cerr << "ringmap: " << e.what() << "\n";
        return kExitDomain;
    }
}
