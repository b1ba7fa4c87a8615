#include "ringmap.h"

#include <cstring>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "circuit.hpp"
#include "report.hpp"
#include "ring.hpp"
#include "scheduler.hpp"
#include "timing.hpp"
#include "transpile.hpp"
#include "verify.hpp"

using namespace ringmap;

struct rm_circuit {
    circuit value;
};
struct rm_native {
    native_circuit value;
};
struct rm_ring {
    ring_config value;
};
struct rm_schedule {
    schedule value;
};

namespace {

thread_local std::string g_last_error;

int status_of(const error &e) {
    switch (e.code()) {
        case errc::parse: return RM_ERR_PARSE;
        case errc::invalid: return RM_ERR_INVALID;
        case errc::infeasible: return RM_ERR_INFEASIBLE;
        case errc::verify: return RM_ERR_VERIFY;
        case errc::io: return RM_ERR_IO;
        case errc::overflow: return RM_ERR_INVALID;
    }
    return RM_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn &&fn) {
    try {
        return fn();
    } catch (const error &e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return RM_ERR_INTERNAL;
    }
}

char *dup_string(const std::string &s) {
    char *out = new (std::nothrow) char[s.size() + 1];
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

timing_query query_from(const rm_circuit *c, const ring_config &cfg) {
    auto nc = transpile(c->value);
    bool any_2q = false;
    for (const auto &g : nc.gates) any_2q = any_2q || g.is_two_qubit();
    timing_query q;
    q.width = nc.width;
    q.depth = compute_native_stats(nc).depth;
    q.w_star = cfg.windows.front().lasers_per_bank;
    q.d_star = capacity(cfg, any_2q).dstar;
    q.delta_w_star = q.w_star;
    return q;
}

}  // namespace

extern "C" {

const char *rm_version(void) { return "0.1.0"; }

const char *rm_last_error(void) { return g_last_error.c_str(); }

void rm_string_free(char *s) { delete[] s; }

uint64_t rm_hash_bytes(const void *data, size_t size) { return fnv1a64(data, size); }

int rm_circuit_parse(const char *text, rm_circuit **out) {
    if (text == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return RM_ERR_INVALID;
    }
    return guarded([&] {
        *out = new rm_circuit{parse_circuit(text)};
        return RM_OK;
    });
}

void rm_circuit_free(rm_circuit *c) { delete c; }

int rm_circuit_width(const rm_circuit *c) { return c->value.width; }

int rm_circuit_depth(const rm_circuit *c) { return compute_time_slices(c->value).depth; }

int rm_circuit_gate_count(const rm_circuit *c) { return static_cast<int>(c->value.gates.size()); }

char *rm_circuit_format(const rm_circuit *c) { return dup_string(format_circuit(c->value)); }

int rm_transpile(const rm_circuit *c, rm_native **out) {
    if (c == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return RM_ERR_INVALID;
    }
    return guarded([&] {
        *out = new rm_native{transpile(c->value)};
        return RM_OK;
    });
}

void rm_native_free(rm_native *nc) { delete nc; }

int rm_native_width(const rm_native *nc) { return nc->value.width; }

int rm_native_depth(const rm_native *nc) { return compute_native_stats(nc->value).depth; }

int rm_native_gate_count(const rm_native *nc) { return static_cast<int>(nc->value.gates.size()); }

char *rm_native_format(const rm_native *nc) { return dup_string(format_circuit(nc->value.as_circuit())); }

char *rm_native_provenance_json(const rm_native *nc) {
    auto st = compute_native_stats(nc->value);
    nlohmann::json doc;
    doc["width_qubits"] = st.width;
    doc["depth_slices"] = st.depth;
    doc["counts"] = {{"r", st.r_count}, {"xx", st.xx_count}};
    doc["provenance"] = nlohmann::json::array();
    for (size_t i = 0; i < nc->value.provenance.size(); ++i) {
        doc["provenance"].push_back(
            {{"native_id", static_cast<int>(i)}, {"source_id", nc->value.provenance[i]}});
    }
    return dup_string(canonical_json(doc));
}

int rm_ring_parse(const char *json_text, rm_ring **out) {
    if (json_text == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return RM_ERR_INVALID;
    }
    return guarded([&] {
        auto cfg = parse_ring_config(json_text);
        derive_geometry(cfg);  // reject invalid configs at load time
        *out = new rm_ring{std::move(cfg)};
        return RM_OK;
    });
}

void rm_ring_free(rm_ring *r) { delete r; }

int rm_ring_analyze_json(const rm_ring *r, const rm_circuit *c_or_null, char **out_json) {
    if (r == nullptr || out_json == nullptr) {
        g_last_error = "null argument";
        return RM_ERR_INVALID;
    }
    return guarded([&] {
        std::optional<timing_query> q;
        if (c_or_null != nullptr) q = query_from(c_or_null, r->value);
        auto rep = make_sizing_report(r->value, q);

        auto emit_ps = [](nlohmann::json &doc, const char *key, const rational &v) {
            if (v.is_integer()) {
                doc[key] = v.num();
            } else {
                doc[key] = v.str();
            }
        };
        nlohmann::json doc;
        doc["n_ions"] = rep.total_ions;
        doc["visible"] = rep.visible;
        emit_ps(doc, "pass_time_ps", rep.pass_time_ps);
        emit_ps(doc, "t_ring_ps", rep.circumnavigation_ps);
        doc["actions_per_pass"] = rep.actions_per_pass;
        doc["dstar"] = rep.dstar;
        if (rep.passes) doc["passes"] = *rep.passes;
        if (rep.wl_serial) doc["wl_serial"] = *rep.wl_serial;
        if (rep.wl_parallel) doc["wl_parallel"] = *rep.wl_parallel;
        if (rep.latency_ps) emit_ps(doc, "latency_ps", *rep.latency_ps);
        *out_json = dup_string(canonical_json(doc));
        return RM_OK;
    });
}

int rm_schedule_build(const rm_native *nc, const rm_ring *r, const char *mode, int bunch_size,
                      int gap_bunches, const char *config_hash_or_null, rm_schedule **out) {
    if (nc == nullptr || r == nullptr || mode == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return RM_ERR_INVALID;
    }
    return guarded([&] {
        auto m = schedule_mode::parse(mode);
        auto p = make_partition(nc->value, r->value, bunch_size, gap_bunches);
        auto s = build_schedule(nc->value, r->value, p, m);
        s.config_hash = config_hash_or_null != nullptr ? config_hash_or_null : "";
        *out = new rm_schedule{std::move(s)};
        return RM_OK;
    });
}

void rm_schedule_free(rm_schedule *s) { delete s; }

int rm_schedule_parse(const char *json_text, rm_schedule **out) {
    if (json_text == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return RM_ERR_INVALID;
    }
    return guarded([&] {
        *out = new rm_schedule{schedule_from_json(json_text)};
        return RM_OK;
    });
}

char *rm_schedule_json(const rm_schedule *s) {
    return dup_string(canonical_json(nlohmann::json::parse(schedule_to_json(s->value))));
}

int64_t rm_schedule_makespan_ps(const rm_schedule *s) { return s->value.stats.makespan_ps; }

int64_t rm_schedule_passes_used(const rm_schedule *s) { return s->value.stats.passes_used; }

int64_t rm_schedule_measured_wl(const rm_schedule *s) { return s->value.stats.measured_wl; }

int rm_schedule_deferred_count(const rm_schedule *s) {
    return static_cast<int>(s->value.stats.deferred_gates.size());
}

int rm_wl_general(int64_t w, int64_t d, int64_t wstar, int64_t dstar, int64_t dwstar, int64_t *out) {
    return guarded([&] {
        *out = wl_general(timing_query{w, d, wstar, dstar, dwstar});
        return RM_OK;
    });
}

int rm_wl_serial(int64_t w, int64_t d, int64_t wstar, int64_t dstar, int64_t *out) {
    return guarded([&] {
        *out = wl_serial(timing_query{w, d, wstar, dstar, wstar});
        return RM_OK;
    });
}

int rm_wl_parallel(int64_t w, int64_t d, int64_t wstar, int64_t dstar, int64_t *out) {
    return guarded([&] {
        *out = wl_parallel(timing_query{w, d, wstar, dstar, wstar});
        return RM_OK;
    });
}

int64_t rm_pass_count(int64_t d, int64_t dstar) {
    if (d < 0 || dstar < 1) return -1;
    return pass_count(d, dstar);
}

int rm_verify_schedule(const rm_circuit *source, const rm_schedule *s, double tolerance,
                       char **verdict_json) {
    if (source == nullptr || s == nullptr || verdict_json == nullptr) {
        g_last_error = "null argument";
        return RM_ERR_INVALID;
    }
    return guarded([&] {
        auto nc = transpile(source->value);
        bool order_valid = true;
        double deviation = 1.0;
        std::string failure;
        try {
            auto res = replay(s->value, nc);
            deviation = unitary_deviation(res.u, circuit_unitary(source->value));
        } catch (const error &e) {
            if (e.code() == errc::verify) {
                order_valid = false;
                failure = e.what();
            } else {
                throw;
            }
        }
        bool equivalent = order_valid && deviation <= tolerance;
        nlohmann::json doc;
        doc["equivalent"] = equivalent;
        doc["max_deviation"] = deviation;
        doc["gate_order_valid"] = order_valid;
        if (!failure.empty()) doc["error"] = failure;
        *verdict_json = dup_string(canonical_json(doc));
        if (!equivalent) {
            g_last_error = order_valid ? "replayed unitary deviates beyond tolerance" : failure;
            return static_cast<int>(RM_ERR_VERIFY);
        }
        return static_cast<int>(RM_OK);
    });
}

int rm_json_canonical(const char *json_text, char **out_json) {
    if (json_text == nullptr || out_json == nullptr) {
        g_last_error = "null argument";
        return RM_ERR_INVALID;
    }
    return guarded([&] {
        auto doc = nlohmann::json::parse(json_text, nullptr, false);
        if (doc.is_discarded()) raise(errc::parse, "invalid JSON document");
        *out_json = dup_string(canonical_json(doc));
        return RM_OK;
    });
}

}  // extern "C"
