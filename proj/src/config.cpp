#include "ecmm/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

namespace ecmm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const json& require_key(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(join(path, key), "missing required key");
    return *it;
}

const json* find_key(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (item.key() == a) {
                known = true;
                break;
            }
        if (!known) fail(join(path, item.key()), "unknown key");
    }
}

const json& as_object(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    return v;
}

double as_finite(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "expected a finite number");
    return d;
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

// Non-negative integer; integral floats (1e5 and the like) are accepted.
std::uint64_t as_count(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        const std::int64_t i = v.get<std::int64_t>();
        if (i < 0) fail(path, "must be >= 0");
        return static_cast<std::uint64_t>(i);
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (!(d >= 0.0) || d != std::floor(d) || d > 9.007199254740992e15)
            fail(path, "expected a non-negative integer");
        return static_cast<std::uint64_t>(d);
    }
    fail(path, "expected a non-negative integer");
}

int as_int(const json& v, const std::string& path) {
    const std::uint64_t u = as_count(v, path);
    if (u > 2147483647ull) fail(path, "value too large");
    return static_cast<int>(u);
}

RunConfig parse_bare(const json& cfg) {
    RunConfig out;
    reject_unknown(cfg, "",
                   {"model", "mapping", "dynamics", "ensemble", "method", "initial_state"});

    const json& model = as_object(require_key(cfg, "", "model"), "model");
    reject_unknown(model, "model", {"epsilon", "delta", "spectral_density", "n_modes", "beta"});
    out.epsilon = as_finite(require_key(model, "model", "epsilon"), "model.epsilon");
    out.delta = as_finite(require_key(model, "model", "delta"), "model.delta");

    const std::string sd_path = "model.spectral_density";
    const json& sd = as_object(require_key(model, "model", "spectral_density"), sd_path);
    const std::string kind = as_string(require_key(sd, sd_path, "kind"), sd_path + ".kind");
    const char* coupling_key = nullptr;
    if (kind == "ohmic") {
        out.spectral_kind = SpectralKind::ohmic;
        coupling_key = "alpha";
    } else if (kind == "debye") {
        out.spectral_kind = SpectralKind::debye;
        coupling_key = "lambda";
    } else {
        fail(sd_path + ".kind", "expected \"ohmic\" or \"debye\"");
    }
    reject_unknown(sd, sd_path, {"kind", coupling_key, "omega_c"});
    out.spectral_coupling =
        as_finite(require_key(sd, sd_path, coupling_key), join(sd_path, coupling_key));
    if (out.spectral_coupling < 0.0) fail(join(sd_path, coupling_key), "must be >= 0");
    out.spectral_omega_c = as_finite(require_key(sd, sd_path, "omega_c"), sd_path + ".omega_c");
    if (!(out.spectral_omega_c > 0.0)) fail(sd_path + ".omega_c", "must be > 0");

    if (const json* v = find_key(model, "n_modes")) {
        out.n_modes = as_int(*v, "model.n_modes");
        if (out.n_modes < 1) fail("model.n_modes", "must be >= 1");
    }

    const json& beta = require_key(model, "model", "beta");
    if (beta.is_string()) {
        if (beta.get<std::string>() != "inf")
            fail("model.beta", "expected a positive number or \"inf\"");
        out.beta = Beta::infinite();
    } else {
        const double b = as_finite(beta, "model.beta");
        if (!(b > 0.0)) fail("model.beta", "must be > 0");
        out.beta = Beta::finite(b);
    }

    const json& mapping = as_object(require_key(cfg, "", "mapping"), "mapping");
    reject_unknown(mapping, "mapping", {"F", "gamma"});
    if (const json* v = find_key(mapping, "F")) {
        out.num_states = as_int(*v, "mapping.F");
        if (out.num_states != 2) fail("mapping.F", "must be 2 (two-state model)");
    }
    out.gamma = as_finite(require_key(mapping, "mapping", "gamma"), "mapping.gamma");
    if (!(out.gamma > -1.0 / out.num_states))
        fail("mapping.gamma", "must be > -1/F = " + std::to_string(-1.0 / out.num_states));

    const json& dynamics = as_object(require_key(cfg, "", "dynamics"), "dynamics");
    reject_unknown(dynamics, "dynamics", {"dt", "t_max", "record_stride"});
    if (const json* v = find_key(dynamics, "dt")) {
        const double dt = as_finite(*v, "dynamics.dt");
        if (!(dt > 0.0)) fail("dynamics.dt", "must be > 0");
        out.dt = dt;
    }
    out.t_max = as_finite(require_key(dynamics, "dynamics", "t_max"), "dynamics.t_max");
    if (!(out.t_max > 0.0)) fail("dynamics.t_max", "must be > 0");
    if (const json* v = find_key(dynamics, "record_stride")) {
        out.record_stride = as_int(*v, "dynamics.record_stride");
        if (out.record_stride < 1) fail("dynamics.record_stride", "must be >= 1");
    }

    const json& ensemble = as_object(require_key(cfg, "", "ensemble"), "ensemble");
    reject_unknown(ensemble, "ensemble", {"n_traj", "seed"});
    out.n_traj = as_count(require_key(ensemble, "ensemble", "n_traj"), "ensemble.n_traj");
    if (out.n_traj < 1) fail("ensemble.n_traj", "must be >= 1");
    if (const json* v = find_key(ensemble, "seed")) out.seed = as_count(*v, "ensemble.seed");

    if (const json* v = find_key(cfg, "method")) {
        const std::string m = as_string(*v, "method");
        if (m == "ecmm")
            out.method = Method::ecmm;
        else if (m == "ehrenfest")
            out.method = Method::ehrenfest;
        else
            fail("method", "expected \"ecmm\" or \"ehrenfest\"");
    }

    if (const json* v = find_key(cfg, "initial_state")) {
        out.initial_state = as_int(*v, "initial_state");
        if (out.initial_state < 1 || out.initial_state > out.num_states)
            fail("initial_state", "must be in 1.." + std::to_string(out.num_states));
    }
    return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail("$", std::string("not valid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("$", "expected an object");
    if (const json* wrapped = find_key(root, "config"))
        return parse_bare(as_object(*wrapped, "config"));
    return parse_bare(root);
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("$", "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

std::string run_config_to_json(const RunConfig& cfg) {
    json j;
    j["model"]["epsilon"] = cfg.epsilon;
    j["model"]["delta"] = cfg.delta;
    json sd;
    sd["kind"] = cfg.spectral_kind == SpectralKind::ohmic ? "ohmic" : "debye";
    sd[cfg.spectral_kind == SpectralKind::ohmic ? "alpha" : "lambda"] = cfg.spectral_coupling;
    sd["omega_c"] = cfg.spectral_omega_c;
    j["model"]["spectral_density"] = sd;
    j["model"]["n_modes"] = cfg.n_modes;
    if (cfg.beta.is_infinite())
        j["model"]["beta"] = "inf";
    else
        j["model"]["beta"] = cfg.beta.value();
    j["mapping"]["F"] = cfg.num_states;
    j["mapping"]["gamma"] = cfg.gamma;
    if (cfg.dt) j["dynamics"]["dt"] = *cfg.dt;
    j["dynamics"]["t_max"] = cfg.t_max;
    j["dynamics"]["record_stride"] = cfg.record_stride;
    j["ensemble"]["n_traj"] = cfg.n_traj;
    j["ensemble"]["seed"] = cfg.seed;
    j["method"] = cfg.method == Method::ecmm ? "ecmm" : "ehrenfest";
    j["initial_state"] = cfg.initial_state;
    return j.dump(2) + "\n";
}

}  // namespace ecmm
