#include "sdw/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "sdw/errors.hpp"

namespace sdw {

namespace {

double need_number(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ConfigError(std::string("config: missing numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

std::vector<double> need_array(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw ConfigError(std::string("config: missing array field '") + key + "'");
    }
    return j.at(key).get<std::vector<double>>();
}

} // namespace

Profile profile_from_json(const ordered_json& j) {
    if (!j.contains("name")) throw ConfigError("profile: missing 'name'");
    const std::string name = j.at("name").get<std::string>();
    if (name == "constant") return Profile::constant(need_number(j, "value"));
    if (name == "linear") return Profile::linear(need_number(j, "a"), need_number(j, "b"));
    if (name == "tanh_ramp") {
        return Profile::tanh_ramp(need_number(j, "base"), need_number(j, "amplitude"),
                                  need_number(j, "center"), need_number(j, "width"));
    }
    if (name == "affine_by_parts") {
        return Profile::affine_by_parts(need_array(j, "xs"), need_array(j, "ys"));
    }
    if (name == "table") return Profile::table(need_array(j, "xs"), need_array(j, "ys"));
    throw ConfigError("profile: unknown name '" + name + "'");
}

ordered_json profile_to_json(const Profile& p) {
    ordered_json j;
    switch (p.kind()) {
        case Profile::Kind::constant:
            j["name"] = "constant";
            j["value"] = p.param_a();
            break;
        case Profile::Kind::linear:
            j["name"] = "linear";
            j["a"] = p.param_a();
            j["b"] = p.param_b();
            break;
        case Profile::Kind::tanh_ramp:
            j["name"] = "tanh_ramp";
            j["base"] = p.param_a();
            j["amplitude"] = p.param_b();
            j["center"] = p.param_c();
            j["width"] = p.param_d();
            break;
        case Profile::Kind::affine_by_parts:
            j["name"] = "affine_by_parts";
            j["xs"] = p.xs();
            j["ys"] = p.ys();
            break;
        case Profile::Kind::table:
            j["name"] = "table";
            j["xs"] = p.xs();
            j["ys"] = p.ys();
            break;
    }
    return j;
}

namespace {
RunConfig config_from_json_impl(const ordered_json& j);
}

RunConfig config_from_json(const ordered_json& j) {
    try {
        return config_from_json_impl(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

namespace {
RunConfig config_from_json_impl(const ordered_json& j) {
    RunConfig c;
    if (!j.contains("initial")) throw ConfigError("config: missing 'initial'");
    const auto& init = j.at("initial");
    if (!init.contains("left")) throw ConfigError("config: missing 'initial.left'");
    c.data.left_state.rho = need_number(init.at("left"), "rho");
    c.data.left_state.u = need_number(init.at("left"), "u");
    if (init.at("left").contains("e")) c.data.left_state.e = need_number(init.at("left"), "e");
    c.data.R = need_number(init, "R");
    c.data.x_max = need_number(init, "x_max");
    if (!init.contains("rho") || !init.contains("u")) {
        throw ConfigError("config: 'initial' needs 'rho' and 'u' profiles");
    }
    c.data.rho_fn = profile_from_json(init.at("rho"));
    c.data.u_fn = profile_from_json(init.at("u"));
    if (init.contains("e")) c.data.e_fn = profile_from_json(init.at("e"));
    if (init.contains("u_extrema")) c.data.declared_u_extrema = need_array(init, "u_extrema");

    c.epsilon = need_number(j, "epsilon");
    if (j.contains("C")) c.C = need_number(j, "C");
    if (j.contains("t_end")) c.t_end = need_number(j, "t_end");
    if (j.contains("mode")) {
        const std::string m = j.at("mode").get<std::string>();
        if (m != "2x2" && m != "3x3") throw ConfigError("config: mode must be 2x2 or 3x3");
        if (m == "3x3" && !c.data.e_fn) {
            throw ConfigError("config: 3x3 mode needs an 'e' profile in 'initial'");
        }
        if (m == "2x2" && c.data.e_fn) {
            throw ConfigError("config: 2x2 mode but an 'e' profile was given");
        }
    }
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("diagnostics")) {
        const auto& d = j.at("diagnostics");
        if (d.contains("snapshot_times")) c.snapshot_times = need_array(d, "snapshot_times");
        if (d.contains("sample_count")) c.sample_count = d.at("sample_count").get<int>();
        if (d.contains("conservation")) c.check_conservation = d.at("conservation").get<bool>();
        if (d.contains("entropy")) c.entropy_diagnostics = d.at("entropy").get<bool>();
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (t.contains("cluster")) c.tol_cluster = need_number(t, "cluster");
        if (t.contains("conservation")) c.tol_conservation = need_number(t, "conservation");
    }
    if (j.contains("test_function")) {
        const auto& tf = j.at("test_function");
        TestFunctionSpec spec;
        spec.center_x = need_number(tf, "center_x");
        spec.center_t = need_number(tf, "center_t");
        spec.radius_x = need_number(tf, "radius_x");
        spec.radius_t = need_number(tf, "radius_t");
        c.test_function = spec;
    }
    if (j.contains("l1_check")) {
        const auto& l = j.at("l1_check");
        c.l1_check = L1CheckSpec{need_number(l, "t"), need_number(l, "a"), need_number(l, "b")};
    }
    if (j.contains("gamma_horizon")) c.gamma_horizon = need_number(j, "gamma_horizon");
    if (j.contains("seed")) c.seed = j.at("seed").get<unsigned long>();
    c.validate();
    return c;
}
} // namespace

ordered_json config_to_json(const RunConfig& c) {
    ordered_json j;
    ordered_json init;
    ordered_json left;
    left["rho"] = c.data.left_state.rho;
    left["u"] = c.data.left_state.u;
    if (c.data.left_state.e) left["e"] = *c.data.left_state.e;
    init["left"] = left;
    init["R"] = c.data.R;
    init["x_max"] = c.data.x_max;
    init["rho"] = profile_to_json(c.data.rho_fn);
    init["u"] = profile_to_json(c.data.u_fn);
    if (c.data.e_fn) init["e"] = profile_to_json(*c.data.e_fn);
    if (!c.data.declared_u_extrema.empty()) init["u_extrema"] = c.data.declared_u_extrema;
    j["initial"] = init;
    j["epsilon"] = c.epsilon;
    j["C"] = c.C;
    j["t_end"] = c.t_end;
    j["mode"] = c.mode_3x3() ? "3x3" : "2x2";
    j["out"] = c.out_dir;
    ordered_json diag;
    diag["snapshot_times"] = c.snapshot_times;
    diag["sample_count"] = c.sample_count;
    diag["conservation"] = c.check_conservation;
    diag["entropy"] = c.entropy_diagnostics;
    j["diagnostics"] = diag;
    ordered_json tol;
    tol["cluster"] = c.tol_cluster;
    tol["conservation"] = c.tol_conservation;
    j["tolerances"] = tol;
    if (c.test_function) {
        ordered_json tf;
        tf["center_x"] = c.test_function->center_x;
        tf["center_t"] = c.test_function->center_t;
        tf["radius_x"] = c.test_function->radius_x;
        tf["radius_t"] = c.test_function->radius_t;
        j["test_function"] = tf;
    }
    if (c.l1_check) {
        ordered_json l;
        l["t"] = c.l1_check->t;
        l["a"] = c.l1_check->a;
        l["b"] = c.l1_check->b;
        j["l1_check"] = l;
    }
    if (c.gamma_horizon) j["gamma_horizon"] = *c.gamma_horizon;
    j["seed"] = c.seed;
    return j;
}

void RunConfig::validate() const {
    data.validate();
    if (!(epsilon > 0.0)) throw ConfigError("config: epsilon must be positive");
    if (!(C >= 1.0)) throw ConfigError("config: C must be >= 1");
    if (!(t_end >= 0.0)) throw ConfigError("config: t_end must be nonnegative");
    if (sample_count < 1) throw ConfigError("config: sample_count must be >= 1");
    if (!(tol_cluster > 0.0)) throw ConfigError("config: cluster tolerance must be positive");
    for (double t : snapshot_times) {
        if (t < 0.0 || t > t_end) throw ConfigError("config: snapshot time outside [0, t_end]");
    }
}

void RunConfig::apply_env_overrides() {
    if (const char* env = std::getenv("SDWTRACK_TOL_OVERRIDE")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || !(v > 0.0)) {
            throw ConfigError("SDWTRACK_TOL_OVERRIDE must be a positive number");
        }
        tol_conservation = v;
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: parse failure: ") + e.what());
    }
    return config_from_json(j);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace sdw
