#ifndef SDW_CONFIG_HPP
#define SDW_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdw/states.hpp"

namespace sdw {

using ordered_json = nlohmann::ordered_json;

struct TestFunctionSpec {
    double center_x = 0.5;
    double center_t = 0.5;
    double radius_x = 0.45;
    double radius_t = 0.45;
};

struct L1CheckSpec {
    double t = 1.0;
    double a = 0.0;
    double b = 1.0;
};

struct RunConfig {
    InitialData data;
    double epsilon = 1e-3;
    double C = 1.5;
    double t_end = 1.0;
    std::string out_dir = "out";
    std::vector<double> snapshot_times;
    int sample_count = 100;
    bool check_conservation = true;
    bool entropy_diagnostics = false;
    double tol_cluster = 1e-9;
    double tol_conservation = 1e-9;
    std::optional<TestFunctionSpec> test_function;
    std::optional<L1CheckSpec> l1_check;
    std::optional<double> gamma_horizon;
    unsigned long seed = 0;

    bool mode_3x3() const { return data.mode_3x3(); }
    void validate() const;
    // Applies SDWTRACK_TOL_OVERRIDE (conservation-check tolerance) when set.
    void apply_env_overrides();
};

Profile profile_from_json(const ordered_json& j);
ordered_json profile_to_json(const Profile& p);

RunConfig config_from_json(const ordered_json& j);
ordered_json config_to_json(const RunConfig& c);

RunConfig load_config_file(const std::string& path);

// Fixed 17-significant-digit float formatting shared by all writers, so
// identical runs produce byte-identical outputs.
std::string fmt17(double v);

} // namespace sdw

#endif
