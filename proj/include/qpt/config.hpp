// config.hpp — Run configuration (JSON), CSV emission, and the metadata
// sidecar that makes every output file reproducible.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qpt/model.hpp"
#include "qpt/spectroscopy.hpp"

namespace qpt {

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    bool log = false;

    Eigen::VectorXd make() const;
};

struct RunConfig {
    JunctionParams junction;
    ModeParams mode;
    GridSpec v_grid_uv{300.0, 420.0, 121};
    GridSpec f_grid_ghz{5.90, 6.02, 161};
    GridSpec eta_grid_mhz{0.5, 80.0, 25, true};
    double zeno_bias_uv = 365.0;
    double probe_eta_mhz = 0.02;
    double twotone_eta2_mhz = 0.1;
    double tone1_rate_mhz = 8.0;
    std::string twotone_method = "saturation";  // or "bichromatic"
    std::string jump_variant = "coherent_l";    // or "per_transition"
    double iv_spacing_uv = 0.5;
    double lamb_reference_uv = 0.0;  // baseline bias for reported shifts
    std::string output_dir = "out";
    std::string prefix = "run";
    int threads = 1;

    JumpVariant variant() const;
    TwoToneMethod method() const;

    // Parse from a JSON file; unknown keys are rejected. Throws
    // std::runtime_error with the offending key on malformed input.
    static RunConfig load(const std::string& path);
    // Apply a dotted-path override such as "mode.cutoff=12".
    void set(const std::string& key_value);

    std::string to_json() const;    // canonical serialized form
    std::string content_hash() const;  // FNV-1a of the canonical form
};

// CSV with a header row and a unit annotation row; writes the metadata
// sidecar (<path>.meta.json) alongside.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::string>& units,
               const std::vector<std::vector<double>>& rows,
               const RunConfig& cfg, const std::string& note = "");

}  // namespace qpt
