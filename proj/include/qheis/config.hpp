#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qheis/experiments.hpp"

namespace qheis {

/// External run configuration (JSON schema). Either `preset` or the explicit
/// physics block {n_spins, couplings, b_prime, tau, b0} must be given, never
/// both. Integrator and output knobs keep their defaults unless overridden.
struct RunConfig {
    std::optional<std::string> preset_name;
    std::optional<int> n_spins;
    std::vector<Bond> couplings;
    std::optional<double> b0;      // default 1.0
    std::optional<double> b_prime; // required in explicit mode
    std::optional<double> tau;     // required in explicit mode
    double dt = 1e-3;
    std::size_t samples = 501;
    std::vector<std::size_t> track;
    bool track_all = false;
    double degeneracy_tol = 1e-6;
    std::size_t spectrum_points = 101;
    std::string out_dir = ".";

    /// Resolve into a runnable AnnealConfig (preset lookup or explicit build).
    AnnealConfig resolve() const;
    /// Preset name, or "custom" for explicit configs.
    std::string label() const;
};

/// Parse and validate a JSON config. Malformed JSON reports line and column;
/// invalid physics names the offending field.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config_file(const std::string& path);

/// Shorthand for `{"preset": "<name>"}`.
RunConfig config_for_preset(const std::string& name);

} // namespace qheis
