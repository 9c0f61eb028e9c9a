#include "qheis/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qheis/errors.hpp"

namespace qheis {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
    throw ConfigError(origin + ": " + msg);
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

double number_field(const json& j, const std::string& origin, const std::string& key) {
    if (!j.is_number()) fail(origin, "field '" + key + "' must be a number");
    return j.get<double>();
}

std::int64_t integer_field(const json& j, const std::string& origin, const std::string& key) {
    if (!j.is_number_integer()) fail(origin, "field '" + key + "' must be an integer");
    return j.get<std::int64_t>();
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        fail(origin, "JSON parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }
    if (!root.is_object()) fail(origin, "config root must be a JSON object");

    static const std::set<std::string> known{
        "preset",       "n_spins", "couplings",      "b0",
        "b_prime",      "tau",     "dt",             "samples",
        "track",        "preset",  "degeneracy_tol", "spectrum_points",
        "out_dir"};
    for (const auto& [key, _] : root.items()) {
        if (!known.contains(key)) fail(origin, "unknown field '" + key + "'");
    }

    RunConfig cfg;
    if (root.contains("preset")) {
        if (!root["preset"].is_string()) fail(origin, "field 'preset' must be a string");
        cfg.preset_name = root["preset"].get<std::string>();
        for (const char* f : {"n_spins", "couplings", "b0", "b_prime", "tau"}) {
            if (root.contains(f)) {
                fail(origin, std::string("'preset' excludes explicit physics field '") + f +
                                 "'");
            }
        }
    } else {
        if (!root.contains("n_spins")) fail(origin, "missing required field 'n_spins'");
        cfg.n_spins = static_cast<int>(integer_field(root["n_spins"], origin, "n_spins"));
        if (!root.contains("b_prime")) fail(origin, "missing required field 'b_prime'");
        cfg.b_prime = number_field(root["b_prime"], origin, "b_prime");
        if (!root.contains("tau")) fail(origin, "missing required field 'tau'");
        cfg.tau = number_field(root["tau"], origin, "tau");
        if (root.contains("b0")) cfg.b0 = number_field(root["b0"], origin, "b0");
        if (root.contains("couplings")) {
            if (!root["couplings"].is_array()) fail(origin, "'couplings' must be an array");
            for (const auto& entry : root["couplings"]) {
                if (!entry.is_array() || entry.size() != 3) {
                    fail(origin, "each coupling must be a [k, m, J] triple");
                }
                Bond b;
                b.k = static_cast<int>(integer_field(entry[0], origin, "couplings[0]"));
                b.m = static_cast<int>(integer_field(entry[1], origin, "couplings[1]"));
                b.j = number_field(entry[2], origin, "couplings[2]");
                cfg.couplings.push_back(b);
            }
        }
    }

    if (root.contains("dt")) cfg.dt = number_field(root["dt"], origin, "dt");
    if (root.contains("samples")) {
        const auto s = integer_field(root["samples"], origin, "samples");
        if (s < 2) fail(origin, "'samples' must be at least 2");
        cfg.samples = static_cast<std::size_t>(s);
    }
    if (root.contains("degeneracy_tol")) {
        cfg.degeneracy_tol = number_field(root["degeneracy_tol"], origin, "degeneracy_tol");
        if (!(cfg.degeneracy_tol > 0.0)) fail(origin, "'degeneracy_tol' must be positive");
    }
    if (root.contains("spectrum_points")) {
        const auto s = integer_field(root["spectrum_points"], origin, "spectrum_points");
        if (s < 1) fail(origin, "'spectrum_points' must be at least 1");
        cfg.spectrum_points = static_cast<std::size_t>(s);
    }
    if (root.contains("out_dir")) {
        if (!root["out_dir"].is_string()) fail(origin, "'out_dir' must be a string");
        cfg.out_dir = root["out_dir"].get<std::string>();
    }
    if (root.contains("track")) {
        const auto& t = root["track"];
        if (t.is_string() && t.get<std::string>() == "all") {
            cfg.track_all = true;
        } else if (t.is_array()) {
            for (const auto& entry : t) {
                const auto idx = integer_field(entry, origin, "track[]");
                if (idx < 0) fail(origin, "'track' indices must be non-negative");
                cfg.track.push_back(static_cast<std::size_t>(idx));
            }
        } else {
            fail(origin, "'track' must be an index array or the string \"all\"");
        }
    }

    // surface physics validation now, with the config origin attached
    try {
        cfg.resolve();
    } catch (const ConfigError& e) {
        fail(origin, e.what());
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading config file: " + path);
    return parse_config_text(buf.str(), path);
}

RunConfig config_for_preset(const std::string& name) {
    RunConfig cfg;
    cfg.preset_name = name;
    cfg.resolve(); // validates the name
    return cfg;
}

static AnnealConfig resolve_explicit(const RunConfig& rc) {
    CouplingGraph graph(rc.n_spins.value(), rc.couplings);
    FieldParams fields{rc.b0.value_or(1.0), rc.b_prime.value()};
    fields.validate();
    AnnealConfig cfg{std::move(graph), fields, rc.tau.value(), IntegratorConfig{},
                     rc.degeneracy_tol, {}, {}};
    return cfg;
}

AnnealConfig RunConfig::resolve() const {
    AnnealConfig cfg = preset_name ? preset(*preset_name).config : resolve_explicit(*this);
    cfg.integrator.dt = dt;
    cfg.integrator.n_samples = samples;
    cfg.degeneracy_tol = degeneracy_tol;
    if (track_all) {
        const SpinBasis basis(cfg.graph.n_spins);
        cfg.track.resize(basis.dimension);
        for (std::size_t i = 0; i < basis.dimension; ++i) cfg.track[i] = i;
    } else if (!track.empty()) {
        const SpinBasis basis(cfg.graph.n_spins);
        for (std::size_t idx : track) {
            if (idx >= basis.dimension) {
                throw ConfigError("'track' index " + std::to_string(idx) +
                                  " exceeds the basis dimension");
            }
        }
        cfg.track = track;
    }
    if (!(cfg.integrator.dt > 0.0) || !std::isfinite(cfg.integrator.dt)) {
        throw ConfigError("'dt' must be positive and finite");
    }
    return cfg;
}

std::string RunConfig::label() const { return preset_name.value_or("custom"); }

} // namespace qheis
