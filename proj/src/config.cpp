#include "qpt/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace qpt {

using nlohmann::json;

Eigen::VectorXd GridSpec::make() const {
    if (points < 1) throw std::runtime_error("grid: points must be >= 1");
    Eigen::VectorXd g(points);
    if (points == 1) {
        g(0) = min;
        return g;
    }
    if (log) {
        if (min <= 0.0) throw std::runtime_error("grid: log grid needs min > 0");
        const double r = std::log(max / min);
        for (int i = 0; i < points; ++i)
            g(i) = min * std::exp(r * i / (points - 1.0));
    } else {
        for (int i = 0; i < points; ++i)
            g(i) = min + (max - min) * i / (points - 1.0);
    }
    return g;
}

JumpVariant RunConfig::variant() const {
    if (jump_variant == "coherent_l") return JumpVariant::CoherentPerL;
    if (jump_variant == "per_transition") return JumpVariant::PerTransition;
    throw std::runtime_error("config: unknown jump_variant '" + jump_variant + "'");
}

TwoToneMethod RunConfig::method() const {
    if (twotone_method == "saturation") return TwoToneMethod::Saturation;
    if (twotone_method == "bichromatic") return TwoToneMethod::Bichromatic;
    throw std::runtime_error("config: unknown twotone_method '" + twotone_method + "'");
}

namespace {

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || it.key() == k;
        if (!ok) throw std::runtime_error("config: unknown key '" + where + "." + it.key() + "'");
    }
}

template <typename T>
void get(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void get_grid(const json& j, const char* key, GridSpec& g) {
    if (!j.contains(key)) return;
    const json& s = j.at(key);
    check_keys(s, key, {"min", "max", "points", "log"});
    get(s, "min", g.min);
    get(s, "max", g.max);
    get(s, "points", g.points);
    get(s, "log", g.log);
}

json grid_json(const GridSpec& g) {
    return json{{"min", g.min}, {"max", g.max}, {"points", g.points}, {"log", g.log}};
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("config: parse error in '" + path + "': " + e.what());
    }

    RunConfig c;
    check_keys(j, "", {"junction", "mode", "grids", "zeno", "solver", "output"});
    if (j.contains("junction")) {
        const json& s = j["junction"];
        check_keys(s, "junction",
                   {"delta_uev", "r_tunnel_kohm", "r_eff_kohm", "temperature_uev", "dynes"});
        get(s, "delta_uev", c.junction.delta_uev);
        get(s, "r_tunnel_kohm", c.junction.r_tunnel_kohm);
        get(s, "r_eff_kohm", c.junction.r_eff_kohm);
        get(s, "temperature_uev", c.junction.temperature_uev);
        get(s, "dynes", c.junction.dynes);
    }
    if (j.contains("mode")) {
        const json& s = j["mode"];
        check_keys(s, "mode",
                   {"omega_ghz", "z_c_kohm", "kappa_c_mhz", "kappa_int_mhz", "cutoff", "l_max"});
        get(s, "omega_ghz", c.mode.omega_ghz);
        get(s, "z_c_kohm", c.mode.z_c_kohm);
        get(s, "kappa_c_mhz", c.mode.kappa_c_mhz);
        get(s, "kappa_int_mhz", c.mode.kappa_int_mhz);
        get(s, "cutoff", c.mode.cutoff);
        get(s, "l_max", c.mode.l_max);
    }
    if (j.contains("grids")) {
        const json& s = j["grids"];
        check_keys(s, "grids", {"v_uv", "f_ghz", "eta_mhz"});
        get_grid(s, "v_uv", c.v_grid_uv);
        get_grid(s, "f_ghz", c.f_grid_ghz);
        get_grid(s, "eta_mhz", c.eta_grid_mhz);
    }
    if (j.contains("zeno")) {
        const json& s = j["zeno"];
        check_keys(s, "zeno", {"bias_uv"});
        get(s, "bias_uv", c.zeno_bias_uv);
    }
    if (j.contains("solver")) {
        const json& s = j["solver"];
        check_keys(s, "solver",
                   {"jump_variant", "twotone_method", "iv_spacing_uv", "probe_eta_mhz",
                    "twotone_eta2_mhz", "tone1_rate_mhz", "lamb_reference_uv", "threads"});
        get(s, "jump_variant", c.jump_variant);
        get(s, "twotone_method", c.twotone_method);
        get(s, "iv_spacing_uv", c.iv_spacing_uv);
        get(s, "probe_eta_mhz", c.probe_eta_mhz);
        get(s, "twotone_eta2_mhz", c.twotone_eta2_mhz);
        get(s, "tone1_rate_mhz", c.tone1_rate_mhz);
        get(s, "lamb_reference_uv", c.lamb_reference_uv);
        get(s, "threads", c.threads);
    }
    if (j.contains("output")) {
        const json& s = j["output"];
        check_keys(s, "output", {"dir", "prefix"});
        get(s, "dir", c.output_dir);
        get(s, "prefix", c.prefix);
    }
    c.variant();
    c.method();
    return c;
}

void RunConfig::set(const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("--set expects key=value, got '" + key_value + "'");
    const std::string key = key_value.substr(0, eq);
    const std::string val = key_value.substr(eq + 1);
    auto as_d = [&] { return std::stod(val); };
    auto as_i = [&] { return std::stoi(val); };

    const std::map<std::string, std::function<void()>> setters = {
        {"junction.delta_uev", [&] { junction.delta_uev = as_d(); }},
        {"junction.r_tunnel_kohm", [&] { junction.r_tunnel_kohm = as_d(); }},
        {"junction.r_eff_kohm", [&] { junction.r_eff_kohm = as_d(); }},
        {"junction.temperature_uev", [&] { junction.temperature_uev = as_d(); }},
        {"junction.dynes", [&] { junction.dynes = as_d(); }},
        {"mode.omega_ghz", [&] { mode.omega_ghz = as_d(); }},
        {"mode.z_c_kohm", [&] { mode.z_c_kohm = as_d(); }},
        {"mode.kappa_c_mhz", [&] { mode.kappa_c_mhz = as_d(); }},
        {"mode.kappa_int_mhz", [&] { mode.kappa_int_mhz = as_d(); }},
        {"mode.cutoff", [&] { mode.cutoff = as_i(); }},
        {"mode.l_max", [&] { mode.l_max = as_i(); }},
        {"grids.v_uv.min", [&] { v_grid_uv.min = as_d(); }},
        {"grids.v_uv.max", [&] { v_grid_uv.max = as_d(); }},
        {"grids.v_uv.points", [&] { v_grid_uv.points = as_i(); }},
        {"grids.f_ghz.min", [&] { f_grid_ghz.min = as_d(); }},
        {"grids.f_ghz.max", [&] { f_grid_ghz.max = as_d(); }},
        {"grids.f_ghz.points", [&] { f_grid_ghz.points = as_i(); }},
        {"grids.eta_mhz.min", [&] { eta_grid_mhz.min = as_d(); }},
        {"grids.eta_mhz.max", [&] { eta_grid_mhz.max = as_d(); }},
        {"grids.eta_mhz.points", [&] { eta_grid_mhz.points = as_i(); }},
        {"grids.eta_mhz.log", [&] { eta_grid_mhz.log = val == "true" || val == "1"; }},
        {"zeno.bias_uv", [&] { zeno_bias_uv = as_d(); }},
        {"solver.jump_variant", [&] { jump_variant = val; }},
        {"solver.twotone_method", [&] { twotone_method = val; }},
        {"solver.iv_spacing_uv", [&] { iv_spacing_uv = as_d(); }},
        {"solver.probe_eta_mhz", [&] { probe_eta_mhz = as_d(); }},
        {"solver.twotone_eta2_mhz", [&] { twotone_eta2_mhz = as_d(); }},
        {"solver.tone1_rate_mhz", [&] { tone1_rate_mhz = as_d(); }},
        {"solver.lamb_reference_uv", [&] { lamb_reference_uv = as_d(); }},
        {"solver.threads", [&] { threads = as_i(); }},
        {"output.dir", [&] { output_dir = val; }},
        {"output.prefix", [&] { prefix = val; }},
    };
    const auto it = setters.find(key);
    if (it == setters.end())
        throw std::runtime_error("--set: unknown config key '" + key + "'");
    it->second();
}

std::string RunConfig::to_json() const {
    json j;
    j["junction"] = {{"delta_uev", junction.delta_uev},
                     {"r_tunnel_kohm", junction.r_tunnel_kohm},
                     {"r_eff_kohm", junction.r_eff_kohm},
                     {"temperature_uev", junction.temperature_uev},
                     {"dynes", junction.dynes}};
    j["mode"] = {{"omega_ghz", mode.omega_ghz},
                 {"z_c_kohm", mode.z_c_kohm},
                 {"kappa_c_mhz", mode.kappa_c_mhz},
                 {"kappa_int_mhz", mode.kappa_int_mhz},
                 {"cutoff", mode.cutoff},
                 {"l_max", mode.l_max}};
    j["grids"] = {{"v_uv", grid_json(v_grid_uv)},
                  {"f_ghz", grid_json(f_grid_ghz)},
                  {"eta_mhz", grid_json(eta_grid_mhz)}};
    j["zeno"] = {{"bias_uv", zeno_bias_uv}};
    j["solver"] = {{"jump_variant", jump_variant},
                   {"twotone_method", twotone_method},
                   {"iv_spacing_uv", iv_spacing_uv},
                   {"probe_eta_mhz", probe_eta_mhz},
                   {"twotone_eta2_mhz", twotone_eta2_mhz},
                   {"tone1_rate_mhz", tone1_rate_mhz},
                   {"lamb_reference_uv", lamb_reference_uv},
                   {"threads", threads}};
    j["output"] = {{"dir", output_dir}, {"prefix", prefix}};
    return j.dump(2);
}

std::string RunConfig::content_hash() const {
    // FNV-1a 64 over the canonical serialization
    const std::string s = to_json();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::string>& units,
               const std::vector<std::vector<double>>& rows, const RunConfig& cfg,
               const std::string& note) {
    if (columns.size() != units.size())
        throw std::runtime_error("write_csv: column/unit count mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
    for (std::size_t k = 0; k < columns.size(); ++k)
        out << columns[k] << (k + 1 < columns.size() ? "," : "\n");
    for (std::size_t k = 0; k < units.size(); ++k)
        out << units[k] << (k + 1 < units.size() ? "," : "\n");
    char buf[32];
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::runtime_error("write_csv: row width mismatch");
        for (std::size_t k = 0; k < row.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.10g", row[k]);
            out << buf << (k + 1 < row.size() ? "," : "\n");
        }
    }
    out.close();

    json meta;
    meta["config"] = json::parse(cfg.to_json());
    meta["config_hash"] = cfg.content_hash();
    meta["columns"] = columns;
    meta["units"] = units;
    meta["jump_variant"] = cfg.jump_variant;
    meta["twotone_method"] = cfg.twotone_method;
    meta["conventions"] = {
        {"rates", "ordinary frequencies in MHz (quoted as 2pi x MHz)"},
        {"lamb_shifts", "reported relative to the shift at solver.lamb_reference_uv"},
        {"s11", "single-port input-output, over-coupled dip convention"}};
    if (!note.empty()) meta["note"] = note;
    std::ofstream ms(path + ".meta.json");
    ms << meta.dump(2) << "\n";
}

}  // namespace qpt
