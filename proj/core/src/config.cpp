#include "tlsdyn/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tlsdyn {

using nlohmann::json;

std::string to_string(SolverChoice choice) {
    switch (choice) {
        case SolverChoice::laplace: return "laplace";
        case SolverChoice::volterra: return "volterra";
        case SolverChoice::closed_form: return "closed_form";
        case SolverChoice::heom: return "heom";
        case SolverChoice::all: return "all";
    }
    throw std::runtime_error("unreachable solver choice");
}

SolverChoice solver_choice_from_string(const std::string& s) {
    if (s == "laplace") return SolverChoice::laplace;
    if (s == "volterra") return SolverChoice::volterra;
    if (s == "closed_form") return SolverChoice::closed_form;
    if (s == "heom") return SolverChoice::heom;
    if (s == "all") return SolverChoice::all;
    throw std::invalid_argument("unknown solver: " + s +
                                " (expected laplace|volterra|closed_form|heom|all)");
}

void ScenarioConfig::validate() const {
    bath.validate();
    tlsdyn::validate(modulator);
    grid.validate();
    if (!(rho_ee0 >= 0.0 && rho_ee0 <= 1.0))
        throw std::invalid_argument("rho_ee0 must lie in [0, 1]");
    if (!(series_tol > 0.0 && series_tol < 1.0))
        throw std::invalid_argument("series_tol must lie in (0, 1)");
    if (heom.fock_dim < 1) throw std::invalid_argument("heom.fock_dim must be at least 1");
    if (heom.ell_c < 0) throw std::invalid_argument("heom.ell_c must be non-negative");
    if (!(heom.dt >= 0.0)) throw std::invalid_argument("heom.dt must be non-negative");
    if (!(heom.omega0 > 0.0)) throw std::invalid_argument("heom.omega0 must be positive");
    if (heom.ell_ceiling < heom.ell_c)
        throw std::invalid_argument("heom.ell_ceiling must be at least heom.ell_c");
}

std::string ScenarioConfig::resolved_out_dir() const {
    if (!out_dir.empty()) return out_dir;
    if (const char* root = std::getenv(kOutputRootEnv); root != nullptr && *root != '\0')
        return root;
    return "runs";
}

namespace {

[[noreturn]] void fail(const std::string& context, const std::string& what) {
    throw std::invalid_argument(context.empty() ? what : context + ": " + what);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& context) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) fail(context, "unknown field '" + item.key() + "'");
    }
}

double require_number(const json& obj, const char* key, const std::string& context) {
    if (!obj.contains(key)) fail(context, std::string("missing field '") + key + "'");
    if (!obj.at(key).is_number()) fail(context, std::string("field '") + key + "' must be a number");
    return obj.at(key).get<double>();
}

int integer_field(const json& obj, const char* key, const std::string& context) {
    if (!obj.at(key).is_number_integer())
        fail(context, std::string("field '") + key + "' must be an integer");
    return obj.at(key).get<int>();
}

Modulator parse_modulator(const json& node) {
    if (node.is_string()) {
        if (node.get<std::string>() == "none") return NoMod{};
        fail("modulator", "unknown modulator '" + node.get<std::string>() + "'");
    }
    if (!node.is_object()) fail("modulator", "must be \"none\" or an object with a 'type' field");
    if (!node.contains("type") || !node.at("type").is_string())
        fail("modulator", "missing string field 'type'");
    const std::string type = node.at("type").get<std::string>();
    if (type == "none") {
        reject_unknown_keys(node, {"type"}, "modulator");
        return NoMod{};
    }
    if (type == "ho") {
        reject_unknown_keys(node, {"type", "omega0", "g0", "lambda"}, "modulator");
        const double omega0 = require_number(node, "omega0", "modulator");
        if (!(omega0 > 0.0)) fail("modulator", "omega0 must be positive");
        const bool has_g0 = node.contains("g0");
        const bool has_lambda = node.contains("lambda");
        if (has_g0 == has_lambda)
            fail("modulator", "specify exactly one of 'g0' and 'lambda'");
        double g0;
        if (has_g0) {
            g0 = require_number(node, "g0", "modulator");
        } else {
            const double lam = require_number(node, "lambda", "modulator");
            if (!(lam >= 0.0)) fail("modulator", "lambda must be non-negative");
            g0 = omega0 * std::sqrt(lam);
        }
        HOMod mod{g0, omega0};
        mod.validate();
        return mod;
    }
    if (type == "reservoir") {
        reject_unknown_keys(node, {"type", "eta", "chi", "Lambda"}, "modulator");
        const double eta = require_number(node, "eta", "modulator");
        if (!(eta > 0.0)) fail("modulator", "eta must be positive");
        const bool has_chi = node.contains("chi");
        const bool has_Lambda = node.contains("Lambda");
        if (has_chi == has_Lambda)
            fail("modulator", "specify exactly one of 'chi' and 'Lambda'");
        double chi;
        if (has_chi) {
            chi = require_number(node, "chi", "modulator");
        } else {
            const double Lam = require_number(node, "Lambda", "modulator");
            if (!(Lam >= 0.0)) fail("modulator", "Lambda must be non-negative");
            chi = Lam * eta;
        }
        ReservoirMod mod{chi, eta};
        mod.validate();
        return mod;
    }
    if (type == "drive") {
        reject_unknown_keys(node, {"type", "amplitude", "frequency"}, "modulator");
        DriveMod mod{require_number(node, "amplitude", "modulator"),
                     require_number(node, "frequency", "modulator")};
        mod.validate();
        return mod;
    }
    fail("modulator", "unknown modulator type '" + type + "'");
}

ScenarioConfig from_json(const json& root) {
    if (!root.is_object()) fail("", "config must be a JSON object");
    reject_unknown_keys(root,
                        {"alpha", "omega_c", "epsilon", "modulator", "solver", "grid", "rho_ee0",
                         "series_tol", "heom", "out_dir"},
                        "config");

    ScenarioConfig config;
    config.bath.alpha = require_number(root, "alpha", "config");
    config.bath.omega_c = require_number(root, "omega_c", "config");
    config.bath.epsilon = require_number(root, "epsilon", "config");

    if (root.contains("modulator"))
        config.modulator = parse_modulator(root.at("modulator"));

    if (root.contains("solver")) {
        if (!root.at("solver").is_string()) fail("config", "field 'solver' must be a string");
        config.solver = solver_choice_from_string(root.at("solver").get<std::string>());
    }

    if (root.contains("grid")) {
        const json& g = root.at("grid");
        if (!g.is_object()) fail("grid", "must be an object");
        reject_unknown_keys(g, {"t_start", "t_end", "n_points"}, "grid");
        if (g.contains("t_start")) config.grid.t_start = require_number(g, "t_start", "grid");
        config.grid.t_end = require_number(g, "t_end", "grid");
        if (g.contains("n_points")) {
            if (!g.at("n_points").is_number_unsigned())
                fail("grid", "n_points must be a non-negative integer");
            config.grid.n_points = g.at("n_points").get<std::size_t>();
        }
    }

    if (root.contains("rho_ee0")) config.rho_ee0 = require_number(root, "rho_ee0", "config");
    if (root.contains("series_tol"))
        config.series_tol = require_number(root, "series_tol", "config");

    if (root.contains("heom")) {
        const json& h = root.at("heom");
        if (!h.is_object()) fail("heom", "must be an object");
        reject_unknown_keys(h, {"fock_dim", "ell_c", "dt", "omega0", "ell_ceiling",
                                "auto_converge"},
                            "heom");
        if (h.contains("fock_dim")) config.heom.fock_dim = integer_field(h, "fock_dim", "heom");
        if (h.contains("ell_c")) config.heom.ell_c = integer_field(h, "ell_c", "heom");
        if (h.contains("dt")) config.heom.dt = require_number(h, "dt", "heom");
        if (h.contains("omega0")) config.heom.omega0 = require_number(h, "omega0", "heom");
        if (h.contains("ell_ceiling"))
            config.heom.ell_ceiling = integer_field(h, "ell_ceiling", "heom");
        if (h.contains("auto_converge")) {
            if (!h.at("auto_converge").is_boolean())
                fail("heom", "auto_converge must be a boolean");
            config.heom.auto_converge = h.at("auto_converge").get<bool>();
        }
    }

    if (root.contains("out_dir")) {
        if (!root.at("out_dir").is_string()) fail("config", "field 'out_dir' must be a string");
        config.out_dir = root.at("out_dir").get<std::string>();
    }

    config.validate();
    return config;
}

}  // namespace

ScenarioConfig parse_config_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("parse error: ") + e.what());
    }
    return from_json(root);
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config_json(buf.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string resolved_config_json(const ScenarioConfig& config) {
    json root;
    root["alpha"] = config.bath.alpha;
    root["omega_c"] = config.bath.omega_c;
    root["epsilon"] = config.bath.epsilon;

    json mod;
    mod["type"] = family_name(config.modulator);
    if (const auto* ho = std::get_if<HOMod>(&config.modulator)) {
        mod["g0"] = ho->g0;
        mod["omega0"] = ho->omega0;
        mod["lambda"] = ho->lambda();
    } else if (const auto* res = std::get_if<ReservoirMod>(&config.modulator)) {
        mod["chi"] = res->chi;
        mod["eta"] = res->eta;
        mod["Lambda"] = res->Lambda();
    } else if (const auto* drive = std::get_if<DriveMod>(&config.modulator)) {
        mod["amplitude"] = drive->amplitude_A;
        mod["frequency"] = drive->frequency_Omega;
    }
    root["modulator"] = mod;

    root["solver"] = to_string(config.solver);
    root["grid"] = {{"t_start", config.grid.t_start},
                    {"t_end", config.grid.t_end},
                    {"n_points", config.grid.n_points}};
    root["rho_ee0"] = config.rho_ee0;
    root["series_tol"] = config.series_tol;
    root["heom"] = {{"fock_dim", config.heom.fock_dim},
                    {"ell_c", config.heom.ell_c},
                    {"dt", config.heom.dt},
                    {"omega0", config.heom.omega0},
                    {"ell_ceiling", config.heom.ell_ceiling},
                    {"auto_converge", config.heom.auto_converge}};
    root["out_dir"] = config.resolved_out_dir();
    return root.dump(2);
}

std::string config_identity_json(const ScenarioConfig& config) {
    json root = json::parse(resolved_config_json(config));
    root.erase("out_dir");
    return root.dump(2);
}

}  // namespace tlsdyn
