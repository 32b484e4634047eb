#include "multstat/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "multstat/errors.hpp"

namespace multstat {

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> t{
        {"endpoint", 1e-8},       {"mass", 1e-10},         {"el_residual", 1e-6},
        {"cV", 1e-8},             {"inverse_series", 1e-10}, {"gram", 1e-8},
        {"oracle", 1e-7},         {"identity", 1e-5},      {"refinement", 1e-8},
        {"localization_ratio", 0.2}, {"localization_tail", 1e-8}, {"corollary_spread", 10.0},
        {"kpz_s8", 0.10},         {"kpz_s12", 0.05},       {"kpz_decay", 0.6},
        {"algebraic", 1e-12},     {"norming", 0.10},       {"laplace", 0.05},
        {"g0_band", 0.2},         {"airy", 1e-12},         {"wronskian", 1e-11},
    };
    return t;
}

double RunConfig::tol(const std::string& key) const {
    if (auto it = tolerances.find(key); it != tolerances.end()) return it->second;
    return default_tolerances().at(key);
}

std::vector<double> RunConfig::x_values() const {
    if (!x_list.empty()) return x_list;
    std::vector<double> xs;
    for (int n : n_list) xs.push_back(deformation.x_of_n(n));
    return xs;
}

namespace {

struct Entry {
    std::string value;
    std::string where;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const Entry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (trim(e.value.substr(pos)).empty() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(e.where, "field '" + key + "' expects a number, got '" + e.value + "'");
}

int to_int(const Entry& e, const std::string& key) {
    const double v = to_double(e, key);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError(e.where, "field '" + key + "' expects an integer, got '" + e.value + "'");
    return static_cast<int>(v);
}

std::vector<double> to_list(const Entry& e, const std::string& key) {
    std::vector<double> out;
    std::string v = e.value;
    std::replace(v.begin(), v.end(), '[', ' ');
    std::replace(v.begin(), v.end(), ']', ' ');
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(to_double({item, e.where}, key));
    }
    return out;
}

std::vector<int> to_int_list(const Entry& e, const std::string& key) {
    std::vector<int> out;
    for (double v : to_list(e, key)) {
        if (v != std::floor(v)) throw ConfigError(e.where, "field '" + key + "' expects integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

using Entries = std::vector<std::pair<std::string, Entry>>;  // "section.key" -> entry

Entries parse_ini(const std::string& text) {
    Entries out;
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string where = "line " + std::to_string(lineno);
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(where, "empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(where, "missing key");
        out.push_back({section.empty() ? key : section + "." + key, {trim(line.substr(eq + 1)), where}});
    }
    return out;
}

std::string json_scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    throw ConfigError("json", "unsupported value " + v.dump());
}

Entries parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("json byte " + std::to_string(e.byte), e.what());
    }
    if (!j.is_object()) throw ConfigError("json", "top level must be an object");
    Entries out;
    std::function<void(const nlohmann::json&, const std::string&)> walk =
        [&](const nlohmann::json& node, const std::string& prefix) {
            for (auto it = node.begin(); it != node.end(); ++it) {
                const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
                const auto& v = it.value();
                if (v.is_object()) {
                    walk(v, key);
                } else if (v.is_array()) {
                    std::string s;
                    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + json_scalar(v[i]);
                    out.push_back({key, {s, "field " + key}});
                } else {
                    out.push_back({key, {json_scalar(v), "field " + key}});
                }
            }
        };
    walk(j, "");
    return out;
}

RunConfig build(const Entries& entries) {
    RunConfig c;
    bool have_potential = false, have_n = false;
    for (const auto& [key, e] : entries) {
        const std::string& v = e.value;
        if (key == "name" || key == "run.name") c.name = v;
        else if (key == "potential.coeffs") c.potential = to_list(e, key), have_potential = true;
        else if (key == "deformation.form") {
            try {
                c.deformation.form = parse_qform(v);
            } catch (const DomainError& ex) {
                throw ConfigError(e.where, ex.what());
            }
        } else if (key == "deformation.t") c.deformation.t = to_double(e, key);
        else if (key == "deformation.beta") c.deformation.beta = to_double(e, key);
        else if (key == "deformation.x0") c.deformation.x0 = to_double(e, key);
        else if (key == "deformation.alpha") c.deformation.alpha = to_double(e, key);
        else if (key == "deformation.eps") c.deformation.eps = to_double(e, key);
        else if (key == "deformation.case") {
            try {
                c.deformation.growth = parse_case(v);
            } catch (const DomainError& ex) {
                throw ConfigError(e.where, ex.what());
            }
        } else if (key == "run.n_list") c.n_list = to_int_list(e, key), have_n = true;
        else if (key == "run.x_list") c.x_list = to_list(e, key);
        else if (key == "run.x_rule") {
            if (v != "x0_n_alpha") throw ConfigError(e.where, "x_rule must be 'x0_n_alpha'");
        } else if (key == "run.output_dir") c.output_dir = v;
        else if (key == "run.fd_step") c.fd_step = to_double(e, key);
        else if (key == "run.oracle_n_list") c.oracle_n_list = to_int_list(e, key);
        else if (key == "run.oracle_x_list") c.oracle_x_list = to_list(e, key);
        else if (key == "run.identity_n_list") c.identity_n_list = to_int_list(e, key);
        else if (key == "run.identity_x_list") c.identity_x_list = to_list(e, key);
        else if (key == "run.norming_n_list") c.norming_n_list = to_int_list(e, key);
        else if (key == "run.laplace_n_list") c.laplace_n_list = to_int_list(e, key);
        else if (key == "kpz.s_list") c.kpz.s_list = to_list(e, key);
        else if (key == "kpz.T_list") c.kpz.T_list = to_list(e, key);
        else if (key == "kpz.m") c.kpz.m = to_int(e, key);
        else if (key == "kpz.L") c.kpz.L = to_double(e, key);
        else if (key == "kpz.R") c.kpz.R = to_double(e, key);
        else if (key == "localization.potential") c.localization.potential = to_list(e, key);
        else if (key == "localization.t") c.localization.t = to_double(e, key);
        else if (key == "localization.eps_lo") c.localization.eps_lo = to_double(e, key);
        else if (key == "localization.eps_hi") c.localization.eps_hi = to_double(e, key);
        else if (key == "localization.n_pair") c.localization.n_pair = to_int_list(e, key);
        else if (key.rfind("expect.", 0) == 0) c.expect[key.substr(7)] = to_double(e, key);
        else if (key.rfind("tolerances.", 0) == 0) {
            const std::string name = key.substr(11);
            if (!default_tolerances().count(name)) throw ConfigError(e.where, "unknown tolerance '" + name + "'");
            c.tolerances[name] = to_double(e, key);
        } else {
            throw ConfigError(e.where, "unknown field '" + key + "'");
        }
    }
    if (!have_potential) throw ConfigError("potential.coeffs", "missing potential coefficients");
    if (!have_n) throw ConfigError("run.n_list", "missing n_list");
    return c;
}

}  // namespace

void check_config(const RunConfig& c) {
    if (c.n_list.empty()) throw ConfigError("run.n_list", "n_list must be nonempty");
    for (std::size_t i = 0; i < c.n_list.size(); ++i) {
        if (c.n_list[i] < 1) throw ConfigError("run.n_list", "entries must be positive");
        if (i > 0 && c.n_list[i] <= c.n_list[i - 1]) throw ConfigError("run.n_list", "n_list must be strictly ascending");
    }
    if (!c.x_list.empty() && c.x_list.size() != c.n_list.size())
        throw ConfigError("run.x_list", "x_list must have one entry per n");
    for (const auto& [k, v] : c.tolerances)
        if (!(v > 0.0)) throw ConfigError("tolerances." + k, "tolerances must be positive");
    try {
        PolynomialPotential check(c.potential);
        PolynomialPotential check2(c.localization.potential);
    } catch (const DomainError& e) {
        throw ConfigError("potential.coeffs", e.what());
    }
    if (!(c.deformation.t > 0.0)) throw ConfigError("deformation.t", "t must be positive");
    if (!(c.fd_step > 0.0)) throw ConfigError("run.fd_step", "fd_step must be positive");
    for (int n : c.oracle_n_list)
        if (n < 1 || n > 6) throw ConfigError("run.oracle_n_list", "oracle sizes must lie in [1, 6]");
    if (c.kpz.m < 40) throw ConfigError("kpz.m", "m must be >= 40");
    for (double T : c.kpz.T_list)
        if (!(T > 0.0)) throw ConfigError("kpz.T_list", "T must be positive");
    if (c.localization.n_pair.size() != 2) throw ConfigError("localization.n_pair", "expects two sizes");
}

RunConfig parse_config(const std::string& text) {
    const auto b = text.find_first_not_of(" \t\r\n");
    const bool json = b != std::string::npos && text[b] == '{';
    RunConfig c = build(json ? parse_json(text) : parse_ini(text));
    check_config(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open configuration file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace multstat
