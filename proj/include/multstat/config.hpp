#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "multstat/deformation.hpp"

namespace multstat {

/// Parse or validation failure in a run configuration. `where` names the line
/// ("line 12") or the field ("run.n_list").
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

struct KpzConfig {
    std::vector<double> s_list{4.0, 8.0, 12.0};
    std::vector<double> T_list{1.0};
    int m = 160;
    std::optional<double> L;  // default 14 + 2 max(s, 0)
    double R = 10.0;
};

struct LocalizationConfig {
    std::vector<double> potential{2.0, 2.0, 0.5};  // (z+2)²/2
    double t = 2.0;
    double eps_lo = 10.0;
    double eps_hi = 4.0;
    std::vector<int> n_pair{15, 30};
};

struct RunConfig {
    std::string name = "run";
    std::vector<double> potential;
    DeformationSpec deformation;
    std::vector<int> n_list;
    std::vector<double> x_list;  // empty: x = x0 n^alpha
    std::vector<int> oracle_n_list{2, 3, 4, 5};
    std::vector<double> oracle_x_list{-2.0, 0.0, 1.0, 2.0};
    std::vector<int> identity_n_list{8, 12, 16};
    std::vector<double> identity_x_list{0.5, 1.0, 2.0};
    std::vector<int> norming_n_list{10, 30};
    std::vector<int> laplace_n_list{200, 400, 800};
    double fd_step = 1e-4;
    KpzConfig kpz;
    LocalizationConfig localization;
    std::map<std::string, double> expect;  // optional exact references (endpoint_a, cV, h0)
    std::string output_dir = "out";
    std::map<std::string, double> tolerances;

    double tol(const std::string& key) const;
    std::vector<double> x_values() const;  // aligned with n_list
};

/// Default tolerance table; keys are the names accepted in [tolerances].
const std::map<std::string, double>& default_tolerances();

/// INI-style text: `[section]` headers, `key = value`, `#`/`;` comments,
/// comma-separated lists. JSON with the same sections as objects is accepted
/// when the text starts with `{`.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Invariants: nonempty ascending n_list, positive tolerances, consistent lists.
void check_config(const RunConfig& cfg);

}  // namespace multstat
