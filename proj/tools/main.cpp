#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "multstat/config.hpp"
#include "multstat/kpz.hpp"
#include "multstat/report.hpp"
#include "multstat/simd.hpp"

using namespace multstat;

int main(int argc, char** argv) {
    CLI::App app{"multiplicative statistics of deformed unitary ensembles"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run every experiment family of a config");
    run_cmd->add_option("config", config_path, "INI or JSON run configuration")->required();

    app.add_subcommand("list", "list experiment families");

    std::string dump_path;
    auto* dump_cmd = app.add_subcommand("dump-recurrence", "recurrence coefficients as CSV");
    dump_cmd->add_option("config", dump_path)->required();

    double s = 0.0, T = 1.0;
    int m = 160;
    auto* kpz_cmd = app.add_subcommand("kpz", "KPZ Fredholm determinant and its tail");
    kpz_cmd->add_option("--s", s, "shift s")->required();
    kpz_cmd->add_option("--T", T, "time T")->check(CLI::PositiveNumber);
    kpz_cmd->add_option("--m", m, "Gauss-Legendre nodes")->check(CLI::Range(40, 4000));

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            RunConfig cfg;
            try {
                cfg = load_config(config_path);
            } catch (const ConfigError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return kConfigError;
            }
            std::cerr << "simd: " << simd::isa_name(simd::active_isa()) << "\n";
            const RunResult r = run(cfg, std::cout);
            if (r.status == kNumericalError)
                std::cerr << "experiment " << r.failed_experiment << " failed: " << r.message << "\n";
            return r.status;
        }
        if (app.got_subcommand("list")) {
            std::cout << list_text();
            return 0;
        }
        if (dump_cmd->parsed()) {
            dump_recurrence(load_config(dump_path), std::cout);
            return 0;
        }
        if (kpz_cmd->parsed()) {
            const KpzDomain dom = default_kpz_domain(s);
            const KpzStatResult r = kpz_mult_stat(s, T, m, dom);
            const double fd = kpz_dlogL_ds_fd(s, T, m, dom);
            std::cout << "s,T,m,L_left,R_right,log_value,dlogL_ds_fd,cc_tail\n"
                      << fmt(s) << ',' << fmt(T) << ',' << m << ',' << fmt(dom.L) << ',' << fmt(dom.R) << ','
                      << fmt(r.log_value) << ',' << fmt(fd) << ',' << fmt(cc_tail_dlogL_ds(s, T)) << '\n';
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericalError;
    }
    return 0;
}
