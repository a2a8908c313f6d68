// Command-line front end for the l_p splitting solvers.
#include "lpsplit/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Forward-backward-forward splitting for monotone inclusions in l_p spaces"};
    app.require_subcommand(1);

    std::string run_config;
    auto* run = app.add_subcommand("run", "Solve one configured instance and write its trace");
    run->add_option("config", run_config, "JSON run configuration")->required();

    std::vector<double> ps{1.25, 1.5, 2.0};
    int samples = 10000;
    std::uint64_t seed = 1;
    long dim = 10;
    auto* verify = app.add_subcommand("verify-constants", "Sample the geometric inequalities for each p");
    verify->add_option("-p,--p", ps, "Exponents in (1, 2]");
    verify->add_option("-s,--samples", samples, "Samples per exponent");
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("-n,--dim", dim, "Dimension of the sampled vectors");

    lpsplit::cli::RateReportArgs rate;
    double phi1 = -1.0;
    auto* rate_cmd = app.add_subcommand("rate-report", "Check the O(1/sqrt(n)) residual bound on a trace");
    rate_cmd->add_option("trace", rate.trace_path, "Trace CSV from a fixed-step run")->required();
    rate_cmd->add_option("--lipschitz,-L", rate.lipschitz, "Lipschitz bound used by the run")->required();
    rate_cmd->add_option("--b", rate.b, "Upper step size b")->required();
    rate_cmd->add_option("--p", rate.p, "Space exponent p")->required();
    auto* phi_opt = rate_cmd->add_option("--phi1", phi1, "phi(x*, x_1); defaults to the first trace row");

    std::string compare_config;
    auto* compare = app.add_subcommand("compare", "Run several solver variants on one instance");
    compare->add_option("config", compare_config, "JSON configuration with a 'solvers' list")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : lpsplit::cli::kError;
    }

    const lpsplit::cli::RunOptions opts{lpsplit::cli::strict_from_env()};
    if (*run) return lpsplit::cli::cmd_run(run_config, opts, std::cout, std::cerr);
    if (*verify) return lpsplit::cli::cmd_verify_constants(ps, samples, seed, dim, std::cout, std::cerr);
    if (*rate_cmd) {
        if (*phi_opt) rate.phi1 = phi1;
        return lpsplit::cli::cmd_rate_report(rate, std::cout, std::cerr);
    }
    if (*compare) return lpsplit::cli::cmd_compare(compare_config, opts, std::cout, std::cerr);
    return lpsplit::cli::kError;
}
