#include "nalab/errors.hpp"
#include "nalab/experiments.hpp"
#include "nalab/specfun.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace nalab;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

json read_json_arg(const std::string& text)
{
    if (!text.empty() && text.front() == '{')
        return json::parse(text);
    std::ifstream in(text);
    if (!in)
        throw ConfigError("cannot open '" + text + "'");
    return json::parse(in);
}

int exit_for(Verdict v)
{
    return v == Verdict::fail ? kFail : kPass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Maximal functions and weights on radial models of harmonic NA groups"};
    app.require_subcommand(1);

    // space info
    auto* space = app.add_subcommand("space", "Space parameters");
    auto* space_info = space->add_subcommand("info", "Print the parameters derived from (m,k) or (sigma,tau)");
    space->require_subcommand(1);
    int m = 2, k = 1;
    double sigma_in = -1.0, tau_in = -1.0;
    space_info->add_option("--m", m, "dim of the first layer (even)");
    space_info->add_option("--k", k, "dim of the centre");
    space_info->add_option("--sigma", sigma_in, "Jacobi sigma (overrides m,k)");
    space_info->add_option("--tau", tau_in, "Jacobi tau");

    // jacobi eval
    auto* jacobi = app.add_subcommand("jacobi", "Jacobi functions");
    auto* jacobi_eval = jacobi->add_subcommand("eval", "Tabulate phi (or Phi with --second) as CSV");
    jacobi->require_subcommand(1);
    double sigma = 1.0, tau = 0.0, lre = 0.0, lim = 0.0, tmin = 0.0, tmax = 5.0, step = 0.1;
    bool second = false;
    jacobi_eval->add_option("--sigma", sigma)->required();
    jacobi_eval->add_option("--tau", tau)->required();
    jacobi_eval->add_option("--lambda-re", lre);
    jacobi_eval->add_option("--lambda-im", lim);
    jacobi_eval->add_option("--tmin", tmin);
    jacobi_eval->add_option("--tmax", tmax)->required();
    jacobi_eval->add_option("--step", step)->required();
    jacobi_eval->add_flag("--second", second, "second solution Phi instead of phi");

    // weight check
    auto* weight_cmd = app.add_subcommand("weight", "Weight conditions");
    auto* weight_check = weight_cmd->add_subcommand("check", "Run one condition checker on a weight");
    weight_cmd->require_subcommand(1);
    std::string spec_text, condition;
    double p = 2.0, s = 2.0, alpha = 0.5, beta = 0.5, eta = 0.0;
    int J_max = 80, N_max = 25;
    std::uint64_t weight_seed = 42;
    weight_check->add_option("--spec", spec_text, "weight spec as JSON text or file")->required();
    weight_check->add_option("--condition", condition, "checker id")->required();
    weight_check->add_option("--p", p);
    weight_check->add_option("--s", s);
    weight_check->add_option("--alpha", alpha);
    weight_check->add_option("--beta", beta);
    weight_check->add_option("--eta", eta);
    weight_check->add_option("--J-max", J_max);
    weight_check->add_option("--N-max", N_max);
    weight_check->add_option("--seed", weight_seed);

    // reproduce
    auto* repro = app.add_subcommand("reproduce", "Run a named experiment");
    std::string id, out_dir;
    std::uint64_t seed = 42;
    repro->add_option("id", id, "experiment id")->required();
    repro->add_option("--seed", seed);
    repro->add_option("--out", out_dir, "output directory");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Grid sweep from a config file");
    std::string config_path, sweep_out;
    sweep_cmd->add_option("--config", config_path)->required();
    sweep_cmd->add_option("--out", sweep_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (space_info->parsed()) {
            const SpaceParams sp = sigma_in >= 0.0 ? SpaceParams::from_jacobi(sigma_in, tau_in < 0.0 ? 0.0 : tau_in)
                                                   : SpaceParams::from_dimensions(m, k);
            json j = {{"sigma", sp.sigma}, {"tau", sp.tau}, {"Q", sp.Q},      {"rho", sp.rho},
                      {"ell", sp.ell},     {"varrho", sp.varrho}};
            if (sp.dimensional)
                j["m"] = sp.m, j["k"] = sp.k;
            std::cout << j.dump(2) << "\n";
            return kPass;
        }
        if (jacobi_eval->parsed()) {
            if (!(step > 0.0) || !(tmax >= tmin) || tmin < 0.0)
                throw ConfigError("jacobi eval: need step > 0 and 0 <= tmin <= tmax");
            const JacobiParams jp{sigma, tau, cplx(lre, lim)};
            const auto grid = uniform_grid(second && tmin == 0.0 ? step : tmin, tmax, step);
            const FunctionTrace tr = second ? jacobi_second_trace(jp, grid) : jacobi_trace(jp, grid);
            std::cout << "t,re,im,err,method\n";
            for (std::size_t n = 0; n < tr.size(); ++n) {
                char line[160];
                std::snprintf(line, sizeof line, "%.6f,%.17g,%.17g,%.3g,", tr.t[n], tr.values[n].real(),
                              tr.values[n].imag(), tr.error[n]);
                std::cout << line << to_string(tr.method[n]) << "\n";
            }
            return kPass;
        }
        if (weight_check->parsed()) {
            ExperimentConfig cfg;
            cfg.weight = read_json_arg(spec_text);
            parse_weight_spec(cfg.weight);
            cfg.J_max = J_max;
            cfg.N_max = N_max;
            if (N_max < 1 || N_max > J_max - 2)
                throw ConfigError("weight check: need 1 <= N-max <= J-max - 2");
            cfg.checker = condition;
            cfg.seed = weight_seed;
            cfg.checker_params = {{"p", p}, {"s", s}, {"alpha", alpha}, {"beta", beta}, {"eta", eta}};
            json full = {{"weight", cfg.weight}, {"checker", cfg.checker_params}};
            full["checker"]["id"] = condition;
            parse_config(full); // validates the checker id
            const CheckReport rep = run_checker(cfg);
            std::cout << to_json(rep).dump(2) << "\n";
            return exit_for(rep.verdict);
        }
        if (repro->parsed()) {
            const ExperimentOutcome outcome = reproduce(id, seed);
            const std::string dir = resolve_output_dir(out_dir);
            write_text(dir, id + ".json", outcome_json(outcome, current_timestamp()).dump(2) + "\n");
            write_text(dir, id + ".csv", outcome_csv(outcome));
            std::cout << id << ": " << (outcome.pass ? "pass" : "fail") << " " << outcome.summary.dump() << "\n";
            return outcome.pass ? kPass : kFail;
        }
        if (sweep_cmd->parsed()) {
            const ExperimentConfig cfg = load_config(config_path);
            const auto rows = sweep(cfg);
            const std::string dir = resolve_output_dir(sweep_out.empty() ? cfg.output_dir : sweep_out);
            const std::string name = cfg.output_name.empty() ? "sweep" : cfg.output_name;
            json reports = json::array();
            bool failed = false;
            for (const auto& row : rows) {
                json r = to_json(row.report);
                r["params"] = row.params;
                reports.push_back(std::move(r));
                failed = failed || row.report.verdict == Verdict::fail;
            }
            json doc = {{"checker", cfg.checker}, {"seed", cfg.seed}, {"rows", reports},
                        {"timestamp", current_timestamp()}};
            write_text(dir, name + ".csv", sweep_csv(cfg, rows));
            write_text(dir, name + ".json", doc.dump(2) + "\n");
            std::cout << sweep_csv(cfg, rows);
            return failed ? kFail : kPass;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
