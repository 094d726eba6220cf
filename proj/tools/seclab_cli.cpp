// seclab: run indistinguishability and comparison-based semantic
// security experiments against toy schemes, exactly or by Monte Carlo,
// and check the adversary-construction identities between the two games.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "seclab/corpus.hpp"
#include "seclab/harness.hpp"

using nlohmann::json;

namespace {

void add_cell_flags(CLI::App* cmd, seclab::RunConfig& cfg, bool& exact_flag) {
    cmd->add_option("--game", cfg.game, "Game: ind or css")->default_str("ind");
    cmd->add_option("--atk", cfg.atk, "Attack model: cpa, cca1, cca2")->default_str("cpa");
    cmd->add_option("--scheme", cfg.scheme, "Scheme id (see `seclab list`)")->required();
    cmd->add_option("--adversary", cfg.adversary, "Adversary id")->required();
    cmd->add_option("--sampler", cfg.sampler, "Sample algorithm (css)")->default_str("uniform");
    cmd->add_option("--k", cfg.k, "Security parameter (message bit-length)")->default_val(4);
    cmd->add_flag("--exact", exact_flag, "Enumerate every coin tape instead of sampling");
    cmd->add_option("--n", cfg.trials, "Trials per arm");
    cmd->add_option("--epsilon", cfg.epsilon, "Target per-arm half-width (with --delta)");
    cmd->add_option("--delta", cfg.delta, "Confidence parameter");
    cmd->add_option("--seed", cfg.seed, "Master seed")->default_val(1);
}

int emit(const json& report, const std::string& out_path) {
    std::cout << report.dump(2) << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "cannot write " << out_path << "\n";
            return 1;
        }
        f << report.dump(2) << "\n";
    }
    return 0;
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const seclab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const seclab::UnknownCorpusId& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const seclab::EnumerationInfeasible& e) {
        std::cerr << "exact mode infeasible: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"game-based public-key encryption security laboratory"};
    app.require_subcommand(1);

    seclab::RunConfig cfg;
    bool exact_flag = false;
    std::string out_path;
    std::string matrix_path;
    std::string csv_path;
    std::vector<int> k_list{4, 6, 8};
    double sweep_c = 2.0;

    auto* run = app.add_subcommand("run", "Run one experiment cell");
    add_cell_flags(run, cfg, exact_flag);
    run->add_option("--out", out_path, "Write the report to this path");

    auto* reduce = app.add_subcommand("reduce", "Build the constructed adversary and check the "
                                                "advantage identity");
    add_cell_flags(reduce, cfg, exact_flag);
    reduce->add_option("--direction", cfg.direction, "css_from_ind or ind_from_css")->required();
    reduce->add_option("--tie-break", cfg.tie_break, "coinflip or last_if (ind_from_css)")
        ->default_str("coinflip");
    reduce->add_option("--out", out_path, "Write the report to this path");

    auto* matrix = app.add_subcommand("matrix", "Run every cell of a matrix config file");
    matrix->add_option("config", matrix_path, "JSON file with a \"cells\" array")->required();
    matrix->add_option("--out", out_path, "Write the collection report to this path");
    matrix->add_option("--csv", csv_path, "Write the summary table as CSV");

    auto* sweep = app.add_subcommand("sweep", "Estimate the advantage across security parameters");
    add_cell_flags(sweep, cfg, exact_flag);
    sweep->add_option("--k-list", k_list, "Security parameters to sweep")->delimiter(',');
    sweep->add_option("--c", sweep_c, "Compare |advantage| against k^-c")->default_val(2.0);
    sweep->add_option("--out", out_path, "Write the report to this path");

    auto* list = app.add_subcommand("list", "Print the registry");

    CLI11_PARSE(app, argc, argv);
    cfg.exact = exact_flag;

    if (run->parsed())
        return run_guarded([&] { return emit(seclab::run_single(cfg), out_path); });

    if (reduce->parsed())
        return run_guarded([&] { return emit(seclab::run_reduction_check(cfg), out_path); });

    if (sweep->parsed())
        return run_guarded([&] {
            seclab::SweepConfig sc{cfg, k_list, sweep_c};
            return emit(seclab::run_sweep(sc), out_path);
        });

    if (matrix->parsed())
        return run_guarded([&] {
            std::ifstream f(matrix_path);
            if (!f) throw seclab::ConfigError("cannot read " + matrix_path);
            json doc;
            try {
                doc = json::parse(f);
            } catch (const json::exception& e) {
                throw seclab::ConfigError(std::string("unparseable matrix file: ") + e.what());
            }
            seclab::MatrixOutcome outcome = seclab::run_matrix(doc);
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                csv << "cell,status,game,atk,scheme,adversary,k,advantage\n";
                for (const auto& row : outcome.report.at("summary")) {
                    csv << row.value("cell", 0) << ',' << row.value("status", "") << ','
                        << row.value("game", "") << ',' << row.value("atk", "") << ','
                        << row.value("scheme", "") << ',' << row.value("adversary", "") << ','
                        << row.value("k", 0) << ',';
                    if (row.contains("advantage")) csv << row.at("advantage").dump();
                    csv << "\n";
                }
            }
            int emit_rc = emit(outcome.report, out_path);
            return emit_rc != 0 ? emit_rc : outcome.exit_code;
        });

    if (list->parsed()) {
        std::cout << "schemes:\n";
        for (const auto& id : seclab::corpus::scheme_ids()) std::cout << "  " << id << "\n";
        std::cout << "ind adversaries:\n";
        for (const auto& id : seclab::corpus::ind_adversary_ids()) std::cout << "  " << id << "\n";
        std::cout << "css adversaries:\n";
        for (const auto& id : seclab::corpus::css_adversary_ids()) std::cout << "  " << id << "\n";
        std::cout << "samplers:\n";
        for (const auto& id : seclab::corpus::sampler_ids()) std::cout << "  " << id << "\n";
        std::cout << "partial-info functions:\n";
        for (const auto& f :
             seclab::corpus::partial_info_functions(seclab::SecurityParameter(4)))
            std::cout << "  " << f.description << "\n";
        std::cout << "  two_point(x0,x1) [built by the css_from_ind construction]\n";
        return 0;
    }
    return 0;
}
