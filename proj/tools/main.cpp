#include <wdde.h>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

// 0 ok, 1 bad input or usage, 2 numerical failure (singular gate or residual
// above tolerance), 3 internal.
int exit_code(wdde_status st) {
    switch (st) {
        case WDDE_OK: return 0;
        case WDDE_ERR_INPUT: return 1;
        case WDDE_ERR_SINGULAR: return 2;
        default: return 3;
    }
}

int fail(wdde_status st, char* err) {
    std::cerr << "error: " << (err ? err : "unknown") << "\n";
    wdde_string_free(err);
    return exit_code(st);
}

std::string read_input(const std::string& path, const char* option = "--input") {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError(option, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int write_output(const std::string& path, const char* text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return 0;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 1;
    }
    out << text << "\n";
    return 0;
}

struct SolveArgs {
    std::string input = "-";
    std::string output;
    std::string method = "auto";
    double tol = 1e-8;
    double sv_threshold = 1e-12;
};

int run_solve(const SolveArgs& args, bool dense) {
    std::string text = read_input(args.input);
    wdde_problem* prob = nullptr;
    char* err = nullptr;
    wdde_status st = wdde_problem_parse(text.c_str(), args.sv_threshold, &prob, &err);
    if (st != WDDE_OK) return fail(st, err);

    wdde_options opt;
    wdde_options_init(&opt);
    opt.residual_tol = args.tol;
    opt.sv_threshold = args.sv_threshold;
    opt.method = args.method.c_str();

    wdde_result* res = nullptr;
    st = dense ? wdde_solve_dense(prob, &opt, &res, &err) : wdde_solve(prob, &opt, &res, &err);
    wdde_problem_free(prob);
    if (st != WDDE_OK) return fail(st, err);

    char* json = nullptr;
    st = wdde_result_to_json(res, &json, &err);
    if (st != WDDE_OK) {
        wdde_result_free(res);
        return fail(st, err);
    }
    int rc = write_output(args.output, json);
    wdde_string_free(json);
    double residual_rel = wdde_result_residual_rel(res);
    wdde_result_free(res);
    if (rc != 0) return rc;
    if (residual_rel > args.tol) {
        std::cerr << "error: residual_rel " << residual_rel << " exceeds tolerance " << args.tol
                  << "\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver for windowed matrix delay-difference equations"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Structured solve of a problem file");
    solve->add_option("--input", solve_args.input, "problem JSON ('-' for stdin)");
    solve->add_option("--output", solve_args.output, "report destination (default stdout)");
    solve->add_option("--method", solve_args.method, "auto|n1|general")
        ->check(CLI::IsMember({"auto", "n1", "general"}));
    solve->add_option("--tol", solve_args.tol, "acceptance bound on residual_rel");
    solve->add_option("--sv-threshold", solve_args.sv_threshold, "singular-value gate level");

    SolveArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "Dense reference solve of a problem file");
    oracle->add_option("--input", oracle_args.input, "problem JSON ('-' for stdin)");
    oracle->add_option("--output", oracle_args.output, "report destination (default stdout)");
    oracle->add_option("--tol", oracle_args.tol, "acceptance bound on residual_rel");
    oracle->add_option("--sv-threshold", oracle_args.sv_threshold, "singular-value gate level");

    std::string box_input = "-", box_output;
    bool box_check = false;
    CLI::App* box = app.add_subcommand("box", "Apply the window operator to sampled data");
    box->add_option("--input", box_input, "data JSON ('-' for stdin)");
    box->add_option("--output", box_output, "result destination (default stdout)");
    box->add_flag("--check", box_check, "compare the gated and contiguous evaluation routes");

    long delta_n = 0;
    std::string delta_matrices;
    CLI::App* delta = app.add_subcommand("delta", "Word expansion of a delta term");
    delta->add_option("--n", delta_n, "term index (>= 0)")->required();
    delta->add_option("--matrices", delta_matrices,
                      "JSON file with a {beta, gamma} pair to evaluate on");

    long gen_d = 2, gen_nmax = 10, gen_trials = 1000;
    std::uint64_t gen_seed = 0;
    double gen_threshold = 1e-12;
    std::string gen_output;
    CLI::App* gen = app.add_subcommand("genericity", "Random-pair screening");
    gen->add_option("--d", gen_d, "matrix dimension");
    gen->add_option("--nmax", gen_nmax, "check delta terms up to this index");
    gen->add_option("--trials", gen_trials, "number of random pairs");
    gen->add_option("--seed", gen_seed, "RNG seed")->required();
    gen->add_option("--threshold", gen_threshold, "singular-value gate level");
    gen->add_option("--output", gen_output, "result destination (default stdout)");

    try {
        app.parse(argc, argv);

        if (*solve) return run_solve(solve_args, false);
        if (*oracle) return run_solve(oracle_args, true);

        char* err = nullptr;
        char* out = nullptr;
        if (*box) {
            std::string text = read_input(box_input);
            wdde_status st = wdde_box_apply(text.c_str(), box_check ? 1 : 0, &out, &err);
            if (st != WDDE_OK) return fail(st, err);
            int rc = write_output(box_output, out);
            wdde_string_free(out);
            return rc;
        }
        if (*delta) {
            wdde_status st;
            if (delta_matrices.empty()) {
                st = wdde_delta_words(delta_n, &out, &err);
            } else {
                std::string pair = read_input(delta_matrices, "--matrices");
                st = wdde_delta_eval(pair.c_str(), delta_n, &out, &err);
            }
            if (st != WDDE_OK) return fail(st, err);
            int rc = write_output("", out);
            wdde_string_free(out);
            return rc;
        }
        if (*gen) {
            wdde_status st = wdde_genericity_sample(gen_d, gen_nmax, gen_trials, gen_seed,
                                                    gen_threshold, &out, &err);
            if (st != WDDE_OK) return fail(st, err);
            int rc = write_output(gen_output, out);
            wdde_string_free(out);
            return rc;
        }
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
