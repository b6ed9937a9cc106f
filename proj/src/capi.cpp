#include "wdde.h"

#include "box.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "problem_io.hpp"
#include "report.hpp"
#include "solver.hpp"
#include "words.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

using namespace wdde;

struct wdde_problem {
    ProblemSpec ps;
};

struct wdde_result {
    SolveReport rep;
};

namespace {

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_err(char** err, const std::string& msg) {
    if (err) *err = copy_string(msg);
}

// Every entry point funnels through here so the exception -> status mapping
// stays in one place.
template <typename Fn>
wdde_status guarded(char** err, Fn&& fn) {
    try {
        fn();
        return WDDE_OK;
    } catch (const SingularSystem& e) {
        set_err(err, e.what());
        return WDDE_ERR_SINGULAR;
    } catch (const ProblemError& e) {
        set_err(err, e.what());
        return WDDE_ERR_INPUT;
    } catch (const MissingSample& e) {
        set_err(err, e.what());
        return WDDE_ERR_INPUT;
    } catch (const std::domain_error& e) {
        set_err(err, e.what());
        return WDDE_ERR_INPUT;
    } catch (const std::invalid_argument& e) {
        set_err(err, e.what());
        return WDDE_ERR_INPUT;
    } catch (const std::exception& e) {
        set_err(err, e.what());
        return WDDE_ERR_INTERNAL;
    } catch (...) {
        set_err(err, "unknown error");
        return WDDE_ERR_INTERNAL;
    }
}

SolveOptions to_options(const wdde_options* opt) {
    SolveOptions so;
    if (opt) so.sv_threshold = opt->sv_threshold;
    return so;
}

} // namespace

extern "C" {

void wdde_options_init(wdde_options* opt) {
    if (!opt) return;
    opt->residual_tol = 1e-8;
    opt->sv_threshold = 1e-12;
    opt->method = "auto";
}

wdde_status wdde_problem_parse(const char* json, double sv_threshold, wdde_problem** out,
                               char** err) {
    if (!json || !out) {
        set_err(err, "null argument");
        return WDDE_ERR_INPUT;
    }
    *out = nullptr;
    return guarded(err, [&] { *out = new wdde_problem{parse_problem(json, sv_threshold)}; });
}

void wdde_problem_free(wdde_problem* p) { delete p; }

long wdde_problem_dimension(const wdde_problem* p) { return p ? p->ps.kernel.d : 0; }

long wdde_problem_max_delay(const wdde_problem* p) { return p ? p->ps.kernel.max_delay : 0; }

wdde_status wdde_solve(const wdde_problem* p, const wdde_options* opt, wdde_result** out,
                       char** err) {
    if (!p || !out) {
        set_err(err, "null argument");
        return WDDE_ERR_INPUT;
    }
    *out = nullptr;
    std::string method = opt && opt->method ? opt->method : "auto";
    return guarded(err, [&] {
        SolveOptions so = to_options(opt);
        SolveReport rep;
        if (method == "auto")
            rep = solve_auto(p->ps, so);
        else if (method == "n1")
            rep = solve_n1(p->ps, so);
        else if (method == "general")
            rep = solve_general(p->ps, so);
        else
            throw ProblemError("unknown method '" + method + "'");
        *out = new wdde_result{std::move(rep)};
    });
}

wdde_status wdde_solve_dense(const wdde_problem* p, const wdde_options* opt, wdde_result** out,
                             char** err) {
    if (!p || !out) {
        set_err(err, "null argument");
        return WDDE_ERR_INPUT;
    }
    *out = nullptr;
    return guarded(err,
                   [&] { *out = new wdde_result{solve_dense(p->ps, to_options(opt))}; });
}

void wdde_result_free(wdde_result* r) { delete r; }

wdde_status wdde_result_to_json(const wdde_result* r, char** out, char** err) {
    if (!r || !out) {
        set_err(err, "null argument");
        return WDDE_ERR_INPUT;
    }
    *out = nullptr;
    return guarded(err, [&] { *out = copy_string(report_to_json(r->rep)); });
}

double wdde_result_residual_rel(const wdde_result* r) { return r ? r->rep.residual_rel : 0.0; }

wdde_status wdde_box_apply(const char* json, int cross_check, char** out, char** err) {
    if (!json || !out) {
        set_err(err, "null argument");
        return WDDE_ERR_INPUT;
    }
    *out = nullptr;
    return guarded(err, [&] {
        BoxInput in = parse_box_input(json);
        auto piecewise = apply_box_grid(in.kernel, in.window, in.u, true);
        std::optional<double> max_diff;
        if (cross_check) {
            auto direct = apply_box_grid(in.kernel, in.window, in.u, false);
            double diff = 0.0;
            for (size_t i = 0; i < piecewise.size(); ++i)
                for (long n = piecewise[i].n_lo; n <= piecewise[i].n_hi(); ++n)
                    diff = std::max(diff,
                                    (piecewise[i].at(n) - direct[i].at(n)).norm());
            max_diff = diff;
        }
        *out = copy_string(box_result_to_json(in, piecewise, max_diff));
    });
}

wdde_status wdde_delta_words(long n, char** out, char** err) {
    if (!out) {
        set_err(err, "null argument");
        return WDDE_ERR_INPUT;
    }
    *out = nullptr;
    return guarded(err, [&] { *out = copy_string(delta_words_to_json(n)); });
}

wdde_status wdde_delta_eval(const char* pair_json, long n, char** out, char** err) {
    if (!pair_json || !out) {
        set_err(err, "null argument");
        return WDDE_ERR_INPUT;
    }
    *out = nullptr;
    return guarded(err, [&] {
        auto [beta, gamma] = parse_matrix_pair(pair_json);
        *out = copy_string(delta_eval_to_json(beta, gamma, n));
    });
}

wdde_status wdde_genericity_sample(long d, long n_max, long trials, uint64_t seed,
                                   double threshold, char** out, char** err) {
    if (!out) {
        set_err(err, "null argument");
        return WDDE_ERR_INPUT;
    }
    *out = nullptr;
    return guarded(err, [&] {
        *out = copy_string(genericity_to_json(sample_genericity(d, n_max, trials, seed, threshold)));
    });
}

void wdde_string_free(char* s) { std::free(s); }

} // extern "C"
