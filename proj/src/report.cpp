#include "report.hpp"

#include "box.hpp"
#include "json_util.hpp"

namespace wdde {

using nlohmann::ordered_json;
using namespace jsonio;

namespace {

ordered_json write_samples(const FiberFunction& f) {
    ordered_json out;
    for (long n = f.n_lo; n <= f.n_hi(); ++n) out[std::to_string(n)] = write_vector(f.at(n));
    return out;
}

const FiberFunction* match(const std::vector<FiberFunction>& fs, double offset) {
    for (const auto& f : fs)
        if (f.offset == offset) return &f;
    return nullptr;
}

} // namespace

std::string report_to_json(const SolveReport& rep) {
    ordered_json j;
    j["mode"] = rep.mode == Mode::SolveInvertibleAlpha ? "solve" : "range";
    j["method"] = rep.method;
    j["residual_max"] = rep.residual_max;
    j["residual_rel"] = rep.residual_rel;
    j["f_scale"] = rep.f_scale;

    ordered_json gates = ordered_json::array();
    for (const auto& g : rep.gates) {
        ordered_json jg;
        jg["name"] = g.name;
        if (g.offset)
            jg["offset"] = *g.offset;
        else
            jg["offset"] = nullptr;
        jg["abs_det"] = g.abs_det;
        jg["sv_ratio"] = g.sv_ratio;
        gates.push_back(jg);
    }
    j["gates"] = gates;

    ordered_json fibers = ordered_json::array();
    for (const auto& u : rep.u) {
        ordered_json jf;
        jf["offset"] = u.offset;
        jf["u"] = write_samples(u);
        if (const FiberFunction* p = match(rep.p, u.offset)) jf["p"] = write_samples(*p);
        if (const FiberFunction* q = match(rep.q, u.offset)) jf["q"] = write_samples(*q);
        fibers.push_back(jf);
    }
    j["fibers"] = fibers;
    return j.dump(2);
}

std::string genericity_to_json(const GenericityReport& rep) {
    ordered_json j;
    j["d"] = rep.d;
    j["n_max"] = rep.n_max;
    j["trials"] = rep.trials;
    j["seed"] = rep.seed;
    j["threshold"] = rep.threshold;
    j["all_ok"] = rep.all_ok();
    ordered_json failures = ordered_json::array();
    for (const auto& f : rep.failures) {
        ordered_json jf;
        jf["trial"] = f.trial;
        jf["check"] = f.check;
        jf["n"] = f.n;
        jf["value"] = f.value;
        failures.push_back(jf);
    }
    j["failures"] = failures;
    return j.dump(2);
}

std::string box_result_to_json(const BoxInput& in, const std::vector<FiberFunction>& box,
                               std::optional<double> check_max_diff) {
    ordered_json j;
    j["epsilon"] = in.window.epsilon;
    j["t0"] = in.window.t0;
    j["tf"] = in.window.tf;
    auto [lo, hi] = box_support_bounds(in.window, in.kernel.max_delay);
    j["support"] = ordered_json::array({lo, hi});
    ordered_json fibers = ordered_json::array();
    for (const auto& f : box) {
        ordered_json jf;
        jf["offset"] = f.offset;
        jf["box"] = write_samples(f);
        fibers.push_back(jf);
    }
    j["fibers"] = fibers;
    if (check_max_diff) j["check"] = ordered_json{{"max_abs_diff", *check_max_diff}};
    return j.dump(2);
}

std::string delta_words_to_json(long n) {
    auto words = enumerate_delta_words(n);
    ordered_json j;
    j["n"] = n;
    j["count"] = static_cast<long long>(words.size());
    ordered_json jw = ordered_json::array();
    for (const auto& w : words) {
        ordered_json item;
        item["runs"] = w.runs;
        item["display"] = w.display();
        jw.push_back(item);
    }
    j["words"] = jw;
    return j.dump(2);
}

std::string delta_eval_to_json(const Matrix& beta, const Matrix& gamma, long n) {
    ordered_json j;
    j["n"] = n;
    j["d"] = beta.rows();
    auto left = delta_seq(beta, gamma, n, DeltaSide::Left);
    auto right = delta_seq(beta, gamma, n, DeltaSide::Right);
    j["left"] = write_matrix(left[static_cast<size_t>(n)]);
    j["right"] = write_matrix(right[static_cast<size_t>(n)]);
    j["word_sum"] = write_matrix(MatricialPolynomial::delta(n).eval(beta, gamma));
    if (beta.rows() == 1) {
        Complex b = beta(0, 0), g = gamma(0, 0);
        if (b * b + 4.0 * g != Complex{0.0, 0.0})
            j["binet"] = write_complex(binet_scalar_delta(b, g, n));
    }
    return j.dump(2);
}

std::pair<Matrix, Matrix> parse_matrix_pair(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text, nullptr, false);
    if (j.is_discarded()) throw ProblemError("not valid JSON");
    if (!j.is_object() || !j.contains("beta") || !j.contains("gamma"))
        throw ProblemError("expected object with 'beta' and 'gamma' matrices");
    Matrix beta = read_square_matrix(j["beta"], "/beta");
    Matrix gamma = read_matrix(j["gamma"], beta.rows(), "/gamma");
    return {beta, gamma};
}

} // namespace wdde
