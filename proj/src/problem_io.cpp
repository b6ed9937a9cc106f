#include "problem_io.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <map>

namespace wdde {

using nlohmann::ordered_json;
using namespace jsonio;

namespace {

ordered_json parse_text(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ProblemError("not valid JSON");
    return j;
}

double require_number(const ordered_json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key) || !j[key].is_number())
        throw ProblemError("expected number field '" + key + "'", path);
    return j[key].get<double>();
}

long require_integer(const ordered_json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ProblemError("expected integer field '" + key + "'", path);
    return j[key].get<long>();
}

FiberFunction read_fiber(const ordered_json& j, long d, const char* sample_key, const std::string& path) {
    FiberFunction f;
    f.offset = require_number(j, "offset", path);
    if (!j.contains(sample_key) || !j[sample_key].is_object())
        throw ProblemError(std::string("expected object field '") + sample_key + "'", path);

    std::map<long, Vector> by_index;
    for (const auto& [key, val] : j[sample_key].items()) {
        long n = parse_index_key(key, path + "/" + sample_key + "/" + key);
        by_index[n] = read_vector(val, d, path + "/" + sample_key + "/" + key);
    }
    if (by_index.empty()) throw ProblemError("fiber has no samples", path + "/" + sample_key);
    f.n_lo = by_index.begin()->first;
    long expect = f.n_lo;
    for (const auto& [n, v] : by_index) {
        if (n != expect)
            throw ProblemError("fiber indices not contiguous: gap before " + std::to_string(n),
                               path + "/" + sample_key);
        f.samples.push_back(v);
        ++expect;
    }
    return f;
}

struct Header {
    Kernel kernel;
    Window window;
};

Header read_header(const ordered_json& j, bool require_alpha) {
    Header h;
    h.kernel.d = require_integer(j, "d", "");
    h.kernel.max_delay = require_integer(j, "N", "");
    if (h.kernel.d < 1) throw ProblemError("d must be >= 1", "/d");
    if (h.kernel.max_delay < 1) throw ProblemError("N must be >= 1", "/N");

    double eps = require_number(j, "epsilon", "");
    double t0 = require_number(j, "t0", "");
    double tf = require_number(j, "tf", "");
    h.window = make_window(t0, tf, eps);

    if (j.contains("alpha"))
        h.kernel.alpha = read_matrix(j["alpha"], h.kernel.d, "/alpha");
    else if (require_alpha)
        throw ProblemError("missing field 'alpha'");
    else
        h.kernel.alpha = Matrix::Zero(h.kernel.d, h.kernel.d);

    if (!j.contains("c") || !j["c"].is_object()) throw ProblemError("expected object field 'c'");
    long N = h.kernel.max_delay;
    h.kernel.coeffs.assign(static_cast<size_t>(2 * N + 1), Matrix());
    std::vector<bool> seen(static_cast<size_t>(2 * N + 1), false);
    for (const auto& [key, val] : j["c"].items()) {
        long k = parse_index_key(key, "/c/" + key);
        if (k < -N || k > N) throw ProblemError("coefficient index outside [-N, N]", "/c/" + key);
        h.kernel.c(k) = read_matrix(val, h.kernel.d, "/c/" + key);
        seen[static_cast<size_t>(k + N)] = true;
    }
    for (long k = -N; k <= N; ++k)
        if (!seen[static_cast<size_t>(k + N)])
            throw ProblemError("missing coefficient", "/c/" + std::to_string(k));
    return h;
}

} // namespace

ProblemSpec parse_problem(const std::string& json_text, double sv_threshold) {
    ordered_json j = parse_text(json_text);
    if (!j.is_object()) throw ProblemError("top level must be an object");

    ProblemSpec ps;
    Header h = read_header(j, /*require_alpha=*/true);
    ps.kernel = std::move(h.kernel);
    ps.window = h.window;

    if (!j.contains("mode") || !j["mode"].is_string()) throw ProblemError("expected string field 'mode'");
    std::string mode = j["mode"].get<std::string>();
    if (mode == "solve")
        ps.mode = Mode::SolveInvertibleAlpha;
    else if (mode == "range")
        ps.mode = Mode::RangeOfBox;
    else
        throw ProblemError("mode must be 'solve' or 'range'", "/mode");

    if (!j.contains("fibers") || !j["fibers"].is_array()) throw ProblemError("expected array field 'fibers'");
    for (size_t i = 0; i < j["fibers"].size(); ++i)
        ps.rhs.push_back(read_fiber(j["fibers"][i], ps.kernel.d, "f", "/fibers/" + std::to_string(i)));

    validate_problem(ps, sv_threshold);
    return ps;
}

std::string serialize_problem(const ProblemSpec& ps) {
    ordered_json j;
    j["d"] = ps.kernel.d;
    j["N"] = ps.kernel.max_delay;
    j["epsilon"] = ps.window.epsilon;
    j["t0"] = ps.window.t0;
    j["tf"] = ps.window.tf;
    j["alpha"] = write_matrix(ps.kernel.alpha);
    ordered_json c;
    for (long k = -ps.kernel.max_delay; k <= ps.kernel.max_delay; ++k)
        c[std::to_string(k)] = write_matrix(ps.kernel.c(k));
    j["c"] = c;
    j["mode"] = ps.mode == Mode::SolveInvertibleAlpha ? "solve" : "range";
    ordered_json fibers = ordered_json::array();
    for (const auto& f : ps.rhs) {
        ordered_json jf;
        jf["offset"] = f.offset;
        ordered_json samples;
        for (long n = f.n_lo; n <= f.n_hi(); ++n) samples[std::to_string(n)] = write_vector(f.at(n));
        jf["f"] = samples;
        fibers.push_back(jf);
    }
    j["fibers"] = fibers;
    return j.dump(2);
}

BoxInput parse_box_input(const std::string& json_text) {
    ordered_json j = parse_text(json_text);
    if (!j.is_object()) throw ProblemError("top level must be an object");

    BoxInput in;
    Header h = read_header(j, /*require_alpha=*/false);
    in.kernel = std::move(h.kernel);
    in.window = h.window;

    if (!j.contains("fibers") || !j["fibers"].is_array()) throw ProblemError("expected array field 'fibers'");
    for (size_t i = 0; i < j["fibers"].size(); ++i) {
        const std::string path = "/fibers/" + std::to_string(i);
        FiberFunction f = read_fiber(j["fibers"][i], in.kernel.d, "u", path);
        if (!(f.offset >= 0.0 && f.offset < in.window.epsilon))
            throw ProblemError("fiber offset must lie in [0, epsilon)", path + "/offset");
        long ell = ell_of(f.offset, in.window);
        if (f.n_lo > 0 || f.n_hi() < ell)
            throw ProblemError("fiber coverage: u must cover the window grid [0," +
                                   std::to_string(ell) + "]",
                               path + "/u");
        in.u.push_back(std::move(f));
    }
    if (in.u.empty()) throw ProblemError("no fibers given", "/fibers");
    return in;
}

} // namespace wdde
