#pragma once

#include "fiber.hpp"

#include <string>

namespace wdde {

// Problem files are JSON:
//   { "d": int, "N": int, "epsilon": x, "t0": x, "tf": x,
//     "alpha": matrix, "c": { "-N".."N": matrix }, "mode": "solve"|"range",
//     "fibers": [ { "offset": x, "f": { "<index>": vector, ... } } ] }
// A complex scalar is [re, im]; a matrix is a row-major array of rows;
// a vector is an array of complex scalars. Fiber sample indices must be
// contiguous. Throws ProblemError with a field path on any violation.
ProblemSpec parse_problem(const std::string& json_text, double sv_threshold = 1e-12);

std::string serialize_problem(const ProblemSpec& ps);

// Box-operator input files share the problem schema, with fiber samples under
// "u" instead of "f" ("alpha" and "mode" are optional and ignored).
struct BoxInput {
    Kernel kernel;
    Window window;
    std::vector<FiberFunction> u;
};
BoxInput parse_box_input(const std::string& json_text);

} // namespace wdde
