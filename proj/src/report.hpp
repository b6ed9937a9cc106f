#pragma once

#include "problem_io.hpp"
#include "solver.hpp"
#include "words.hpp"

#include <optional>
#include <string>
#include <utility>

namespace wdde {

std::string report_to_json(const SolveReport& rep);

std::string genericity_to_json(const GenericityReport& rep);

// Box values per fiber plus the support bounds; `check_max_diff` carries the
// largest gap between the two evaluation routes when the caller compared them.
std::string box_result_to_json(const BoxInput& in, const std::vector<FiberFunction>& box,
                               std::optional<double> check_max_diff);

std::string delta_words_to_json(long n);

// The same delta term by all three routes (left and right stepping, word
// expansion), plus the scalar closed form when the pair is 1x1 with distinct
// characteristic roots.
std::string delta_eval_to_json(const Matrix& beta, const Matrix& gamma, long n);

// {"beta": matrix, "gamma": matrix}, both square of equal size.
std::pair<Matrix, Matrix> parse_matrix_pair(const std::string& json_text);

} // namespace wdde
