#pragma once

#include "fiber.hpp"
#include "solver.hpp"

namespace wdde {

// One dense block system per fiber: a block row per grid equation at
// n = -N .. ell+N, a block column per unknown at the same indices.  In solve
// mode every column is a u value.  In range mode the columns outside the
// window are the box outputs p and q, entering their own rows as -I.
struct DenseSystem {
    Matrix a;
    Vector b;
    long n_lo = 0; // grid index of block 0
};

DenseSystem assemble_dense(const ProblemSpec& ps, const FiberFunction& f);

// Reference solution: plain LU on the dense system, gated by a full SVD.
// Shares nothing with the structured reductions beyond the model types and
// elementary matrix operations.
SolveReport solve_dense(const ProblemSpec& ps, const SolveOptions& opt = {});

} // namespace wdde
