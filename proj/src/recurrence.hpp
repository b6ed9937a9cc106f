#pragma once

#include "linalg.hpp"

#include <vector>

namespace wdde {

// Ordered product m[n-1] * ... * m[0], accumulated ascending by left
// multiplication (p = m[k] * p).
Matrix left_product(const std::vector<Matrix>& ms);

// Direct stepping of w[k+1] = m[k] w[k] + g[k].  Returns w[0..n] where
// n = ms.size(); gs must have the same length as ms.
std::vector<Vector> iterate_affine(const std::vector<Matrix>& ms, const std::vector<Vector>& gs,
                                   const Vector& w0);

// Endpoint of the same recurrence in closed form: the full ordered product
// against w0 plus the suffix product m[n-1]...m[k+1] against each g[k].
Vector nonstationary_closed_form(const std::vector<Matrix>& ms, const std::vector<Vector>& gs,
                                 const Vector& w0);

// Constant-matrix case via explicit powers:
//   w[n] = m^n w0 + sum_{k=0}^{n-1} m^{n-1-k} g[k].
Vector stationary_closed_form(const Matrix& m, const std::vector<Vector>& gs, const Vector& w0,
                              long n);

// 2d x 2d block companion of a pair: [[beta, gamma], [I, 0]].  Its powers
// carry the delta sequence of the pair in block form,
//   companion^n = [[d[n+1], d[n] gamma], [d[n], d[n-1] gamma]]   (n >= 1),
// which companion_power_via_delta assembles for cross-checking.
Matrix companion_lift(const Matrix& beta, const Matrix& gamma);
Matrix companion_power_via_delta(const Matrix& beta, const Matrix& gamma, long n);

// Second-order pair recurrence w[k+1] = beta w[k] + gamma w[k-1] + g[k]
// (k >= 1, so gs[0] is never read).  iterate_second_order returns w[0..n];
// the closed form gives the endpoint through the delta sequence:
//   w[n] = d[n] w1 + d[n-1] gamma w0 + sum_{k=1}^{n-1} d[n-k] g[k].
std::vector<Vector> iterate_second_order(const Matrix& beta, const Matrix& gamma, const Vector& w0,
                                         const Vector& w1, const std::vector<Vector>& gs, long n);
Vector second_order_closed_form(const Matrix& beta, const Matrix& gamma, const Vector& w0,
                                const Vector& w1, const std::vector<Vector>& gs, long n);

} // namespace wdde
