// Small dense linear programming helper: given candidate vectors v_i in R^d
// (d <= 7 in this project) and a target t, finds the mixture weights lambda
// on the probability simplex maximizing the minimum slack
//     s(lambda) = min_j ( sum_i lambda_i v_ij - t_j ).
// Solved with a classic two-phase primal simplex; the row count is d+1, so
// pivots are cheap even with very many candidates.
#pragma once

#include <cstddef>
#include <vector>

namespace jscc {

struct MixtureSlack {
  double slack = 0.0;             // optimal min-slack s*
  std::vector<double> weights;    // size m; support is at most d+1
  std::vector<double> row_slack;  // size d: achieved slack per coordinate
  bool solved = false;            // false only on iteration-limit breakdown
};

// V is row-major (m candidates x d coordinates).
MixtureSlack max_min_slack(const std::vector<double>& V, std::size_t m,
                           std::size_t d, const std::vector<double>& t);

}  // namespace jscc
