#include "jscc/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jscc {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-9;

// Dense tableau simplex, minimizing.  Rows: n_rows constraints (Ax = b with
// b >= 0) plus objective row appended at index n_rows.  Basis tracked per row.
class Tableau {
 public:
  Tableau(std::size_t n_rows, std::size_t n_cols)
      : rows_(n_rows), cols_(n_cols), a_((n_rows + 1) * (n_cols + 1), 0.0),
        basis_(n_rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return a_[r * (cols_ + 1) + cols_]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = &a_[pr * (cols_ + 1)];
    double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c <= cols_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* row = &a_[r * (cols_ + 1)];
      double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  // Minimize the objective row.  `allowed(c)` gates entering columns.
  // Returns false if the iteration limit was hit.
  template <typename Allowed>
  bool solve(Allowed allowed) {
    const std::size_t max_iters = 20000;
    std::size_t iters = 0;
    bool bland = false;
    double* obj = &a_[rows_ * (cols_ + 1)];
    while (true) {
      if (++iters > max_iters) return false;
      if (iters > 5000) bland = true;  // anti-cycling fallback
      std::size_t pc = cols_;
      double best = -kCostEps;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!allowed(c)) continue;
        double rc = obj[c];
        if (rc < best) {
          best = rc;
          pc = c;
          if (bland) break;
        }
      }
      if (pc == cols_) return true;  // optimal
      // Ratio test.
      std::size_t pr = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        double aij = at(r, pc);
        if (aij > kPivotEps) {
          double ratio = rhs(r) / aij;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && pr != rows_ &&
               basis_[r] < basis_[pr])) {
            best_ratio = ratio;
            pr = r;
          }
        }
      }
      if (pr == rows_)
        throw std::runtime_error("lp: objective unbounded (unexpected)");
      pivot(pr, pc);
    }
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace

MixtureSlack max_min_slack(const std::vector<double>& V, std::size_t m,
                           std::size_t d, const std::vector<double>& t) {
  if (m == 0 || d == 0) throw std::invalid_argument("lp: empty problem");
  if (V.size() != m * d || t.size() != d)
    throw std::invalid_argument("lp: dimension mismatch");

  // Columns: lambda (m) | u | w | surplus (d) | artificials (d+1).
  const std::size_t n_rows = d + 1;
  const std::size_t col_u = m;
  const std::size_t col_w = m + 1;
  const std::size_t col_r0 = m + 2;
  const std::size_t col_a0 = m + 2 + d;
  const std::size_t n_cols = m + 2 + d + n_rows;

  Tableau tab(n_rows, n_cols);

  // Row j (< d): sum_i lambda_i v_ij - u + w - r_j = t_j  (sign-normalized).
  for (std::size_t j = 0; j < d; ++j) {
    double sign = t[j] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < m; ++i) tab.at(j, i) = sign * V[i * d + j];
    tab.at(j, col_u) = -sign;
    tab.at(j, col_w) = sign;
    tab.at(j, col_r0 + j) = -sign;
    tab.at(j, col_a0 + j) = 1.0;
    tab.rhs(j) = sign * t[j];
    tab.basis()[j] = col_a0 + j;
  }
  // Row d: sum_i lambda_i = 1.
  for (std::size_t i = 0; i < m; ++i) tab.at(d, i) = 1.0;
  tab.at(d, col_a0 + d) = 1.0;
  tab.rhs(d) = 1.0;
  tab.basis()[d] = col_a0 + d;

  MixtureSlack out;

  // Phase 1: minimize the sum of artificials.  Objective row = -(sum of
  // constraint rows) restricted to non-artificial columns (so that basic
  // artificials have zero reduced cost).
  for (std::size_t c = 0; c <= n_cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < n_rows; ++r)
      s += (c == n_cols) ? tab.rhs(r) : tab.at(r, c);
    if (c < col_a0) tab.at(n_rows, c) = -s;
    if (c == n_cols) tab.rhs(n_rows) = -s;
  }
  if (!tab.solve([&](std::size_t) { return true; })) return out;
  if (tab.rhs(n_rows) < -1e-7) {
    // Phase-1 optimum > 0: the constraint system itself is inconsistent,
    // which cannot happen here (u - w makes every row satisfiable).
    throw std::runtime_error("lp: phase 1 failed unexpectedly");
  }

  // Phase 2: minimize w - u, artificials barred from entering.
  for (std::size_t c = 0; c <= n_cols; ++c) tab.at(n_rows, c) = 0.0;
  tab.at(n_rows, col_u) = -1.0;
  tab.at(n_rows, col_w) = 1.0;
  // Make the objective row consistent with the current basis.
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t bc = tab.basis()[r];
    double coef = tab.at(n_rows, bc);
    if (coef == 0.0) continue;
    for (std::size_t c = 0; c <= n_cols; ++c) {
      double v = (c == n_cols) ? tab.rhs(r) : tab.at(r, c);
      if (c == n_cols)
        tab.rhs(n_rows) -= coef * v;
      else
        tab.at(n_rows, c) -= coef * v;
    }
  }
  if (!tab.solve([&](std::size_t c) { return c < col_a0; })) return out;

  out.solved = true;
  out.weights.assign(m, 0.0);
  double u = 0.0, w = 0.0;
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t bc = tab.basis()[r];
    double val = tab.rhs(r);
    if (bc < m)
      out.weights[bc] = std::max(0.0, val);
    else if (bc == col_u)
      u = val;
    else if (bc == col_w)
      w = val;
  }
  out.slack = u - w;
  // Renormalize the mixture against round-off drift.
  double wsum = 0.0;
  for (double x : out.weights) wsum += x;
  if (wsum > 0.0)
    for (double& x : out.weights) x /= wsum;

  out.row_slack.assign(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double acc = -t[j];
    for (std::size_t i = 0; i < m; ++i)
      if (out.weights[i] > 0.0) acc += out.weights[i] * V[i * d + j];
    out.row_slack[j] = acc;
  }
  return out;
}

}  // namespace jscc
