// Discrete joint probability mass functions over named variables, with
// marginalization and Shannon-entropy queries (all entropies in bits).
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace jscc {

// Probabilities smaller than this are treated as exact zeros (support
// decisions, 0*log 0 handling, structure checks).
inline constexpr double kProbEps = 1e-15;

// Tolerance for "the table sums to one" style validation.
inline constexpr double kSumTol = 1e-9;

double entropy_of_table(const std::vector<double>& p);

// A joint pmf over an ordered list of named variables.  The table is flat,
// row-major: the *last* variable varies fastest.
class JointPmf {
 public:
  JointPmf() = default;
  JointPmf(std::vector<std::string> variables, std::vector<std::size_t> cards,
           std::vector<double> table);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<std::size_t>& cards() const { return cards_; }
  const std::vector<double>& table() const { return table_; }
  std::size_t size() const { return table_.size(); }

  bool has_variable(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;
  std::size_t card(const std::string& name) const;

  // Flat index from per-variable symbol indices (one per variable, in order).
  std::size_t flat_index(const std::vector<std::size_t>& sym) const;
  // Inverse of flat_index.
  void unflatten(std::size_t flat, std::vector<std::size_t>& sym) const;

  double prob(const std::vector<std::size_t>& sym) const;

  // Marginal over `keep` (result variables in the order given by `keep`).
  JointPmf marginal(const std::vector<std::string>& keep) const;

  // H(targets | given) in bits; `given` may be empty.
  double entropy(const std::vector<std::string>& targets,
                 const std::vector<std::string>& given = {}) const;

  // I(a ; b | given) in bits.
  double mutual_information(const std::vector<std::string>& a,
                            const std::vector<std::string>& b,
                            const std::vector<std::string>& given = {}) const;

  // New pmf with one extra variable appended whose value is a deterministic
  // function of an existing variable (used e.g. for common-part relabeling).
  JointPmf with_derived_variable(const std::string& name, std::size_t card,
                                 const std::string& from,
                                 const std::vector<std::size_t>& map) const;

 private:
  std::vector<std::string> vars_;
  std::vector<std::size_t> cards_;
  std::vector<double> table_;
};

}  // namespace jscc
