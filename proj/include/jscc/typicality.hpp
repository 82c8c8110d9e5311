// Strong typicality for finite-alphabet sequences: membership tests (single,
// joint, conditional) and an exact census of the strongly typical set with
// the classical size bound.
//
// A sequence x^n is delta-strongly typical for p when every symbol a obeys
// |N(a|x^n)/n - p(a)| <= delta, and N(a|x^n) = 0 whenever p(a) = 0.
#pragma once

#include <cstddef>
#include <vector>

namespace jscc {

using Seq = std::vector<std::size_t>;

std::vector<std::size_t> symbol_counts(const Seq& x, std::size_t card);

// Counts over the product alphabet of aligned equal-length sequences
// (row-major over `cards`: the last sequence varies fastest).
std::vector<std::size_t> joint_counts(const std::vector<const Seq*>& seqs,
                                      const std::vector<std::size_t>& cards);

bool counts_strongly_typical(const std::vector<std::size_t>& counts,
                             std::size_t n, const std::vector<double>& pmf,
                             double delta);

bool is_strongly_typical(const Seq& x, const std::vector<double>& pmf,
                         double delta);

// Joint typicality of aligned sequences against a joint pmf on the product
// alphabet (same layout as joint_counts).
bool jointly_typical(const std::vector<const Seq*>& seqs,
                     const std::vector<std::size_t>& cards,
                     const std::vector<double>& joint_pmf, double delta);

// Conditional typicality of y^n given x^n:
// |N(a,b)/n - cond(b|a) N(a)/n| <= delta for all (a, b), with N(a,b) = 0
// whenever cond(b|a) = 0.  `cond` is row-major over (x, y).
bool conditionally_typical(const Seq& x, const Seq& y, std::size_t x_card,
                           std::size_t y_card, const std::vector<double>& cond,
                           double delta);

struct TypicalSizeReport {
  double set_size = 0.0;  // exact |T| (an integer; exact below 2^53)
  double lhs = 0.0;       // |log2(|T|)/n - H(X)|
  double bound = 0.0;     // delta / |alphabet|
  bool holds = false;     // informational: the bound is asymptotic in n
  double entropy = 0.0;   // H(X) in bits
};

// Exact count of the delta-strongly-typical set via type-class enumeration.
// Requires |alphabet|^n <= 2^24.
TypicalSizeReport typical_set_size_check(const std::vector<double>& pmf,
                                         std::size_t n, double delta);

}  // namespace jscc
