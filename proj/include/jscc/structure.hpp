// Structural tests on joint pmfs (Markov chains, independence) and the
// Gacs-Korner common part of a pair of variables.
#pragma once

#include <string>
#include <vector>

#include "jscc/pmf.hpp"

namespace jscc {

struct StructureReport {
  bool holds = false;
  double max_deviation = 0.0;  // worst-cell deviation, see functions below
};

// Markov chain A - B - C among disjoint variable groups: checks
// p(a,c|b) = p(a|b) p(c|b) for every cell with p(b) > 0.  The deviation is
// max |p(a,c|b) - p(a|b)p(c|b)|.  B may be empty, which reduces to
// independence of A and C.
StructureReport check_markov(const JointPmf& pmf,
                             const std::vector<std::string>& a,
                             const std::vector<std::string>& b,
                             const std::vector<std::string>& c,
                             double tol = 1e-9);

// Independence of variable groups A and B: deviation max |p(a,b)-p(a)p(b)|.
StructureReport check_independent(const JointPmf& pmf,
                                  const std::vector<std::string>& a,
                                  const std::vector<std::string>& b,
                                  double tol = 1e-9);

// Gacs-Korner common part of (A, B): connected components of the bipartite
// support graph on symbols of A and B.  Symbols with marginal probability
// below kProbEps are treated as unsupported.
struct CommonPart {
  std::vector<std::size_t> map1;  // symbol of A -> component id (or npos if unsupported)
  std::vector<std::size_t> map2;  // symbol of B -> component id
  std::size_t u_cardinality = 0;  // number of components
  double u_entropy = 0.0;         // H(U) in bits
  std::vector<double> u_pmf;      // component probabilities
};

CommonPart gacs_korner_common(const JointPmf& pmf, const std::string& a,
                              const std::string& b);

}  // namespace jscc
