#include "jscc/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jscc {

namespace {

std::vector<std::string> concat(const std::vector<std::string>& x,
                                const std::vector<std::string>& y) {
  std::vector<std::string> out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace

StructureReport check_markov(const JointPmf& pmf,
                             const std::vector<std::string>& a,
                             const std::vector<std::string>& b,
                             const std::vector<std::string>& c,
                             double tol) {
  if (b.empty()) return check_independent(pmf, a, c, tol);

  JointPmf pj = pmf.marginal(concat(concat(a, b), c));  // order: a, b, c
  JointPmf pab = pmf.marginal(concat(a, b));
  JointPmf pcb = pmf.marginal(concat(c, b));
  JointPmf pb = pmf.marginal(b);

  std::size_t na = 1, nb = 1, nc = 1;
  for (const auto& v : a) na *= pmf.card(v);
  for (const auto& v : b) nb *= pmf.card(v);
  for (const auto& v : c) nc *= pmf.card(v);

  double worst = 0.0;
  for (std::size_t ib = 0; ib < nb; ++ib) {
    double qb = pb.table()[ib];
    if (qb <= kProbEps) continue;
    for (std::size_t ia = 0; ia < na; ++ia) {
      double qab = pab.table()[ia * nb + ib] / qb;
      for (std::size_t ic = 0; ic < nc; ++ic) {
        double qcb = pcb.table()[ic * nb + ib] / qb;
        double qj = pj.table()[(ia * nb + ib) * nc + ic] / qb;
        worst = std::max(worst, std::abs(qj - qab * qcb));
      }
    }
  }
  return {worst <= tol, worst};
}

StructureReport check_independent(const JointPmf& pmf,
                                  const std::vector<std::string>& a,
                                  const std::vector<std::string>& b,
                                  double tol) {
  JointPmf pj = pmf.marginal(concat(a, b));
  JointPmf pa = pmf.marginal(a);
  JointPmf pb = pmf.marginal(b);
  std::size_t na = pa.size(), nb = pb.size();
  double worst = 0.0;
  for (std::size_t ia = 0; ia < na; ++ia)
    for (std::size_t ib = 0; ib < nb; ++ib)
      worst = std::max(worst, std::abs(pj.table()[ia * nb + ib] -
                                       pa.table()[ia] * pb.table()[ib]));
  return {worst <= tol, worst};
}

CommonPart gacs_korner_common(const JointPmf& pmf, const std::string& a,
                              const std::string& b) {
  JointPmf pj = pmf.marginal({a, b});
  std::size_t na = pmf.card(a), nb = pmf.card(b);

  // Union-find over the na + nb symbol nodes.
  std::vector<std::size_t> parent(na + nb);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };

  bool any_support = false;
  for (std::size_t ia = 0; ia < na; ++ia)
    for (std::size_t ib = 0; ib < nb; ++ib)
      if (pj.table()[ia * nb + ib] > kProbEps) {
        unite(ia, na + ib);
        any_support = true;
      }
  if (!any_support)
    throw std::invalid_argument("common part: pmf has empty support");

  JointPmf pa = pj.marginal({a});
  JointPmf pb = pj.marginal({b});

  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  CommonPart cp;
  cp.map1.assign(na, npos);
  cp.map2.assign(nb, npos);

  std::vector<std::size_t> root_to_comp(na + nb, npos);
  std::size_t next = 0;
  for (std::size_t ia = 0; ia < na; ++ia) {
    if (pa.table()[ia] <= kProbEps) continue;
    std::size_t r = find(ia);
    if (root_to_comp[r] == npos) {
      root_to_comp[r] = next++;
      cp.u_pmf.push_back(0.0);
    }
    cp.map1[ia] = root_to_comp[r];
    cp.u_pmf[root_to_comp[r]] += pa.table()[ia];
  }
  for (std::size_t ib = 0; ib < nb; ++ib) {
    if (pb.table()[ib] <= kProbEps) continue;
    std::size_t r = find(na + ib);
    // Every supported b-symbol shares an edge with a supported a-symbol, so
    // its component has been numbered already.
    cp.map2[ib] = root_to_comp[r];
  }
  cp.u_cardinality = next;
  cp.u_entropy = entropy_of_table(cp.u_pmf);
  return cp;
}

}  // namespace jscc
