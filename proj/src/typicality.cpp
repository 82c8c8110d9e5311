#include "jscc/typicality.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "jscc/pmf.hpp"

namespace jscc {

std::vector<std::size_t> symbol_counts(const Seq& x, std::size_t card) {
  std::vector<std::size_t> counts(card, 0);
  for (std::size_t s : x) {
    if (s >= card) throw std::out_of_range("symbol_counts: symbol out of range");
    ++counts[s];
  }
  return counts;
}

std::vector<std::size_t> joint_counts(const std::vector<const Seq*>& seqs,
                                      const std::vector<std::size_t>& cards) {
  if (seqs.empty() || seqs.size() != cards.size())
    throw std::invalid_argument("joint_counts: sequence/card mismatch");
  const std::size_t n = seqs[0]->size();
  std::size_t total = 1;
  for (std::size_t c : cards) total *= c;
  std::vector<std::size_t> counts(total, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < seqs.size(); ++k) {
      const Seq& s = *seqs[k];
      if (s.size() != n)
        throw std::invalid_argument("joint_counts: length mismatch");
      std::size_t sym = s[i];
      if (sym >= cards[k])
        throw std::out_of_range("joint_counts: symbol out of range");
      idx = idx * cards[k] + sym;
    }
    ++counts[idx];
  }
  return counts;
}

bool counts_strongly_typical(const std::vector<std::size_t>& counts,
                             std::size_t n, const std::vector<double>& pmf,
                             double delta) {
  if (counts.size() != pmf.size())
    throw std::invalid_argument("typicality: counts/pmf size mismatch");
  const double inv_n = 1.0 / double(n);
  // Representation slop so empirical frequencies that meet the deviation
  // budget with equality in exact arithmetic (e.g. |15/20 - 0.9| vs 0.15)
  // are not rejected by floating-point round-off.
  const double edge = 1e-12;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (pmf[a] <= kProbEps) {
      if (counts[a] != 0) return false;
      continue;
    }
    if (std::abs(double(counts[a]) * inv_n - pmf[a]) > delta + edge)
      return false;
  }
  return true;
}

bool is_strongly_typical(const Seq& x, const std::vector<double>& pmf,
                         double delta) {
  return counts_strongly_typical(symbol_counts(x, pmf.size()), x.size(), pmf,
                                 delta);
}

bool jointly_typical(const std::vector<const Seq*>& seqs,
                     const std::vector<std::size_t>& cards,
                     const std::vector<double>& joint_pmf, double delta) {
  return counts_strongly_typical(joint_counts(seqs, cards),
                                 seqs[0]->size(), joint_pmf, delta);
}

bool conditionally_typical(const Seq& x, const Seq& y, std::size_t x_card,
                           std::size_t y_card, const std::vector<double>& cond,
                           double delta) {
  if (x.size() != y.size())
    throw std::invalid_argument("typicality: length mismatch");
  if (cond.size() != x_card * y_card)
    throw std::invalid_argument("typicality: conditional table size mismatch");
  const std::size_t n = x.size();
  std::vector<std::size_t> pair(x_card * y_card, 0), marg(x_card, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] >= x_card || y[i] >= y_card)
      throw std::out_of_range("typicality: symbol out of range");
    ++pair[x[i] * y_card + y[i]];
    ++marg[x[i]];
  }
  const double inv_n = 1.0 / double(n);
  for (std::size_t a = 0; a < x_card; ++a)
    for (std::size_t b = 0; b < y_card; ++b) {
      double c = cond[a * y_card + b];
      std::size_t nab = pair[a * y_card + b];
      if (c <= kProbEps) {
        if (nab != 0) return false;
        continue;
      }
      if (std::abs(double(nab) * inv_n - c * double(marg[a]) * inv_n) >
          delta + 1e-12)
        return false;
    }
  return true;
}

namespace {

// C(n, k) computed exactly in doubles (values stay integral at every step).
double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i)
    c = c * double(n - k + i) / double(i);
  return std::round(c);
}

}  // namespace

TypicalSizeReport typical_set_size_check(const std::vector<double>& pmf,
                                         std::size_t n, double delta) {
  const std::size_t card = pmf.size();
  if (card == 0 || n == 0)
    throw std::invalid_argument("typical_set_size_check: empty input");
  double seqs = std::pow(double(card), double(n));
  if (seqs > double(1 << 24))
    throw std::invalid_argument(
        "typical_set_size_check: |alphabet|^n exceeds 2^24");

  TypicalSizeReport rep;
  rep.entropy = entropy_of_table(pmf);
  rep.bound = delta / double(card);

  // Enumerate compositions (k_0, ..., k_{card-1}) of n; each typical type
  // class contributes its multinomial coefficient.
  std::vector<std::size_t> parts(card, 0);
  double total = 0.0;
  const double inv_n = 1.0 / double(n);
  std::function<void(std::size_t, std::size_t, double)> rec =
      [&](std::size_t pos, std::size_t left, double coeff) {
        if (pos + 1 == card) {
          parts[pos] = left;
          // coeff already counts arrangements of the first `pos` parts;
          // the last part takes all remaining slots.  Membership goes
          // through the same predicate as sequence-level tests.
          if (counts_strongly_typical(parts, n, pmf, delta)) total += coeff;
          return;
        }
        for (std::size_t k = 0; k <= left; ++k) {
          parts[pos] = k;
          rec(pos + 1, left - k, coeff * binomial(left, k));
        }
      };
  rec(0, n, 1.0);

  rep.set_size = total;
  rep.lhs = total > 0.0
                ? std::abs(std::log2(total) * inv_n - rep.entropy)
                : std::numeric_limits<double>::infinity();
  rep.holds = rep.lhs <= rep.bound + 1e-12;
  return rep;
}

}  // namespace jscc
