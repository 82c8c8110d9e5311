#include "jscc/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace jscc {

double entropy_of_table(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > kProbEps) h -= v * std::log2(v);
  }
  return h;
}

JointPmf::JointPmf(std::vector<std::string> variables,
                   std::vector<std::size_t> cards, std::vector<double> table)
    : vars_(std::move(variables)),
      cards_(std::move(cards)),
      table_(std::move(table)) {
  if (vars_.empty()) throw std::invalid_argument("pmf: no variables");
  if (vars_.size() != cards_.size())
    throw std::invalid_argument("pmf: variable/cardinality count mismatch");
  std::set<std::string> uniq(vars_.begin(), vars_.end());
  if (uniq.size() != vars_.size())
    throw std::invalid_argument("pmf: duplicate variable name");
  std::size_t n = 1;
  for (std::size_t c : cards_) {
    if (c == 0) throw std::invalid_argument("pmf: zero cardinality");
    n *= c;
  }
  if (table_.size() != n)
    throw std::invalid_argument("pmf: table size does not match cardinalities");
  double sum = 0.0;
  for (double v : table_) {
    if (v < -kSumTol) throw std::invalid_argument("pmf: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTol)
    throw std::invalid_argument("pmf: probabilities sum to " +
                                std::to_string(sum) + ", expected 1");
}

bool JointPmf::has_variable(const std::string& name) const {
  return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

std::size_t JointPmf::index_of(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end())
    throw std::invalid_argument("pmf: unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

std::size_t JointPmf::card(const std::string& name) const {
  return cards_[index_of(name)];
}

std::size_t JointPmf::flat_index(const std::vector<std::size_t>& sym) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) idx = idx * cards_[i] + sym[i];
  return idx;
}

void JointPmf::unflatten(std::size_t flat, std::vector<std::size_t>& sym) const {
  sym.resize(vars_.size());
  for (std::size_t i = vars_.size(); i-- > 0;) {
    sym[i] = flat % cards_[i];
    flat /= cards_[i];
  }
}

double JointPmf::prob(const std::vector<std::size_t>& sym) const {
  return table_[flat_index(sym)];
}

JointPmf JointPmf::marginal(const std::vector<std::string>& keep) const {
  std::vector<std::size_t> pos(keep.size());
  std::vector<std::size_t> kcards(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    pos[i] = index_of(keep[i]);
    kcards[i] = cards_[pos[i]];
  }
  std::size_t out_n = 1;
  for (std::size_t c : kcards) out_n *= c;
  std::vector<double> out(out_n, 0.0);
  std::vector<std::size_t> sym;
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    if (table_[flat] <= 0.0) continue;
    unflatten(flat, sym);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < keep.size(); ++i)
      idx = idx * kcards[i] + sym[pos[i]];
    out[idx] += table_[flat];
  }
  return JointPmf(keep, kcards, std::move(out));
}

double JointPmf::entropy(const std::vector<std::string>& targets,
                         const std::vector<std::string>& given) const {
  std::vector<std::string> both = targets;
  for (const auto& g : given) both.push_back(g);
  double h_joint = entropy_of_table(marginal(both).table());
  if (given.empty()) return h_joint;
  double h_given = entropy_of_table(marginal(given).table());
  return h_joint - h_given;
}

double JointPmf::mutual_information(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b,
                                    const std::vector<std::string>& given) const {
  std::vector<std::string> b_and_given = b;
  for (const auto& g : given) b_and_given.push_back(g);
  return entropy(a, given) - entropy(a, b_and_given);
}

JointPmf JointPmf::with_derived_variable(const std::string& name,
                                         std::size_t card,
                                         const std::string& from,
                                         const std::vector<std::size_t>& map) const {
  std::size_t src = index_of(from);
  if (map.size() != cards_[src])
    throw std::invalid_argument("derived variable: map size mismatch");
  for (std::size_t v : map) {
    if (v >= card) throw std::invalid_argument("derived variable: value out of range");
  }
  std::vector<std::string> vars = vars_;
  vars.push_back(name);
  std::vector<std::size_t> cards = cards_;
  cards.push_back(card);
  std::vector<double> out(table_.size() * card, 0.0);
  std::vector<std::size_t> sym;
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    if (table_[flat] <= 0.0) continue;
    unflatten(flat, sym);
    out[flat * card + map[sym[src]]] += table_[flat];
  }
  return JointPmf(std::move(vars), std::move(cards), std::move(out));
}

}  // namespace jscc
