#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace reducedkey::testing {

long double polya_marginal_likelihood(const Dataset& data, const NetworkStructure& structure,
                                      double xi) {
  const auto& vars = data.variables();
  // counts[i][(j, k)]
  std::vector<std::map<std::pair<std::uint64_t, std::uint32_t>, std::uint64_t>> cell(vars.size());
  std::vector<std::map<std::uint64_t, std::uint64_t>> parent_total(vars.size());
  long double p = 1.0L;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto row = data.row(r);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      std::uint64_t q = 1;
      std::uint64_t j = 0;
      for (auto parent : structure.parents(i)) {
        q *= vars[parent].cardinality;
        j = j * vars[parent].cardinality + row[parent];
      }
      const long double a_j = static_cast<long double>(xi) / q;
      const long double a_jk = a_j / vars[i].cardinality;
      auto& n_ijk = cell[i][{j, row[i]}];
      auto& n_ij = parent_total[i][j];
      p *= (n_ijk + a_jk) / (n_ij + a_j);
      ++n_ijk;
      ++n_ij;
    }
  }
  return p;
}

std::vector<std::vector<std::uint8_t>> all_permutations(std::size_t k) {
  std::vector<std::uint8_t> p(k);
  std::iota(p.begin(), p.end(), std::uint8_t{1});
  std::vector<std::vector<std::uint8_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace {

std::u32string key_of(const Sample& s) {
  std::u32string k = s.context.symbols();
  k.push_back(static_cast<char32_t>(0x10000 + s.key));
  return k;
}

}  // namespace

double empirical_mode_accuracy(std::span<const Sample> samples) {
  std::map<std::u32string, std::map<std::uint8_t, std::size_t>> freq;
  for (const auto& s : samples) ++freq[key_of(s)][s.state];
  std::size_t hits = 0;
  for (const auto& [_, by_state] : freq) {
    std::size_t best = 0;
    for (const auto& [state, n] : by_state) best = std::max(best, n);
    hits += best;
  }
  return samples.empty() ? 0.0 : static_cast<double>(hits) / samples.size();
}

double static_order_accuracy(std::span<const Sample> samples) {
  std::size_t hits = 0;
  for (const auto& s : samples) {
    if (s.state == 1) ++hits;
  }
  return samples.empty() ? 0.0 : static_cast<double>(hits) / samples.size();
}

namespace {

ReorderingTable extreme_table(const SymbolStream& stream, const KeypadLayout& layout,
                              std::size_t n, bool target_first) {
  const auto& alphabet = layout.alphabet();
  ReorderingTable table(alphabet.id(), alphabet.size(), n);
  std::map<std::pair<std::uint64_t, KeyIndex>, std::uint8_t> chosen;
  for (const auto& s : extract_samples(stream, layout, n)) {
    const auto index = context_index(s.context, alphabet);
    const auto size = layout.group_size(s.key);
    auto prior = chosen.find({index, s.key});
    if (prior != chosen.end() && prior->second != s.state) {
      throw std::invalid_argument("stream needs two letters of one key in the same context");
    }
    chosen[{index, s.key}] = s.state;
    std::vector<std::uint8_t> order;
    if (target_first) order.push_back(s.state);
    for (std::uint8_t p = 1; p <= size; ++p) {
      if (p != s.state) order.push_back(p);
    }
    if (!target_first) order.push_back(s.state);
    const CodeRow* existing = table.find_row(index);
    CodeRow row = existing ? *existing : CodeRow{1, 1, 1, 1, 1, 1, 1, 1};
    row[s.key] = encode_permutation(order).value;
    table.set_row(index, row);
  }
  return table;
}

}  // namespace

ReorderingTable ideal_table(const SymbolStream& stream, const KeypadLayout& layout, std::size_t n) {
  return extreme_table(stream, layout, n, true);
}

ReorderingTable worst_table(const SymbolStream& stream, const KeypadLayout& layout, std::size_t n) {
  return extreme_table(stream, layout, n, false);
}

ReorderingTable identity_table(const KeypadLayout& layout, std::size_t n) {
  const auto& alphabet = layout.alphabet();
  ReorderingTable table(alphabet.id(), alphabet.size(), n);
  for (std::uint64_t i = 0; i < table.expected_rows(); ++i) {
    table.set_row(i, CodeRow{1, 1, 1, 1, 1, 1, 1, 1});
  }
  return table;
}

}  // namespace reducedkey::testing
