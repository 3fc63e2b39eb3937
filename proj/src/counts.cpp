#include "reducedkey/counts.hpp"

#include <algorithm>
#include <utility>

#include <fmt/format.h>

#include "reducedkey/errors.hpp"

namespace reducedkey {

NetworkStructure::NetworkStructure(std::vector<std::vector<std::size_t>> parents)
    : parents_(parents.size()) {
  for (std::size_t i = 0; i < parents.size(); ++i) set_parents(i, std::move(parents[i]));
}

const std::vector<std::size_t>& NetworkStructure::parents(std::size_t variable) const {
  if (variable >= parents_.size()) throw ValidationError("variable index out of range");
  return parents_[variable];
}

void NetworkStructure::set_parents(std::size_t variable, std::vector<std::size_t> parents) {
  if (variable >= parents_.size()) throw ValidationError("variable index out of range");
  std::sort(parents.begin(), parents.end());
  if (std::adjacent_find(parents.begin(), parents.end()) != parents.end()) {
    throw ValidationError("duplicate parent");
  }
  for (auto p : parents) {
    if (p >= parents_.size()) throw ValidationError("parent index out of range");
    if (p == variable) throw ValidationError("a variable cannot be its own parent");
  }
  auto previous = std::exchange(parents_[variable], std::move(parents));
  try {
    check_acyclic();
  } catch (...) {
    parents_[variable] = std::move(previous);
    throw;
  }
}

void NetworkStructure::check_acyclic() const {
  // Kahn's algorithm over parent -> child arcs.
  const std::size_t n = parents_.size();
  std::vector<std::size_t> pending(n);
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t v = 0; v < n; ++v) {
    pending[v] = parents_[v].size();
    for (auto p : parents_[v]) children[p].push_back(v);
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (pending[v] == 0) ready.push_back(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++visited;
    for (auto c : children[v]) {
      if (--pending[c] == 0) ready.push_back(c);
    }
  }
  if (visited != n) throw ValidationError("parent sets form a cycle");
}

// ---------------------------------------------------------------------------

Dataset::Dataset(std::vector<VariableSpec> variables) : variables_(std::move(variables)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].cardinality < 2) {
      throw ValidationError(fmt::format("variable {} has cardinality below 2", variables_[i].name));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (variables_[i].name == variables_[j].name) {
        throw ValidationError(fmt::format("duplicate variable name {}", variables_[i].name));
      }
    }
  }
}

void Dataset::add_row(std::span<const std::uint32_t> values) {
  if (values.size() != width()) throw ValidationError("row width does not match variables");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= variables_[i].cardinality) {
      throw ValidationError(fmt::format("value {} out of range for {}", values[i],
                                        variables_[i].name));
    }
  }
  values_.insert(values_.end(), values.begin(), values.end());
}

// ---------------------------------------------------------------------------

std::uint64_t FamilyCounts::n_ij(std::uint64_t j) const {
  auto it = by_config.find(j);
  if (it == by_config.end()) return 0;
  std::uint64_t sum = 0;
  for (auto c : it->second) sum += c;
  return sum;
}

std::uint64_t FamilyCounts::n_ijk(std::uint64_t j, std::uint32_t k) const {
  auto it = by_config.find(j);
  if (it == by_config.end() || k >= it->second.size()) return 0;
  return it->second[k];
}

std::uint64_t parent_config(std::span<const std::uint32_t> row,
                            std::span<const std::size_t> parents,
                            std::span<const VariableSpec> variables) {
  std::uint64_t j = 0;
  for (auto p : parents) j = j * variables[p].cardinality + row[p];
  return j;
}

CountStore::CountStore(std::vector<VariableSpec> variables, const NetworkStructure& structure)
    : variables_(std::move(variables)) {
  if (structure.variable_count() != variables_.size()) {
    throw ValidationError("structure and variable list differ in size");
  }
  families_.reserve(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    FamilyCounts f;
    f.variable = i;
    f.parents = structure.parents(i);
    f.r = variables_[i].cardinality;
    for (auto p : f.parents) f.q *= variables_[p].cardinality;
    families_.push_back(std::move(f));
  }
}

void CountStore::add(std::span<const std::uint32_t> row, std::uint64_t weight) {
  if (row.size() != variables_.size()) throw ValidationError("row width does not match variables");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] >= variables_[i].cardinality) {
      throw ValidationError(fmt::format("value {} out of range for {}", row[i], variables_[i].name));
    }
  }
  for (auto& f : families_) {
    const auto j = parent_config(row, f.parents, variables_);
    auto& cell = f.by_config[j];
    if (cell.empty()) cell.assign(f.r, 0);
    cell[row[f.variable]] += weight;
  }
  total_ += weight;
}

CountStore& CountStore::operator+=(const CountStore& other) {
  if (variables_ != other.variables_) throw ValidationError("count stores cover different variables");
  for (std::size_t i = 0; i < families_.size(); ++i) {
    if (families_[i].parents != other.families_[i].parents) {
      throw ValidationError("count stores were built for different structures");
    }
  }
  for (std::size_t i = 0; i < families_.size(); ++i) {
    auto& mine = families_[i];
    for (const auto& [j, cells] : other.families_[i].by_config) {
      auto& cell = mine.by_config[j];
      if (cell.empty()) cell.assign(mine.r, 0);
      for (std::size_t k = 0; k < cells.size(); ++k) cell[k] += cells[k];
    }
  }
  total_ += other.total_;
  return *this;
}

bool CountStore::operator==(const CountStore& other) const {
  if (variables_ != other.variables_ || total_ != other.total_) return false;
  for (std::size_t i = 0; i < families_.size(); ++i) {
    const auto& a = families_[i];
    const auto& b = other.families_[i];
    if (a.parents != b.parents || a.by_config != b.by_config) return false;
  }
  return true;
}

CountStore count_rows(const Dataset& data, const NetworkStructure& structure) {
  CountStore store(data.variables(), structure);
  for (std::size_t r = 0; r < data.rows(); ++r) store.add(data.row(r));
  return store;
}

}  // namespace reducedkey
