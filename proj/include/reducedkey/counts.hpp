#pragma once
// Discrete variables, DAG parent sets and the sufficient statistics used by
// structure scoring: N_ijk (variable i, parent configuration j, value k).

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace reducedkey {

struct VariableSpec {
  std::string name;
  std::uint32_t cardinality = 2;

  bool operator==(const VariableSpec&) const = default;
};

// Parent sets per variable. Parent lists are kept sorted and the graph acyclic.
class NetworkStructure {
 public:
  explicit NetworkStructure(std::size_t variable_count) : parents_(variable_count) {}
  explicit NetworkStructure(std::vector<std::vector<std::size_t>> parents);

  std::size_t variable_count() const noexcept { return parents_.size(); }
  const std::vector<std::size_t>& parents(std::size_t variable) const;
  void set_parents(std::size_t variable, std::vector<std::size_t> parents);

  bool operator==(const NetworkStructure&) const = default;

 private:
  void check_acyclic() const;

  std::vector<std::vector<std::size_t>> parents_;
};

// Row-major table of categorical observations.
class Dataset {
 public:
  explicit Dataset(std::vector<VariableSpec> variables);

  const std::vector<VariableSpec>& variables() const noexcept { return variables_; }
  std::size_t width() const noexcept { return variables_.size(); }
  std::size_t rows() const noexcept { return width() == 0 ? 0 : values_.size() / width(); }
  std::span<const std::uint32_t> row(std::size_t r) const {
    return {values_.data() + r * width(), width()};
  }

  void add_row(std::span<const std::uint32_t> values);
  void reserve(std::size_t rows) { values_.reserve(rows * width()); }

 private:
  std::vector<VariableSpec> variables_;
  std::vector<std::uint32_t> values_;
};

// Counts for one family (a variable and its parents). Only observed parent
// configurations are stored; absent ones have N_ij = 0.
struct FamilyCounts {
  std::size_t variable = 0;
  std::vector<std::size_t> parents;
  std::uint64_t q = 1;  // number of parent configurations
  std::uint32_t r = 2;  // cardinality of the variable
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_config;  // j -> N_ijk over k

  std::uint64_t n_ij(std::uint64_t j) const;
  std::uint64_t n_ijk(std::uint64_t j, std::uint32_t k) const;
};

class CountStore {
 public:
  CountStore(std::vector<VariableSpec> variables, const NetworkStructure& structure);

  const std::vector<VariableSpec>& variables() const noexcept { return variables_; }
  const std::vector<FamilyCounts>& families() const noexcept { return families_; }
  const FamilyCounts& family(std::size_t variable) const { return families_.at(variable); }
  std::uint64_t total() const noexcept { return total_; }

  void add(std::span<const std::uint32_t> row, std::uint64_t weight = 1);

  // Elementwise sum; both stores must describe the same variables and parents.
  CountStore& operator+=(const CountStore& other);
  bool operator==(const CountStore& other) const;

 private:
  std::vector<VariableSpec> variables_;
  std::vector<FamilyCounts> families_;
  std::uint64_t total_ = 0;
};

// Mixed-radix index of row's values at `parents`, first parent most significant.
std::uint64_t parent_config(std::span<const std::uint32_t> row,
                            std::span<const std::size_t> parents,
                            std::span<const VariableSpec> variables);

CountStore count_rows(const Dataset& data, const NetworkStructure& structure);

}  // namespace reducedkey
