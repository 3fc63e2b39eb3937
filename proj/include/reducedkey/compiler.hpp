#pragma once
// Bakes a fitted Model into a complete ReorderingTable and checks tables
// against a layout.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "reducedkey/bbn.hpp"
#include "reducedkey/keypad.hpp"

namespace reducedkey {

struct CompileReport {
  std::uint64_t rows_written = 0;
  std::uint64_t contexts_fallback = 0;  // rows where some key was answered below level 0
  std::array<std::vector<std::uint64_t>, kKeyCount> code_histogram;  // [key][code-1]
};

struct CompiledTable {
  ReorderingTable table;
  CompileReport report;
};

CompiledTable compile_table(const Model& model, const KeypadLayout& layout, std::size_t n);
inline CompiledTable compile_table(const Model& model, const KeypadLayout& layout) {
  return compile_table(model, layout, model.context_length());
}

struct Violation {
  enum class Kind { AlphabetMismatch, RowCount, MissingRow, CodeRange };

  Kind kind;
  std::uint64_t context_index = 0;
  std::string context;  // rendered, empty for table-level violations
  int key = -1;         // key index, -1 when not key-specific
  std::string message;
};

struct VerifyReport {
  std::uint64_t rows_checked = 0;
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

VerifyReport verify_table(const ReorderingTable& table, const KeypadLayout& layout);

std::string format_compile_report(const CompileReport& report, const KeypadLayout& layout);
std::string format_verify_report(const VerifyReport& report);

}  // namespace reducedkey
