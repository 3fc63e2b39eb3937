#include "reducedkey/compiler.hpp"

#include <fmt/format.h>

#include "reducedkey/errors.hpp"

namespace reducedkey {

CompiledTable compile_table(const Model& model, const KeypadLayout& layout, std::size_t n) {
  if (!(model.layout().alphabet() == layout.alphabet()) ||
      model.layout().groups() != layout.groups()) {
    throw ValidationError(fmt::format("model was fitted for layout {} ({}), not {} ({})",
                                      model.layout().name(), model.layout().alphabet().id(),
                                      layout.name(), layout.alphabet().id()));
  }
  if (n != model.context_length()) {
    throw ValidationError(fmt::format("model uses n={}, compile asked for n={}",
                                      model.context_length(), n));
  }
  const auto& alphabet = layout.alphabet();
  ReorderingTable table(alphabet.id(), alphabet.size(), n);
  CompileReport report;
  for (KeyIndex key = 0; key < kKeyCount; ++key) {
    report.code_histogram[key].assign(permutation_count(layout.group_size(key)), 0);
  }

  const std::uint64_t rows = table.expected_rows();
  for (std::uint64_t index = 0; index < rows; ++index) {
    const Context ctx = context_at(index, n, alphabet);
    CodeRow codes{};
    bool fell_back = false;
    for (KeyIndex key = 0; key < kKeyCount; ++key) {
      const auto ranking = model.rank(ctx, key);
      const auto code = encode_permutation(ranking.order);
      codes[key] = code.value;
      ++report.code_histogram[key][code.value - 1u];
      if (ranking.level > 0) fell_back = true;
    }
    table.set_row(index, codes);
    ++report.rows_written;
    if (fell_back) ++report.contexts_fallback;
  }
  return {std::move(table), std::move(report)};
}

VerifyReport verify_table(const ReorderingTable& table, const KeypadLayout& layout) {
  VerifyReport report;
  const auto& alphabet = layout.alphabet();
  if (table.alphabet_id() != alphabet.id() || table.alphabet_size() != alphabet.size()) {
    report.violations.push_back(
        {Violation::Kind::AlphabetMismatch, 0, "", -1,
         fmt::format("table alphabet {} ({} symbols) does not match layout alphabet {} ({})",
                     table.alphabet_id(), table.alphabet_size(), alphabet.id(), alphabet.size())});
    return report;
  }
  if (table.row_count() != table.expected_rows()) {
    report.violations.push_back(
        {Violation::Kind::RowCount, 0, "", -1,
         fmt::format("table has {} rows, expected (y+1)^n = {}", table.row_count(),
                     table.expected_rows())});
    // Name the first few holes so a truncated table is easy to diagnose.
    std::size_t listed = 0;
    for (std::uint64_t i = 0; i < table.expected_rows() && listed < 8; ++i) {
      if (table.find_row(i) == nullptr) {
        report.violations.push_back({Violation::Kind::MissingRow, i,
                                     context_at(i, table.context_length(), alphabet).render(), -1,
                                     "row missing"});
        ++listed;
      }
    }
  }
  for (const auto& [index, codes] : table.rows()) {
    ++report.rows_checked;
    for (KeyIndex key = 0; key < kKeyCount; ++key) {
      const auto size = layout.group_size(key);
      const auto code = codes[key];
      if (code < 1 || code > permutation_count(size)) {
        report.violations.push_back(
            {Violation::Kind::CodeRange, index,
             context_at(index, table.context_length(), alphabet).render(), key,
             fmt::format("code {} on key {} outside 1..{}", code, key_label(key),
                         permutation_count(size))});
        continue;
      }
      // Decoding must reproduce a permutation of the group.
      const auto order = decode_permutation({code, static_cast<std::uint8_t>(size)});
      if (encode_permutation(order).value != code) {
        report.violations.push_back({Violation::Kind::CodeRange, index,
                                     context_at(index, table.context_length(), alphabet).render(),
                                     key, fmt::format("code {} does not round-trip", code)});
      }
    }
  }
  return report;
}

std::string format_compile_report(const CompileReport& report, const KeypadLayout& layout) {
  std::string out = fmt::format("rows written:        {}\n", report.rows_written);
  out += fmt::format("rows using fallback: {}\n", report.contexts_fallback);
  out += "code histogram (key: counts for code 1..k!):\n";
  for (KeyIndex key = 0; key < kKeyCount; ++key) {
    out += fmt::format("  {} [{}]:", key_label(key), encode_utf8(layout.group(key)));
    for (auto c : report.code_histogram[key]) out += fmt::format(" {}", c);
    out += "\n";
  }
  return out;
}

std::string format_verify_report(const VerifyReport& report) {
  std::string out = fmt::format("rows checked: {}\nviolations:   {}\n", report.rows_checked,
                                report.violations.size());
  for (const auto& v : report.violations) {
    out += "  - ";
    if (!v.context.empty()) out += fmt::format("row {} [{}] ", v.context_index, v.context);
    if (v.key >= 0) out += fmt::format("key {} ", key_label(static_cast<KeyIndex>(v.key)));
    out += v.message + "\n";
  }
  return out;
}

}  // namespace reducedkey
