#pragma once
// Alphabets, keypad layouts, permutation codes and the reordering table.
//
// Keys "2".."9" carry symbols and are addressed internally by KeyIndex 0..7.
// The space symbol is a first-class context symbol with context digit 0;
// alphabet letters take digits 1..y in alphabet order.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reducedkey/utf8.hpp"

namespace reducedkey {

inline constexpr Symbol kSpace = U' ';
inline constexpr char kSpaceGlyph = '_';  // how space is rendered in contexts and CSV
inline constexpr std::size_t kKeyCount = 8;

using KeyIndex = std::uint8_t;

std::string key_label(KeyIndex key);
KeyIndex parse_key(std::string_view label);

class Alphabet {
 public:
  Alphabet(std::string id, std::u32string symbols);

  const std::string& id() const noexcept { return id_; }
  const std::u32string& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }

  bool contains(Symbol s) const { return digits_.contains(s); }

  // 0 for space, 1..y for letters, nullopt for anything else.
  std::optional<std::uint32_t> digit(Symbol s) const;
  Symbol symbol_for_digit(std::uint32_t digit) const;

  bool operator==(const Alphabet& other) const {
    return id_ == other.id_ && symbols_ == other.symbols_;
  }

 private:
  std::string id_;
  std::u32string symbols_;
  std::unordered_map<Symbol, std::uint32_t> digits_;
};

struct SymbolPosition {
  KeyIndex key;
  std::uint8_t state;  // 1-based position in the key's static group
};

class KeypadLayout {
 public:
  using Groups = std::array<std::u32string, kKeyCount>;

  KeypadLayout(std::string name, Alphabet alphabet, Groups groups,
               std::string next_key = "#");

  const std::string& name() const noexcept { return name_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const Groups& groups() const noexcept { return groups_; }
  const std::u32string& group(KeyIndex key) const;
  std::size_t group_size(KeyIndex key) const { return group(key).size(); }
  std::size_t max_group_size() const noexcept { return max_group_size_; }
  const std::string& next_key() const noexcept { return next_key_; }

  std::optional<SymbolPosition> locate(Symbol s) const;
  Symbol symbol_at(KeyIndex key, std::uint8_t state) const;

  bool operator==(const KeypadLayout& other) const {
    return name_ == other.name_ && alphabet_ == other.alphabet_ &&
           groups_ == other.groups_ && next_key_ == other.next_key_;
  }

 private:
  std::string name_;
  Alphabet alphabet_;
  Groups groups_;
  std::string next_key_;
  std::size_t max_group_size_ = 0;
  std::unordered_map<Symbol, SymbolPosition> positions_;
};

// "greek-caps" or "latin-caps"; anything else throws ConfigError.
KeypadLayout builtin_layout(std::string_view name);
std::vector<std::string> builtin_layout_names();

// Display order of a key's letters, as 1-based static positions.
using Permutation = std::vector<std::uint8_t>;

struct PermutationCode {
  std::uint8_t value = 1;  // 1..k!
  std::uint8_t group_size = 3;

  bool operator==(const PermutationCode&) const = default;
};

std::size_t permutation_count(std::size_t group_size);

// Lexicographic rank, 1-based. For three letters this is the handset digit
// table: 123->1, 132->2, 213->3, 231->4, 312->5, 321->6.
PermutationCode encode_permutation(std::span<const std::uint8_t> order);
Permutation decode_permutation(PermutationCode code);

// The n most recent symbols, oldest first. Word-start positions hold kSpace.
class Context {
 public:
  Context() = default;
  explicit Context(std::u32string symbols) : symbols_(std::move(symbols)) {}

  static Context initial(std::size_t n) { return Context(std::u32string(n, kSpace)); }
  // Parses a rendered context; '_' means space.
  static Context parse(std::string_view text);

  const std::u32string& symbols() const noexcept { return symbols_; }
  std::size_t length() const noexcept { return symbols_.size(); }

  // Drops the oldest symbol and appends s.
  Context advanced(Symbol s) const;
  std::string render() const;

  bool operator==(const Context&) const = default;

 private:
  std::u32string symbols_;
};

// (y+1)^n
std::uint64_t context_count(const Alphabet& alphabet, std::size_t n);
// Mixed-radix index, oldest symbol most significant.
std::uint64_t context_index(const Context& ctx, const Alphabet& alphabet);
Context context_at(std::uint64_t index, std::size_t n, const Alphabet& alphabet);

// One-based permutation code per key "2".."9".
using CodeRow = std::array<std::uint8_t, kKeyCount>;

class ReorderingTable {
 public:
  ReorderingTable(std::string alphabet_id, std::size_t alphabet_size,
                  std::size_t context_length);

  const std::string& alphabet_id() const noexcept { return alphabet_id_; }
  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t context_length() const noexcept { return context_length_; }
  std::uint64_t expected_rows() const noexcept { return expected_rows_; }

  void set_row(std::uint64_t context_index, const CodeRow& codes);
  void erase_row(std::uint64_t context_index) { rows_.erase(context_index); }
  const CodeRow* find_row(std::uint64_t context_index) const;
  const std::map<std::uint64_t, CodeRow>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  bool complete() const noexcept { return rows_.size() == expected_rows_; }

  bool operator==(const ReorderingTable&) const = default;

 private:
  std::string alphabet_id_;
  std::size_t alphabet_size_;
  std::size_t context_length_;
  std::uint64_t expected_rows_;
  std::map<std::uint64_t, CodeRow> rows_;
};

// Throws ValidationError when the table was not built for this layout's alphabet.
void check_table_matches(const ReorderingTable& table, const KeypadLayout& layout);

// The key's group in predicted order. Contexts absent from the table keep the
// static order.
std::u32string table_lookup(const ReorderingTable& table, const KeypadLayout& layout,
                            const Context& ctx, KeyIndex key);
std::u32string table_lookup(const ReorderingTable& table, const KeypadLayout& layout,
                            const Context& ctx, std::string_view key_label);

}  // namespace reducedkey
