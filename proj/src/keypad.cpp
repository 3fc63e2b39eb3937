#include "reducedkey/keypad.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "reducedkey/errors.hpp"

namespace reducedkey {

std::string key_label(KeyIndex key) {
  if (key >= kKeyCount) throw ValidationError(fmt::format("key index {} out of range", key));
  return std::string(1, static_cast<char>('2' + key));
}

KeyIndex parse_key(std::string_view label) {
  if (label.size() != 1 || label[0] < '2' || label[0] > '9') {
    throw ValidationError(fmt::format("'{}' is not a symbol key (expected 2..9)", label));
  }
  return static_cast<KeyIndex>(label[0] - '2');
}

// ---------------------------------------------------------------------------

Alphabet::Alphabet(std::string id, std::u32string symbols)
    : id_(std::move(id)), symbols_(std::move(symbols)) {
  if (id_.empty() || id_.size() > 255) throw ValidationError("alphabet id must be 1..255 bytes");
  if (symbols_.size() < 2) throw ValidationError("alphabet needs at least two symbols");
  if (symbols_.size() > 0xFFFF) throw ValidationError("alphabet too large");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const Symbol s = symbols_[i];
    if (s == kSpace || s == static_cast<Symbol>(kSpaceGlyph)) {
      throw ValidationError("the space symbol cannot be an alphabet letter");
    }
    if (!digits_.emplace(s, static_cast<std::uint32_t>(i + 1)).second) {
      throw ValidationError(fmt::format("duplicate symbol '{}' in alphabet {}",
                                        encode_utf8(s), id_));
    }
  }
}

std::optional<std::uint32_t> Alphabet::digit(Symbol s) const {
  if (s == kSpace) return 0;
  auto it = digits_.find(s);
  if (it == digits_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::symbol_for_digit(std::uint32_t digit) const {
  if (digit == 0) return kSpace;
  if (digit > symbols_.size()) throw ValidationError("context digit out of range");
  return symbols_[digit - 1];
}

// ---------------------------------------------------------------------------

KeypadLayout::KeypadLayout(std::string name, Alphabet alphabet, Groups groups,
                           std::string next_key)
    : name_(std::move(name)),
      alphabet_(std::move(alphabet)),
      groups_(std::move(groups)),
      next_key_(std::move(next_key)) {
  for (KeyIndex key = 0; key < kKeyCount; ++key) {
    const auto& g = groups_[key];
    if (g.size() != 3 && g.size() != 4) {
      throw ValidationError(fmt::format("key {} holds {} symbols; groups must have 3 or 4",
                                        key_label(key), g.size()));
    }
    max_group_size_ = std::max(max_group_size_, g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!alphabet_.contains(g[i])) {
        throw ValidationError(fmt::format("symbol '{}' on key {} is not in alphabet {}",
                                          encode_utf8(g[i]), key_label(key), alphabet_.id()));
      }
      const SymbolPosition pos{key, static_cast<std::uint8_t>(i + 1)};
      if (!positions_.emplace(g[i], pos).second) {
        throw ValidationError(
            fmt::format("symbol '{}' appears on more than one key", encode_utf8(g[i])));
      }
    }
  }
  if (positions_.size() != alphabet_.size()) {
    throw ValidationError(fmt::format("layout {} leaves {} alphabet symbols unassigned", name_,
                                      alphabet_.size() - positions_.size()));
  }
  if (next_key_.empty()) throw ValidationError("next key label must not be empty");
}

const std::u32string& KeypadLayout::group(KeyIndex key) const {
  if (key >= kKeyCount) throw ValidationError(fmt::format("key index {} out of range", key));
  return groups_[key];
}

std::optional<SymbolPosition> KeypadLayout::locate(Symbol s) const {
  auto it = positions_.find(s);
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

Symbol KeypadLayout::symbol_at(KeyIndex key, std::uint8_t state) const {
  const auto& g = group(key);
  if (state < 1 || state > g.size()) {
    throw ValidationError(fmt::format("state {} out of range for key {}", state, key_label(key)));
  }
  return g[state - 1];
}

KeypadLayout builtin_layout(std::string_view name) {
  if (name == "greek-caps") {
    Alphabet greek("greek", U"ΑΒΓΔΕΖΗΘΙΚΛΜΝΞΟΠΡΣΤΥΦΧΨΩ");
    return KeypadLayout("greek-caps", std::move(greek),
                        {U"ΑΒΓ", U"ΔΕΖ", U"ΗΘΙ", U"ΚΛΜ", U"ΝΞΟ", U"ΠΡΣ", U"ΤΥΦ", U"ΧΨΩ"});
  }
  if (name == "latin-caps") {
    Alphabet latin("latin", U"ABCDEFGHIJKLMNOPQRSTUVWXYZ");
    return KeypadLayout("latin-caps", std::move(latin),
                        {U"ABC", U"DEF", U"GHI", U"JKL", U"MNO", U"PQRS", U"TUV", U"WXYZ"});
  }
  throw ConfigError(fmt::format("unknown layout '{}' (expected greek-caps or latin-caps)", name));
}

std::vector<std::string> builtin_layout_names() { return {"greek-caps", "latin-caps"}; }

// ---------------------------------------------------------------------------

std::size_t permutation_count(std::size_t group_size) {
  switch (group_size) {
    case 3: return 6;
    case 4: return 24;
    default: throw ValidationError(fmt::format("unsupported group size {}", group_size));
  }
}

namespace {

std::size_t factorial(std::size_t k) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

PermutationCode encode_permutation(std::span<const std::uint8_t> order) {
  const std::size_t k = order.size();
  if (k != 3 && k != 4) {
    throw ValidationError(fmt::format("permutation of length {}; expected 3 or 4", k));
  }
  std::array<bool, 5> seen{};
  for (auto p : order) {
    if (p < 1 || p > k || seen[p]) throw ValidationError("not a permutation of 1..k");
    seen[p] = true;
  }
  // Lehmer code: count smaller elements to the right of each position.
  std::size_t rank = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (order[j] < order[i]) ++smaller;
    }
    rank += smaller * factorial(k - 1 - i);
  }
  return {static_cast<std::uint8_t>(rank + 1), static_cast<std::uint8_t>(k)};
}

Permutation decode_permutation(PermutationCode code) {
  const std::size_t k = code.group_size;
  const std::size_t total = permutation_count(k);
  if (code.value < 1 || code.value > total) {
    throw ValidationError(fmt::format("permutation code {} out of range 1..{} for group size {}",
                                      code.value, total, k));
  }
  std::vector<std::uint8_t> pool(k);
  std::iota(pool.begin(), pool.end(), std::uint8_t{1});
  std::size_t rank = code.value - 1u;
  Permutation out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t f = factorial(k - 1 - i);
    const std::size_t idx = rank / f;
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

// ---------------------------------------------------------------------------

Context Context::parse(std::string_view text) {
  std::u32string symbols = decode_utf8(text);
  for (auto& s : symbols) {
    if (s == static_cast<Symbol>(kSpaceGlyph)) s = kSpace;
  }
  return Context(std::move(symbols));
}

Context Context::advanced(Symbol s) const {
  if (symbols_.empty()) return *this;
  std::u32string next = symbols_.substr(1);
  next.push_back(s);
  return Context(std::move(next));
}

std::string Context::render() const {
  std::string out;
  for (Symbol s : symbols_) {
    if (s == kSpace) {
      out.push_back(kSpaceGlyph);
    } else {
      out += encode_utf8(s);
    }
  }
  return out;
}

std::uint64_t context_count(const Alphabet& alphabet, std::size_t n) {
  std::uint64_t count = 1;
  const std::uint64_t radix = alphabet.size() + 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > UINT32_MAX / radix) throw ValidationError("context space exceeds 2^32 rows");
    count *= radix;
  }
  return count;
}

std::uint64_t context_index(const Context& ctx, const Alphabet& alphabet) {
  const std::uint64_t radix = alphabet.size() + 1;
  std::uint64_t index = 0;
  for (Symbol s : ctx.symbols()) {
    auto d = alphabet.digit(s);
    if (!d) {
      throw ValidationError(fmt::format("context symbol '{}' is not in alphabet {}",
                                        encode_utf8(s), alphabet.id()));
    }
    index = index * radix + *d;
  }
  return index;
}

Context context_at(std::uint64_t index, std::size_t n, const Alphabet& alphabet) {
  const std::uint64_t radix = alphabet.size() + 1;
  std::u32string symbols(n, kSpace);
  for (std::size_t i = n; i-- > 0;) {
    symbols[i] = alphabet.symbol_for_digit(static_cast<std::uint32_t>(index % radix));
    index /= radix;
  }
  if (index != 0) throw ValidationError("context index out of range");
  return Context(std::move(symbols));
}

// ---------------------------------------------------------------------------

ReorderingTable::ReorderingTable(std::string alphabet_id, std::size_t alphabet_size,
                                 std::size_t context_length)
    : alphabet_id_(std::move(alphabet_id)),
      alphabet_size_(alphabet_size),
      context_length_(context_length),
      expected_rows_(0) {
  if (context_length_ < 1) throw ValidationError("context length must be at least 1");
  if (alphabet_size_ < 2) throw ValidationError("alphabet needs at least two symbols");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < context_length_; ++i) {
    if (count > UINT32_MAX / (alphabet_size_ + 1)) {
      throw ValidationError("context space exceeds 2^32 rows");
    }
    count *= alphabet_size_ + 1;
  }
  expected_rows_ = count;
}

void ReorderingTable::set_row(std::uint64_t context_index, const CodeRow& codes) {
  if (context_index >= expected_rows_) {
    throw ValidationError(fmt::format("context index {} outside table of {} rows", context_index,
                                      expected_rows_));
  }
  for (auto c : codes) {
    if (c < 1 || c > 24) throw ValidationError(fmt::format("permutation code {} outside 1..24", c));
  }
  rows_[context_index] = codes;
}

const CodeRow* ReorderingTable::find_row(std::uint64_t context_index) const {
  auto it = rows_.find(context_index);
  return it == rows_.end() ? nullptr : &it->second;
}

void check_table_matches(const ReorderingTable& table, const KeypadLayout& layout) {
  const auto& a = layout.alphabet();
  if (table.alphabet_id() != a.id() || table.alphabet_size() != a.size()) {
    throw ValidationError(fmt::format("table is for alphabet {} ({} symbols), layout {} uses {} ({})",
                                      table.alphabet_id(), table.alphabet_size(), layout.name(),
                                      a.id(), a.size()));
  }
}

std::u32string table_lookup(const ReorderingTable& table, const KeypadLayout& layout,
                            const Context& ctx, KeyIndex key) {
  check_table_matches(table, layout);
  const auto& group = layout.group(key);
  if (ctx.length() != table.context_length()) {
    throw ValidationError(fmt::format("context of length {} against table with n={}",
                                      ctx.length(), table.context_length()));
  }
  const CodeRow* row = table.find_row(context_index(ctx, layout.alphabet()));
  if (row == nullptr) return group;

  const PermutationCode code{(*row)[key], static_cast<std::uint8_t>(group.size())};
  std::u32string out;
  out.reserve(group.size());
  for (auto pos : decode_permutation(code)) out.push_back(group[pos - 1]);
  return out;
}

std::u32string table_lookup(const ReorderingTable& table, const KeypadLayout& layout,
                            const Context& ctx, std::string_view label) {
  return table_lookup(table, layout, ctx, parse_key(label));
}

}  // namespace reducedkey
