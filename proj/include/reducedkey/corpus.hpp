#pragma once
// Text normalization and training-sample extraction.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reducedkey/counts.hpp"
#include "reducedkey/keypad.hpp"

namespace reducedkey {

// Alphabet symbols and single spaces only; no leading, trailing or doubled spaces.
struct SymbolStream {
  std::u32string symbols;

  std::size_t letters() const;
  std::size_t spaces() const { return symbols.size() - letters(); }
  std::size_t words() const;
  std::string text() const { return encode_utf8(symbols); }

  bool operator==(const SymbolStream&) const = default;
};

// Maps s onto the alphabet's case (capitals for the builtins), stripping Greek
// tonos/dialytika and folding final sigma. Returns s unchanged if no mapping applies.
Symbol fold_to_alphabet(Symbol s, const Alphabet& alphabet);

SymbolStream normalize(std::string_view utf8_text, const Alphabet& alphabet);
SymbolStream normalize(std::u32string_view text, const Alphabet& alphabet);

struct Sample {
  Context context;     // n preceding symbols, oldest first
  KeyIndex key = 0;
  std::uint8_t state = 1;  // 1-based static position

  bool operator==(const Sample&) const = default;
};

std::vector<Sample> extract_samples(const SymbolStream& stream, const KeypadLayout& layout,
                                    std::size_t n = 3);

// Columns l3,l2,l1,key,state (generalized to l<n>..l1), space rendered '_'.
std::string samples_to_csv(std::span<const Sample> samples);

// L<n> .. L1 (cardinality y+1), Key (8), State (largest group size).
std::vector<VariableSpec> network_variables(const KeypadLayout& layout, std::size_t n);
inline std::size_t key_variable(std::size_t n) { return n; }
inline std::size_t state_variable(std::size_t n) { return n + 1; }

// Context digits, key index and zero-based state, matching network_variables.
std::vector<std::uint32_t> sample_row(const Sample& sample, const Alphabet& alphabet);

Dataset to_dataset(std::span<const Sample> samples, const KeypadLayout& layout, std::size_t n);

CountStore count(std::span<const Sample> samples, const KeypadLayout& layout,
                 const NetworkStructure& structure);

}  // namespace reducedkey
