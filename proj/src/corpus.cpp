#include "reducedkey/corpus.hpp"

#include <fmt/format.h>

#include "reducedkey/errors.hpp"

namespace reducedkey {

std::size_t SymbolStream::letters() const {
  std::size_t n = 0;
  for (Symbol s : symbols) {
    if (s != kSpace) ++n;
  }
  return n;
}

std::size_t SymbolStream::words() const {
  if (symbols.empty()) return 0;
  std::size_t n = 1;
  for (Symbol s : symbols) {
    if (s == kSpace) ++n;
  }
  return n;
}

namespace {

Symbol strip_greek_marks(Symbol s) {
  switch (s) {
    case U'Ά': return U'Α';
    case U'Έ': return U'Ε';
    case U'Ή': return U'Η';
    case U'Ί': case U'Ϊ': return U'Ι';
    case U'Ό': return U'Ο';
    case U'Ύ': case U'Ϋ': return U'Υ';
    case U'Ώ': return U'Ω';
    case U'ά': return U'α';
    case U'έ': return U'ε';
    case U'ή': return U'η';
    case U'ί': case U'ϊ': case U'ΐ': return U'ι';
    case U'ό': return U'ο';
    case U'ύ': case U'ϋ': case U'ΰ': return U'υ';
    case U'ώ': return U'ω';
    case U'ς': return U'σ';
    default: return s;
  }
}

Symbol to_upper(Symbol s) {
  if (s >= U'a' && s <= U'z') return s - 0x20;
  if (s >= U'α' && s <= U'ω' && s != U'ς') return s - 0x20;
  if (s == U'ς') return U'Σ';
  return s;
}

Symbol to_lower(Symbol s) {
  if (s >= U'A' && s <= U'Z') return s + 0x20;
  if (s >= U'Α' && s <= U'Ω' && s != 0x03A2) return s + 0x20;
  return s;
}

}  // namespace

Symbol fold_to_alphabet(Symbol s, const Alphabet& alphabet) {
  if (alphabet.contains(s)) return s;
  const Symbol bare = strip_greek_marks(s);
  if (alphabet.contains(bare)) return bare;
  if (const Symbol up = to_upper(bare); alphabet.contains(up)) return up;
  if (const Symbol low = to_lower(bare); alphabet.contains(low)) return low;
  return s;
}

SymbolStream normalize(std::u32string_view text, const Alphabet& alphabet) {
  SymbolStream out;
  out.symbols.reserve(text.size());
  bool gap = false;
  for (Symbol raw : text) {
    const Symbol s = fold_to_alphabet(raw, alphabet);
    if (!alphabet.contains(s)) {
      gap = true;
      continue;
    }
    if (gap && !out.symbols.empty()) out.symbols.push_back(kSpace);
    gap = false;
    out.symbols.push_back(s);
  }
  return out;
}

SymbolStream normalize(std::string_view utf8_text, const Alphabet& alphabet) {
  return normalize(std::u32string_view(decode_utf8(utf8_text)), alphabet);
}

std::vector<Sample> extract_samples(const SymbolStream& stream, const KeypadLayout& layout,
                                    std::size_t n) {
  if (n < 1) throw ValidationError("context length must be at least 1");
  std::vector<Sample> samples;
  samples.reserve(stream.symbols.size());
  Context ctx = Context::initial(n);
  for (Symbol s : stream.symbols) {
    if (s != kSpace) {
      const auto pos = layout.locate(s);
      if (!pos) {
        throw ConsistencyError(fmt::format("symbol '{}' is not on any key of layout {}",
                                           encode_utf8(s), layout.name()));
      }
      samples.push_back(Sample{ctx, pos->key, pos->state});
    }
    ctx = ctx.advanced(s);
  }
  return samples;
}

std::string samples_to_csv(std::span<const Sample> samples) {
  std::string out;
  const std::size_t n = samples.empty() ? 3 : samples.front().context.length();
  for (std::size_t i = n; i >= 1; --i) out += fmt::format("l{},", i);
  out += "key,state\n";
  for (const auto& s : samples) {
    for (Symbol c : s.context.symbols()) {
      if (c == kSpace) {
        out.push_back(kSpaceGlyph);
      } else {
        out += encode_utf8(c);
      }
      out.push_back(',');
    }
    out += fmt::format("{},{}\n", key_label(s.key), s.state);
  }
  return out;
}

std::vector<VariableSpec> network_variables(const KeypadLayout& layout, std::size_t n) {
  std::vector<VariableSpec> vars;
  const auto letter_card = static_cast<std::uint32_t>(layout.alphabet().size() + 1);
  for (std::size_t i = n; i >= 1; --i) vars.push_back({fmt::format("L{}", i), letter_card});
  vars.push_back({"Key", static_cast<std::uint32_t>(kKeyCount)});
  vars.push_back({"State", static_cast<std::uint32_t>(layout.max_group_size())});
  return vars;
}

std::vector<std::uint32_t> sample_row(const Sample& sample, const Alphabet& alphabet) {
  std::vector<std::uint32_t> row;
  row.reserve(sample.context.length() + 2);
  for (Symbol c : sample.context.symbols()) {
    auto d = alphabet.digit(c);
    if (!d) throw ConsistencyError("sample context symbol outside alphabet");
    row.push_back(*d);
  }
  row.push_back(sample.key);
  row.push_back(sample.state - 1u);
  return row;
}

Dataset to_dataset(std::span<const Sample> samples, const KeypadLayout& layout, std::size_t n) {
  Dataset data(network_variables(layout, n));
  data.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.context.length() != n) throw ValidationError("sample context length differs from n");
    data.add_row(sample_row(s, layout.alphabet()));
  }
  return data;
}

CountStore count(std::span<const Sample> samples, const KeypadLayout& layout,
                 const NetworkStructure& structure) {
  const std::size_t n = structure.variable_count() - 2;
  CountStore store(network_variables(layout, n), structure);
  for (const auto& s : samples) {
    if (s.context.length() != n) throw ValidationError("sample context length differs from n");
    store.add(sample_row(s, layout.alphabet()));
  }
  return store;
}

}  // namespace reducedkey
