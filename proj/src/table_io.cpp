#include "reducedkey/table_io.hpp"

#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include <json.hpp>

#include "reducedkey/errors.hpp"

namespace reducedkey {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'I', 'P', 'R', 'T'};

// Largest zero-based code any group can carry (4! - 1).
constexpr std::uint8_t kMaxZeroBasedCode = 23;

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw FormatError(fmt::format("truncated table: need {} bytes for {}", n, what), pos_);
    }
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint8_t u8(const char* what) { return take(1, what)[0]; }

  std::uint16_t u16(const char* what) {
    auto b = take(2, what);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }

  std::uint32_t u32(const char* what) {
    auto b = take(4, what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

}  // namespace

std::vector<std::uint8_t> write_binary(const ReorderingTable& table) {
  if (!table.complete()) {
    throw ValidationError(fmt::format("binary tables must be complete: {} of {} rows present",
                                      table.row_count(), table.expected_rows()));
  }
  if (table.context_length() > 255) throw ValidationError("context length exceeds 255");
  std::vector<std::uint8_t> out;
  out.reserve(16 + table.alphabet_id().size() + table.row_count() * kKeyCount);
  for (auto b : kMagic) out.push_back(static_cast<std::uint8_t>(b));
  out.push_back(kTableFormatVersion);
  out.push_back(static_cast<std::uint8_t>(table.alphabet_id().size()));
  out.insert(out.end(), table.alphabet_id().begin(), table.alphabet_id().end());
  out.push_back(static_cast<std::uint8_t>(table.context_length()));
  put_u16(out, static_cast<std::uint16_t>(table.alphabet_size()));
  put_u32(out, static_cast<std::uint32_t>(table.row_count()));
  for (const auto& [index, codes] : table.rows()) {
    for (auto code : codes) {
      if (code < 1 || code > kMaxZeroBasedCode + 1) {
        throw ValidationError(fmt::format("code {} in row {} cannot be stored", code, index));
      }
      out.push_back(static_cast<std::uint8_t>(code - 1));
    }
  }
  return out;
}

ReorderingTable read_binary(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto magic = in.take(kMagic.size(), "magic");
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw FormatError("bad magic, not a reordering table", 0);
  }
  const std::size_t version_at = in.offset();
  const auto version = in.u8("version");
  if (version != kTableFormatVersion) {
    throw FormatError(fmt::format("unsupported table version {}", version), version_at);
  }
  const auto id_len = in.u8("alphabet id length");
  if (id_len == 0) throw FormatError("empty alphabet id", in.offset() - 1);
  auto id_bytes = in.take(id_len, "alphabet id");
  std::string id(id_bytes.begin(), id_bytes.end());
  const std::size_t n_at = in.offset();
  const auto n = in.u8("context length");
  if (n == 0) throw FormatError("context length is zero", n_at);
  const std::size_t y_at = in.offset();
  const auto y = in.u16("alphabet size");
  if (y < 2) throw FormatError("alphabet size below 2", y_at);

  ReorderingTable table(std::move(id), y, n);
  const std::size_t count_at = in.offset();
  const auto rows = in.u32("row count");
  if (rows != table.expected_rows()) {
    throw FormatError(fmt::format("row count {} does not match (y+1)^n = {}", rows,
                                  table.expected_rows()),
                      count_at);
  }
  const std::size_t body = static_cast<std::size_t>(rows) * kKeyCount;
  if (bytes.size() - in.offset() != body) {
    throw FormatError(fmt::format("table body is {} bytes, expected {}",
                                  bytes.size() - in.offset(), body),
                      in.offset());
  }
  for (std::uint32_t r = 0; r < rows; ++r) {
    const std::size_t row_at = in.offset();
    auto raw = in.take(kKeyCount, "row");
    CodeRow codes{};
    for (std::size_t k = 0; k < kKeyCount; ++k) {
      if (raw[k] > kMaxZeroBasedCode) {
        throw FormatError(fmt::format("code byte {} out of range", raw[k]), row_at + k);
      }
      codes[k] = static_cast<std::uint8_t>(raw[k] + 1);
    }
    table.set_row(r, codes);
  }
  return table;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_file_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void save_binary(const ReorderingTable& table, const std::filesystem::path& path) {
  const auto bytes = write_binary(table);
  write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

ReorderingTable load_binary(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return read_binary(bytes);
}

// ---------------------------------------------------------------------------

std::string export_json(const ReorderingTable& table, const KeypadLayout& layout) {
  check_table_matches(table, layout);
  const auto& alphabet = layout.alphabet();
  using nlohmann::json;

  json keypad = json::object();
  for (KeyIndex key = 0; key < kKeyCount; ++key) {
    json group = json::array();
    for (Symbol s : layout.group(key)) group.push_back(encode_utf8(s));
    keypad[key_label(key)] = std::move(group);
  }
  json symbols = json::array();
  for (Symbol s : alphabet.symbols()) symbols.push_back(encode_utf8(s));

  json rows = json::object();
  for (const auto& [index, codes] : table.rows()) {
    const auto ctx = context_at(index, table.context_length(), alphabet);
    rows[ctx.render()] = codes;
  }

  json doc = {{"alphabet", alphabet.id()},  {"layout", layout.name()},
              {"n", table.context_length()}, {"symbols", std::move(symbols)},
              {"keypad", std::move(keypad)}, {"rows", std::move(rows)}};
  // nlohmann objects are std::map-backed, so key order is sorted and stable.
  return doc.dump(1) + "\n";
}

TableDocument import_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("table JSON does not parse: ") + e.what(), e.byte);
  }
  try {
    const auto id = doc.at("alphabet").get<std::string>();
    const auto n = doc.at("n").get<std::size_t>();

    KeypadLayout::Groups groups;
    std::u32string concatenated;
    for (KeyIndex key = 0; key < kKeyCount; ++key) {
      for (const auto& s : doc.at("keypad").at(key_label(key))) {
        const auto decoded = decode_utf8(s.get<std::string>());
        if (decoded.size() != 1) throw ValidationError("keypad entries must be single symbols");
        groups[key].push_back(decoded[0]);
      }
      concatenated += groups[key];
    }
    std::u32string symbols;
    if (doc.contains("symbols")) {
      for (const auto& s : doc.at("symbols")) {
        const auto decoded = decode_utf8(s.get<std::string>());
        if (decoded.size() != 1) throw ValidationError("symbols entries must be single symbols");
        symbols.push_back(decoded[0]);
      }
    } else {
      symbols = concatenated;
    }
    const auto name = doc.value("layout", id);
    KeypadLayout layout(name, Alphabet(id, std::move(symbols)), std::move(groups));

    ReorderingTable table(id, layout.alphabet().size(), n);
    for (const auto& [key, value] : doc.at("rows").items()) {
      const auto ctx = Context::parse(key);
      if (ctx.length() != n) {
        throw ValidationError(fmt::format("row '{}' does not have {} symbols", key, n));
      }
      auto codes = value.get<std::vector<int>>();
      if (codes.size() != kKeyCount) {
        throw ValidationError(fmt::format("row '{}' has {} codes, expected 8", key, codes.size()));
      }
      CodeRow row{};
      for (std::size_t k = 0; k < kKeyCount; ++k) {
        const auto limit = permutation_count(layout.group_size(static_cast<KeyIndex>(k)));
        if (codes[k] < 1 || static_cast<std::size_t>(codes[k]) > limit) {
          throw ValidationError(fmt::format("row '{}' key {} code {} out of range", key,
                                            key_label(static_cast<KeyIndex>(k)), codes[k]));
        }
        row[k] = static_cast<std::uint8_t>(codes[k]);
      }
      table.set_row(context_index(ctx, layout.alphabet()), row);
    }
    return {std::move(layout), std::move(table)};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("table JSON does not match the schema: ") + e.what());
  }
}

}  // namespace reducedkey
