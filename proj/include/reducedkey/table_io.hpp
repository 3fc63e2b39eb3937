#pragma once
// On-disk forms of a ReorderingTable.
//
// Binary layout (all integers little-endian):
//   "IPRT"            magic, 4 bytes
//   u8                version (1)
//   u8 + bytes        alphabet id, UTF-8
//   u8                context length n
//   u16               alphabet size y
//   u32               row count, must equal (y+1)^n
//   rows              8 bytes each, ascending context index; byte i is the
//                     zero-based permutation code for key 2+i
//
// JSON export: {"alphabet", "layout", "n", "symbols", "keypad", "rows"} with
// rows keyed by the rendered context ('_' for space) and one-based codes.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reducedkey/keypad.hpp"

namespace reducedkey {

inline constexpr std::uint8_t kTableFormatVersion = 1;

std::vector<std::uint8_t> write_binary(const ReorderingTable& table);
ReorderingTable read_binary(std::span<const std::uint8_t> bytes);

void save_binary(const ReorderingTable& table, const std::filesystem::path& path);
ReorderingTable load_binary(const std::filesystem::path& path);

std::string export_json(const ReorderingTable& table, const KeypadLayout& layout);

struct TableDocument {
  KeypadLayout layout;
  ReorderingTable table;
};

TableDocument import_json(std::string_view text);

// Shared by the binary/model readers and the CLI.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace reducedkey
