#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "reducedkey/errors.hpp"
#include "reducedkey/keypad.hpp"

using namespace reducedkey;

namespace {

std::vector<std::uint8_t> digits(std::initializer_list<int> xs) {
  return std::vector<std::uint8_t>(xs.begin(), xs.end());
}

}  // namespace

TEST_CASE("key labels round trip") {
  for (KeyIndex k = 0; k < kKeyCount; ++k) CHECK(parse_key(key_label(k)) == k);
  CHECK(key_label(0) == "2");
  CHECK(key_label(7) == "9");
  CHECK_THROWS_AS(parse_key("1"), ValidationError);
  CHECK_THROWS_AS(parse_key("10"), ValidationError);
  CHECK_THROWS_AS(parse_key(""), ValidationError);
  CHECK_THROWS_AS(key_label(8), ValidationError);
}

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet("", U"AB"), ValidationError);
  CHECK_THROWS_AS(Alphabet("x", U"A"), ValidationError);
  CHECK_THROWS_AS(Alphabet("x", U"AA"), ValidationError);
  CHECK_THROWS_AS(Alphabet("x", U"A B"), ValidationError);
  CHECK_THROWS_AS(Alphabet("x", U"A_"), ValidationError);
  CHECK_THROWS_AS(Alphabet(std::string(256, 'a'), U"AB"), ValidationError);

  Alphabet a("x", U"AB");
  CHECK(a.digit(kSpace) == 0u);
  CHECK(a.digit(U'A') == 1u);
  CHECK(a.digit(U'B') == 2u);
  CHECK_FALSE(a.digit(U'C').has_value());
  CHECK(a.symbol_for_digit(0) == kSpace);
  CHECK(a.symbol_for_digit(2) == U'B');
  CHECK_THROWS(a.symbol_for_digit(3));
}

TEST_CASE("greek layout") {
  const auto layout = builtin_layout("greek-caps");
  CHECK(layout.alphabet().size() == 24);
  CHECK(layout.max_group_size() == 3);
  CHECK(layout.group(0) == U"ΑΒΓ");
  CHECK(layout.group(7) == U"ΧΨΩ");
  auto pos = layout.locate(U'Ε');
  REQUIRE(pos.has_value());
  CHECK(pos->key == 1);
  CHECK(pos->state == 2);
  CHECK_FALSE(layout.locate(U'a').has_value());
  CHECK(layout.symbol_at(3, 3) == U'Μ');
  for (KeyIndex k = 0; k < kKeyCount; ++k) {
    for (std::uint8_t s = 1; s <= layout.group_size(k); ++s) {
      auto p = layout.locate(layout.symbol_at(k, s));
      REQUIRE(p.has_value());
      CHECK(p->key == k);
      CHECK(p->state == s);
    }
  }
  CHECK_THROWS_AS(builtin_layout("klingon"), ConfigError);
}

TEST_CASE("latin layout has four-letter keys") {
  const auto layout = builtin_layout("latin-caps");
  CHECK(layout.max_group_size() == 4);
  CHECK(layout.group(5) == U"PQRS");
  CHECK(layout.group(7) == U"WXYZ");
}

TEST_CASE("layout validation") {
  Alphabet a("t", U"ABCDEFGHIJKLMNOPQRSTUVWX");
  KeypadLayout::Groups ok{U"ABC", U"DEF", U"GHI", U"JKL", U"MNO", U"PQR", U"STU", U"VWX"};
  CHECK_NOTHROW(KeypadLayout("t", a, ok));

  auto short_group = ok;
  short_group[0] = U"AB";
  short_group[1] = U"CDEF";
  CHECK_THROWS_AS(KeypadLayout("t", a, short_group), ValidationError);

  auto repeated = ok;
  repeated[1] = U"ABC";
  CHECK_THROWS_AS(KeypadLayout("t", a, repeated), ValidationError);

  auto foreign = ok;
  foreign[7] = U"VWZ";
  CHECK_THROWS_AS(KeypadLayout("t", a, foreign), ValidationError);

  auto five = ok;
  five[0] = U"ABCDE";
  CHECK_THROWS_AS(KeypadLayout("t", a, five), ValidationError);
}

TEST_CASE("permutation digits for three letters") {
  CHECK(encode_permutation(digits({1, 2, 3})).value == 1);
  CHECK(encode_permutation(digits({1, 3, 2})).value == 2);
  CHECK(encode_permutation(digits({2, 1, 3})).value == 3);
  CHECK(encode_permutation(digits({2, 3, 1})).value == 4);
  CHECK(encode_permutation(digits({3, 1, 2})).value == 5);
  CHECK(encode_permutation(digits({3, 2, 1})).value == 6);
}

TEST_CASE("permutation codec is a bijection in lexicographic order") {
  for (std::size_t k : {3u, 4u}) {
    const auto perms = testing::all_permutations(k);
    REQUIRE(perms.size() == permutation_count(k));
    std::set<int> seen;
    for (std::size_t i = 0; i < perms.size(); ++i) {
      const auto code = encode_permutation(perms[i]);
      CHECK(code.value == i + 1);
      CHECK(code.group_size == k);
      CHECK(decode_permutation(code) == perms[i]);
      seen.insert(code.value);
    }
    CHECK(seen.size() == perms.size());
  }
  CHECK(encode_permutation(digits({4, 3, 2, 1})).value == 24);
  CHECK(encode_permutation(digits({1, 2, 3, 4})).value == 1);
}

TEST_CASE("permutation codec rejects bad input") {
  CHECK_THROWS_AS(encode_permutation(digits({1, 1, 2})), ValidationError);
  CHECK_THROWS_AS(encode_permutation(digits({1, 2})), ValidationError);
  CHECK_THROWS_AS(encode_permutation(digits({0, 1, 2})), ValidationError);
  CHECK_THROWS_AS(encode_permutation(digits({1, 2, 4})), ValidationError);
  CHECK_THROWS_AS(decode_permutation({7, 3}), ValidationError);
  CHECK_THROWS_AS(decode_permutation({0, 3}), ValidationError);
  CHECK_THROWS_AS(decode_permutation({25, 4}), ValidationError);
  CHECK_THROWS_AS(permutation_count(5), ValidationError);
}

TEST_CASE("context parse, render and advance") {
  auto c = Context::parse("ΡΑ_");
  CHECK(c.length() == 3);
  CHECK(c.symbols() == U"ΡΑ ");
  CHECK(c.render() == "ΡΑ_");
  CHECK(c.advanced(U'Κ').render() == "Α_Κ");
  CHECK(Context::initial(3).render() == "___");
}

TEST_CASE("context indexing") {
  const auto layout = builtin_layout("greek-caps");
  const auto& alphabet = layout.alphabet();
  CHECK(context_count(alphabet, 3) == 15625);
  CHECK(context_index(Context::initial(3), alphabet) == 0);
  CHECK(context_index(Context::parse("__Α"), alphabet) == 1);
  CHECK(context_index(Context::parse("_Α_"), alphabet) == 25);
  CHECK(context_index(Context::parse("ΩΩΩ"), alphabet) == 15624);
  for (std::uint64_t i = 0; i < 15625; i += 37) {
    CHECK(context_index(context_at(i, 3, alphabet), alphabet) == i);
  }
  CHECK_THROWS_AS(context_index(Context::parse("ΑBΓ"), alphabet), ValidationError);
  CHECK_THROWS_AS(context_at(15625, 3, alphabet), ValidationError);
}

TEST_CASE("table lookup applies the stored code") {
  const auto layout = builtin_layout("greek-caps");
  const auto& alphabet = layout.alphabet();
  ReorderingTable table(alphabet.id(), alphabet.size(), 3);
  const auto ctx = Context::parse("ΡΑ_");
  CodeRow row{6, 1, 4, 2, 1, 1, 1, 3};
  table.set_row(context_index(ctx, alphabet), row);
  CHECK(table_lookup(table, layout, ctx, "2") == U"ΓΒΑ");
  CHECK(table_lookup(table, layout, ctx, "4") == U"ΘΙΗ");
  CHECK(table_lookup(table, layout, ctx, "5") == U"ΚΜΛ");
  CHECK(table_lookup(table, layout, ctx, "9") == U"ΨΧΩ");
  // Missing rows fall back to the printed order.
  CHECK(table_lookup(table, layout, Context::parse("ΑΑΑ"), "2") == U"ΑΒΓ");
}

TEST_CASE("table rows are range checked") {
  ReorderingTable table("greek", 24, 3);
  CHECK(table.expected_rows() == 15625);
  CHECK_THROWS_AS(table.set_row(15625, CodeRow{1, 1, 1, 1, 1, 1, 1, 1}), ValidationError);
  CHECK_THROWS_AS(table.set_row(0, CodeRow{0, 1, 1, 1, 1, 1, 1, 1}), ValidationError);
  CHECK_THROWS_AS(table.set_row(0, CodeRow{25, 1, 1, 1, 1, 1, 1, 1}), ValidationError);
  table.set_row(0, CodeRow{1, 1, 1, 1, 1, 1, 1, 1});
  CHECK(table.row_count() == 1);
  table.erase_row(0);
  CHECK(table.row_count() == 0);
}

TEST_CASE("table must match the layout") {
  const auto layout = builtin_layout("greek-caps");
  CHECK_NOTHROW(check_table_matches(ReorderingTable("greek", 24, 3), layout));
  CHECK_THROWS_AS(check_table_matches(ReorderingTable("latin", 26, 3), layout), ValidationError);

  ReorderingTable t("greek", 24, 3);
  t.set_row(0, CodeRow{7, 1, 1, 1, 1, 1, 1, 1});
  CHECK_THROWS(table_lookup(t, layout, Context::initial(3), KeyIndex{0}));
}
