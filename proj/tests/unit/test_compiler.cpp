#include <doctest.h>

#include "oracles.hpp"
#include "reducedkey/compiler.hpp"
#include "reducedkey/errors.hpp"
#include "reducedkey/table_io.hpp"
#include "synthetic.hpp"

using namespace reducedkey;

namespace {

const KeypadLayout& greek() {
  static const KeypadLayout layout = builtin_layout("greek-caps");
  return layout;
}

Model markov_model(std::uint64_t seed, std::size_t n = 3) {
  const auto text = testing::markov_corpus(greek(), 8000, seed);
  const auto samples = extract_samples(normalize(text, greek().alphabet()), greek(), n);
  return train(samples, greek(), n).model;
}

}  // namespace

TEST_CASE("an untrained model compiles to identity codes") {
  NetworkStructure s(5);
  s.set_parents(4, {0, 1, 2, 3});
  const auto model = Model::fit(std::vector<Sample>{}, greek(), 3, s, XiPrior(8.6));
  const auto compiled = compile_table(model, greek());
  CHECK(compiled.table.row_count() == 15625);
  CHECK(compiled.report.rows_written == 15625);
  CHECK(compiled.report.contexts_fallback == 15625);
  for (const auto& [i, row] : compiled.table.rows()) {
    for (auto code : row) CHECK(code == 1);
  }
  CHECK(compiled.table == testing::identity_table(greek(), 3));
}

TEST_CASE("compiled codes agree with model rankings") {
  const auto model = markov_model(1);
  const auto compiled = compile_table(model, greek());
  REQUIRE(compiled.table.complete());
  testing::Rng rng(5);
  for (int i = 0; i < 3000; ++i) {
    const auto index = rng.below(15625);
    const auto ctx = context_at(index, 3, greek().alphabet());
    const auto key = static_cast<KeyIndex>(rng.below(8));
    const auto order = rank_positions(model, ctx, key);
    std::u32string expected;
    for (auto s : order) expected.push_back(greek().symbol_at(key, s));
    CHECK(table_lookup(compiled.table, greek(), ctx, key) == expected);
  }
  std::uint64_t histogram_total = 0;
  for (const auto& per_key : compiled.report.code_histogram) {
    for (auto c : per_key) histogram_total += c;
  }
  CHECK(histogram_total == 15625 * 8);
}

TEST_CASE("compilation is deterministic") {
  const auto a = compile_table(markov_model(2), greek());
  const auto b = compile_table(markov_model(2), greek());
  CHECK(write_binary(a.table) == write_binary(b.table));
  CHECK(export_json(a.table, greek()) == export_json(b.table, greek()));
}

TEST_CASE("compile checks layout and context length") {
  const auto model = markov_model(3);
  CHECK_THROWS_AS(compile_table(model, builtin_layout("latin-caps"), 3), ValidationError);
  CHECK_THROWS_AS(compile_table(model, greek(), 2), ValidationError);
}

TEST_CASE("compile works for other context lengths") {
  const auto compiled = compile_table(markov_model(4, 2), greek());
  CHECK(compiled.table.row_count() == 625);
  CHECK(verify_table(compiled.table, greek()).ok());
}

TEST_CASE("verify accepts a compiled table") {
  const auto compiled = compile_table(markov_model(5), greek());
  const auto report = verify_table(compiled.table, greek());
  CHECK(report.ok());
  CHECK(report.rows_checked == 15625);
  CHECK(format_verify_report(report).find("violations:   0") != std::string::npos);
}

TEST_CASE("verify reports missing rows and foreign alphabets") {
  auto table = testing::identity_table(greek(), 3);
  table.erase_row(42);
  table.erase_row(7);
  auto report = verify_table(table, greek());
  CHECK_FALSE(report.ok());
  bool saw_count = false;
  bool saw_missing = false;
  for (const auto& v : report.violations) {
    if (v.kind == Violation::Kind::RowCount) saw_count = true;
    if (v.kind == Violation::Kind::MissingRow && v.context_index == 7) saw_missing = true;
  }
  CHECK(saw_count);
  CHECK(saw_missing);

  report = verify_table(ReorderingTable("latin", 26, 3), greek());
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().kind == Violation::Kind::AlphabetMismatch);
}

TEST_CASE("verify flags codes beyond a key's permutations") {
  auto table = testing::identity_table(greek(), 3);
  table.set_row(100, CodeRow{1, 1, 7, 1, 1, 1, 1, 1});
  const auto report = verify_table(table, greek());
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == Violation::Kind::CodeRange);
  CHECK(report.violations[0].context_index == 100);
  CHECK(report.violations[0].key == 2);
}

TEST_CASE("compile report formatting names every key") {
  const auto compiled = compile_table(markov_model(6), greek());
  const auto text = format_compile_report(compiled.report, greek());
  CHECK(text.find("15625") != std::string::npos);
  CHECK(text.find("ΧΨΩ") != std::string::npos);
}
