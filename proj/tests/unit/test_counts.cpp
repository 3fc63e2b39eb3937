#include <doctest.h>

#include "reducedkey/corpus.hpp"
#include "reducedkey/counts.hpp"
#include "reducedkey/errors.hpp"
#include "synthetic.hpp"

using namespace reducedkey;

TEST_CASE("structure validation") {
  NetworkStructure s(3);
  s.set_parents(2, {1, 0});
  CHECK(s.parents(2) == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(s.set_parents(0, {2}), ValidationError);
  CHECK(s.parents(0).empty());  // rolled back
  CHECK_THROWS_AS(s.set_parents(1, {1}), ValidationError);
  CHECK_THROWS_AS(s.set_parents(1, {0, 0}), ValidationError);
  CHECK_THROWS_AS(s.set_parents(1, {5}), ValidationError);
  CHECK_THROWS_AS(s.parents(3), ValidationError);
  CHECK_THROWS_AS(NetworkStructure({{1}, {2}, {0}}), ValidationError);
}

TEST_CASE("dataset validation") {
  CHECK_THROWS_AS(Dataset({{"a", 1}}), ValidationError);
  CHECK_THROWS_AS(Dataset({{"a", 2}, {"a", 3}}), ValidationError);
  Dataset d({{"a", 2}, {"b", 3}});
  CHECK_THROWS_AS(d.add_row(std::vector<std::uint32_t>{0}), ValidationError);
  CHECK_THROWS_AS(d.add_row(std::vector<std::uint32_t>{2, 0}), ValidationError);
  d.add_row(std::vector<std::uint32_t>{1, 2});
  CHECK(d.rows() == 1);
  CHECK(d.row(0)[1] == 2);
}

TEST_CASE("empty counts are zero") {
  const auto layout = builtin_layout("greek-caps");
  NetworkStructure s(5);
  s.set_parents(4, {2, 3});
  const auto c = count({}, layout, s);
  CHECK(c.total() == 0);
  for (const auto& f : c.families()) CHECK(f.by_config.empty());
  CHECK(c.family(4).q == 25 * 8);
  CHECK(c.family(4).n_ij(0) == 0);
}

TEST_CASE("one sample gives one count per variable") {
  const auto layout = builtin_layout("greek-caps");
  NetworkStructure s(5);
  s.set_parents(4, {0, 1, 2, 3});
  const auto samples = extract_samples(SymbolStream{U"Α"}, layout, 3);
  const auto c = count(samples, layout, s);
  CHECK(c.total() == 1);
  for (const auto& f : c.families()) {
    std::uint64_t sum = 0;
    for (const auto& [j, cells] : f.by_config) {
      for (auto v : cells) sum += v;
    }
    CHECK(sum == 1);
  }
}

TEST_CASE("parent configuration is mixed radix") {
  std::vector<VariableSpec> vars{{"a", 2}, {"b", 3}, {"c", 4}};
  std::vector<std::uint32_t> row{1, 2, 3};
  std::vector<std::size_t> parents{0, 1, 2};
  CHECK(parent_config(row, parents, vars) == 1 * 12 + 2 * 4 + 3);
  std::vector<std::size_t> none;
  CHECK(parent_config(row, none, vars) == 0);
}

TEST_CASE("counts are linear in the data") {
  testing::Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<VariableSpec> vars{{"a", 2}, {"b", 3}, {"c", 2}, {"d", 4}};
    const auto s = testing::random_structure(vars.size(), rng);
    const auto a = testing::random_dataset(vars, rng.below(20), rng);
    const auto b = testing::random_dataset(vars, rng.below(20), rng);
    Dataset ab(vars);
    for (std::size_t r = 0; r < a.rows(); ++r) ab.add_row(a.row(r));
    for (std::size_t r = 0; r < b.rows(); ++r) ab.add_row(b.row(r));

    auto sum = count_rows(a, s);
    sum += count_rows(b, s);
    CHECK(sum == count_rows(ab, s));

    // Doubling the data doubles every count.
    CountStore doubled(vars, s);
    for (std::size_t r = 0; r < a.rows(); ++r) doubled.add(a.row(r), 2);
    auto twice = count_rows(a, s);
    twice += count_rows(a, s);
    CHECK(doubled == twice);

    // Marginals are sums of cells.
    for (const auto& f : sum.families()) {
      std::uint64_t total = 0;
      for (const auto& [j, cells] : f.by_config) {
        std::uint64_t row = 0;
        for (std::uint32_t k = 0; k < f.r; ++k) row += f.n_ijk(j, k);
        CHECK(row == f.n_ij(j));
        total += row;
      }
      CHECK(total == sum.total());
    }
  }
}

TEST_CASE("count stores refuse mismatched merges and rows") {
  std::vector<VariableSpec> vars{{"a", 2}, {"b", 2}};
  NetworkStructure s1(2), s2(2);
  s2.set_parents(1, {0});
  CountStore c1(vars, s1);
  CountStore c2(vars, s2);
  CHECK_THROWS_AS(c1 += c2, ValidationError);
  CHECK_THROWS_AS(c1.add(std::vector<std::uint32_t>{0, 2}), ValidationError);
  CHECK_THROWS_AS(CountStore(vars, NetworkStructure(3)), ValidationError);
}
