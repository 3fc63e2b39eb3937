#pragma once
// Reference implementations used only by tests. None of these share code
// paths with the library routines they check.

#include <cstdint>
#include <span>
#include <vector>

#include "reducedkey/corpus.hpp"
#include "reducedkey/counts.hpp"
#include "reducedkey/keypad.hpp"

namespace reducedkey::testing {

// P(D|B) by the sequential Polya-urn chain rule: each row's probability given
// all earlier rows is (N_ijk + a/(r q)) / (N_ij + a/q) per family. Uses only
// products of ratios, no gamma function.
long double polya_marginal_likelihood(const Dataset& data, const NetworkStructure& structure,
                                      double xi);

// All permutations of 1..k in lexicographic order.
std::vector<std::vector<std::uint8_t>> all_permutations(std::size_t k);

// Accuracy of predicting, for every (context, key), the most frequent state
// in `samples` (ties to the smaller state), evaluated on the same samples.
double empirical_mode_accuracy(std::span<const Sample> samples);

// Accuracy of always predicting the first static position.
double static_order_accuracy(std::span<const Sample> samples);

// A table that shows the true letter first at every context in `stream`
// (static order elsewhere). Throws if the stream asks two letters of one key
// in the same context.
ReorderingTable ideal_table(const SymbolStream& stream, const KeypadLayout& layout, std::size_t n);

// A table that shows the true letter last at every context in `stream`.
ReorderingTable worst_table(const SymbolStream& stream, const KeypadLayout& layout, std::size_t n);

// Every row present, every code 1.
ReorderingTable identity_table(const KeypadLayout& layout, std::size_t n);

}  // namespace reducedkey::testing
