#pragma once
// Deterministic replay of text entry under multi-tap (STEM), two-key and
// predictive (iPRETI) dialogues.
//
// Spaces cost one press (key 0) in every method. Prediction errors are
// counted per letter by how deep the user had to cycle with '#':
// singles needed one extra press, doubles two, triples three (4-letter keys).

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "reducedkey/corpus.hpp"
#include "reducedkey/keypad.hpp"

namespace reducedkey {

struct ReplayOutcome {
  std::uint64_t keystrokes = 0;         // all presses, spaces included
  std::uint64_t letter_keystrokes = 0;  // presses spent on letters
  std::uint64_t letters = 0;
  std::uint64_t spaces = 0;
  std::uint64_t singles = 0;
  std::uint64_t doubles = 0;
  std::uint64_t triples = 0;
  std::uint64_t timeouts = 0;  // STEM same-key waits; time only, no presses

  bool operator==(const ReplayOutcome&) const = default;
};

ReplayOutcome stem_count(const SymbolStream& stream, const KeypadLayout& layout);
ReplayOutcome twokey_count(const SymbolStream& stream, const KeypadLayout& layout);
ReplayOutcome ipreti_replay(const SymbolStream& stream, const ReorderingTable& table,
                            const KeypadLayout& layout);

// Letters shown correctly on the first press, over all letters.
double first_guess_accuracy(const SymbolStream& stream, const ReorderingTable& table,
                            const KeypadLayout& layout);

struct PhraseReport {
  std::string label;
  std::uint64_t words = 0;
  std::uint64_t characters = 0;  // letters + spaces
  ReplayOutcome ipreti;
  ReplayOutcome stem;
  ReplayOutcome twokey;

  double improvement() const;  // (stem - ipreti) / stem
  double single_rate() const;  // singles / characters
  double double_rate() const;  // doubles / characters
  double triple_rate() const;  // triples / characters
  double kspc_ipreti() const;
  double kspc_stem() const;
  double kspc_ipreti_letters() const;  // spaces excluded
  double kspc_stem_letters() const;
  double first_guess() const;
};

struct EvaluationReport {
  std::vector<PhraseReport> phrases;
  PhraseReport total;
};

EvaluationReport evaluate(std::span<const std::string> phrases, const ReorderingTable& table,
                          const KeypadLayout& layout);

// One phrase per non-blank line.
std::vector<std::string> load_phrases(const std::filesystem::path& path);

std::string format_report_text(const EvaluationReport& report);
std::string format_report_csv(const EvaluationReport& report);
std::string format_report_json(const EvaluationReport& report);

}  // namespace reducedkey
