#include "reducedkey/entry_sim.hpp"

#include <fstream>
#include <optional>

#include <fmt/format.h>
#include <json.hpp>

#include "reducedkey/errors.hpp"

namespace reducedkey {

namespace {

SymbolPosition must_locate(const KeypadLayout& layout, Symbol s) {
  auto pos = layout.locate(s);
  if (!pos) {
    throw ValidationError(fmt::format("symbol '{}' is not on layout {}; normalize the text first",
                                      encode_utf8(s), layout.name()));
  }
  return *pos;
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ReplayOutcome stem_count(const SymbolStream& stream, const KeypadLayout& layout) {
  ReplayOutcome out;
  std::optional<KeyIndex> previous_key;
  for (Symbol s : stream.symbols) {
    if (s == kSpace) {
      ++out.spaces;
      ++out.keystrokes;
      previous_key.reset();
      continue;
    }
    const auto pos = must_locate(layout, s);
    if (previous_key == pos.key) ++out.timeouts;
    previous_key = pos.key;
    ++out.letters;
    out.letter_keystrokes += pos.state;
    out.keystrokes += pos.state;
  }
  return out;
}

ReplayOutcome twokey_count(const SymbolStream& stream, const KeypadLayout& layout) {
  ReplayOutcome out;
  for (Symbol s : stream.symbols) {
    if (s == kSpace) {
      ++out.spaces;
      ++out.keystrokes;
      continue;
    }
    must_locate(layout, s);
    ++out.letters;
    out.letter_keystrokes += 2;
    out.keystrokes += 2;
  }
  return out;
}

ReplayOutcome ipreti_replay(const SymbolStream& stream, const ReorderingTable& table,
                            const KeypadLayout& layout) {
  check_table_matches(table, layout);
  ReplayOutcome out;
  Context ctx = Context::initial(table.context_length());
  for (Symbol s : stream.symbols) {
    if (s == kSpace) {
      ++out.spaces;
      ++out.keystrokes;
    } else {
      const auto pos = must_locate(layout, s);
      const auto shown = table_lookup(table, layout, ctx, pos.key);
      const auto depth = shown.find(s);
      if (depth == std::u32string::npos) {
        throw ConsistencyError("table lookup lost the target letter");
      }
      switch (depth) {
        case 0: break;
        case 1: ++out.singles; break;
        case 2: ++out.doubles; break;
        default: ++out.triples; break;
      }
      ++out.letters;
      out.letter_keystrokes += 1 + depth;
      out.keystrokes += 1 + depth;
    }
    // The display now holds the true letter, whatever the first guess was.
    ctx = ctx.advanced(s);
  }
  return out;
}

double first_guess_accuracy(const SymbolStream& stream, const ReorderingTable& table,
                            const KeypadLayout& layout) {
  const auto r = ipreti_replay(stream, table, layout);
  if (r.letters == 0) throw ValidationError("first-guess accuracy needs at least one letter");
  return ratio(r.letters - r.singles - r.doubles - r.triples, r.letters);
}

// ---------------------------------------------------------------------------

double PhraseReport::improvement() const {
  if (stem.keystrokes == 0) return 0.0;
  return (static_cast<double>(stem.keystrokes) - static_cast<double>(ipreti.keystrokes)) /
         static_cast<double>(stem.keystrokes);
}
double PhraseReport::single_rate() const { return ratio(ipreti.singles, characters); }
double PhraseReport::double_rate() const { return ratio(ipreti.doubles, characters); }
double PhraseReport::triple_rate() const { return ratio(ipreti.triples, characters); }
double PhraseReport::kspc_ipreti() const { return ratio(ipreti.keystrokes, characters); }
double PhraseReport::kspc_stem() const { return ratio(stem.keystrokes, characters); }
double PhraseReport::kspc_ipreti_letters() const {
  return ratio(ipreti.letter_keystrokes, ipreti.letters);
}
double PhraseReport::kspc_stem_letters() const { return ratio(stem.letter_keystrokes, stem.letters); }
double PhraseReport::first_guess() const {
  return ratio(ipreti.letters - ipreti.singles - ipreti.doubles - ipreti.triples, ipreti.letters);
}

namespace {

void accumulate(ReplayOutcome& into, const ReplayOutcome& r) {
  into.keystrokes += r.keystrokes;
  into.letter_keystrokes += r.letter_keystrokes;
  into.letters += r.letters;
  into.spaces += r.spaces;
  into.singles += r.singles;
  into.doubles += r.doubles;
  into.triples += r.triples;
  into.timeouts += r.timeouts;
}

}  // namespace

EvaluationReport evaluate(std::span<const std::string> phrases, const ReorderingTable& table,
                          const KeypadLayout& layout) {
  if (phrases.empty()) throw ValidationError("evaluation needs at least one phrase");
  EvaluationReport report;
  report.total.label = "Total";
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    const auto stream = normalize(phrases[i], layout.alphabet());
    PhraseReport p;
    p.label = std::to_string(i + 1);
    p.words = stream.words();
    p.characters = stream.symbols.size();
    p.ipreti = ipreti_replay(stream, table, layout);
    p.stem = stem_count(stream, layout);
    p.twokey = twokey_count(stream, layout);

    report.total.words += p.words;
    report.total.characters += p.characters;
    accumulate(report.total.ipreti, p.ipreti);
    accumulate(report.total.stem, p.stem);
    accumulate(report.total.twokey, p.twokey);
    report.phrases.push_back(std::move(p));
  }
  return report;
}

std::vector<std::string> load_phrases(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open phrase file " + path.string());
  std::vector<std::string> phrases;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    phrases.push_back(line);
  }
  return phrases;
}

std::string format_report_text(const EvaluationReport& report) {
  std::string out = fmt::format("{:<7}{:>8}{:>12}{:>8}{:>7}{:>15}{:>15}{:>15}\n", "Phrase",
                                "# words", "Characters", "iPRETI", "STEM", "% improvement",
                                "Single errors", "Double errors");
  auto row = [&out](const PhraseReport& p) {
    out += fmt::format("{:<7}{:>8}{:>12}{:>8}{:>7}{:>14.1f}%{:>14.1f}%{:>14.1f}%\n", p.label,
                       p.words, p.characters, p.ipreti.keystrokes, p.stem.keystrokes,
                       100.0 * p.improvement(), 100.0 * p.single_rate(), 100.0 * p.double_rate());
  };
  for (const auto& p : report.phrases) row(p);
  row(report.total);

  const auto& t = report.total;
  out += "\n";
  out += fmt::format("first-guess accuracy:        {:.1f}%\n", 100.0 * t.first_guess());
  out += fmt::format("KSPC incl. spaces:           iPRETI {:.3f}  STEM {:.3f}  two-key {:.3f}\n",
                     t.kspc_ipreti(), t.kspc_stem(),
                     static_cast<double>(t.twokey.keystrokes) / std::max<double>(1, t.characters));
  out += fmt::format("KSPC excl. spaces:           iPRETI {:.3f}  STEM {:.3f}  ({:.1f}% fewer)\n",
                     t.kspc_ipreti_letters(), t.kspc_stem_letters(),
                     t.kspc_stem_letters() == 0.0
                         ? 0.0
                         : 100.0 * (1.0 - t.kspc_ipreti_letters() / t.kspc_stem_letters()));
  if (t.ipreti.triples > 0) {
    out += fmt::format("third-# errors:              {:.1f}%\n", 100.0 * t.triple_rate());
  }
  out += fmt::format("STEM same-key timeouts:      {}\n", t.stem.timeouts);
  return out;
}

std::string format_report_csv(const EvaluationReport& report) {
  std::string out =
      "phrase,words,characters,letters,spaces,ipreti,stem,twokey,improvement,single_rate,"
      "double_rate,singles,doubles,triples,stem_timeouts,kspc_ipreti,kspc_stem,"
      "kspc_ipreti_letters,kspc_stem_letters\n";
  auto row = [&out](const PhraseReport& p) {
    out += fmt::format("{},{},{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n",
                       p.label, p.words, p.characters, p.ipreti.letters, p.ipreti.spaces,
                       p.ipreti.keystrokes, p.stem.keystrokes, p.twokey.keystrokes,
                       p.improvement(), p.single_rate(), p.double_rate(), p.ipreti.singles,
                       p.ipreti.doubles, p.ipreti.triples, p.stem.timeouts, p.kspc_ipreti(),
                       p.kspc_stem(), p.kspc_ipreti_letters(), p.kspc_stem_letters());
  };
  for (const auto& p : report.phrases) row(p);
  row(report.total);
  return out;
}

std::string format_report_json(const EvaluationReport& report) {
  using nlohmann::json;
  auto to_json = [](const PhraseReport& p) {
    return json{{"phrase", p.label},
                {"words", p.words},
                {"characters", p.characters},
                {"letters", p.ipreti.letters},
                {"spaces", p.ipreti.spaces},
                {"ipreti", p.ipreti.keystrokes},
                {"stem", p.stem.keystrokes},
                {"twokey", p.twokey.keystrokes},
                {"improvement", p.improvement()},
                {"single_rate", p.single_rate()},
                {"double_rate", p.double_rate()},
                {"triple_rate", p.triple_rate()},
                {"singles", p.ipreti.singles},
                {"doubles", p.ipreti.doubles},
                {"triples", p.ipreti.triples},
                {"stem_timeouts", p.stem.timeouts},
                {"first_guess", p.first_guess()},
                {"kspc_ipreti", p.kspc_ipreti()},
                {"kspc_stem", p.kspc_stem()},
                {"kspc_ipreti_letters", p.kspc_ipreti_letters()},
                {"kspc_stem_letters", p.kspc_stem_letters()}};
  };
  json rows = json::array();
  for (const auto& p : report.phrases) rows.push_back(to_json(p));
  json doc = {{"phrases", std::move(rows)}, {"total", to_json(report.total)}};
  return doc.dump(1) + "\n";
}

}  // namespace reducedkey
