// reducedkey: train, compile, verify, simulate and time predictive keypad entry.
//
//   reducedkey train    --corpus a.txt b.txt --model model.json
//   reducedkey compile  --model model.json --table greek.iprt
//   reducedkey verify   --table greek.iprt
//   reducedkey simulate --table greek.iprt [--phrases file] [--format text|csv|json]
//   reducedkey klm      [--x 6] [--t-p 165 ...] [--format text|json]
//   reducedkey export   --table greek.iprt [--json out.json]

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "reducedkey/bbn.hpp"
#include "reducedkey/compiler.hpp"
#include "reducedkey/corpus.hpp"
#include "reducedkey/entry_sim.hpp"
#include "reducedkey/errors.hpp"
#include "reducedkey/klm.hpp"
#include "reducedkey/table_io.hpp"

namespace fs = std::filesystem;
using namespace reducedkey;

namespace {

constexpr int kExitDiagnostic = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string layout = "greek-caps";
  std::vector<std::string> corpus;
  std::size_t n = 3;
  std::optional<double> xi;
  std::string model;
  std::string table;
  std::string json;
  std::string phrases;
  std::string samples_csv;
  std::string format = "text";
  double x = 6.0;
  klm::Params klm = klm::default_params();
};

fs::path data_dir() {
  if (const char* env = std::getenv("REDUCEDKEY_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return REDUCEDKEY_DEFAULT_DATA_DIR;
}

KeypadLayout layout_for_alphabet(const std::string& alphabet_id) {
  for (const auto& name : builtin_layout_names()) {
    auto layout = builtin_layout(name);
    if (layout.alphabet().id() == alphabet_id) return layout;
  }
  throw ConfigError(fmt::format("no builtin layout for alphabet '{}'; pass --layout", alphabet_id));
}

// Accepts the binary format or a JSON export (which carries its own layout).
TableDocument load_table(const RunConfig& cfg, bool layout_given) {
  if (cfg.table.empty()) throw UsageError("--table is required");
  if (!fs::exists(cfg.table)) throw std::runtime_error("table file not found: " + cfg.table);
  if (fs::path(cfg.table).extension() == ".json") {
    auto doc = import_json(read_file_text(cfg.table));
    if (layout_given && !(builtin_layout(cfg.layout) == doc.layout)) {
      throw ConfigError(fmt::format("table {} was exported for layout {}, not {}", cfg.table,
                                    doc.layout.name(), cfg.layout));
    }
    return doc;
  }
  auto table = load_binary(cfg.table);
  auto layout = layout_given ? builtin_layout(cfg.layout) : layout_for_alphabet(table.alphabet_id());
  check_table_matches(table, layout);
  return {std::move(layout), std::move(table)};
}

int cmd_normalize(const RunConfig& cfg) {
  const auto layout = builtin_layout(cfg.layout);
  for (const auto& path : cfg.corpus) {
    std::cout << normalize(read_file_text(path), layout.alphabet()).text() << "\n";
  }
  return 0;
}

int cmd_train(const RunConfig& cfg) {
  if (cfg.n < 1) throw UsageError("--n must be at least 1");
  const auto layout = builtin_layout(cfg.layout);
  std::vector<Sample> samples;
  for (const auto& path : cfg.corpus) {
    const auto stream = normalize(read_file_text(path), layout.alphabet());
    auto part = extract_samples(stream, layout, cfg.n);
    samples.insert(samples.end(), part.begin(), part.end());
  }
  if (samples.empty()) {
    throw std::runtime_error("corpus contains no " + layout.alphabet().id() +
                             " letters after normalization");
  }
  if (!cfg.samples_csv.empty()) write_file(cfg.samples_csv, samples_to_csv(samples));

  const auto result = train(samples, layout, cfg.n, cfg.xi);
  write_file(cfg.model, save_model(result.model));

  const auto& model = result.model;
  const auto& vars = model.variables();
  std::string parents;
  for (auto p : model.structure().parents(state_variable(cfg.n))) {
    parents += (parents.empty() ? "" : ", ") + vars[p].name;
  }
  fmt::print("layout:            {}\n", layout.name());
  fmt::print("samples:           {}\n", result.sample_count);
  fmt::print("xi:                {}\n", model.xi().value());
  fmt::print("State parents:     {{{}}}\n", parents);
  fmt::print("candidates scored: {}\n", result.search.candidates.size());
  fmt::print("in-sample first-guess accuracy: {:.4f}\n", holdout_accuracy(model, samples));
  fmt::print("model written to {}\n", cfg.model);
  return 0;
}

int cmd_compile(const RunConfig& cfg, bool layout_given) {
  const auto model = load_model(read_file_text(cfg.model));
  const auto layout = layout_given ? builtin_layout(cfg.layout) : model.layout();
  const auto compiled = compile_table(model, layout, model.context_length());
  save_binary(compiled.table, cfg.table);
  const std::string json_path = cfg.json.empty() ? cfg.table + ".json" : cfg.json;
  write_file(json_path, export_json(compiled.table, layout));
  std::cout << format_compile_report(compiled.report, layout);
  fmt::print("binary table: {} ({} bytes)\n", cfg.table, fs::file_size(cfg.table));
  fmt::print("JSON table:   {}\n", json_path);
  return 0;
}

int cmd_verify(const RunConfig& cfg, bool layout_given) {
  const auto doc = load_table(cfg, layout_given);
  const auto report = verify_table(doc.table, doc.layout);
  std::cout << format_verify_report(report);
  if (fs::path(cfg.table).extension() != ".json") {
    fmt::print("file size:    {} bytes (the published per-language figure is 10 KB or less)\n",
               fs::file_size(cfg.table));
  }
  return report.ok() ? 0 : kExitDiagnostic;
}

int cmd_simulate(const RunConfig& cfg, bool layout_given) {
  const auto doc = load_table(cfg, layout_given);
  const fs::path phrase_path =
      cfg.phrases.empty() ? data_dir() / "phrases_greek.txt" : fs::path(cfg.phrases);
  const auto phrases = load_phrases(phrase_path);
  if (phrases.empty()) throw UsageError("phrase file " + phrase_path.string() + " is empty");
  const auto report = evaluate(phrases, doc.table, doc.layout);
  if (cfg.format == "csv") {
    std::cout << format_report_csv(report);
  } else if (cfg.format == "json") {
    std::cout << format_report_json(report);
  } else {
    std::cout << format_report_text(report);
  }
  return 0;
}

int cmd_klm(const RunConfig& cfg) {
  if (cfg.format == "csv") throw UsageError("klm supports --format text or json");
  cfg.klm.validate();
  const auto result = klm::improvement(cfg.klm, cfg.x);
  std::cout << (cfg.format == "json" ? klm::format_json(cfg.klm, result)
                                     : klm::format_text(cfg.klm, result));
  return 0;
}

int cmd_export(const RunConfig& cfg, bool layout_given) {
  const auto doc = load_table(cfg, layout_given);
  const auto text = export_json(doc.table, doc.layout);
  if (cfg.json.empty()) {
    std::cout << text;
  } else {
    write_file(cfg.json, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predictive text entry for reduced keypads"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_layout = [&cfg](CLI::App* sub) {
    return sub->add_option("--layout", cfg.layout, "Builtin keypad layout")
        ->check(CLI::IsMember(builtin_layout_names()));
  };
  const std::vector<std::string> formats = {"text", "csv", "json"};

  auto* normalize_cmd = app.add_subcommand("normalize", "Print corpus text as the model sees it");
  add_layout(normalize_cmd);
  normalize_cmd->add_option("--corpus", cfg.corpus, "UTF-8 text files")->required();

  auto* train_cmd = app.add_subcommand("train", "Learn a letter-position model from corpora");
  add_layout(train_cmd);
  train_cmd->add_option("--corpus", cfg.corpus, "UTF-8 text files")->required();
  train_cmd->add_option("--n", cfg.n, "Preceding symbols used as context")->check(CLI::Range(1, 8));
  train_cmd->add_option("--xi", cfg.xi, "Equivalent sample size (default: mean cardinality / 2)")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--model", cfg.model, "Model document to write")->required();
  train_cmd->add_option("--samples-csv", cfg.samples_csv, "Also dump training samples as CSV");

  auto* compile_cmd = app.add_subcommand("compile", "Bake a model into a reordering table");
  auto* compile_layout = add_layout(compile_cmd);
  compile_cmd->add_option("--model", cfg.model, "Model document")->required()->check(CLI::ExistingFile);
  compile_cmd->add_option("--table", cfg.table, "Binary table to write")->required();
  compile_cmd->add_option("--json", cfg.json, "JSON export path (default: <table>.json)");

  auto* verify_cmd = app.add_subcommand("verify", "Check a table for structural problems");
  auto* verify_layout = add_layout(verify_cmd);
  verify_cmd->add_option("--table", cfg.table, "Binary table or JSON export")->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "Replay phrases under iPRETI, STEM and two-key");
  auto* simulate_layout = add_layout(simulate_cmd);
  simulate_cmd->add_option("--table", cfg.table, "Binary table or JSON export")->required();
  simulate_cmd->add_option("--phrases", cfg.phrases,
                           "One phrase per line (default: $REDUCEDKEY_DATA_DIR/phrases_greek.txt)");
  simulate_cmd->add_option("--format", cfg.format)->check(CLI::IsMember(formats));

  auto* klm_cmd = app.add_subcommand("klm", "Keystroke-level timing model");
  klm_cmd->add_option("--x", cfg.x, "Word length in letters")->check(CLI::Range(1.0, 1e6));
  klm_cmd->add_option("--n-avg", cfg.klm.n_avg, "Average STEM presses per letter");
  klm_cmd->add_option("--t-p", cfg.klm.t_p, "Key press time (ms)");
  klm_cmd->add_option("--t-per", cfg.klm.t_per, "Perception time (ms)");
  klm_cmd->add_option("--p-ck", cfg.klm.p_ck, "Probability of a key change");
  klm_cmd->add_option("--t-wait", cfg.klm.t_wait, "Same-key timeout (ms)");
  klm_cmd->add_option("--t-ck", cfg.klm.t_ck, "Key-to-key movement time (ms)");
  klm_cmd->add_option("--p-error1", cfg.klm.p_error1, "First prediction miss probability");
  klm_cmd->add_option("--p-error2", cfg.klm.p_error2, "Second prediction miss probability");
  klm_cmd->add_option("--format", cfg.format)->check(CLI::IsMember(formats));

  auto* export_cmd = app.add_subcommand("export", "Write a binary table as JSON");
  auto* export_layout = add_layout(export_cmd);
  export_cmd->add_option("--table", cfg.table, "Binary table")->required();
  export_cmd->add_option("--json", cfg.json, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (normalize_cmd->parsed()) return cmd_normalize(cfg);
    if (train_cmd->parsed()) return cmd_train(cfg);
    if (compile_cmd->parsed()) return cmd_compile(cfg, compile_layout->count() > 0);
    if (verify_cmd->parsed()) return cmd_verify(cfg, verify_layout->count() > 0);
    if (simulate_cmd->parsed()) return cmd_simulate(cfg, simulate_layout->count() > 0);
    if (klm_cmd->parsed()) return cmd_klm(cfg);
    if (export_cmd->parsed()) return cmd_export(cfg, export_layout->count() > 0);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiagnostic;
  }
  return kExitUsage;
}
