#include "reducedkey/bbn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

#include "reducedkey/errors.hpp"

namespace reducedkey {

XiPrior::XiPrior(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(fmt::format("equivalent sample size must be positive, got {}", value));
  }
}

XiPrior default_xi(std::span<const VariableSpec> variables) {
  if (variables.empty()) throw ValidationError("default_xi needs at least one variable");
  double sum = 0.0;
  for (const auto& v : variables) sum += v.cardinality;
  return XiPrior(sum / static_cast<double>(variables.size()) / 2.0);
}

double family_log_score(const FamilyCounts& family, XiPrior xi) {
  const double a_j = xi.value() / static_cast<double>(family.q);
  const double a_jk = a_j / static_cast<double>(family.r);
  const double lg_a_j = std::lgamma(a_j);
  const double lg_a_jk = std::lgamma(a_jk);
  double score = 0.0;
  for (const auto& [j, cells] : family.by_config) {
    std::uint64_t n_ij = 0;
    double inner = 0.0;
    for (auto n_ijk : cells) {
      n_ij += n_ijk;
      if (n_ijk > 0) inner += std::lgamma(a_jk + static_cast<double>(n_ijk)) - lg_a_jk;
    }
    if (n_ij == 0) continue;
    score += lg_a_j - std::lgamma(a_j + static_cast<double>(n_ij)) + inner;
  }
  return score;
}

double log_marginal_likelihood(const NetworkStructure& structure, const CountStore& counts,
                               XiPrior xi) {
  if (structure.variable_count() != counts.families().size()) {
    throw ValidationError("structure and counts describe different variable sets");
  }
  double total = 0.0;
  for (const auto& family : counts.families()) {
    if (family.parents != structure.parents(family.variable)) {
      throw ValidationError(fmt::format("counts for {} were gathered under different parents",
                                        counts.variables()[family.variable].name));
    }
    total += family_log_score(family, xi);
  }
  return total;
}

double log_bayes_factor(const Dataset& data, const NetworkStructure& a, const NetworkStructure& b,
                        XiPrior xi) {
  return log_marginal_likelihood(a, count_rows(data, a), xi) -
         log_marginal_likelihood(b, count_rows(data, b), xi);
}

double bayes_factor(const Dataset& data, const NetworkStructure& a, const NetworkStructure& b,
                    XiPrior xi) {
  return std::exp(log_bayes_factor(data, a, b, xi));
}

StructureSearch learn_structure(const Dataset& data, XiPrior xi, std::size_t target) {
  if (data.rows() == 0) throw ValidationError("structure learning needs at least one sample");
  if (target >= data.width()) throw ValidationError("target variable out of range");

  std::vector<std::size_t> others;
  for (std::size_t v = 0; v < data.width(); ++v) {
    if (v != target) others.push_back(v);
  }
  const std::size_t m = others.size();

  // Subsets by size, then lexicographically. Ties keep the earlier subset.
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t size = 0; size <= m; ++size) {
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < m; ++i) {
        if (pick[i]) s.push_back(others[i]);
      }
      subsets.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }

  StructureSearch result{NetworkStructure(data.width()), {}};
  double best = -INFINITY;
  for (auto& parents : subsets) {
    NetworkStructure s(data.width());
    s.set_parents(target, parents);
    const double score = log_marginal_likelihood(s, count_rows(data, s), xi);
    if (score > best) {
      best = score;
      result.best = s;
    }
    result.candidates.push_back({std::move(parents), score});
  }
  return result;
}

// ---------------------------------------------------------------------------

const CptRow* Cpt::find(std::uint64_t j) const {
  auto it = rows.find(j);
  return it == rows.end() ? nullptr : &it->second;
}

std::vector<double> Cpt::probabilities(std::uint64_t j) const {
  if (const auto* row = find(j)) return row->probabilities;
  return std::vector<double>(r, 1.0 / static_cast<double>(r));
}

Cpt fit_cpt(const NetworkStructure& structure, const CountStore& counts, XiPrior xi,
            std::size_t variable) {
  const auto& family = counts.family(variable);
  if (family.parents != structure.parents(variable)) {
    throw ValidationError("counts were gathered under a different parent set");
  }
  Cpt cpt;
  cpt.variable = variable;
  cpt.parents = family.parents;
  cpt.q = family.q;
  cpt.r = family.r;
  const double a_j = xi.value() / static_cast<double>(family.q);
  const double a_jk = a_j / static_cast<double>(family.r);
  for (const auto& [j, cells] : family.by_config) {
    CptRow row;
    row.observations = std::accumulate(cells.begin(), cells.end(), std::uint64_t{0});
    const double denom = static_cast<double>(row.observations) + a_j;
    row.probabilities.reserve(cells.size());
    for (auto n_ijk : cells) row.probabilities.push_back((static_cast<double>(n_ijk) + a_jk) / denom);
    cpt.rows.emplace(j, std::move(row));
  }
  return cpt;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<std::size_t>> fallback_parent_sets(std::span<const std::size_t> parents,
                                                           std::size_t context_length) {
  std::vector<std::vector<std::size_t>> levels;
  for (std::size_t dropped = 0; dropped <= context_length; ++dropped) {
    std::vector<std::size_t> level;
    for (auto p : parents) {
      // Context variables are indexed oldest first, so dropping the oldest
      // `dropped` symbols removes indices below `dropped`.
      if (p >= dropped) level.push_back(p);
    }
    if (levels.empty() || levels.back() != level) levels.push_back(std::move(level));
  }
  return levels;
}

Model::Model(KeypadLayout layout, std::size_t context_length, NetworkStructure structure,
             XiPrior xi, std::vector<Cpt> levels)
    : layout_(std::move(layout)),
      n_(context_length),
      structure_(std::move(structure)),
      xi_(xi),
      levels_(std::move(levels)),
      variables_(network_variables(layout_, n_)) {
  if (n_ < 1) throw ValidationError("context length must be at least 1");
  if (structure_.variable_count() != variables_.size()) {
    throw ValidationError("structure does not match the network variables");
  }
  const auto expected = fallback_parent_sets(structure_.parents(state_variable(n_)), n_);
  if (levels_.size() != expected.size()) {
    throw ValidationError("model is missing fallback levels");
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const auto& cpt = levels_[i];
    if (cpt.variable != state_variable(n_) || cpt.parents != expected[i] ||
        cpt.r != variables_[state_variable(n_)].cardinality) {
      throw ValidationError(fmt::format("fallback level {} does not match the structure", i));
    }
    std::uint64_t q = 1;
    for (auto p : cpt.parents) q *= variables_[p].cardinality;
    if (cpt.q != q) throw ValidationError(fmt::format("fallback level {} has wrong q", i));
    for (const auto& [j, row] : cpt.rows) {
      if (j >= q || row.probabilities.size() != cpt.r) {
        throw ValidationError(fmt::format("fallback level {} has a malformed row", i));
      }
    }
  }
}

Model Model::fit(std::span<const Sample> samples, const KeypadLayout& layout,
                 std::size_t context_length, const NetworkStructure& structure, XiPrior xi) {
  const std::size_t state = state_variable(context_length);
  if (structure.variable_count() != context_length + 2) {
    throw ValidationError("structure does not match the network variables");
  }
  for (std::size_t v = 0; v < structure.variable_count(); ++v) {
    if (v != state && !structure.parents(v).empty()) {
      throw ValidationError("only State may have parents in a letter-position model");
    }
  }
  std::vector<Cpt> levels;
  for (auto& parents : fallback_parent_sets(structure.parents(state), context_length)) {
    NetworkStructure s(context_length + 2);
    s.set_parents(state, std::move(parents));
    levels.push_back(fit_cpt(s, count(samples, layout, s), xi, state));
  }
  return Model(layout, context_length, structure, xi, std::move(levels));
}

Ranking Model::rank(const Context& ctx, KeyIndex key) const {
  if (ctx.length() != n_) {
    throw ValidationError(fmt::format("context has {} symbols, model expects {}", ctx.length(), n_));
  }
  const std::size_t group = layout_.group_size(key);
  std::vector<std::uint32_t> row(n_ + 2, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    auto d = layout_.alphabet().digit(ctx.symbols()[i]);
    if (!d) throw ValidationError("context symbol outside the model's alphabet");
    row[i] = *d;
  }
  row[key_variable(n_)] = key;

  Ranking out;
  out.order.resize(group);
  std::iota(out.order.begin(), out.order.end(), std::uint8_t{1});
  for (std::size_t level = 0; level < levels_.size(); ++level) {
    const auto& cpt = levels_[level];
    const auto* hit = cpt.find(parent_config(row, cpt.parents, variables_));
    if (hit == nullptr || hit->observations == 0) continue;
    const auto& p = hit->probabilities;
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&p](std::uint8_t a, std::uint8_t b) { return p[a - 1] > p[b - 1]; });
    out.level = level;
    return out;
  }
  out.level = levels_.size();
  return out;
}

bool Model::operator==(const Model& other) const {
  return layout_ == other.layout_ && n_ == other.n_ && structure_ == other.structure_ &&
         xi_.value() == other.xi_.value() && levels_ == other.levels_;
}

std::vector<std::uint8_t> rank_positions(const Model& model, const Context& ctx, KeyIndex key) {
  return model.rank(ctx, key).order;
}

double holdout_accuracy(const Model& model, std::span<const Sample> samples) {
  if (samples.empty()) throw ValidationError("accuracy needs at least one sample");
  std::size_t hits = 0;
  for (const auto& s : samples) {
    if (model.rank(s.context, s.key).order.front() == s.state) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

TrainResult train(std::span<const Sample> samples, const KeypadLayout& layout,
                  std::size_t context_length, std::optional<double> xi) {
  if (samples.empty()) throw ValidationError("training needs at least one sample");
  const auto data = to_dataset(samples, layout, context_length);
  const XiPrior prior = xi ? XiPrior(*xi) : default_xi(data.variables());
  auto search = learn_structure(data, prior, state_variable(context_length));
  auto model = Model::fit(samples, layout, context_length, search.best, prior);
  return {std::move(model), std::move(search), samples.size()};
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kModelFormat = "reducedkey-model";
constexpr int kModelVersion = 1;

nlohmann::json names_of(std::span<const std::size_t> parents,
                        const std::vector<VariableSpec>& variables) {
  auto out = nlohmann::json::array();
  for (auto p : parents) out.push_back(variables[p].name);
  return out;
}

std::vector<std::size_t> indices_of(const nlohmann::json& names,
                                    const std::vector<VariableSpec>& variables) {
  std::vector<std::size_t> out;
  for (const auto& name : names) {
    const auto s = name.get<std::string>();
    auto it = std::find_if(variables.begin(), variables.end(),
                           [&](const VariableSpec& v) { return v.name == s; });
    if (it == variables.end()) throw ValidationError("unknown variable " + s);
    out.push_back(static_cast<std::size_t>(it - variables.begin()));
  }
  return out;
}

}  // namespace

std::string save_model(const Model& model) {
  using nlohmann::json;
  const auto& layout = model.layout();
  const auto& vars = model.variables();

  json keypad = json::object();
  for (KeyIndex key = 0; key < kKeyCount; ++key) {
    json group = json::array();
    for (Symbol s : layout.group(key)) group.push_back(encode_utf8(s));
    keypad[key_label(key)] = std::move(group);
  }
  json symbols = json::array();
  for (Symbol s : layout.alphabet().symbols()) symbols.push_back(encode_utf8(s));

  json variables = json::array();
  for (const auto& v : vars) variables.push_back({{"name", v.name}, {"cardinality", v.cardinality}});

  json parents = json::object();
  for (std::size_t v = 0; v < vars.size(); ++v) {
    parents[vars[v].name] = names_of(model.structure().parents(v), vars);
  }

  json levels = json::array();
  for (const auto& cpt : model.levels()) {
    json rows = json::array();
    for (const auto& [j, row] : cpt.rows) rows.push_back({j, row.observations, row.probabilities});
    levels.push_back({{"parents", names_of(cpt.parents, vars)},
                      {"q", cpt.q},
                      {"rows", std::move(rows)}});
  }

  json doc = {{"format", kModelFormat},
              {"version", kModelVersion},
              {"layout",
               {{"name", layout.name()},
                {"alphabet", layout.alphabet().id()},
                {"symbols", std::move(symbols)},
                {"keypad", std::move(keypad)},
                {"next_key", layout.next_key()}}},
              {"n", model.context_length()},
              {"variables", std::move(variables)},
              {"xi", model.xi().value()},
              {"parents", std::move(parents)},
              {"levels", std::move(levels)}};
  return doc.dump(1) + "\n";
}

Model load_model(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("model document does not parse: ") + e.what(), e.byte);
  }
  try {
    if (doc.at("format").get<std::string>() != kModelFormat) {
      throw ValidationError("not a reducedkey model document");
    }
    if (doc.at("version").get<int>() != kModelVersion) {
      throw ValidationError(fmt::format("unsupported model version {}", doc.at("version").dump()));
    }
    const auto& jl = doc.at("layout");
    std::u32string symbols;
    for (const auto& s : jl.at("symbols")) {
      const auto d = decode_utf8(s.get<std::string>());
      if (d.size() != 1) throw ValidationError("alphabet entries must be single symbols");
      symbols.push_back(d[0]);
    }
    KeypadLayout::Groups groups;
    for (KeyIndex key = 0; key < kKeyCount; ++key) {
      for (const auto& s : jl.at("keypad").at(key_label(key))) {
        const auto d = decode_utf8(s.get<std::string>());
        if (d.size() != 1) throw ValidationError("keypad entries must be single symbols");
        groups[key].push_back(d[0]);
      }
    }
    KeypadLayout layout(jl.at("name").get<std::string>(),
                        Alphabet(jl.at("alphabet").get<std::string>(), std::move(symbols)),
                        std::move(groups), jl.value("next_key", std::string("#")));

    const auto n = doc.at("n").get<std::size_t>();
    const auto vars = network_variables(layout, n);
    std::vector<VariableSpec> stored;
    for (const auto& v : doc.at("variables")) {
      stored.push_back({v.at("name").get<std::string>(), v.at("cardinality").get<std::uint32_t>()});
    }
    if (stored != vars) throw ValidationError("variable list does not match layout and n");

    NetworkStructure structure(vars.size());
    for (std::size_t v = 0; v < vars.size(); ++v) {
      structure.set_parents(v, indices_of(doc.at("parents").at(vars[v].name), vars));
    }

    std::vector<Cpt> levels;
    for (const auto& jlevel : doc.at("levels")) {
      Cpt cpt;
      cpt.variable = state_variable(n);
      cpt.parents = indices_of(jlevel.at("parents"), vars);
      cpt.q = jlevel.at("q").get<std::uint64_t>();
      cpt.r = vars[cpt.variable].cardinality;
      for (const auto& jrow : jlevel.at("rows")) {
        CptRow row;
        row.observations = jrow.at(1).get<std::uint64_t>();
        row.probabilities = jrow.at(2).get<std::vector<double>>();
        cpt.rows.emplace(jrow.at(0).get<std::uint64_t>(), std::move(row));
      }
      levels.push_back(std::move(cpt));
    }
    return Model(std::move(layout), n, std::move(structure), XiPrior(doc.at("xi").get<double>()),
                 std::move(levels));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model document is malformed: ") + e.what());
  }
}

}  // namespace reducedkey
